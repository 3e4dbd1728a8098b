//! The poset `Z^n` under the coordinatewise order, with the diagonal flow
//! restricted to integer times.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Ambient dimension `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point of `Z^n`.
///
/// The derived `Ord` is lexicographic; it is used for deterministic ordering
/// only and has nothing to do with the poset order, see [`GridPoint::leq`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint(SmallVec<[i64; 4]>);

impl GridPoint {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        GridPoint(coords.into_iter().collect())
    }

    /// The diagonal point `(c, c, ..., c)`.
    pub fn splat(dim: usize, c: i64) -> Self {
        GridPoint(SmallVec::from_elem(c, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub(crate) fn check_dim(&self, other: &GridPoint) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Coordinatewise `self <= other`.
    pub fn leq(&self, other: &GridPoint) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.le_unchecked(other))
    }

    #[inline]
    pub(crate) fn le_unchecked(&self, other: &GridPoint) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Diagonal flow: adds `t` to every coordinate.
    pub fn flow(&self, t: i64) -> Result<GridPoint> {
        self.0
            .iter()
            .map(|c| c.checked_add(t).ok_or(Error::Overflow))
            .collect::<Result<SmallVec<_>>>()
            .map(GridPoint)
    }

    /// `self + delta * e_axis`, or `None` on overflow.
    #[inline]
    pub(crate) fn step(&self, axis: usize, delta: i64) -> Option<GridPoint> {
        let mut out = self.clone();
        out.0[axis] = out.0[axis].checked_add(delta)?;
        Some(out)
    }
}

impl fmt::Debug for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<const N: usize> From<[i64; N]> for GridPoint {
    fn from(coords: [i64; N]) -> Self {
        GridPoint::new(coords)
    }
}

impl From<Vec<i64>> for GridPoint {
    fn from(coords: Vec<i64>) -> Self {
        GridPoint(SmallVec::from_vec(coords))
    }
}

/// Number of lattice points in the box `[lo, hi]`, or `None` if it does not
/// fit in a `u64`.
pub(crate) fn box_volume(lo: &GridPoint, hi: &GridPoint) -> Option<u64> {
    lo.coords().iter().zip(hi.coords()).try_fold(1u64, |acc, (a, b)| {
        let side = u64::try_from(i128::from(*b) - i128::from(*a) + 1).ok()?;
        acc.checked_mul(side)
    })
}

/// Iterator over the lattice points of `[lo, hi]` in lexicographic order.
pub(crate) struct BoxIter {
    lo: GridPoint,
    hi: GridPoint,
    next: Option<GridPoint>,
}

impl BoxIter {
    pub(crate) fn new(lo: &GridPoint, hi: &GridPoint) -> Self {
        let next = lo.le_unchecked(hi).then(|| lo.clone());
        BoxIter {
            lo: lo.clone(),
            hi: hi.clone(),
            next,
        }
    }
}

impl Iterator for BoxIter {
    type Item = GridPoint;

    fn next(&mut self) -> Option<GridPoint> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for axis in (0..succ.dim()).rev() {
            if succ.0[axis] < self.hi.0[axis] {
                succ.0[axis] += 1;
                self.next = Some(succ);
                return Some(current);
            }
            succ.0[axis] = self.lo.0[axis];
        }
        Some(current)
    }
}

/// All `r` with `p <= r <= q`, in lexicographic order.
pub fn order_box(p: &GridPoint, q: &GridPoint) -> Result<Vec<GridPoint>> {
    if !p.leq(q)? {
        return Err(Error::NotComparable {
            low: p.clone(),
            high: q.clone(),
        });
    }
    box_volume(p, q).ok_or(Error::Overflow)?;
    Ok(BoxIter::new(p, q).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(c: &[i64]) -> GridPoint {
        GridPoint::new(c.iter().copied())
    }

    #[test]
    fn leq_examples() {
        assert!(pt(&[0, 0]).leq(&pt(&[1, 2])).unwrap());
        assert!(!pt(&[0, 3]).leq(&pt(&[1, 2])).unwrap());
        assert!(pt(&[1, 1, 1]).leq(&pt(&[1, 1, 1])).unwrap());
        assert_eq!(
            pt(&[0, 0]).leq(&pt(&[0, 0, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn box_examples() {
        assert_eq!(
            order_box(&pt(&[0, 0]), &pt(&[1, 1])).unwrap(),
            vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0]), pt(&[1, 1])]
        );
        assert_eq!(order_box(&pt(&[2, 2]), &pt(&[2, 2])).unwrap(), vec![pt(&[2, 2])]);
        assert_eq!(
            order_box(&pt(&[0, 0]), &pt(&[2, 0])).unwrap(),
            vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 0])]
        );
        assert!(matches!(
            order_box(&pt(&[1, 0]), &pt(&[0, 1])),
            Err(Error::NotComparable { .. })
        ));
    }

    #[test]
    fn flow_examples() {
        assert_eq!(pt(&[0, 0]).flow(1).unwrap(), pt(&[1, 1]));
        assert_eq!(pt(&[3, -1]).flow(0).unwrap(), pt(&[3, -1]));
        assert_eq!(pt(&[2, 2]).flow(3).unwrap().flow(-3).unwrap(), pt(&[2, 2]));
        assert_eq!(pt(&[i64::MAX, 0]).flow(1), Err(Error::Overflow));
    }

    #[test]
    fn dimension_must_be_positive() {
        assert_eq!(Dimension::new(0), Err(Error::ZeroDimension));
        assert_eq!(Dimension::new(3).unwrap().get(), 3);
    }

    fn arb_point() -> impl Strategy<Value = GridPoint> {
        prop::collection::vec(-5i64..5, 2).prop_map(GridPoint::from)
    }

    proptest! {
        #[test]
        fn partial_order_axioms(p in arb_point(), q in arb_point(), r in arb_point()) {
            prop_assert!(p.leq(&p).unwrap());
            if p.leq(&q).unwrap() && q.leq(&p).unwrap() {
                prop_assert_eq!(&p, &q);
            }
            if p.leq(&q).unwrap() && q.leq(&r).unwrap() {
                prop_assert!(p.leq(&r).unwrap());
            }
        }

        #[test]
        fn flow_is_an_order_isomorphism(p in arb_point(), q in arb_point(), t in -20i64..20) {
            prop_assert_eq!(p.leq(&q).unwrap(), p.flow(t).unwrap().leq(&q.flow(t).unwrap()).unwrap());
        }

        #[test]
        fn flow_is_monotone_in_time(p in arb_point(), s in -20i64..20, t in -20i64..20) {
            let (s, t) = (s.min(t), s.max(t));
            prop_assert!(p.flow(s).unwrap().leq(&p.flow(t).unwrap()).unwrap());
        }

        #[test]
        fn box_matches_filter(p in arb_point(), q in arb_point()) {
            if p.leq(&q).unwrap() {
                let b = order_box(&p, &q).unwrap();
                let lo = GridPoint::splat(2, -5);
                let hi = GridPoint::splat(2, 5);
                let expect: Vec<_> = BoxIter::new(&lo, &hi)
                    .filter(|r| p.le_unchecked(r) && r.le_unchecked(&q))
                    .collect();
                prop_assert_eq!(b, expect);
            }
        }
    }
}
