//! Intervals of `Z^n` as explicit, validated point sets.
//!
//! An interval is a nonempty finite set that is
//!
//! * **poset-convex**: whenever `p <= q` both lie in the set, so does every
//!   `r` with `p <= r <= q`;
//! * **poset-connected**: any two points are joined by a zig-zag of
//!   comparable points inside the set.
//!
//! Points are stored explicitly, so diagonal shifts are exact translations
//! and never clip against a window. Uppersets and downsets are necessarily
//! truncated to a finite window when constructed; everything computed for
//! them afterwards (extents, triviality, distances) is relative to that
//! truncation.

use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::grid::{BoxIter, GridPoint};
use crate::pointset::{self, Points};

/// Common read access to explicit point sets.
pub trait PointSet {
    fn points(&self) -> &IndexSet<GridPoint>;

    fn contains(&self, p: &GridPoint) -> bool {
        self.points().contains(p)
    }

    fn len(&self) -> usize {
        self.points().len()
    }

    fn is_empty(&self) -> bool {
        self.points().is_empty()
    }

    fn is_subset_of<S: PointSet + ?Sized>(&self, other: &S) -> bool {
        self.len() <= other.len() && self.points().iter().all(|p| other.contains(p))
    }

    fn is_disjoint_from<S: PointSet + ?Sized>(&self, other: &S) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self.points(), other.points())
        } else {
            (other.points(), self.points())
        };
        !small.iter().any(|p| large.contains(p))
    }
}

/// `true` iff for all comparable `p <= q` in the set, the whole box between
/// them is in the set.
pub fn is_poset_convex(points: &[GridPoint]) -> Result<bool> {
    let set = pointset::collect_sorted(points.iter().cloned())?;
    Ok(pointset::convexity_violation(&set).is_none())
}

/// `true` iff the comparability graph is connected. The empty set and
/// singletons are connected.
pub fn is_poset_connected(points: &[GridPoint]) -> Result<bool> {
    let set = pointset::collect_sorted(points.iter().cloned())?;
    Ok(pointset::comparability_components(&set).len() <= 1)
}

/// A validated interval of `Z^n`.
#[derive(Clone)]
pub struct IntervalSet {
    points: Points,
    lo: GridPoint,
    hi: GridPoint,
    extent: u64,
}

impl IntervalSet {
    /// Validates an arbitrary point set as an interval.
    pub fn new(points: impl IntoIterator<Item = GridPoint>) -> Result<Self> {
        let set = pointset::collect_sorted(points)?;
        if set.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((low, high, missing)) = pointset::convexity_violation(&set) {
            return Err(Error::NotConvex {
                low: Box::new(low),
                high: Box::new(high),
                missing: Box::new(missing),
            });
        }
        let components = pointset::convex_components(&set).len();
        if components != 1 {
            return Err(Error::NotConnected { components });
        }
        Ok(Self::from_checked(set))
    }

    // Caller guarantees `points` is sorted, nonempty, convex and connected.
    pub(crate) fn from_checked(points: Points) -> Self {
        debug_assert!(!points.is_empty());
        let (lo, hi) = pointset::bounding_box(&points).expect("nonempty");
        let extent = diagonal_run(&points);
        IntervalSet { points, lo, hi, extent }
    }

    /// The box `[lo, hi]`.
    pub fn rect(lo: &GridPoint, hi: &GridPoint) -> Result<Self> {
        let points = crate::grid::order_box(lo, hi)?;
        Ok(Self::from_checked(points.into_iter().collect()))
    }

    /// Points of the window `[lo, hi]` lying above at least one generator.
    ///
    /// An upperset meets a box in a connected set (everything in it is below
    /// `hi`), so the only failure is an empty result.
    pub fn upperset_in_window(generators: &[GridPoint], lo: &GridPoint, hi: &GridPoint) -> Result<Self> {
        Self::closure_in_window(generators, lo, hi, |g, p| g.le_unchecked(p))
    }

    /// Points of the window `[lo, hi]` lying below at least one generator.
    pub fn downset_in_window(generators: &[GridPoint], lo: &GridPoint, hi: &GridPoint) -> Result<Self> {
        Self::closure_in_window(generators, lo, hi, |g, p| p.le_unchecked(g))
    }

    fn closure_in_window(
        generators: &[GridPoint],
        lo: &GridPoint,
        hi: &GridPoint,
        related: impl Fn(&GridPoint, &GridPoint) -> bool,
    ) -> Result<Self> {
        let window = crate::grid::order_box(lo, hi)?;
        for g in generators {
            lo.check_dim(g)?;
        }
        let kept: Vec<GridPoint> = window
            .into_iter()
            .filter(|p| generators.iter().any(|g| related(g, p)))
            .collect();
        Self::new(kept)
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    /// Lower corner of the bounding box.
    pub fn lo(&self) -> &GridPoint {
        &self.lo
    }

    /// Upper corner of the bounding box.
    pub fn hi(&self) -> &GridPoint {
        &self.hi
    }

    /// Lexicographically least point.
    pub fn first(&self) -> &GridPoint {
        &self.points[0]
    }

    /// Largest `t >= 0` with `self ∩ self.shift(t)` nonempty.
    ///
    /// Equivalently the longest diagonal run `p, p+1, ..., p+t` inside the
    /// set; runs are contiguous because the set is convex.
    pub fn diag_extent(&self) -> u64 {
        self.extent
    }

    /// `{ p : p + t·(1,...,1) ∈ self }`, i.e. translation by `-t` along the
    /// diagonal.
    pub fn shift(&self, t: i64) -> Result<Self> {
        if t == 0 {
            return Ok(self.clone());
        }
        let points = shift_points(&self.points, t)?;
        Ok(IntervalSet {
            points,
            lo: self.lo.flow(-t)?,
            hi: self.hi.flow(-t)?,
            extent: self.extent,
        })
    }

    pub fn intersect<S: PointSet + ?Sized>(&self, other: &S) -> Result<ConvexSubset> {
        intersect(self, other, self.dim())
    }

    pub fn as_convex(&self) -> ConvexSubset {
        ConvexSubset {
            dim: self.dim(),
            points: self.points.clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &GridPoint> {
        self.points.iter()
    }
}

impl PointSet for IntervalSet {
    fn points(&self) -> &IndexSet<GridPoint> {
        &self.points
    }
}

impl PartialEq for IntervalSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for IntervalSet {}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalSet[{} pts in {}..{}]", self.points.len(), self.lo, self.hi)
    }
}

/// The empty interval. Its interval module is the zero module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyInterval {
    pub dim: usize,
}

impl EmptyInterval {
    pub fn shift(&self, _t: i64) -> Self {
        *self
    }
}

/// A poset-convex, possibly empty or disconnected, point set, such as the
/// intersection of two intervals.
#[derive(Clone, PartialEq, Eq)]
pub struct ConvexSubset {
    dim: usize,
    points: Points,
}

impl ConvexSubset {
    pub fn new(dim: usize, points: impl IntoIterator<Item = GridPoint>) -> Result<Self> {
        let set = pointset::collect_sorted(points)?;
        if let Some(p) = set.first() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        if let Some((low, high, missing)) = pointset::convexity_violation(&set) {
            return Err(Error::NotConvex {
                low: Box::new(low),
                high: Box::new(high),
                missing: Box::new(missing),
            });
        }
        Ok(ConvexSubset { dim, points: set })
    }

    pub fn empty(dim: usize) -> Self {
        ConvexSubset {
            dim,
            points: Points::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Maximal connected pieces, each an interval, ordered by their
    /// lexicographically least point.
    pub fn components(&self) -> Vec<IntervalSet> {
        pointset::convex_components(&self.points)
            .into_iter()
            .map(|idx| IntervalSet::from_checked(idx.into_iter().map(|i| self.points[i].clone()).collect()))
            .collect()
    }

    /// Number of components, without materialising them.
    pub fn component_count(&self) -> usize {
        pointset::convex_components(&self.points).len()
    }

    pub fn shift(&self, t: i64) -> Result<Self> {
        Ok(ConvexSubset {
            dim: self.dim,
            points: shift_points(&self.points, t)?,
        })
    }

    /// The single component as an interval; `None` if empty, an error if
    /// there are several.
    pub fn into_interval(self) -> Result<Option<IntervalSet>> {
        if self.points.is_empty() {
            return Ok(None);
        }
        match self.component_count() {
            1 => Ok(Some(IntervalSet::from_checked(self.points))),
            components => Err(Error::MultiComponent { components }),
        }
    }

    pub fn intersect<S: PointSet + ?Sized>(&self, other: &S) -> Result<ConvexSubset> {
        intersect(self, other, self.dim)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GridPoint> {
        self.points.iter()
    }
}

impl PointSet for ConvexSubset {
    fn points(&self) -> &IndexSet<GridPoint> {
        &self.points
    }
}

impl fmt::Debug for ConvexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

fn intersect<A, B>(a: &A, b: &B, dim: usize) -> Result<ConvexSubset>
where
    A: PointSet + ?Sized,
    B: PointSet + ?Sized,
{
    if let Some(p) = b.points().first() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
    }
    // Iterating the smaller set in its sorted order keeps the result sorted.
    let (small, large) = if a.len() <= b.len() {
        (a.points(), b.points())
    } else {
        (b.points(), a.points())
    };
    let points: Points = small.iter().filter(|p| large.contains(*p)).cloned().collect();
    let out = ConvexSubset { dim, points };
    debug_assert!(pointset::convexity_violation(&out.points).is_none());
    Ok(out)
}

fn shift_points(points: &Points, t: i64) -> Result<Points> {
    // Translation preserves lexicographic order.
    points.iter().map(|p| p.flow(-t)).collect()
}

fn diagonal_run(points: &Points) -> u64 {
    let mut best = 0u64;
    for p in points {
        let starts_run = p.flow(-1).map_or(true, |prev| !points.contains(&prev));
        if !starts_run {
            continue;
        }
        let mut len = 0u64;
        let mut cur = p.clone();
        while let Ok(next) = cur.flow(1) {
            if !points.contains(&next) {
                break;
            }
            len += 1;
            cur = next;
        }
        best = best.max(len);
    }
    best
}

/// Two members of a family whose intersection is not a single interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub first: usize,
    pub second: usize,
    pub components: usize,
}

/// First pair `(i, j)`, `i < j`, whose intersection has two or more
/// components. Membership of the intersection in the family itself is not
/// checked, and closure under the flow is automatic for explicit sets.
pub fn intersection_closure_violation(family: &[IntervalSet]) -> Result<Option<ClosureViolation>> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            let components = a.intersect(b)?.component_count();
            if components > 1 {
                return Ok(Some(ClosureViolation {
                    first: i,
                    second: j,
                    components,
                }));
            }
        }
    }
    Ok(None)
}

/// Two bars that meet in several components once one is shifted:
/// `family[first] ∩ family[second](shift)` has `components` components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowClosureViolation {
    pub first: usize,
    pub second: usize,
    pub shift: i64,
    pub components: usize,
}

/// First `(i, j, t)` with `i <= j` and `family[i] ∩ family[j](t)`
/// disconnected, trying `t` in increasing order.
///
/// `None` means every intersection of two shifted bars is empty or an
/// interval. Triple intersections are not checked.
pub fn flow_closure_violation(family: &[IntervalSet]) -> Result<Option<FlowClosureViolation>> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i) {
            // b(t) = b - t·1 meets the box of a only for t in [low, high]
            let axes = a
                .lo()
                .coords()
                .iter()
                .zip(a.hi().coords())
                .zip(b.lo().coords().iter().zip(b.hi().coords()));
            let (mut low, mut high) = (i64::MIN, i64::MAX);
            for ((alo, ahi), (blo, bhi)) in axes {
                low = low.max(blo.checked_sub(*ahi).ok_or(Error::Overflow)?);
                high = high.min(bhi.checked_sub(*alo).ok_or(Error::Overflow)?);
            }
            for t in low..=high {
                let components = a.intersect(&b.shift(t)?)?.component_count();
                if components > 1 {
                    return Ok(Some(FlowClosureViolation {
                        first: i,
                        second: j,
                        shift: t,
                        components,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_intersection_closed(family: &[IntervalSet]) -> Result<bool> {
    Ok(intersection_closure_violation(family)?.is_none())
}

/// All points of the window `[lo, hi]`, as an iterator. Handy for
/// brute-force checks.
pub fn window_points(lo: &GridPoint, hi: &GridPoint) -> impl Iterator<Item = GridPoint> {
    BoxIter::new(lo, hi)
}
