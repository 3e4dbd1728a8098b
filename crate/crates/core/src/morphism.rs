//! Morphisms between interval modules.
//!
//! A natural transformation `f: C(I) -> C(J)` is zero off `I ∩ J` and acts
//! on each connected component `Q` of `I ∩ J` by a single scalar. A scalar
//! may be nonzero exactly on the components that are `(I, J)`-valid:
//!
//! 1. every `q ∈ I` below a point of `Q` lies in `J`, and
//! 2. every `r ∈ J` above a point of `Q` lies in `I`.
//!
//! So `Hom(C(I), C(J))` has one basis vector per valid component. When
//! `I ∩ J` is a single interval this collapses to one scalar, which is the
//! setting of [`ScalarMorphism`] and [`compose`]; [`Morphism`] keeps one
//! scalar per component and composes by evaluating at points, which works
//! for any intersection.

use std::collections::BTreeMap;

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::field::{FieldChar, Scalar};
use crate::grid::GridPoint;
use crate::interval::{IntervalSet, PointSet};

// Local form of the validity clauses. For convex I and J, a violating pair
// q <= p (or p <= r) can be walked by unit steps inside I (resp. J), and the
// first step that leaves J (resp. I) starts from a point of Q.
pub(crate) fn is_valid_unchecked(q: &IntervalSet, i: &IntervalSet, j: &IntervalSet) -> bool {
    q.iter().all(|p| {
        (0..p.dim()).all(|k| {
            let below_ok = p.step(k, -1).is_none_or(|s| !i.contains(&s) || j.contains(&s));
            let above_ok = p.step(k, 1).is_none_or(|s| !j.contains(&s) || i.contains(&s));
            below_ok && above_ok
        })
    })
}

/// Is `q`, a connected component of `i ∩ j`, `(i, j)`-valid?
pub fn is_valid_component(q: &IntervalSet, i: &IntervalSet, j: &IntervalSet) -> Result<bool> {
    if q.dim() != i.dim() || q.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: if q.dim() != i.dim() { i.dim() } else { j.dim() },
        });
    }
    if !q.is_subset_of(i) || !q.is_subset_of(j) {
        return Err(Error::NotAComponent);
    }
    // q is connected; it is a whole component iff no unit step leaves it
    // while staying in i ∩ j.
    let maximal = q.iter().all(|p| {
        (0..p.dim()).all(|k| {
            [-1, 1].into_iter().all(|d| {
                p.step(k, d)
                    .is_none_or(|s| q.contains(&s) || !(i.contains(&s) && j.contains(&s)))
            })
        })
    });
    if !maximal {
        return Err(Error::NotAComponent);
    }
    Ok(is_valid_unchecked(q, i, j))
}

/// Components of `source ∩ target` together with their validity.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub components: Vec<IntervalSet>,
    pub valid: Vec<bool>,
}

impl HomBasis {
    pub fn new(source: &IntervalSet, target: &IntervalSet) -> Result<Self> {
        let components = source.intersect(target)?.components();
        let valid = components
            .iter()
            .map(|q| is_valid_unchecked(q, source, target))
            .collect();
        Ok(HomBasis { components, valid })
    }

    /// `dim Hom(C(source), C(target))`.
    pub fn dimension(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }

    /// Index of the component containing `p`, if any.
    pub fn component_of(&self, p: &GridPoint) -> Option<usize> {
        self.components.iter().position(|c| c.contains(p))
    }
}

/// Does a nonzero morphism `C(i) -> C(j)` exist?
///
/// Requires `i ∩ j` to be empty or a single interval; use
/// [`hom_dimension_bruteforce`] or [`HomBasis`] otherwise.
pub fn hom_exists(i: &IntervalSet, j: &IntervalSet) -> Result<bool> {
    let meet = i.intersect(j)?;
    match meet.into_interval()? {
        None => Ok(false),
        Some(q) => Ok(is_valid_unchecked(&q, i, j)),
    }
}

/// `dim Hom(C(i), C(j))` by counting valid components of `i ∩ j`. Accepts
/// any number of components. Both intervals must lie in the window
/// `[lo, hi]`.
pub fn hom_dimension_bruteforce(i: &IntervalSet, j: &IntervalSet, lo: &GridPoint, hi: &GridPoint) -> Result<usize> {
    for s in [i, j] {
        if !lo.leq(s.lo())? || !s.hi().leq(hi)? {
            return Err(Error::InvalidParameter("interval outside window".into()));
        }
    }
    Ok(HomBasis::new(i, j)?.dimension())
}

/// A morphism `C(source) -> C(target)` whose intersection has at most one
/// component, described by the scalar `omega` on that component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMorphism {
    source: IntervalSet,
    target: IntervalSet,
    omega: Scalar,
    field: FieldChar,
}

impl ScalarMorphism {
    pub fn new(source: IntervalSet, target: IntervalSet, omega: u32, field: FieldChar) -> Result<Self> {
        let omega = field.check(omega)?;
        if omega != 0 && !hom_exists(&source, &target)? {
            return Err(Error::InvalidMorphism);
        }
        if omega == 0 {
            // still enforce the single-component setting
            source.intersect(&target)?.into_interval()?;
        }
        Ok(ScalarMorphism {
            source,
            target,
            omega,
            field,
        })
    }

    pub fn identity(i: &IntervalSet, field: FieldChar) -> Self {
        ScalarMorphism {
            source: i.clone(),
            target: i.clone(),
            omega: 1,
            field,
        }
    }

    pub fn source(&self) -> &IntervalSet {
        &self.source
    }

    pub fn target(&self) -> &IntervalSet {
        &self.target
    }

    pub fn omega(&self) -> Scalar {
        self.omega
    }

    pub fn field(&self) -> FieldChar {
        self.field
    }
}

/// `g ∘ f` for `f: C(I) -> C(J)` and `g: C(J) -> C(K)`, all pairwise
/// intersections being intervals or empty.
///
/// The composite is nonzero iff both factors are and `∅ ≠ I ∩ K ⊆ J`; its
/// scalar is then `ω_g · ω_f`.
pub fn compose(f: &ScalarMorphism, g: &ScalarMorphism) -> Result<ScalarMorphism> {
    if f.target != g.source || f.field != g.field {
        return Err(Error::BarcodeMismatch);
    }
    let (i, j, k) = (&f.source, &f.target, &g.target);
    let ik = i.intersect(k)?;
    for meet in [i.intersect(j)?, j.intersect(k)?, ik.clone()] {
        let components = meet.component_count();
        if components > 1 {
            return Err(Error::MultiComponent { components });
        }
    }
    let nonzero = f.omega != 0 && g.omega != 0 && !ik.is_empty() && ik.is_subset_of(j);
    let omega = if nonzero { f.field.mul(f.omega, g.omega) } else { 0 };
    Ok(ScalarMorphism {
        source: i.clone(),
        target: k.clone(),
        omega,
        field: f.field,
    })
}

/// A morphism `C(source) -> C(target)` with one scalar per component of
/// `source ∩ target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: IntervalSet,
    target: IntervalSet,
    field: FieldChar,
    components: Vec<IntervalSet>,
    weights: Vec<Scalar>,
}

impl Morphism {
    pub fn zero(source: &IntervalSet, target: &IntervalSet, field: FieldChar) -> Result<Self> {
        let components = source.intersect(target)?.components();
        let weights = vec![0; components.len()];
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            field,
            components,
            weights,
        })
    }

    /// Builds a morphism from per-component scalars, rejecting nonzero
    /// scalars on invalid components.
    pub fn new(source: &IntervalSet, target: &IntervalSet, field: FieldChar, weights: &[u32]) -> Result<Self> {
        let basis = HomBasis::new(source, target)?;
        if weights.len() != basis.components.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} weights, got {}",
                basis.components.len(),
                weights.len()
            )));
        }
        let weights: Vec<Scalar> = weights.iter().map(|w| field.check(*w)).collect::<Result<_>>()?;
        if weights.iter().zip(&basis.valid).any(|(w, ok)| *w != 0 && !ok) {
            return Err(Error::InvalidMorphism);
        }
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            field,
            components: basis.components,
            weights,
        })
    }

    pub(crate) fn from_parts(
        source: IntervalSet,
        target: IntervalSet,
        field: FieldChar,
        components: Vec<IntervalSet>,
        weights: Vec<Scalar>,
    ) -> Self {
        debug_assert_eq!(components.len(), weights.len());
        Morphism {
            source,
            target,
            field,
            components,
            weights,
        }
    }

    /// The `delta`-transition morphism `C(I) -> C(I(delta))`: identity on
    /// every component of `I ∩ I(delta)`.
    pub fn transition(i: &IntervalSet, delta: u64, field: FieldChar) -> Result<Self> {
        let delta = i64::try_from(delta).map_err(|_| Error::Overflow)?;
        let target = i.shift(delta)?;
        let components = i.intersect(&target)?.components();
        let weights = vec![1; components.len()];
        Ok(Morphism {
            source: i.clone(),
            target,
            field,
            components,
            weights,
        })
    }

    pub fn source(&self) -> &IntervalSet {
        &self.source
    }

    pub fn target(&self) -> &IntervalSet {
        &self.target
    }

    pub fn field(&self) -> FieldChar {
        self.field
    }

    pub fn components(&self) -> &[IntervalSet] {
        &self.components
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| *w == 0)
    }

    /// The scalar when `source ∩ target` has at most one component (zero
    /// when empty).
    pub fn scalar(&self) -> Result<Scalar> {
        match self.weights.len() {
            0 => Ok(0),
            1 => Ok(self.weights[0]),
            components => Err(Error::MultiComponent { components }),
        }
    }

    /// The linear map `f_p` as a scalar.
    pub fn value_at(&self, p: &GridPoint) -> Scalar {
        self.components
            .iter()
            .position(|c| c.contains(p))
            .map_or(0, |c| self.weights[c])
    }

    /// `f(t)`: the same morphism between the shifted intervals.
    pub fn shift(&self, t: i64) -> Result<Self> {
        Ok(Morphism {
            source: self.source.shift(t)?,
            target: self.target.shift(t)?,
            field: self.field,
            components: self.components.iter().map(|c| c.shift(t)).collect::<Result<_>>()?,
            weights: self.weights.clone(),
        })
    }

    /// `g ∘ self`. A composite of morphisms is a morphism, hence constant on
    /// each component of `source ∩ g.target`; it is evaluated at one point
    /// of each.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        if self.target != g.source || self.field != g.field {
            return Err(Error::BarcodeMismatch);
        }
        let components = self.source.intersect(&g.target)?.components();
        let weights = components
            .iter()
            .map(|c| {
                let p = c.first();
                self.field.mul(self.value_at(p), g.value_at(p))
            })
            .collect();
        Ok(Morphism {
            source: self.source.clone(),
            target: g.target.clone(),
            field: self.field,
            components,
            weights,
        })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target || self.field != other.field {
            return Err(Error::BarcodeMismatch);
        }
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| self.field.add(*a, *b))
            .collect();
        Ok(Morphism {
            weights,
            ..self.clone()
        })
    }
}

/// A morphism of interval-decomposable modules `M -> N`, written as the
/// matrix of its interval-module components `f_{I,J}`. Rows and columns are
/// bar indices; absent entries are zero.
#[derive(Debug, Clone)]
pub struct MorphismMatrix {
    field: FieldChar,
    source: Barcode,
    target: Barcode,
    entries: BTreeMap<(usize, usize), Morphism>,
}

impl MorphismMatrix {
    pub fn zero(source: &Barcode, target: &Barcode, field: FieldChar) -> Result<Self> {
        source.check_same_dim(target)?;
        Ok(MorphismMatrix {
            field,
            source: source.clone(),
            target: target.clone(),
            entries: BTreeMap::new(),
        })
    }

    pub fn identity(barcode: &Barcode, field: FieldChar) -> Self {
        let entries = barcode
            .iter()
            .enumerate()
            .map(|(i, bar)| {
                let m = Morphism::from_parts(bar.clone(), bar.clone(), field, vec![bar.clone()], vec![1]);
                ((i, i), m)
            })
            .collect();
        MorphismMatrix {
            field,
            source: barcode.clone(),
            target: barcode.clone(),
            entries,
        }
    }

    /// The `delta`-transition morphism `M -> M(delta)`, diagonal with the
    /// transition of each bar; bars that are `delta`-trivial get a zero
    /// entry.
    pub fn transition(barcode: &Barcode, delta: u64, field: FieldChar) -> Result<Self> {
        let shift = i64::try_from(delta).map_err(|_| Error::Overflow)?;
        let mut out = MorphismMatrix::zero(barcode, &barcode.shift(shift)?, field)?;
        for (i, bar) in barcode.iter().enumerate() {
            let t = Morphism::transition(bar, delta, field)?;
            if !t.is_zero() {
                out.entries.insert((i, i), t);
            }
        }
        Ok(out)
    }

    pub fn field(&self) -> FieldChar {
        self.field
    }

    pub fn source(&self) -> &Barcode {
        &self.source
    }

    pub fn target(&self) -> &Barcode {
        &self.target
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Morphism> {
        self.entries.get(&(i, j))
    }

    /// Nonzero entries in `(row, column)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Morphism)> {
        self.entries.iter().filter(|(_, m)| !m.is_zero())
    }

    /// Single-component scalar of entry `(i, j)`.
    pub fn scalar(&self, i: usize, j: usize) -> Result<Scalar> {
        self.entries.get(&(i, j)).map_or(Ok(0), |m| m.scalar())
    }

    /// Sets entry `(i, j)` after checking it maps bar `i` to bar `j`.
    pub fn set(&mut self, i: usize, j: usize, m: Morphism) -> Result<()> {
        let (Some(src), Some(tgt)) = (self.source.bars().get(i), self.target.bars().get(j)) else {
            return Err(Error::InvalidParameter(format!("no entry ({i}, {j})")));
        };
        if m.source() != src || m.target() != tgt || m.field() != self.field {
            return Err(Error::BarcodeMismatch);
        }
        self.entries.insert((i, j), m);
        Ok(())
    }

    /// Sets entry `(i, j)` to the scalar `omega` on a single-component
    /// intersection.
    pub fn set_scalar(&mut self, i: usize, j: usize, omega: u32) -> Result<()> {
        let (Some(src), Some(tgt)) = (self.source.bars().get(i), self.target.bars().get(j)) else {
            return Err(Error::InvalidParameter(format!("no entry ({i}, {j})")));
        };
        let s = ScalarMorphism::new(src.clone(), tgt.clone(), omega, self.field)?;
        let m = if s.omega == 0 {
            Morphism::zero(src, tgt, self.field)?
        } else {
            Morphism::new(src, tgt, self.field, &[u32::from(s.omega)])?
        };
        self.entries.insert((i, j), m);
        Ok(())
    }

    /// `f(t): M(t) -> N(t)`.
    pub fn shift(&self, t: i64) -> Result<Self> {
        Ok(MorphismMatrix {
            field: self.field,
            source: self.source.shift(t)?,
            target: self.target.shift(t)?,
            entries: self
                .entries
                .iter()
                .map(|(k, m)| Ok((*k, m.shift(t)?)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|m| m.is_zero())
    }
}

impl PartialEq for MorphismMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.source == other.source
            && self.target == other.target
            && self.entries().eq(other.entries())
    }
}

/// `g ∘ f` with `(g ∘ f)_{I,K} = Σ_J g_{J,K} ∘ f_{I,J}` over `F_p`.
pub fn matrix_compose(f: &MorphismMatrix, g: &MorphismMatrix) -> Result<MorphismMatrix> {
    if f.target != g.source || f.field != g.field {
        return Err(Error::BarcodeMismatch);
    }
    let field = f.field;
    let mut out = MorphismMatrix::zero(&f.source, &g.target, field)?;
    let mut by_middle: BTreeMap<usize, Vec<(usize, &Morphism)>> = BTreeMap::new();
    for (&(j, k), gm) in g.entries() {
        by_middle.entry(j).or_default().push((k, gm));
    }
    let mut sums: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
    let mut comps: BTreeMap<(usize, usize), Vec<IntervalSet>> = BTreeMap::new();
    for (&(i, j), fm) in f.entries() {
        let Some(row) = by_middle.get(&j) else { continue };
        for &(k, gm) in row {
            let key = (i, k);
            let components = match comps.get(&key) {
                Some(c) => c,
                None => {
                    let c = f.source[i].intersect(&g.target[k])?.components();
                    comps.entry(key).or_insert(c)
                }
            };
            let acc = sums.entry(key).or_insert_with(|| vec![0; components.len()]);
            for (slot, c) in acc.iter_mut().zip(components) {
                let p = c.first();
                *slot = field.add(*slot, field.mul(fm.value_at(p), gm.value_at(p)));
            }
        }
    }
    for (key, weights) in sums {
        let components = comps.remove(&key).expect("computed alongside");
        let m = Morphism::from_parts(
            f.source[key.0].clone(),
            g.target[key.1].clone(),
            field,
            components,
            weights,
        );
        if !m.is_zero() {
            out.entries.insert(key, m);
        }
    }
    Ok(out)
}
