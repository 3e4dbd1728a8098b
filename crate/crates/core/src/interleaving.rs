//! Interleavings of interval-decomposable modules.
//!
//! Two routes decide whether modules are `ε`-interleaved. For single
//! interval modules there is a geometric criterion ([`pair_interleaved`]);
//! for whole barcodes [`oracle_interleaving_exists`] searches for morphism
//! matrices satisfying both triangle identities. The second is exponential
//! and serves as ground truth for the first.

use rayon::prelude::*;

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::field::{FieldChar, Scalar};
use crate::grid::GridPoint;
use crate::interval::{IntervalSet, PointSet};
use crate::morphism::{hom_exists, matrix_compose, HomBasis, Morphism, MorphismMatrix};

/// An interleaving parameter in grid units.
pub type Epsilon = u64;

/// Default cap on the number of unknown scalars in the oracle.
pub const DEFAULT_BUDGET: usize = 24;

// Largest assignment space the oracle will enumerate.
const MAX_ASSIGNMENTS: u64 = 1 << 32;

fn as_shift(eps: Epsilon) -> Result<i64> {
    i64::try_from(eps).map_err(|_| Error::Overflow)
}

/// The `delta`-transition morphism `M -> M(delta)` as a diagonal matrix.
pub fn transition_scalar_matrix(m: &Barcode, delta: Epsilon, field: FieldChar) -> Result<MorphismMatrix> {
    MorphismMatrix::transition(m, delta, field)
}

/// Is `I` `eps`-trivial, i.e. `I ∩ I(eps) = ∅`?
pub fn is_trivial(i: &IntervalSet, eps: Epsilon) -> bool {
    eps > i.diag_extent()
}

/// Is the pair `(C(I), C(J))` left `eps`-interleaved?
///
/// True iff `I` is `2eps`-trivial, or there are nonzero morphisms
/// `C(I) -> C(J(eps))` and `C(J) -> C(I(eps))` and `∅ ≠ I ∩ I(2eps) ⊆ J(eps)`.
/// The two hom intersections must be intervals or empty.
pub fn left_interleaved(i: &IntervalSet, j: &IntervalSet, eps: Epsilon) -> Result<bool> {
    let two = eps.checked_mul(2).ok_or(Error::Overflow)?;
    if is_trivial(i, two) {
        return Ok(true);
    }
    let t = as_shift(eps)?;
    let (i_eps, j_eps) = (i.shift(t)?, j.shift(t)?);
    let forward = hom_exists(i, &j_eps)?;
    let backward = hom_exists(j, &i_eps)?;
    let core = i.intersect(&i.shift(as_shift(two)?)?)?;
    Ok(forward && backward && !core.is_empty() && core.is_subset_of(&j_eps))
}

/// Are `C(I)` and `C(J)` `eps`-interleaved? `None` stands for the empty
/// interval, i.e. the zero module.
pub fn pair_interleaved(i: Option<&IntervalSet>, j: Option<&IntervalSet>, eps: Epsilon) -> Result<bool> {
    let two = eps.checked_mul(2).ok_or(Error::Overflow)?;
    match (i, j) {
        (None, None) => Ok(true),
        (Some(x), None) | (None, Some(x)) => Ok(is_trivial(x, two)),
        (Some(i), Some(j)) => {
            if i.dim() != j.dim() {
                return Err(Error::DimensionMismatch {
                    expected: i.dim(),
                    found: j.dim(),
                });
            }
            Ok(left_interleaved(i, j, eps)? && left_interleaved(j, i, eps)?)
        }
    }
}

/// Smallest `eps` at which `I` dies: `2eps > diag_extent(I)`.
pub fn death_time(i: &IntervalSet) -> Epsilon {
    (i.diag_extent() + 2) / 2
}

/// Search bound: at `eps = 1 + max death_time` every interval involved is
/// `2eps`-trivial, so the zero morphisms interleave everything.
pub(crate) fn search_bound<'a>(bars: impl IntoIterator<Item = &'a IntervalSet>) -> Epsilon {
    1 + bars.into_iter().map(death_time).max().unwrap_or(0)
}

/// Interleaving distance between two interval modules (or zero modules).
pub fn pair_distance(i: Option<&IntervalSet>, j: Option<&IntervalSet>) -> Result<Epsilon> {
    let bound = search_bound(i.into_iter().chain(j));
    for eps in 0..=bound {
        if pair_interleaved(i, j, eps)? {
            return Ok(eps);
        }
    }
    unreachable!("both intervals are trivial at the search bound")
}

/// Are `C(I)` and `C(J)` `eps`-interleaved, for arbitrary intervals?
///
/// Uses [`pair_interleaved`] when its single-component hypothesis holds and
/// falls back to [`oracle_interleaving_exists`] on the two one-bar barcodes
/// over `F_2` otherwise. Rasterized convex shapes need the fallback: the
/// lattice points of a thin sliver can be disconnected.
pub fn interval_interleaved(i: Option<&IntervalSet>, j: Option<&IntervalSet>, eps: Epsilon) -> Result<bool> {
    match pair_interleaved(i, j, eps) {
        Err(Error::MultiComponent { .. }) => {
            let (i, j) = (i.expect("nonempty"), j.expect("nonempty"));
            let m = Barcode::new(i.dim(), vec![i.clone()])?;
            let n = Barcode::new(j.dim(), vec![j.clone()])?;
            Ok(oracle_interleaving_exists(&m, &n, eps, FieldChar::F2, usize::MAX)?.is_some())
        }
        other => other,
    }
}

/// Interleaving distance of two interval modules via
/// [`interval_interleaved`].
pub fn interval_distance(i: Option<&IntervalSet>, j: Option<&IntervalSet>) -> Result<Epsilon> {
    let bound = search_bound(i.into_iter().chain(j));
    for eps in 0..=bound {
        if interval_interleaved(i, j, eps)? {
            return Ok(eps);
        }
    }
    unreachable!("both intervals are trivial at the search bound")
}

/// A pair `f: M -> N(eps)`, `g: N -> M(eps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterleavingPair {
    pub f: MorphismMatrix,
    pub g: MorphismMatrix,
    pub eps: Epsilon,
}

impl InterleavingPair {
    /// Checks `g(eps) ∘ f = φ^{2eps}_M` and `f(eps) ∘ g = φ^{2eps}_N`.
    pub fn verify(&self) -> Result<bool> {
        let t = as_shift(self.eps)?;
        let two = self.eps.checked_mul(2).ok_or(Error::Overflow)?;
        let field = self.f.field();
        let left = matrix_compose(&self.f, &self.g.shift(t)?)?;
        let right = matrix_compose(&self.g, &self.f.shift(t)?)?;
        Ok(left == MorphismMatrix::transition(self.f.source(), two, field)?
            && right == MorphismMatrix::transition(self.g.source(), two, field)?)
    }
}

// One block of unknowns: the entry (row, col) of f or g, with a variable
// per valid component of its intersection.
struct Block {
    row: usize,
    col: usize,
    basis: HomBasis,
    vars: Vec<Option<usize>>,
}

impl Block {
    fn var_at(&self, p: &GridPoint) -> Option<usize> {
        self.basis.component_of(p).and_then(|c| self.vars[c])
    }
}

// Sum over terms of f[a] * g[b] equals rhs.
struct Equation {
    terms: Vec<(usize, usize)>,
    rhs: Scalar,
}

struct System {
    f_blocks: Vec<Block>,
    g_blocks: Vec<Block>,
    nf: usize,
    ng: usize,
    equations: Vec<Equation>,
}

fn blocks(src: &Barcode, tgt_shifted: &Barcode, first_var: usize) -> Result<(Vec<Block>, usize)> {
    let mut next = first_var;
    let mut out = Vec::with_capacity(src.len() * tgt_shifted.len());
    for (row, a) in src.iter().enumerate() {
        for (col, b) in tgt_shifted.iter().enumerate() {
            let basis = HomBasis::new(a, b)?;
            let vars = basis
                .valid
                .iter()
                .map(|v| {
                    v.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            out.push(Block { row, col, basis, vars });
        }
    }
    Ok((out, next - first_var))
}

impl System {
    fn new(m: &Barcode, n: &Barcode, eps: Epsilon) -> Result<Self> {
        let t = as_shift(eps)?;
        let two = as_shift(eps.checked_mul(2).ok_or(Error::Overflow)?)?;
        let (f_blocks, nf) = blocks(m, &n.shift(t)?, 0)?;
        let (g_blocks, ng) = blocks(n, &m.shift(t)?, 0)?;
        let f_at = |i: usize, j: usize| &f_blocks[i * n.len() + j];
        let g_at = |j: usize, i: usize| &g_blocks[j * m.len() + i];
        let mut equations = Vec::new();
        // g(eps) ∘ f = φ^{2eps}_M, one equation per component of each entry;
        // g(eps) at r is g at r + eps.
        for (i, a) in m.iter().enumerate() {
            for (k, c) in m.iter().enumerate() {
                for comp in a.intersect(&c.shift(two)?)?.components() {
                    let r = comp.first();
                    let r_up = r.flow(t)?;
                    let terms = (0..n.len())
                        .filter_map(|j| Some((f_at(i, j).var_at(r)?, g_at(j, k).var_at(&r_up)?)))
                        .collect();
                    equations.push(Equation {
                        terms,
                        rhs: Scalar::from(i == k),
                    });
                }
            }
        }
        for (j, a) in n.iter().enumerate() {
            for (l, c) in n.iter().enumerate() {
                for comp in a.intersect(&c.shift(two)?)?.components() {
                    let r = comp.first();
                    let r_up = r.flow(t)?;
                    let terms = (0..m.len())
                        .filter_map(|i| Some((f_at(i, l).var_at(&r_up)?, g_at(j, i).var_at(r)?)))
                        .collect();
                    equations.push(Equation {
                        terms,
                        rhs: Scalar::from(j == l),
                    });
                }
            }
        }
        Ok(System {
            f_blocks,
            g_blocks,
            nf,
            ng,
            equations,
        })
    }

    // With the f unknowns fixed (or the g unknowns, if `fixed_is_f` is
    // false), the system is linear in the rest. Returns a solution with
    // free variables set to zero.
    fn solve_rest(&self, fixed: &[Scalar], fixed_is_f: bool, field: FieldChar) -> Option<Vec<Scalar>> {
        let unknowns = if fixed_is_f { self.ng } else { self.nf };
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.equations.len());
        for eq in &self.equations {
            let mut row = vec![0; unknowns + 1];
            for &(fv, gv) in &eq.terms {
                let (known, unknown) = if fixed_is_f { (fv, gv) } else { (gv, fv) };
                row[unknown] = field.add(row[unknown], fixed[known]);
            }
            row[unknowns] = eq.rhs;
            rows.push(row);
        }
        gaussian_solve(rows, unknowns, field)
    }
}

// Solves the augmented system over F_p; free variables are zero.
fn gaussian_solve(mut rows: Vec<Vec<Scalar>>, n: usize, field: FieldChar) -> Option<Vec<Scalar>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let factor = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, *y));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut x = vec![0; n];
    for (i, col) in pivots.into_iter().enumerate() {
        x[col] = rows[i][n];
    }
    Some(x)
}

fn assemble(
    src: &Barcode,
    tgt: &Barcode,
    blocks: &[Block],
    values: &[Scalar],
    field: FieldChar,
) -> Result<MorphismMatrix> {
    let mut out = MorphismMatrix::zero(src, tgt, field)?;
    for b in blocks {
        let weights: Vec<Scalar> = b.vars.iter().map(|v| v.map_or(0, |v| values[v])).collect();
        if weights.iter().any(|w| *w != 0) {
            let m = Morphism::from_parts(
                src[b.row].clone(),
                tgt[b.col].clone(),
                field,
                b.basis.components.clone(),
                weights,
            );
            out.set(b.row, b.col, m)?;
        }
    }
    Ok(out)
}

/// Searches for an `eps`-interleaving between `M` and `N` over `F_p`.
///
/// Unknowns are the scalars of `f: M -> N(eps)` and `g: N -> M(eps)` on
/// valid components, ordered by (source bar, target bar, component). The
/// triangle identities are bilinear: the smaller side is enumerated in
/// odometer order and the other side solved by elimination, so the witness
/// returned is the first one in that order whatever the thread count.
///
/// Fails with [`Error::BudgetExceeded`] when there are more than `budget`
/// unknowns.
pub fn oracle_interleaving_exists(
    m: &Barcode,
    n: &Barcode,
    eps: Epsilon,
    field: FieldChar,
    budget: usize,
) -> Result<Option<InterleavingPair>> {
    m.check_same_dim(n)?;
    let sys = System::new(m, n, eps)?;
    let needed = sys.nf + sys.ng;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if sys.equations.iter().any(|e| e.terms.is_empty() && e.rhs != 0) {
        return Ok(None);
    }
    let fixed_is_f = sys.nf <= sys.ng;
    let k = sys.nf.min(sys.ng);
    let p = u64::from(field.p());
    let total = u32::try_from(k)
        .ok()
        .and_then(|k| p.checked_pow(k))
        .filter(|t| *t <= MAX_ASSIGNMENTS)
        .ok_or(Error::BudgetExceeded { needed, budget })?;
    let found = (0..total).into_par_iter().find_map_first(|code| {
        // first unknown is the most significant digit
        let mut fixed = vec![0; k];
        let mut c = code;
        for slot in fixed.iter_mut().rev() {
            *slot = (c % p) as Scalar;
            c /= p;
        }
        let rest = sys.solve_rest(&fixed, fixed_is_f, field)?;
        Some(if fixed_is_f { (fixed, rest) } else { (rest, fixed) })
    });
    let Some((fv, gv)) = found else {
        return Ok(None);
    };
    let t = as_shift(eps)?;
    let f = assemble(m, &n.shift(t)?, &sys.f_blocks, &fv, field)?;
    let g = assemble(n, &m.shift(t)?, &sys.g_blocks, &gv, field)?;
    Ok(Some(InterleavingPair { f, g, eps }))
}

/// Module-level interleaving distance by exhaustive search, scanning `eps`
/// upward from 0 to the search bound.
pub fn oracle_module_distance(m: &Barcode, n: &Barcode, field: FieldChar, budget: usize) -> Result<Epsilon> {
    let bound = search_bound(m.iter().chain(n.iter()));
    for eps in 0..=bound {
        if oracle_interleaving_exists(m, n, eps, field, budget)?.is_some() {
            return Ok(eps);
        }
    }
    unreachable!("zero morphisms interleave at the search bound")
}
