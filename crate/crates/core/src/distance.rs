//! Hausdorff and bottleneck distances between barcodes, and the check that
//! the Hausdorff distance is at most twice the interleaving distance.
//!
//! Both barcode distances are built from pairwise interval distances,
//! including the distance of each bar to the zero module, computed by
//! [`interval_distance`]. Interleavings compose with transition morphisms,
//! so two bars are `ε`-interleaved exactly when their distance is at most
//! `ε`.

use std::fmt;

use rayon::prelude::*;

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::field::FieldChar;
#[cfg(test)]
use crate::interleaving::pair_distance;
use crate::interleaving::{interval_distance, interval_interleaved, oracle_module_distance, Epsilon};
use crate::interval::{flow_closure_violation, IntervalSet};

/// Pairwise interval distances between two barcodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    /// `pairs[i][j] = interval_distance(M_i, N_j)`.
    pub pairs: Vec<Vec<Epsilon>>,
    /// Distance of each bar of `M` to the zero module.
    pub left_to_zero: Vec<Epsilon>,
    /// Distance of each bar of `N` to the zero module.
    pub right_to_zero: Vec<Epsilon>,
}

impl DistanceTable {
    pub fn new(m: &Barcode, n: &Barcode) -> Result<Self> {
        m.check_same_dim(n)?;
        let pairs = m
            .bars()
            .par_iter()
            .map(|a| {
                n.iter()
                    .map(|b| interval_distance(Some(a), Some(b)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let to_zero = |b: &Barcode| {
            b.bars()
                .par_iter()
                .map(|x| interval_distance(Some(x), None))
                .collect::<Result<Vec<_>>>()
        };
        Ok(DistanceTable {
            pairs,
            left_to_zero: to_zero(m)?,
            right_to_zero: to_zero(n)?,
        })
    }

    fn hausdorff(&self) -> Epsilon {
        let rows = self
            .left_to_zero
            .iter()
            .enumerate()
            .map(|(i, dz)| self.pairs[i].iter().copied().min().map_or(*dz, |d| d.min(*dz)));
        let cols = self
            .right_to_zero
            .iter()
            .enumerate()
            .map(|(j, dz)| self.pairs.iter().map(|row| row[j]).min().map_or(*dz, |d| d.min(*dz)));
        rows.chain(cols).max().unwrap_or(0)
    }

    fn bound(&self) -> Epsilon {
        self.left_to_zero
            .iter()
            .chain(&self.right_to_zero)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// An `eps`-correspondence: every listed pair is `eps`-interleaved and every
/// index not listed is `eps`-interleaved with the zero module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pub pairs: Vec<(usize, usize)>,
    pub eps: Epsilon,
}

/// A correspondence in which each index occurs at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub eps: Epsilon,
}

fn check_pairs(m: &Barcode, n: &Barcode, pairs: &[(usize, usize)], eps: Epsilon) -> Result<bool> {
    let mut left = vec![false; m.len()];
    let mut right = vec![false; n.len()];
    for &(i, j) in pairs {
        if i >= m.len() || j >= n.len() || !interval_interleaved(Some(&m[i]), Some(&n[j]), eps)? {
            return Ok(false);
        }
        left[i] = true;
        right[j] = true;
    }
    for (i, used) in left.iter().enumerate() {
        if !used && !interval_interleaved(Some(&m[i]), None, eps)? {
            return Ok(false);
        }
    }
    for (j, used) in right.iter().enumerate() {
        if !used && !interval_interleaved(None, Some(&n[j]), eps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Correspondence {
    pub fn verify(&self, m: &Barcode, n: &Barcode) -> Result<bool> {
        check_pairs(m, n, &self.pairs, self.eps)
    }
}

impl Matching {
    pub fn verify(&self, m: &Barcode, n: &Barcode) -> Result<bool> {
        let mut seen_left = std::collections::HashSet::new();
        let mut seen_right = std::collections::HashSet::new();
        let injective = self
            .pairs
            .iter()
            .all(|(i, j)| seen_left.insert(*i) && seen_right.insert(*j));
        Ok(injective && check_pairs(m, n, &self.pairs, self.eps)?)
    }
}

/// Hausdorff distance with a witnessing correspondence.
pub fn hausdorff_with_witness(m: &Barcode, n: &Barcode) -> Result<(Epsilon, Correspondence)> {
    let table = DistanceTable::new(m, n)?;
    let eps = table.hausdorff();
    let pairs = (0..m.len())
        .flat_map(|i| (0..n.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| table.pairs[i][j] <= eps)
        .collect();
    Ok((eps, Correspondence { pairs, eps }))
}

/// Smallest `eps` admitting an `eps`-correspondence.
pub fn hausdorff(m: &Barcode, n: &Barcode) -> Result<Epsilon> {
    Ok(DistanceTable::new(m, n)?.hausdorff())
}

// Perfect matching on the padded graph: left side is M followed by one
// slack vertex per bar of N, right side is N followed by one slack vertex
// per bar of M. Bar i of M may take its own slack iff it can die within
// eps, symmetrically for N, and slack vertices match each other freely.
fn matching_at(table: &DistanceTable, eps: Epsilon) -> Option<Vec<(usize, usize)>> {
    let (m, n) = (table.left_to_zero.len(), table.right_to_zero.len());
    let size = m + n;
    let adjacent = |u: usize, v: usize| -> bool {
        match (u < m, v < n) {
            (true, true) => table.pairs[u][v] <= eps,
            (true, false) => v - n == u && table.left_to_zero[u] <= eps,
            (false, true) => u - m == v && table.right_to_zero[v] <= eps,
            (false, false) => true,
        }
    };
    let mut owner: Vec<Option<usize>> = vec![None; size];
    fn augment(
        u: usize,
        size: usize,
        adjacent: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for v in 0..size {
            if seen[v] || !adjacent(u, v) {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, size, adjacent, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..size {
        let mut seen = vec![false; size];
        if !augment(u, size, &adjacent, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut pairs: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(v, u)| {
            let u = u.expect("perfect matching");
            (u < m && v < n).then_some((u, v))
        })
        .collect();
    pairs.sort_unstable();
    Some(pairs)
}

/// Bottleneck distance with a witnessing matching.
pub fn bottleneck_with_witness(m: &Barcode, n: &Barcode) -> Result<(Epsilon, Matching)> {
    let table = DistanceTable::new(m, n)?;
    // at this eps every bar may be dropped
    for eps in 0..=table.bound() {
        if let Some(pairs) = matching_at(&table, eps) {
            return Ok((eps, Matching { pairs, eps }));
        }
    }
    unreachable!("all bars are droppable at the bound")
}

/// Smallest `eps` admitting an `eps`-matching.
pub fn bottleneck(m: &Barcode, n: &Barcode) -> Result<Epsilon> {
    Ok(bottleneck_with_witness(m, n)?.0)
}

/// Both barcode distances; the Hausdorff distance never exceeds the
/// bottleneck distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BarcodeDistances {
    pub hausdorff: Epsilon,
    pub bottleneck: Epsilon,
}

impl BarcodeDistances {
    pub fn holds(&self) -> bool {
        self.hausdorff <= self.bottleneck
    }
}

pub fn check_hausdorff_le_bottleneck(m: &Barcode, n: &Barcode) -> Result<BarcodeDistances> {
    let table = DistanceTable::new(m, n)?;
    let bottleneck = (0..=table.bound())
        .find(|eps| matching_at(&table, *eps).is_some())
        .expect("all bars are droppable at the bound");
    Ok(BarcodeDistances {
        hausdorff: table.hausdorff(),
        bottleneck,
    })
}

/// What is known about the module interleaving distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterleavingBound {
    Exact(Epsilon),
    /// The oracle was over budget; `lower <= d_I <= upper`.
    Bracket {
        lower: Epsilon,
        upper: Epsilon,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    /// The bound fails, but two shifted bars meet in several components,
    /// so the inputs are outside the bound's hypothesis.
    NotClosed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::NotClosed => "NOT-CLOSED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityReport {
    pub hausdorff: Epsilon,
    pub interleaving: InterleavingBound,
    pub verdict: Verdict,
    /// No two shifted bars of `M ⊕ N` meet in several components.
    pub flow_closed: bool,
}

impl StabilityReport {
    /// `d_H / d_I` with `0/0 = 0`; `None` if only a bracket is known or
    /// `d_I = 0 < d_H`.
    pub fn ratio(&self) -> Option<f64> {
        match self.interleaving {
            InterleavingBound::Exact(0) if self.hausdorff == 0 => Some(0.0),
            InterleavingBound::Exact(0) => None,
            InterleavingBound::Exact(d) => Some(self.hausdorff as f64 / d as f64),
            InterleavingBound::Bracket { .. } => None,
        }
    }
}

/// Checks `d_H(M, N) <= 2 d_I(M, N)` with `d_I` from the exhaustive oracle.
///
/// Over budget, `d_I` is only known to lie in `[0, bottleneck]`. The check
/// then passes if `d_H = 0`, fails if `d_H > 2 · bottleneck`, and is
/// inconclusive otherwise. A failure on bars that are not closed under
/// shifted intersection (see [`flow_closure_violation`]) is reported as
/// [`Verdict::NotClosed`] instead of [`Verdict::Fail`].
pub fn verify_stability(m: &Barcode, n: &Barcode, field: FieldChar, budget: usize) -> Result<StabilityReport> {
    let table = DistanceTable::new(m, n)?;
    let h = table.hausdorff();
    let (interleaving, exceeded) = match oracle_module_distance(m, n, field, budget) {
        Ok(d) => (InterleavingBound::Exact(d), h > 2 * d),
        Err(Error::BudgetExceeded { .. }) => {
            let upper = (0..=table.bound())
                .find(|eps| matching_at(&table, *eps).is_some())
                .expect("all bars are droppable at the bound");
            (InterleavingBound::Bracket { lower: 0, upper }, h > 2 * upper)
        }
        Err(e) => return Err(e),
    };
    let bars: Vec<IntervalSet> = m.iter().chain(n.iter()).cloned().collect();
    let flow_closed = flow_closure_violation(&bars)?.is_none();
    let verdict = match interleaving {
        _ if exceeded && !flow_closed => Verdict::NotClosed,
        _ if exceeded => Verdict::Fail,
        InterleavingBound::Bracket { .. } if h > 0 => Verdict::Inconclusive,
        _ => Verdict::Pass,
    };
    Ok(StabilityReport {
        hausdorff: h,
        interleaving,
        verdict,
        flow_closed,
    })
}
