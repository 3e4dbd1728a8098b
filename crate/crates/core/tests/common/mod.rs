// Test-side oracles and fixtures, independent of the library's shortcuts.
#![allow(dead_code)]

use std::collections::HashMap;

use pmod::interval::window_points;
use pmod::{GridPoint, IntervalSet, PointSet};

pub fn pt(x: i64, y: i64) -> GridPoint {
    GridPoint::from([x, y])
}

pub fn rect(a: (i64, i64), b: (i64, i64)) -> IntervalSet {
    IntervalSet::rect(&pt(a.0, a.1), &pt(b.0, b.1)).unwrap()
}

fn le(p: &GridPoint, q: &GridPoint) -> bool {
    p.coords().iter().zip(q.coords()).all(|(a, b)| a <= b)
}

/// `dim Hom(C(I), C(J))` over `F_2` straight from naturality: one unknown
/// `f_p` per `p ∈ I ∩ J`, one equation `φ_J(p,q) f_p = f_q φ_I(p,q)` per
/// comparable pair `p <= q` in `I ∪ J`, and the answer is the nullity.
pub fn naturality_hom_dimension(i: &IntervalSet, j: &IntervalSet) -> usize {
    let support: Vec<GridPoint> = {
        let mut v: Vec<GridPoint> = i.iter().chain(j.iter()).cloned().collect();
        v.sort();
        v.dedup();
        v
    };
    let vars: HashMap<&GridPoint, usize> = support
        .iter()
        .filter(|p| i.contains(p) && j.contains(p))
        .enumerate()
        .map(|(k, p)| (p, k))
        .collect();
    let n = vars.len();
    let words = n.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for p in &support {
        for q in &support {
            if !le(p, q) {
                continue;
            }
            let mut row = vec![0u64; words];
            let mut flip = |v: Option<&usize>| {
                if let Some(&k) = v {
                    row[k / 64] ^= 1 << (k % 64);
                }
            };
            if j.contains(p) && j.contains(q) {
                flip(vars.get(p));
            }
            if i.contains(p) && i.contains(q) {
                flip(vars.get(q));
            }
            if row.iter().any(|w| *w != 0) {
                rows.push(row);
            }
        }
    }
    n - gf2_rank(rows, n)
}

fn gf2_rank(mut rows: Vec<Vec<u64>>, n: usize) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The validity definition over all pairs.
pub fn valid_by_definition(q: &IntervalSet, i: &IntervalSet, j: &IntervalSet) -> bool {
    q.iter()
        .all(|p| i.iter().all(|x| !le(x, p) || j.contains(x)) && j.iter().all(|r| !le(p, r) || i.contains(r)))
}

/// An L of arm length `n` and width `w` at the origin, and an upper region
/// `{x >= k or y >= k}` of the box `[0, n]²`. Their intersection is the two
/// arm tips, so it has two components when `k > w`.
pub fn hook_and_cap(n: i64, w: i64, k: i64) -> (IntervalSet, IntervalSet) {
    let mut hook: Vec<GridPoint> = rect((0, 0), (w, n)).iter().cloned().collect();
    hook.extend(rect((0, 0), (n, w)).iter().cloned());
    let cap: Vec<GridPoint> = window_points(&pt(0, 0), &pt(n, n))
        .filter(|p| p.coords()[0] >= k || p.coords()[1] >= k)
        .collect();
    (IntervalSet::new(hook).unwrap(), IntervalSet::new(cap).unwrap())
}

/// Pairs of intervals with multi-component intersections: hooks against
/// caps in both directions, with the cap moved along the diagonal.
pub fn multi_component_pairs() -> Vec<(IntervalSet, IntervalSet)> {
    let mut out = Vec::new();
    for n in 3..=6 {
        for w in 0..=1 {
            for k in (w + 2)..=n {
                let (hook, cap) = hook_and_cap(n, w, k);
                for t in -1..=1 {
                    let cap = cap.shift(t).unwrap();
                    if hook.intersect(&cap).unwrap().component_count() > 1 {
                        out.push((hook.clone(), cap.clone()));
                        out.push((cap, hook.clone()));
                    }
                }
            }
        }
    }
    out
}

/// The composition counterexample: `J` a box in the upper left, `I` the part
/// of the window right of a steep line, `K` the part below a shallow line.
/// `I ∩ K` is a wedge in the lower right, outside `J`.
pub fn composition_counterexample() -> (IntervalSet, IntervalSet, IntervalSet) {
    let (lo, hi) = (pt(-6, -4), pt(7, 5));
    let i = IntervalSet::new(window_points(&lo, &hi).filter(|p| {
        let (x, y) = (p.coords()[0], p.coords()[1]);
        45 * x + 17 * y + 14 > 0
    }))
    .unwrap();
    let j = rect((-6, 1), (-1, 5));
    let k = IntervalSet::new(window_points(&lo, &hi).filter(|p| {
        let (x, y) = (p.coords()[0], p.coords()[1]);
        3 * x + 13 * y - 8 < 0
    }))
    .unwrap();
    (i, j, k)
}
