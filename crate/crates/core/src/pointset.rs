// Order-theoretic checks on explicit finite point sets.

use indexmap::IndexSet;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::grid::{box_volume, GridPoint};

/// Point sets are stored sorted lexicographically, with hashed membership.
pub(crate) type Points = IndexSet<GridPoint>;

// Above this many cells the dense convexity sweep falls back to pairwise
// box enumeration.
const DENSE_CELL_LIMIT: u64 = 1 << 24;

const NONE: u32 = u32::MAX;

/// Sorts and deduplicates, checking that all points share one dimension.
pub(crate) fn collect_sorted(points: impl IntoIterator<Item = GridPoint>) -> Result<Points> {
    let mut v: Vec<GridPoint> = points.into_iter().collect();
    if let Some(first) = v.first() {
        let dim = first.dim();
        if let Some(bad) = v.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
    }
    v.sort_unstable();
    v.dedup();
    Ok(v.into_iter().collect())
}

pub(crate) fn bounding_box(points: &Points) -> Option<(GridPoint, GridPoint)> {
    let first = points.first()?;
    let mut lo = first.coords().to_vec();
    let mut hi = lo.clone();
    for p in points {
        for (k, c) in p.coords().iter().enumerate() {
            lo[k] = lo[k].min(*c);
            hi[k] = hi[k].max(*c);
        }
    }
    Some((GridPoint::from(lo), GridPoint::from(hi)))
}

struct DenseBox {
    lo: Vec<i64>,
    sides: Vec<usize>,
    strides: Vec<usize>,
}

impl DenseBox {
    fn new(lo: &GridPoint, hi: &GridPoint) -> Self {
        let lo_v = lo.coords().to_vec();
        let sides: Vec<usize> = lo
            .coords()
            .iter()
            .zip(hi.coords())
            .map(|(a, b)| (b - a + 1) as usize)
            .collect();
        let mut strides = vec![1usize; sides.len()];
        for k in (0..sides.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * sides[k + 1];
        }
        DenseBox {
            lo: lo_v,
            sides,
            strides,
        }
    }

    fn index(&self, p: &GridPoint) -> usize {
        p.coords()
            .iter()
            .zip(&self.lo)
            .zip(&self.strides)
            .map(|((c, l), s)| (c - l) as usize * s)
            .sum()
    }

    fn coord(&self, idx: usize, axis: usize) -> usize {
        (idx / self.strides[axis]) % self.sides[axis]
    }

    fn decode(&self, idx: usize) -> GridPoint {
        GridPoint::new((0..self.sides.len()).map(|k| self.lo[k] + self.coord(idx, k) as i64))
    }
}

/// Returns `(p, q, r)` with `p, q` in the set, `p <= r <= q` and `r` missing,
/// or `None` if the set is poset-convex.
pub(crate) fn convexity_violation(points: &Points) -> Option<(GridPoint, GridPoint, GridPoint)> {
    let (lo, hi) = bounding_box(points)?;
    match box_volume(&lo, &hi) {
        Some(v) if v <= DENSE_CELL_LIMIT => dense_convexity_violation(points, &lo, &hi, v as usize),
        _ => pairwise_convexity_violation(points),
    }
}

// Sweeps the bounding box twice: `up[r]` records some point of the set below
// `r`, `down[r]` some point above. A cell with both but not in the set is a
// violation.
fn dense_convexity_violation(
    points: &Points,
    lo: &GridPoint,
    hi: &GridPoint,
    volume: usize,
) -> Option<(GridPoint, GridPoint, GridPoint)> {
    let grid = DenseBox::new(lo, hi);
    let dim = grid.sides.len();
    let mut member = vec![NONE; volume];
    for (i, p) in points.iter().enumerate() {
        member[grid.index(p)] = i as u32;
    }
    let mut up = vec![NONE; volume];
    for idx in 0..volume {
        if member[idx] != NONE {
            up[idx] = member[idx];
            continue;
        }
        for k in 0..dim {
            if grid.coord(idx, k) > 0 && up[idx - grid.strides[k]] != NONE {
                up[idx] = up[idx - grid.strides[k]];
                break;
            }
        }
    }
    let mut down = vec![NONE; volume];
    for idx in (0..volume).rev() {
        if member[idx] != NONE {
            down[idx] = member[idx];
            continue;
        }
        for k in 0..dim {
            if grid.coord(idx, k) + 1 < grid.sides[k] && down[idx + grid.strides[k]] != NONE {
                down[idx] = down[idx + grid.strides[k]];
                break;
            }
        }
        if up[idx] != NONE && down[idx] != NONE {
            return Some((
                points[up[idx] as usize].clone(),
                points[down[idx] as usize].clone(),
                grid.decode(idx),
            ));
        }
    }
    None
}

fn pairwise_convexity_violation(points: &Points) -> Option<(GridPoint, GridPoint, GridPoint)> {
    for p in points {
        for q in points {
            if p == q || !p.le_unchecked(q) {
                continue;
            }
            if let Some(r) = first_gap_in_box(points, p, q) {
                return Some((p.clone(), q.clone(), r));
            }
        }
    }
    None
}

// Breadth-first search over unit steps from p inside box(p, q), staying in
// the set. The box lies in the set iff every reached point's in-box
// successors are present.
fn first_gap_in_box(points: &Points, p: &GridPoint, q: &GridPoint) -> Option<GridPoint> {
    let mut seen: IndexSet<GridPoint> = IndexSet::new();
    seen.insert(p.clone());
    let mut i = 0;
    while i < seen.len() {
        let r = seen[i].clone();
        i += 1;
        for k in 0..r.dim() {
            if r.coords()[k] < q.coords()[k] {
                let s = r.step(k, 1).expect("bounded by q");
                if !points.contains(&s) {
                    return Some(s);
                }
                seen.insert(s);
            }
        }
    }
    None
}

/// Connected components of the comparability graph, as sorted index lists
/// ordered by their least element. Quadratic in the number of points.
pub(crate) fn comparability_components(points: &Points) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let (p, q) = (&points[i], &points[j]);
            if p.le_unchecked(q) || q.le_unchecked(p) {
                uf.union(i, j);
            }
        }
    }
    group(&mut uf, n)
}

/// Components of a poset-convex set. Two comparable points of a convex set
/// are joined by unit steps inside their box, so unit-step adjacency gives
/// the same partition as comparability.
pub(crate) fn convex_components(points: &Points) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut uf = UnionFind::<usize>::new(n);
    for (i, p) in points.iter().enumerate() {
        for k in 0..p.dim() {
            if let Some(j) = p.step(k, 1).and_then(|s| points.get_index_of(&s)) {
                uf.union(i, j);
            }
        }
    }
    group(&mut uf, n)
}

fn group(uf: &mut UnionFind<usize>, n: usize) -> Vec<Vec<usize>> {
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = uf.find_mut(i);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[[i64; 2]]) -> Points {
        collect_sorted(pts.iter().map(|p| GridPoint::from(*p))).unwrap()
    }

    #[test]
    fn dense_and_pairwise_agree_on_small_sets() {
        let cases: Vec<Points> = vec![
            set(&[[0, 0], [1, 1]]),
            set(&[[0, 0], [0, 1], [1, 0], [1, 1]]),
            set(&[[0, 0], [2, 0]]),
            set(&[[0, 2], [1, 1], [2, 0]]),
            set(&[[0, 0], [0, 1], [1, 1], [1, 2], [2, 2]]),
        ];
        for s in &cases {
            let (lo, hi) = bounding_box(s).unwrap();
            let v = box_volume(&lo, &hi).unwrap() as usize;
            assert_eq!(
                dense_convexity_violation(s, &lo, &hi, v).is_some(),
                pairwise_convexity_violation(s).is_some(),
                "{s:?}"
            );
        }
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let r = collect_sorted(vec![GridPoint::from([0, 0]), GridPoint::from([0, 0, 0])]);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn components_are_ordered_by_least_point() {
        let s = set(&[[5, -5], [0, 0], [0, 1], [5, -4]]);
        let comps = convex_components(&s);
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(comparability_components(&s), comps);
    }
}
