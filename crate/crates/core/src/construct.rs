//! Parametric example modules and seeded random barcodes.
//!
//! # Instability
//!
//! [`instability_instance`] builds two squares of side `a - 1` touching at a
//! corner, `I` above-left and `J` below-right, and their union `K`:
//!
//! ```text
//!   I I I .
//!   I I I .
//!   I I K J J      M = C(I) ⊕ C(J)
//!   . . J J J      N = C(K)
//!   . . J J J
//! ```
//!
//! `M` and `N` are 1-interleaved, but `K` is not close to either square nor
//! to zero, so the Hausdorff distance grows like `a / 2`.
//!
//! # Tightness
//!
//! [`tightness_instance`] rasterizes an open square `I` of side `4 - 2δ`, a
//! hexagon `K` hugging the square's lower-right half and reaching far down
//! and right, and `J = K(1) ∩ K(-1)`. In real units the modules are
//! 1-interleaved while the Hausdorff distance is `2 - δ`.

use num_rational::Rational64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::grid::GridPoint;
use crate::interval::{IntervalSet, PointSet};
use crate::raster::{rasterize_convex_polygon, RationalPoint};

/// Identifier of the random generator: ChaCha8 seeded with
/// `seed_from_u64`, each draw `lo + next_u64() % span`.
pub const GENERATOR_ID: &str = "chacha8-mod";

/// `M = {I, J}`, `N = {K}` with `I = [0,s]×[s,2s]`, `J = [s,2s]×[0,s]`,
/// `K = I ∪ J` and `s = a - 1`.
pub fn instability_instance(a: u64) -> Result<(Barcode, Barcode)> {
    if a == 0 {
        return Err(Error::InvalidParameter("a must be positive".into()));
    }
    let s = i64::try_from(a - 1).map_err(|_| Error::Overflow)?;
    let two_s = s.checked_mul(2).ok_or(Error::Overflow)?;
    let i = IntervalSet::rect(&GridPoint::from([0, s]), &GridPoint::from([s, two_s]))?;
    let j = IntervalSet::rect(&GridPoint::from([s, 0]), &GridPoint::from([two_s, s]))?;
    let k = IntervalSet::new(i.iter().chain(j.iter()).cloned())?;
    Ok((Barcode::new(2, vec![i, j])?, Barcode::new(2, vec![k])?))
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn cross(o: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> Rational64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
fn convex_hull(mut pts: Vec<RationalPoint>) -> Vec<RationalPoint> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<RationalPoint> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        for p in &pts {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= r(0) {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
        if pass == 0 {
            pts.reverse();
        }
    }
    hull
}

/// Vertices of the continuous square and hexagon for a given `δ`, with ray
/// vertices at parameter `lambda` along their rays.
///
/// With `L = 4 - 2δ` the square is `(0, L)²`. The hexagon has the fixed
/// vertices `q = (1, L-1)`, `(1, 1)` and `(L-1, L-1)`; rays leave `(1, 1)`
/// along `(L-2, -2)` and `(L-1, L-1)` along `(2, 2-L)`, and the sixth vertex
/// closes a right angle between the two far ray points; it lies on the line
/// `x + y = L` through `q` and the lower-right corner of the square. The
/// vertices are passed through a convex hull, which only matters at `δ = 1`
/// where three of them coincide.
///
/// For `δ > 1` both rays have positive slope, so the hexagon has edges of
/// positive slope and its rasterization is not poset-convex; building the
/// instance then fails.
pub fn tightness_polygons(delta: Rational64, lambda: Rational64) -> Result<(Vec<RationalPoint>, Vec<RationalPoint>)> {
    if delta <= r(0) || delta >= r(2) {
        return Err(Error::InvalidParameter(format!("delta {delta} outside (0, 2)")));
    }
    if lambda <= r(0) {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    let side = r(4) - r(2) * delta;
    let square = vec![[r(0), r(0)], [side, r(0)], [side, side], [r(0), side]];
    let q = [r(1), side - r(1)];
    let low = [r(1), r(1)];
    let high = [side - r(1), side - r(1)];
    let ray1 = [low[0] + lambda * (side - r(2)), low[1] - lambda * r(2)];
    let ray2 = [high[0] + lambda * r(2), high[1] + lambda * (r(2) - side)];
    let corner = [ray2[0], ray1[1]];
    let hexagon = convex_hull(vec![q, low, ray1, corner, ray2, high]);
    Ok((square, hexagon))
}

/// The tightness example at resolution `scale` with the default ray
/// parameter `4/δ`.
pub fn tightness_instance(delta: Rational64, scale: u64) -> Result<(Barcode, Barcode)> {
    if delta <= r(0) {
        return Err(Error::InvalidParameter(format!("delta {delta} must be positive")));
    }
    tightness_instance_with_rays(delta, scale, r(4) / delta)
}

/// As [`tightness_instance`] with an explicit ray parameter.
///
/// Both polygons are moved left by half a grid cell before rasterizing.
/// Without this the apex of `J`, a sharp wedge pointing up and left, falls
/// on a lattice line and leaves a lone lattice point cut off from the rest
/// of `J`.
pub fn tightness_instance_with_rays(delta: Rational64, scale: u64, lambda: Rational64) -> Result<(Barcode, Barcode)> {
    let (square, hexagon) = tightness_polygons(delta, lambda)?;
    let s = i64::try_from(scale).map_err(|_| Error::Overflow)?;
    let nudge = Rational64::new(1, 2 * s.max(1));
    let moved =
        |poly: Vec<RationalPoint>| -> Vec<RationalPoint> { poly.into_iter().map(|[x, y]| [x - nudge, y]).collect() };
    let i = rasterize_convex_polygon(&moved(square), scale)?;
    let k = rasterize_convex_polygon(&moved(hexagon), scale)?;
    let j = k
        .shift(s)?
        .intersect(&k.shift(-s)?)?
        .into_interval()?
        .ok_or(Error::Empty)?;
    if !i.is_disjoint_from(&j) {
        return Err(Error::InvalidParameter(format!(
            "square and J overlap at scale {scale}; increase the scale"
        )));
    }
    Ok((Barcode::new(2, vec![i, j])?, Barcode::new(2, vec![k])?))
}

fn draw(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    let span = (i128::from(hi) - i128::from(lo) + 1) as u128;
    let offset = u128::from(rng.next_u64()) % span;
    (i128::from(lo) + offset as i128) as i64
}

/// `count` random rectangles in `Z^dim`. Each rectangle draws, per axis, a
/// low corner in `coord_range` and then a side of `0..max_side` extra
/// points, clamped to the range.
pub fn random_rect_barcode(
    dim: usize,
    count: usize,
    coord_range: (i64, i64),
    max_side: u64,
    seed: u64,
) -> Result<Barcode> {
    let (lo, hi) = coord_range;
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if lo > hi || max_side == 0 {
        return Err(Error::InvalidParameter("empty coordinate range or side".into()));
    }
    let extra = i64::try_from(max_side - 1).map_err(|_| Error::Overflow)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bars = Vec::with_capacity(count);
    for _ in 0..count {
        let mut a = Vec::with_capacity(dim);
        let mut b = Vec::with_capacity(dim);
        for _ in 0..dim {
            let x = draw(&mut rng, lo, hi);
            let w = draw(&mut rng, 0, extra);
            a.push(x);
            b.push(x.saturating_add(w).min(hi));
        }
        bars.push(IntervalSet::rect(&GridPoint::from(a), &GridPoint::from(b))?);
    }
    Barcode::new(dim, bars)
}

/// `count` random uppersets truncated to the window `[lo, hi]`, each with
/// `1..=max_generators` generators drawn uniformly from the window.
pub fn random_upperset_barcode(
    count: usize,
    lo: &GridPoint,
    hi: &GridPoint,
    max_generators: u64,
    seed: u64,
) -> Result<Barcode> {
    if !lo.leq(hi)? || max_generators == 0 {
        return Err(Error::InvalidParameter("empty window or generator count".into()));
    }
    let top = i64::try_from(max_generators).map_err(|_| Error::Overflow)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bars = Vec::with_capacity(count);
    for _ in 0..count {
        let g = draw(&mut rng, 1, top);
        let gens: Vec<GridPoint> = (0..g)
            .map(|_| GridPoint::new(lo.coords().iter().zip(hi.coords()).map(|(a, b)| draw(&mut rng, *a, *b))))
            .collect();
        bars.push(IntervalSet::upperset_in_window(&gens, lo, hi)?);
    }
    Barcode::new(lo.dim(), bars)
}
