//! Rasterisation of convex polygons with rational vertices onto `Z^2`.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::grid::GridPoint;
use crate::interval::IntervalSet;

/// A vertex with exact rational coordinates.
pub type RationalPoint = [Rational64; 2];

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> i128 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Integer points strictly inside the polygon after scaling by `scale`.
///
/// The polygon must be convex with nonempty interior; vertices may be given
/// in either orientation and collinear vertices are allowed. The result is
/// validated as an interval, so a rasterisation that comes out empty,
/// non-convex or disconnected is an error and the caller should try a finer
/// scale.
pub fn rasterize_convex_polygon(vertices: &[RationalPoint], scale: u64) -> Result<IntervalSet> {
    if scale == 0 {
        return Err(Error::InvalidParameter("scale must be positive".into()));
    }
    let scale = i128::from(scale);
    // Clear denominators: every coordinate becomes an integer multiple of
    // 1/denom, and all tests run on `denom`-scaled integers.
    let denom = vertices.iter().flat_map(|v| v.iter()).fold(1i128, |acc, c| {
        let d = i128::from(*c.denom());
        acc / gcd(acc, d) * d
    });
    let mut poly: Vec<(i128, i128)> = Vec::with_capacity(vertices.len());
    for v in vertices {
        let conv = |c: &Rational64| i128::from(*c.numer()) * (denom / i128::from(*c.denom())) * scale;
        let p = (conv(&v[0]), conv(&v[1]));
        if poly.last() != Some(&p) {
            poly.push(p);
        }
    }
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    if poly.len() < 3 {
        return Err(Error::InvalidPolygon("fewer than three distinct vertices".into()));
    }
    let n = poly.len();
    let twice_area: i128 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum();
    if twice_area == 0 {
        return Err(Error::InvalidPolygon("empty interior".into()));
    }
    let orient = twice_area.signum();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if poly.iter().any(|&v| cross(a, b, v) * orient < 0) {
            return Err(Error::InvalidPolygon("not convex".into()));
        }
    }

    let floor_div = |a: i128| a.div_euclid(denom);
    let ceil_div = |a: i128| -((-a).div_euclid(denom));
    let (min_x, max_x) = (
        floor_div(poly.iter().map(|v| v.0).min().unwrap()),
        ceil_div(poly.iter().map(|v| v.0).max().unwrap()),
    );
    let (min_y, max_y) = (
        floor_div(poly.iter().map(|v| v.1).min().unwrap()),
        ceil_div(poly.iter().map(|v| v.1).max().unwrap()),
    );
    let to_i64 = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow);
    let mut inside = Vec::new();
    for x in min_x..=max_x {
        for y in min_y..=max_y {
            let p = (x * denom, y * denom);
            let strictly_inside = (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) * orient > 0);
            if strictly_inside {
                inside.push(GridPoint::from([to_i64(x)?, to_i64(y)?]));
            }
        }
    }
    IntervalSet::new(inside)
}

/// Shorthand for building rational vertices from integer pairs.
pub fn rational_point(x: (i64, i64), y: (i64, i64)) -> RationalPoint {
    [Rational64::new(x.0, x.1), Rational64::new(y.0, y.1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::PointSet;

    fn int_poly(v: &[(i64, i64)]) -> Vec<RationalPoint> {
        v.iter().map(|&(x, y)| rational_point((x, 1), (y, 1))).collect()
    }

    fn rect(a: (i64, i64), b: (i64, i64)) -> IntervalSet {
        IntervalSet::rect(&GridPoint::from([a.0, a.1]), &GridPoint::from([b.0, b.1])).unwrap()
    }

    // Oracle: enumerate a generous window and keep points strictly inside
    // the unit square scaled by `s`.
    fn square_oracle(s: i64) -> Vec<GridPoint> {
        let mut v = Vec::new();
        for x in -2..=s + 2 {
            for y in -2..=s + 2 {
                if 0 < x && x < s && 0 < y && y < s {
                    v.push(GridPoint::from([x, y]));
                }
            }
        }
        v
    }

    #[test]
    fn unit_square() {
        let sq = int_poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let r4 = rasterize_convex_polygon(&sq, 4).unwrap();
        assert_eq!(r4, rect((1, 1), (3, 3)));
        assert_eq!(r4, IntervalSet::new(square_oracle(4)).unwrap());
        let r3 = rasterize_convex_polygon(&sq, 3).unwrap();
        assert_eq!(r3, rect((1, 1), (2, 2)));
        // clockwise input gives the same set
        let cw: Vec<_> = sq.iter().rev().cloned().collect();
        assert_eq!(rasterize_convex_polygon(&cw, 4).unwrap(), r4);
    }

    #[test]
    fn small_triangle_is_empty() {
        let tri = int_poly(&[(0, 0), (1, 0), (0, 1)]);
        // the only candidate (1,1)·(1/2) lies on the hypotenuse
        assert_eq!(rasterize_convex_polygon(&tri, 2), Err(Error::Empty));
        assert_eq!(rasterize_convex_polygon(&tri, 3).unwrap().len(), 1);
    }

    #[test]
    fn rational_vertices() {
        let half = [
            rational_point((1, 2), (1, 2)),
            rational_point((7, 2), (1, 2)),
            rational_point((7, 2), (5, 2)),
            rational_point((1, 2), (5, 2)),
        ];
        let r = rasterize_convex_polygon(&half, 1).unwrap();
        assert_eq!(r, rect((1, 1), (3, 2)));
    }

    #[test]
    fn rejects_bad_polygons() {
        assert!(matches!(
            rasterize_convex_polygon(&int_poly(&[(0, 0), (1, 1), (2, 2)]), 4),
            Err(Error::InvalidPolygon(_))
        ));
        assert!(matches!(
            rasterize_convex_polygon(&int_poly(&[(0, 0), (4, 0), (1, 1), (0, 4)]), 4),
            Err(Error::InvalidPolygon(_))
        ));
        // pentagram: every turn has the same sign but it winds twice
        let star = int_poly(&[(0, 10), (6, -8), (-10, 3), (10, 3), (-6, -8)]);
        assert!(matches!(
            rasterize_convex_polygon(&star, 1),
            Err(Error::InvalidPolygon(_))
        ));
        assert!(matches!(
            rasterize_convex_polygon(&int_poly(&[(0, 0), (1, 0), (0, 1)]), 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn collinear_vertices_are_allowed() {
        let sq = int_poly(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)]);
        let r = rasterize_convex_polygon(&sq, 1).unwrap();
        assert_eq!(r.points().len(), 1);
    }
}
