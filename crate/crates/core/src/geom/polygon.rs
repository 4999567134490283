use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{AffineMap, Point2, Vec2};
use crate::error::{Error, Result};

/// Relative tolerance for merging coincident vertices.
const DUP_TOL: f64 = 1e-12;
/// Relative tolerance (on the turn cross product) for collapsing collinear runs.
const COLLINEAR_TOL: f64 = 1e-14;
/// Relative reflex turn accepted as rounding noise rather than non-convexity.
const REFLEX_TOL: f64 = 1e-9;

/// A strictly convex polygon with counterclockwise vertices.
///
/// Construction canonicalizes: duplicate vertices are merged, collinear runs
/// collapsed, and clockwise input reversed. Slightly reflex turns within
/// rounding noise are removed by taking the hull; anything worse is rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    diameter: f64,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Vec2>,
}

impl TryFrom<PolygonRepr> for ConvexPolygon {
    type Error = Error;
    fn try_from(r: PolygonRepr) -> Result<Self> {
        ConvexPolygon::new(r.vertices)
    }
}

impl From<ConvexPolygon> for PolygonRepr {
    fn from(p: ConvexPolygon) -> Self {
        PolygonRepr { vertices: p.vertices }
    }
}

fn bbox_diag(pts: &[Point2]) -> f64 {
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in pts {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi - lo).norm()
}

fn signed_area2(pts: &[Point2]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum()
}

fn dedup_cyclic(pts: &mut Vec<Point2>, tol: f64) {
    pts.dedup_by(|a, b| a.distance(*b) <= tol);
    while pts.len() > 1 && pts[0].distance(pts[pts.len() - 1]) <= tol {
        pts.pop();
    }
}

/// Turn cross products `(v_i - v_{i-1}) × (v_{i+1} - v_i)` at every vertex.
fn turns(pts: &[Point2]) -> Vec<f64> {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            (b - a).cross(c - b)
        })
        .collect()
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices);
        }
        let scale = bbox_diag(&vertices);
        if scale == 0.0 {
            return Err(Error::TooFewVertices);
        }
        let mut pts = vertices;
        dedup_cyclic(&mut pts, DUP_TOL * scale);
        if pts.len() < 3 {
            return Err(Error::TooFewVertices);
        }
        let area2 = signed_area2(&pts);
        if area2.abs() <= COLLINEAR_TOL * scale * scale {
            return Err(Error::TooFewVertices);
        }
        if area2 < 0.0 {
            pts.reverse();
        }
        let t = turns(&pts);
        let worst = t.iter().cloned().fold(f64::INFINITY, f64::min);
        if worst < -REFLEX_TOL * scale * scale {
            return Err(Error::NonConvex {
                defect: -worst / (scale * scale),
            });
        }
        // A locally convex closed polygon that winds more than once is not simple.
        let n = pts.len();
        let winding: f64 = (0..n)
            .map(|i| {
                let a = pts[(i + n - 1) % n];
                let b = pts[i];
                let c = pts[(i + 1) % n];
                let (e0, e1) = (b - a, c - b);
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .sum();
        if (winding - TAU).abs() > 1e-6 {
            return Err(Error::NonConvex { defect: winding / TAU - 1.0 });
        }
        if worst < 0.0 {
            pts = monotone_chain(pts);
        }
        collapse_collinear(&mut pts, COLLINEAR_TOL * scale * scale);
        if pts.len() < 3 {
            return Err(Error::TooFewVertices);
        }
        let diameter = diameter_of(&pts);
        Ok(ConvexPolygon {
            vertices: pts,
            diameter,
        })
    }

    /// Convex hull of an arbitrary point set.
    pub fn hull(points: &[Point2]) -> Result<Self> {
        if points.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Self::new(monotone_chain(points.to_vec()))
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edges as `(start, end)` pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Largest vertex-to-vertex distance.
    #[inline]
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn area(&self) -> f64 {
        0.5 * signed_area2(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        let mut c = Vec2::ZERO;
        let mut a = 0.0;
        let o = self.vertices[0];
        for i in 1..n - 1 {
            let (p, q) = (self.vertices[i] - o, self.vertices[i + 1] - o);
            let w = p.cross(q);
            c += (p + q) * w;
            a += w;
        }
        o + c / (3.0 * a)
    }

    /// `(max_v n·v, witness)`; ties go to the lowest vertex index.
    pub fn support(&self, n: Vec2) -> (f64, Point2) {
        let i = self.support_index(n);
        (n.dot(self.vertices[i]), self.vertices[i])
    }

    pub fn support_index(&self, n: Vec2) -> usize {
        let mut best = 0;
        let mut val = n.dot(self.vertices[0]);
        for (i, v) in self.vertices.iter().enumerate().skip(1) {
            let d = n.dot(*v);
            if d > val {
                val = d;
                best = i;
            }
        }
        best
    }

    /// `support(n) + support(-n)`.
    pub fn width(&self, n: Vec2) -> f64 {
        let (lo, hi) = self.extent(n);
        hi - lo
    }

    /// `(min_v n·v, max_v n·v)`.
    pub fn extent(&self, n: Vec2) -> (f64, f64) {
        self.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let d = n.dot(*v);
            (lo.min(d), hi.max(d))
        })
    }

    pub fn translated(&self, t: Vec2) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
            diameter: self.diameter,
        }
    }

    /// Image under an invertible affine map (orientation restored if flipped).
    pub fn transformed(&self, map: &AffineMap) -> Result<ConvexPolygon> {
        ConvexPolygon::new(self.vertices.iter().map(|&v| map.apply(v)).collect())
    }

    /// `-K`, the point reflection through the origin.
    pub fn reflected(&self) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| -v).collect(),
            diameter: self.diameter,
        }
    }

    /// Half-plane signed distance: the maximum over edges of the outward
    /// distance to the edge line. Exact (negated boundary distance) inside;
    /// a lower bound on the Euclidean distance outside.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                Vec2::new(e.y, -e.x).dot(p - a) / e.norm()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// True iff `p` is within signed distance `tol` of the polygon; negative
    /// `tol` demands strict interior.
    pub fn contains_point(&self, p: Point2, tol: f64) -> bool {
        let n = self.vertices.len();
        let v0 = self.vertices[0];
        let q = p - v0;
        // fan location: O(log n), with the exact test only near edges
        let first = (self.vertices[1] - v0).cross(q);
        let last = (self.vertices[n - 1] - v0).cross(q);
        if tol >= 0.0 && first >= 0.0 && last <= 0.0 {
            let (mut lo, mut hi) = (1, n - 1);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if (self.vertices[mid] - v0).cross(q) >= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let (a, b) = (self.vertices[lo], self.vertices[hi]);
            let e = b - a;
            let d = Vec2::new(e.y, -e.x).dot(p - a) / e.norm();
            if d < -tol {
                return true;
            }
            if d > tol {
                return false;
            }
        }
        self.signed_distance(p) <= tol
    }

    /// All vertices of `inner` pass `contains_point(·, tol)`.
    pub fn contains_polygon(&self, inner: &ConvexPolygon, tol: f64) -> bool {
        inner.vertices.iter().all(|&v| self.contains_point(v, tol))
    }

    /// Minkowski sum by merging edge sequences sorted by angle.
    pub fn minkowski_sum(&self, other: &ConvexPolygon) -> ConvexPolygon {
        let a = rotate_to_lowest(&self.vertices);
        let b = rotate_to_lowest(&other.vertices);
        let (n, m) = (a.len(), b.len());
        let mut out = Vec::with_capacity(n + m);
        let (mut i, mut j) = (0, 0);
        while i < n || j < m {
            out.push(a[i % n] + b[j % m]);
            let ea = a[(i + 1) % n] - a[i % n];
            let eb = b[(j + 1) % m] - b[j % m];
            let c = if i >= n {
                -1.0
            } else if j >= m {
                1.0
            } else {
                ea.cross(eb)
            };
            if c >= 0.0 && i < n {
                i += 1;
            }
            if c <= 0.0 && j < m {
                j += 1;
            }
        }
        ConvexPolygon::new(out).expect("Minkowski sum of convex polygons is convex")
    }

    /// `K ⊕ (−K)`; `K + x` meets `K + y` iff `x − y` lies in it.
    pub fn difference_body(&self) -> ConvexPolygon {
        self.minkowski_sum(&self.reflected())
    }

    /// Intersection with the half-plane `n·x <= c`; `None` if that is empty
    /// or degenerate.
    pub fn clip_halfplane(&self, n: Vec2, c: f64) -> Option<ConvexPolygon> {
        let pts = clip_points(&self.vertices, n, c);
        ConvexPolygon::new(pts).ok()
    }

    /// Separating-axis intersection test with a signed-distance tolerance.
    pub fn intersects(&self, other: &ConvexPolygon, tol: f64) -> bool {
        for poly in [self, other] {
            for (a, b) in poly.edges() {
                let e = b - a;
                let n = Vec2::new(e.y, -e.x) / e.norm();
                let (alo, ahi) = self.extent(n);
                let (blo, bhi) = other.extent(n);
                if alo > bhi + tol || blo > ahi + tol {
                    return false;
                }
            }
        }
        true
    }

    /// Points where the two boundaries cross (transversal crossings and
    /// T-junctions; overlapping collinear stretches contribute their
    /// endpoints, which are vertices of one of the polygons).
    pub fn boundary_intersections(&self, other: &ConvexPolygon) -> Vec<Point2> {
        let bb = |p: &ConvexPolygon| {
            p.vertices.iter().fold(
                (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
                |(lo, hi), v| (Vec2::new(lo.x.min(v.x), lo.y.min(v.y)), Vec2::new(hi.x.max(v.x), hi.y.max(v.y))),
            )
        };
        let (alo, ahi) = bb(self);
        let (blo, bhi) = bb(other);
        let lo = Vec2::new(alo.x.max(blo.x), alo.y.max(blo.y));
        let hi = Vec2::new(ahi.x.min(bhi.x), ahi.y.min(bhi.y));
        if lo.x > hi.x || lo.y > hi.y {
            return Vec::new();
        }
        let pad = 1e-12 * (self.diameter + other.diameter);
        let in_box = |a: Vec2, b: Vec2| {
            a.x.max(b.x) >= lo.x - pad
                && a.x.min(b.x) <= hi.x + pad
                && a.y.max(b.y) >= lo.y - pad
                && a.y.min(b.y) <= hi.y + pad
        };
        let ea: Vec<_> = self.edges().filter(|&(a, b)| in_box(a, b)).collect();
        let eb: Vec<_> = other.edges().filter(|&(a, b)| in_box(a, b)).collect();
        let mut out = Vec::new();
        for &(p0, p1) in &ea {
            let r = p1 - p0;
            for &(q0, q1) in &eb {
                if p0.x.max(p1.x) < q0.x.min(q1.x) - pad
                    || q0.x.max(q1.x) < p0.x.min(p1.x) - pad
                    || p0.y.max(p1.y) < q0.y.min(q1.y) - pad
                    || q0.y.max(q1.y) < p0.y.min(p1.y) - pad
                {
                    continue;
                }
                let s = q1 - q0;
                let denom = r.cross(s);
                if denom.abs() <= 1e-14 * r.norm() * s.norm() {
                    continue;
                }
                let w = q0 - p0;
                let t = w.cross(s) / denom;
                let u = w.cross(r) / denom;
                if (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u) {
                    out.push(p0 + r * t.clamp(0.0, 1.0));
                }
            }
        }
        out
    }
}

fn rotate_to_lowest(v: &[Point2]) -> Vec<Point2> {
    let k = (0..v.len())
        .min_by(|&i, &j| {
            (v[i].y, v[i].x)
                .partial_cmp(&(v[j].y, v[j].x))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    v[k..].iter().chain(v[..k].iter()).copied().collect()
}

pub(crate) fn clip_points(pts: &[Point2], n: Vec2, c: f64) -> Vec<Point2> {
    let mut out = Vec::with_capacity(pts.len() + 1);
    let m = pts.len();
    for i in 0..m {
        let a = pts[i];
        let b = pts[(i + 1) % m];
        let da = n.dot(a) - c;
        let db = n.dot(b) - c;
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
            out.push(a.lerp(b, da / (da - db)));
        }
    }
    out
}

fn collapse_collinear(pts: &mut Vec<Point2>, tol: f64) {
    loop {
        let n = pts.len();
        if n < 3 {
            return;
        }
        let t = turns(pts);
        match (0..n).find(|&i| t[i].abs() <= tol) {
            Some(i) => {
                pts.remove(i);
            }
            None => return,
        }
    }
}

fn monotone_chain(mut pts: Vec<Point2>) -> Vec<Point2> {
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - b) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn diameter_of(pts: &[Point2]) -> f64 {
    let mut d = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d = d.max(pts[i].distance(pts[j]));
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn hexagon() -> ConvexPolygon {
        ConvexPolygon::new(
            (0..6)
                .map(|i| {
                    let a = i as f64 * PI / 3.0;
                    Vec2::new(a.cos(), a.sin())
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn support_examples() {
        let sq = square();
        let (v, w) = sq.support(Vec2::new(1.0, 0.0));
        assert_eq!(v, 1.0);
        assert_eq!(w, Vec2::new(1.0, 0.0));
        let (v, w) = sq.support(Vec2::new(0.0, -1.0));
        assert_eq!(v, 0.0);
        assert_eq!(w.y, 0.0);
        let (v, w) = hexagon().support(Vec2::new(1.0, 0.0));
        assert!((v - 1.0).abs() < 1e-15);
        assert!((w - Vec2::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn width_examples() {
        let sq = square();
        assert_eq!(sq.width(Vec2::new(0.0, 1.0)), 1.0);
        let d = Vec2::new(1.0, 1.0) / SQRT_2;
        assert!((sq.width(d) - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn canonicalization() {
        // clockwise, with a collinear midpoint and a duplicate
        let p = ConvexPolygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.area() > 0.0);
        assert!((p.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        let dart = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 0.3),
            Vec2::new(1.0, 2.0),
        ];
        assert!(matches!(ConvexPolygon::new(dart), Err(Error::NonConvex { .. })));
        let line = vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(2.0, 0.0)];
        assert_eq!(ConvexPolygon::new(line), Err(Error::TooFewVertices));
        let nan = vec![Vec2::new(0.0, 0.0), Vec2::new(f64::NAN, 0.0), Vec2::new(0.0, 1.0)];
        assert_eq!(ConvexPolygon::new(nan), Err(Error::NonFinite));
        // pentagram: every turn is left but it winds twice
        let star: Vec<_> = (0..5)
            .map(|i| {
                let a = (2 * i) as f64 * 2.0 * PI / 5.0;
                Vec2::new(a.cos(), a.sin())
            })
            .collect();
        assert!(matches!(ConvexPolygon::new(star), Err(Error::NonConvex { .. })));
    }

    #[test]
    fn difference_body_examples() {
        let d = square().difference_body();
        assert_eq!(d.len(), 4);
        for v in d.vertices() {
            assert!((v.x.abs() - 1.0).abs() < 1e-15 && (v.y.abs() - 1.0).abs() < 1e-15);
        }
        let tri = ConvexPolygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        let d = tri.difference_body();
        let expected = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, -1.0), (-1.0, 1.0)];
        assert_eq!(d.len(), 6);
        for (x, y) in expected {
            assert!(d.vertices().iter().any(|v| (*v - Vec2::new(x, y)).norm() < 1e-12));
        }
    }

    #[test]
    fn containment_examples() {
        let sq = square();
        assert!(sq.contains_point(Vec2::new(0.5, 0.5), 0.0));
        assert!(!sq.contains_point(Vec2::new(1.0 + 1e-6, 0.5), 1e-9));
        assert!(sq.contains_point(Vec2::new(1.0, 1.0), 1e-9));
        assert!(!sq.contains_point(Vec2::new(0.5, 0.5 + 1.0), 1e-9));
        assert!(!sq.contains_point(Vec2::new(0.99, 0.5), -0.02));
        let big = ConvexPolygon::new(vec![
            Vec2::new(-0.5, -0.5),
            Vec2::new(1.5, -0.5),
            Vec2::new(1.5, 1.5),
            Vec2::new(-0.5, 1.5),
        ])
        .unwrap();
        assert!(big.contains_polygon(&sq, 1e-9));
        assert!(!sq.contains_polygon(&big, 1e-9));
        assert!(sq.contains_polygon(&sq, 1e-9));
    }

    #[test]
    fn fast_contains_matches_signed_distance() {
        let h = hexagon();
        for i in 0..200 {
            for j in 0..200 {
                let p = Vec2::new(-1.2 + i as f64 * 0.012, -1.2 + j as f64 * 0.012);
                assert_eq!(h.contains_point(p, 1e-9), h.signed_distance(p) <= 1e-9, "{p:?}");
            }
        }
    }

    #[test]
    fn boundary_crossings_of_offset_squares() {
        let a = square();
        let b = a.translated(Vec2::new(0.5, 0.5));
        let mut pts = a.boundary_intersections(&b);
        pts.sort_by(|p, q| p.x.partial_cmp(&q.x).unwrap());
        assert_eq!(pts.len(), 2);
        assert!((pts[0] - Vec2::new(0.5, 1.0)).norm() < 1e-12);
        assert!((pts[1] - Vec2::new(1.0, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn clip_and_intersects() {
        let sq = square();
        let half = sq.clip_halfplane(Vec2::new(1.0, 0.0), 0.5).unwrap();
        assert!((half.area() - 0.5).abs() < 1e-15);
        assert!(sq.clip_halfplane(Vec2::new(1.0, 0.0), -1.0).is_none());
        assert!(sq.intersects(&sq.translated(Vec2::new(1.0, 1.0)), 1e-12));
        assert!(!sq.intersects(&sq.translated(Vec2::new(1.0 + 1e-6, 0.0)), 1e-9));
    }
}
