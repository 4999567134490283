//! Planar primitives: vectors, directions, lines, affine maps and convex
//! polygons with explicit-tolerance predicates.

mod affine;
mod line;
mod normalize;
mod parallelogram;
mod polygon;
mod vec2;

pub use affine::AffineMap;
pub use line::{Line, Strip};
pub use normalize::{chord_at_height, normalize_to_unit_slab, Normalized, DEGENERATE_WIDTH};
pub use parallelogram::Parallelogram;
pub use polygon::ConvexPolygon;
pub use vec2::{Direction, Point2, Vec2};

pub(crate) use polygon::clip_points;

/// Default containment tolerance, in normalized units.
pub const CONTAINMENT_TOL: f64 = 1e-9;

/// `support(poly, n)`: maximum of `n·v` over vertices with its witness.
pub fn support(poly: &ConvexPolygon, n: Vec2) -> (f64, Point2) {
    poly.support(n)
}

pub fn width(poly: &ConvexPolygon, n: Vec2) -> f64 {
    poly.width(n)
}

pub fn difference_body(poly: &ConvexPolygon) -> ConvexPolygon {
    poly.difference_body()
}

pub fn contains_point(poly: &ConvexPolygon, p: Point2, tol: f64) -> bool {
    poly.contains_point(p, tol)
}

pub fn contains_polygon(outer: &ConvexPolygon, inner: &ConvexPolygon, tol: f64) -> bool {
    outer.contains_polygon(inner, tol)
}

/// `K + x` meets `K + y`, decided through the difference body `D = K ⊕ (−K)`.
pub fn translates_intersect(diff_body: &ConvexPolygon, x: Vec2, y: Vec2, tol: f64) -> bool {
    diff_body.contains_point(x - y, tol)
}
