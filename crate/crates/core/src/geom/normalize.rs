use super::{AffineMap, ConvexPolygon, Direction};
use crate::error::{Error, Result};

/// Relative width below which a body counts as flat in some direction.
pub const DEGENERATE_WIDTH: f64 = 1e-12;

/// Normalized copy of a body: a similarity taking `u` to the x-axis and the
/// two supporting lines parallel to `u` to `y = 0` and `y = 1`.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub poly: ConvexPolygon,
    /// original → normalized
    pub map: AffineMap,
    /// normalized → original
    pub inverse: AffineMap,
    /// Width of the original body perpendicular to `u` (one normalized unit).
    pub scale: f64,
}

/// Rotate by `-θ`, scale by the reciprocal width perpendicular to `u`, and
/// translate so the bottom support is `y = 0` and the leftmost point `x = 0`.
pub fn normalize_to_unit_slab(poly: &ConvexPolygon, u: Direction) -> Result<Normalized> {
    let width = poly.width(u.normal());
    if width.is_nan() || width <= DEGENERATE_WIDTH * poly.diameter() {
        return Err(Error::DegenerateBody { width });
    }
    let rot = AffineMap::similarity(-u.angle(), 1.0 / width, super::Vec2::ZERO)?;
    let (xlo, _) = poly.extent(rot.m[0].into());
    let (ylo, _) = poly.extent(rot.m[1].into());
    let map = AffineMap {
        t: super::Vec2::new(-xlo, -ylo),
        ..rot
    };
    let pts: Vec<_> = poly.vertices().iter().map(|&v| map.apply(v)).collect();
    let normalized = ConvexPolygon::new(pts)?;
    Ok(Normalized {
        poly: normalized,
        inverse: map.inverse()?,
        map,
        scale: width,
    })
}

/// Endpoints `(x_left, x_right)` of the horizontal chord at height `h` of a
/// normalized body; `None` outside `[0, 1]`.
pub fn chord_at_height(poly: &ConvexPolygon, h: f64) -> Option<(f64, f64)> {
    const EDGE: f64 = 1e-12;
    if !(-EDGE..=1.0 + EDGE).contains(&h) {
        return None;
    }
    let (ylo, yhi) = poly.extent(super::Vec2::new(0.0, 1.0));
    let h = h.clamp(ylo, yhi);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (a, b) in poly.edges() {
        let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
        if h < y0 || h > y1 {
            continue;
        }
        let xs = if a.y == b.y {
            [a.x, b.x]
        } else {
            let x = a.x + (b.x - a.x) * (h - a.y) / (b.y - a.y);
            [x, x]
        };
        for x in xs {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo <= hi).then_some((lo, hi))
}
