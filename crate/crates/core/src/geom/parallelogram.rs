use serde::{Deserialize, Serialize};

use super::{AffineMap, ConvexPolygon, Point2, Vec2};
use crate::error::{Error, Result};

/// `{anchor + s·e1 + t·e2 : s, t ∈ [0, 1]}` with `e1 × e2 > 0`.
///
/// Vertices in order: `anchor`, `anchor + e1`, `anchor + e1 + e2`, `anchor + e2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parallelogram {
    pub anchor: Point2,
    pub e1: Vec2,
    pub e2: Vec2,
}

impl Parallelogram {
    pub fn new(anchor: Point2, e1: Vec2, e2: Vec2) -> Result<Self> {
        if !(anchor.is_finite() && e1.is_finite() && e2.is_finite()) {
            return Err(Error::NonFinite);
        }
        if e1.cross(e2) <= 0.0 {
            return Err(Error::InvalidParallelogram("edge vectors must be positively oriented"));
        }
        Ok(Parallelogram { anchor, e1, e2 })
    }

    pub fn vertices(&self) -> [Point2; 4] {
        [
            self.anchor,
            self.anchor + self.e1,
            self.anchor + self.e1 + self.e2,
            self.anchor + self.e2,
        ]
    }

    pub fn center(&self) -> Point2 {
        self.anchor + (self.e1 + self.e2) * 0.5
    }

    pub fn area(&self) -> f64 {
        self.e1.cross(self.e2)
    }

    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        ConvexPolygon::new(self.vertices().to_vec())
    }

    /// Affine coordinates `(s, t)` of `p` in the frame `(anchor; e1, e2)`.
    pub fn coordinates(&self, p: Point2) -> (f64, f64) {
        let d = p - self.anchor;
        let det = self.e1.cross(self.e2);
        (d.cross(self.e2) / det, self.e1.cross(d) / det)
    }

    /// Membership with a tolerance on each side, measured as distance
    /// between opposite side lines.
    pub fn contains_point(&self, p: Point2, tol: f64) -> bool {
        let (s, t) = self.coordinates(p);
        let area = self.area();
        // distance between the e2-parallel sides, and between the e1-parallel sides
        let w1 = area / self.e2.norm();
        let w2 = area / self.e1.norm();
        s >= -tol / w1 && s <= 1.0 + tol / w1 && t >= -tol / w2 && t <= 1.0 + tol / w2
    }

    pub fn translated(&self, t: Vec2) -> Parallelogram {
        Parallelogram {
            anchor: self.anchor + t,
            ..*self
        }
    }

    /// Homothetic copy scaled by `k > 0` about the center.
    pub fn scaled_about_center(&self, k: f64) -> Parallelogram {
        let c = self.center();
        let e1 = self.e1 * k;
        let e2 = self.e2 * k;
        Parallelogram {
            anchor: c - (e1 + e2) * 0.5,
            e1,
            e2,
        }
    }

    /// Image under an orientation-preserving affine map.
    pub fn transformed(&self, map: &AffineMap) -> Result<Parallelogram> {
        let p = Parallelogram {
            anchor: map.apply(self.anchor),
            e1: map.linear(self.e1),
            e2: map.linear(self.e2),
        };
        if map.det() > 0.0 {
            Ok(p)
        } else {
            Parallelogram::new(p.anchor + p.e1, -p.e1, p.e2)
        }
    }
}
