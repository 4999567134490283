use serde::{Deserialize, Serialize};

use super::Vec2;
use crate::error::{Error, Result};

/// `x ↦ M x + t` with `M = [[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub m: [[f64; 2]; 2],
    pub t: Vec2,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        m: [[1.0, 0.0], [0.0, 1.0]],
        t: Vec2::ZERO,
    };

    pub fn new(m: [[f64; 2]; 2], t: Vec2) -> Result<Self> {
        let map = AffineMap { m, t };
        let scale = m.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if !scale.is_finite() || !t.is_finite() {
            return Err(Error::NonFinite);
        }
        let det = map.det();
        if det.abs() <= 1e-12 * scale * scale {
            return Err(Error::SingularMap { det });
        }
        Ok(map)
    }

    /// Rotation by `angle` followed by uniform scaling, then translation.
    pub fn similarity(angle: f64, scale: f64, t: Vec2) -> Result<Self> {
        let (s, c) = angle.sin_cos();
        Self::new([[scale * c, -scale * s], [scale * s, scale * c]], t)
    }

    pub fn translation(t: Vec2) -> Self {
        AffineMap {
            m: Self::IDENTITY.m,
            t,
        }
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    #[inline]
    pub fn linear(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    #[inline]
    pub fn apply(&self, p: Vec2) -> Vec2 {
        self.linear(p) + self.t
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::SingularMap { det });
        }
        let [[a, b], [c, d]] = self.m;
        let inv = [[d / det, -b / det], [-c / det, a / det]];
        let m = AffineMap { m: inv, t: Vec2::ZERO };
        Ok(AffineMap {
            m: inv,
            t: -m.linear(self.t),
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let [[a, b], [c, d]] = self.m;
        let [[e, f], [g, h]] = other.m;
        AffineMap {
            m: [[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]],
            t: self.linear(other.t) + self.t,
        }
    }
}
