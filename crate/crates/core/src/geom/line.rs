use serde::{Deserialize, Serialize};

use super::{Direction, Point2, Vec2};
use crate::error::{Error, Result};

/// The line `{x : normal · x = offset}` with unit `normal`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub normal: Vec2,
    pub offset: f64,
}

impl Line {
    pub fn new(normal: Vec2, offset: f64) -> Result<Self> {
        if !normal.is_finite() || !offset.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = normal.normalized().ok_or(Error::DegenerateDirection { tol: 0.0 })?;
        let scale = normal.norm();
        Ok(Line {
            normal: n,
            offset: offset / scale,
        })
    }

    /// Line through `p` running along `dir`.
    pub fn through(p: Point2, dir: Direction) -> Self {
        let n = dir.normal();
        Line {
            normal: n,
            offset: n.dot(p),
        }
    }

    pub fn direction(&self) -> Direction {
        // normal never vanishes
        Direction::from_vec(-self.normal.perp()).unwrap_or(Direction::HORIZONTAL)
    }

    #[inline]
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Intersection point of two non-parallel lines.
    pub fn intersect(&self, other: &Line) -> Result<Point2> {
        let det = self.normal.cross(other.normal);
        if det.abs() < 1e-12 {
            return Err(Error::DegenerateLines);
        }
        let x = (self.offset * other.normal.y - other.offset * self.normal.y) / det;
        let y = (self.normal.x * other.offset - other.normal.x * self.offset) / det;
        Ok(Vec2::new(x, y))
    }

    pub fn translated(&self, t: Vec2) -> Line {
        Line {
            normal: self.normal,
            offset: self.offset + self.normal.dot(t),
        }
    }

    /// Distance from the line to the point set `pts + shift` (zero if the
    /// line separates none of them, i.e. it meets their convex hull).
    pub fn distance_to_points(&self, pts: &[Point2], shift: Vec2) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &p in pts {
            let d = self.signed_distance(p + shift);
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if lo > 0.0 {
            lo
        } else if hi < 0.0 {
            -hi
        } else {
            0.0
        }
    }
}

/// Closed slab `{x : lo <= normal · x <= hi}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub normal: Vec2,
    pub lo: f64,
    pub hi: f64,
}

impl Strip {
    pub fn new(normal: Vec2, lo: f64, hi: f64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInstance(format!("strip range [{lo}, {hi}] is empty")));
        }
        let n = normal.normalized().ok_or(Error::DegenerateDirection { tol: 0.0 })?;
        let s = normal.norm();
        Ok(Strip {
            normal: n,
            lo: lo / s,
            hi: hi / s,
        })
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let v = self.normal.dot(p);
        v >= self.lo - tol && v <= self.hi + tol
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}
