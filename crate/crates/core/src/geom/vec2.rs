use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A planar vector. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

/// Points and vectors share one representation.
pub type Point2 = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::NonFinite)
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn distance(self, o: Vec2) -> f64 {
        (self - o).norm()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Vec2 { x, y }
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

/// An unoriented direction: angle canonicalized to `[0, π)`, so `d` and `-d`
/// are the same direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Direction {
    angle: f64,
}

impl Direction {
    pub const HORIZONTAL: Direction = Direction { angle: 0.0 };
    pub const VERTICAL: Direction = Direction { angle: PI / 2.0 };

    /// Any finite angle in radians; reduced modulo π.
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite);
        }
        let mut a = theta.rem_euclid(PI);
        if a >= PI {
            a = 0.0;
        }
        Ok(Direction { angle: a })
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::from_angle(deg.to_radians())
    }

    /// Direction of a nonzero vector.
    pub fn from_vec(v: Vec2) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        if v.norm_sq() == 0.0 {
            return Err(Error::DegenerateDirection { tol: 0.0 });
        }
        Self::from_angle(v.y.atan2(v.x))
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.angle
    }

    pub fn degrees(self) -> f64 {
        self.angle.to_degrees()
    }

    /// Unit vector `(cos θ, sin θ)`.
    #[inline]
    pub fn unit(self) -> Vec2 {
        let (s, c) = self.angle.sin_cos();
        Vec2::new(c, s)
    }

    /// Unit normal, the unit vector turned a quarter counterclockwise.
    #[inline]
    pub fn normal(self) -> Vec2 {
        self.unit().perp()
    }

    /// Smallest angle between two directions, in `[0, π/2]`.
    pub fn angle_to(self, other: Direction) -> f64 {
        let d = (self.angle - other.angle).abs();
        d.min(PI - d)
    }
}

impl TryFrom<f64> for Direction {
    type Error = Error;
    fn try_from(theta: f64) -> Result<Self> {
        Direction::from_angle(theta)
    }
}

impl From<Direction> for f64 {
    fn from(d: Direction) -> f64 {
        d.angle
    }
}
