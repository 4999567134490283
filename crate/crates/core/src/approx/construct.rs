//! Inscribed and circumscribed parallelograms in the normalized frame.

use super::profile::ChordProfile;
use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Direction, Parallelogram, Vec2};

const HORIZONTAL_TOL: f64 = 1e-9;

/// Inscribed parallelogram at path parameter `t ∈ (0, 2)`.
///
/// For `t ≤ 1` the horizontal sides are the two chords of length `t·m`.
/// For `t > 1` the length stays at `m` and the lower side slides up the
/// maximum plateau from `h_a` towards `h_b`, collapsing at `t = 2`.
pub(crate) fn inscribed_at(profile: &ChordProfile, t: f64) -> Option<Parallelogram> {
    let m = profile.max_length();
    let (ha, hb) = profile.plateau();
    let (l, lower, upper) = if t <= 1.0 {
        let l = m * t;
        (l, profile.lower(l), profile.upper(l))
    } else {
        let h1 = ha + (t - 1.0).min(1.0) * (hb - ha);
        let mut lo = profile.lower(m);
        lo.height = h1;
        lo.x_left = profile.chord(h1).0;
        (m, lo, profile.upper(m))
    };
    if l.is_nan() || l <= 0.0 || upper.height <= lower.height {
        return None;
    }
    let a = Vec2::new(lower.x_left, lower.height);
    let d = Vec2::new(upper.x_left, upper.height);
    Parallelogram::new(a, Vec2::new(l, 0.0), d - a).ok()
}

/// `ABCD` with `AB` and `CD` horizontal chords of length `l` at the lower
/// and upper solutions of `l(h) = l`. At `l = m` the plateau endpoints are
/// used, which needs a plateau of positive length.
pub fn inscribed_parallelogram(profile: &ChordProfile, l: f64) -> Result<Parallelogram> {
    let m = profile.max_length();
    if !(l > 0.0 && l <= m) {
        return Err(Error::InvalidChord { l, max: m });
    }
    inscribed_at(profile, l / m).ok_or(Error::InvalidChord { l, max: m })
}

/// Circumscribed parallelogram with horizontal sides on the slab lines and
/// the other pair of sides parallel to `v`, touching the body.
pub fn circumscribed_parallelogram(poly: &ConvexPolygon, v: Direction) -> Result<Parallelogram> {
    let dir = v.unit();
    if dir.y.abs() <= HORIZONTAL_TOL {
        return Err(Error::DegenerateDirection { tol: HORIZONTAL_TOL });
    }
    let slope = dir.x / dir.y;
    let (ylo, yhi) = poly.extent(Vec2::new(0.0, 1.0));
    // horizontal intercepts of the lines parallel to v through each vertex
    let (clo, chi) = poly
        .vertices()
        .iter()
        .map(|p| p.x - slope * p.y)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(c), hi.max(c)));
    let h = yhi - ylo;
    Parallelogram::new(
        Vec2::new(clo + slope * ylo, ylo),
        Vec2::new(chi - clo, 0.0),
        Vec2::new(slope * h, h),
    )
}

/// `AB/BC − A'B'/B'C'` for a pair of parallel-sided parallelograms.
pub(crate) fn side_ratio_gap(inner: &Parallelogram, outer: &Parallelogram) -> f64 {
    inner.e1.norm() / inner.e2.norm() - outer.e1.norm() / outer.e2.norm()
}

/// Gap at path parameter `t`, with the circumscription taken around `outer`.
/// A collapsed inscribed parallelogram counts as `+∞`.
pub(crate) fn gap_at(profile: &ChordProfile, outer: &ConvexPolygon, t: f64) -> f64 {
    let Some(p) = inscribed_at(profile, t) else {
        return f64::INFINITY;
    };
    let Ok(v) = Direction::from_vec(p.e2) else {
        return f64::INFINITY;
    };
    match circumscribed_parallelogram(outer, v) {
        Ok(c) => side_ratio_gap(&p, &c),
        Err(_) => f64::INFINITY,
    }
}

/// `g(l) = AB/BC − A'B'/B'C'` where `A'B'C'D'` circumscribes `poly` with
/// sides parallel to `ABCD = inscribed_parallelogram(profile, l)`.
pub fn homothety_gap(profile: &ChordProfile, poly: &ConvexPolygon, l: f64) -> Result<f64> {
    let p = inscribed_parallelogram(profile, l)?;
    let c = circumscribed_parallelogram(poly, Direction::from_vec(p.e2)?)?;
    Ok(side_ratio_gap(&p, &c))
}
