//! Fixed-direction parallelogram approximation.
//!
//! Given a body `K` and a direction `u`, find a parallelogram `P ⊆ K` with a
//! side parallel to `u` and a translate `Q` of `2P` with `K ⊆ Q`. `P` is the
//! inscribed parallelogram whose `u`-parallel sides are equal chords, chosen
//! so that it is homothetic to the circumscribed parallelogram with the same
//! side directions; the homothety ratio at such a pair is at most 2.

mod construct;
mod profile;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{normalize_to_unit_slab, ConvexPolygon, Direction, Parallelogram, CONTAINMENT_TOL};

pub use construct::{circumscribed_parallelogram, homothety_gap, inscribed_parallelogram};
pub use profile::{build_chord_profile, eps_shave, ChordPlacement, ChordProfile};

use construct::{gap_at, inscribed_at, side_ratio_gap};

/// Limit on `|A'B'/AB − B'C'/BC|` for an accepted pair.
pub const RESIDUAL_LIMIT: f64 = 1e-6;

/// How supports parallel to `u` that are edges are handled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "eps")]
pub enum SupportHandling {
    /// Chords shorter than a supporting edge sit flush against its kept end.
    Flush,
    /// Tilt-cut the edge by `ε` first; the ratio bound degrades to `2 + O(ε)`.
    Shave(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxConfig {
    pub support: SupportHandling,
    /// Stop bisecting once `|g| <= root_tol`.
    pub root_tol: f64,
    pub max_iter: usize,
    /// Accepted excess of the homothety ratio over 2.
    pub ratio_slack: f64,
    /// Samples of the path used to locate the first sign change.
    pub scan_samples: usize,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        ApproxConfig {
            support: SupportHandling::Flush,
            root_tol: 1e-10,
            max_iter: 200,
            ratio_slack: 1e-3,
            scan_samples: 64,
        }
    }
}

/// Everything is in the frame of the input body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxResult {
    /// Inscribed `ABCD`; `e1 = AB` is parallel to `u`, `e2 = AD` to `v`.
    pub p: Parallelogram,
    /// Circumscribed `A'B'C'D'` with sides parallel to `p`'s.
    pub p_circ: Parallelogram,
    /// `2P`, concentric with `p_circ`.
    pub q: Parallelogram,
    pub u: Direction,
    pub v: Direction,
    /// Interior angle at `A`, radians.
    pub alpha: f64,
    /// `A'B'/AB`.
    pub ratio: f64,
    /// `|A'B'/AB − B'C'/BC|`.
    pub residual: f64,
    pub shaved: bool,
    /// The root lies on the maximum-plateau leg of the path.
    pub plateau_leg: bool,
    pub iterations: usize,
}

/// Run the chord-length search for body `poly` and direction `u`.
pub fn find_homothetic_pair(poly: &ConvexPolygon, u: Direction, cfg: &ApproxConfig) -> Result<ApproxResult> {
    let norm = normalize_to_unit_slab(poly, u)?;
    let outer = norm.poly.clone();
    let (inner, shaved) = match cfg.support {
        SupportHandling::Shave(eps) => {
            let s = eps_shave(&outer, eps);
            let changed = s != outer;
            (s, changed)
        }
        SupportHandling::Flush => (outer.clone(), false),
    };
    let profile = build_chord_profile(&inner)?;
    let g = |t: f64| gap_at(&profile, &outer, t);

    let mut t_lo = 1e-4;
    let mut g_lo = g(t_lo);
    while (g_lo.is_nan() || g_lo >= 0.0) && t_lo > 1e-14 {
        t_lo *= 0.5;
        g_lo = g(t_lo);
    }
    if g_lo.is_nan() || g_lo >= 0.0 {
        return Err(Error::NoRootFound {
            diagnostics: format!("gap {g_lo} is not negative at t = {t_lo}"),
        });
    }

    // First sign change from the low end: chord leg [t_lo, 1], then plateau leg (1, 2].
    let samples = cfg.scan_samples.max(2);
    let mut grid: Vec<f64> = (0..=samples)
        .map(|k| t_lo + (1.0 - t_lo) * k as f64 / samples as f64)
        .collect();
    grid.extend((1..=samples).map(|k| 1.0 + k as f64 / samples as f64));
    let mut bracket = None;
    let mut prev = (t_lo, g_lo);
    for &t in &grid[1..] {
        let gt = g(t);
        if gt >= 0.0 {
            bracket = Some((prev, (t, gt)));
            break;
        }
        prev = (t, gt);
    }
    let Some(((mut lo, mut glo), (mut hi, mut ghi))) = bracket else {
        return Err(Error::NoRootFound {
            diagnostics: format!("no sign change along the path; last gap {}", prev.1),
        });
    };

    let mut iterations = 0;
    while iterations < cfg.max_iter && ghi.abs() > cfg.root_tol && glo.abs() > cfg.root_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        iterations += 1;
        if gm < 0.0 {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    let t = if glo.abs() <= ghi.abs() { lo } else { hi };

    let p_n = inscribed_at(&profile, t).ok_or_else(|| Error::NoRootFound {
        diagnostics: format!("root t = {t} gives a collapsed parallelogram"),
    })?;
    let v_n = Direction::from_vec(p_n.e2)?;
    let c_n = circumscribed_parallelogram(&outer, v_n)?;
    let ratio = c_n.e1.norm() / p_n.e1.norm();
    let residual = (ratio - c_n.e2.norm() / p_n.e2.norm()).abs();
    let alpha = p_n.e1.cross(p_n.e2).atan2(p_n.e1.dot(p_n.e2));

    let p = p_n.transformed(&norm.inverse)?;
    let p_circ = c_n.transformed(&norm.inverse)?;
    let q = Parallelogram {
        anchor: p_circ.center() - (p.e1 + p.e2),
        e1: p.e1 * 2.0,
        e2: p.e2 * 2.0,
    };
    if ratio > 2.0 + cfg.ratio_slack || residual > RESIDUAL_LIMIT {
        return Err(Error::NoRootFound {
            diagnostics: format!("root at t = {t} has ratio {ratio}, residual {residual:e}"),
        });
    }
    debug_assert!(side_ratio_gap(&p_n, &c_n).abs() <= ghi.abs().max(glo.abs()).max(cfg.root_tol) + 1e-12);
    Ok(ApproxResult {
        p,
        p_circ,
        q,
        u,
        v: Direction::from_vec(p.e2)?,
        alpha,
        ratio,
        residual,
        shaved,
        plateau_leg: t > 1.0,
        iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub checks: Vec<Check>,
}

impl ApproxReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Re-check an [`ApproxResult`] against the body it claims to approximate.
/// `tol` is in normalized units (the width of `k` perpendicular to `u`).
pub fn verify_approx(k: &ConvexPolygon, result: &ApproxResult, tol: f64, ratio_slack: f64) -> ApproxReport {
    let scale = k.width(result.u.normal());
    let mut checks = Vec::new();
    let mut push = |name: &str, measured: f64, limit: f64, passed: bool| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            measured,
            limit,
        })
    };

    let p_out = result
        .p
        .vertices()
        .iter()
        .map(|&v| k.signed_distance(v) / scale)
        .fold(f64::NEG_INFINITY, f64::max);
    push("p_in_k", p_out, tol, p_out <= tol);

    let k_out = match result.q.to_polygon() {
        Ok(qp) => k
            .vertices()
            .iter()
            .map(|&v| qp.signed_distance(v) / scale)
            .fold(f64::NEG_INFINITY, f64::max),
        Err(_) => f64::INFINITY,
    };
    push("k_in_q", k_out, tol, k_out <= tol);

    let doubled = result.q.e1 == result.p.e1 * 2.0 && result.q.e2 == result.p.e2 * 2.0;
    let dev = (result.q.e1 - result.p.e1 * 2.0).norm() + (result.q.e2 - result.p.e2 * 2.0).norm();
    push("q_is_2p", dev, 0.0, doubled);

    let side_u = result.p.e1.normalized().map_or(f64::INFINITY, |e| e.cross(result.u.unit()).abs());
    push("side_parallel_to_u", side_u, 1e-9, side_u <= 1e-9);

    let c = &result.p_circ;
    let ratio = c.e1.norm() / result.p.e1.norm();
    let residual = (ratio - c.e2.norm() / result.p.e2.norm()).abs();
    push("residual", residual, RESIDUAL_LIMIT, residual <= RESIDUAL_LIMIT);
    push("ratio", ratio, 2.0 + ratio_slack, ratio <= 2.0 + ratio_slack);

    ApproxReport { checks }
}

/// Default-tolerance verification.
pub fn verify_approx_default(k: &ConvexPolygon, result: &ApproxResult) -> ApproxReport {
    verify_approx(k, result, CONTAINMENT_TOL, ApproxConfig::default().ratio_slack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn poly(pts: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn parallelogram_is_own_approximation() {
        let k = poly(&[(0.0, 0.0), (2.0, 0.0), (3.0, 1.0), (1.0, 1.0)]);
        let r = find_homothetic_pair(&k, Direction::HORIZONTAL, &ApproxConfig::default()).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-9, "{}", r.ratio);
        let pk = r.p.to_polygon().unwrap();
        assert!(pk.contains_polygon(&k, 1e-9) && k.contains_polygon(&pk, 1e-9));
        assert!(verify_approx_default(&k, &r).passed());
    }

    #[test]
    fn right_triangle_base_direction() {
        let k = poly(&[(0.0, 0.0), (1.0, 0.0), (0.5, 1.0)]);
        let r = find_homothetic_pair(&k, Direction::HORIZONTAL, &ApproxConfig::default()).unwrap();
        assert!((r.ratio - 2.0).abs() < 1e-9, "{}", r.ratio);
        let rep = verify_approx_default(&k, &r);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn shave_mode_is_close() {
        let k = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let cfg = ApproxConfig {
            support: SupportHandling::Shave(1e-4),
            ..ApproxConfig::default()
        };
        let r = find_homothetic_pair(&k, Direction::HORIZONTAL, &cfg).unwrap();
        assert!(r.shaved);
        assert!(r.ratio < 1.0 + 1e-3);
        let rep = verify_approx_default(&k, &r);
        assert!(rep.check("p_in_k").unwrap().passed);
        assert!(rep.check("k_in_q").unwrap().passed);
    }

    #[test]
    fn tampered_results_fail() {
        let k = poly(&[(0.0, 0.0), (1.0, 0.2), (0.7, 0.9), (0.1, 0.6)]);
        let r = find_homothetic_pair(&k, Direction::from_degrees(20.0).unwrap(), &ApproxConfig::default()).unwrap();
        assert!(verify_approx_default(&k, &r).passed());

        let mut shrunk = r.clone();
        shrunk.q = r.q.scaled_about_center(0.5);
        assert!(!verify_approx_default(&k, &shrunk).check("k_in_q").unwrap().passed);

        let mut inflated = r.clone();
        inflated.p = r.p.scaled_about_center(1.1);
        assert!(!verify_approx_default(&k, &inflated).check("p_in_k").unwrap().passed);
    }
}
