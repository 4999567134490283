//! Instances of colorful translate families and line transversals to them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Direction, Line, Vec2, CONTAINMENT_TOL};

/// Body `K` plus `n >= 2` families of translation offsets; family `i` is
/// `{K + x : x ∈ families[i]}`. Any two translates from different families
/// intersect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default = "schema_version")]
    pub schema_version: String,
    pub body: ConvexPolygon,
    pub families: Vec<Vec<Vec2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn schema_version() -> String {
    "1".to_string()
}

impl Instance {
    /// Validated constructor.
    pub fn new(body: ConvexPolygon, families: Vec<Vec<Vec2>>) -> Result<Self> {
        let inst = Instance {
            schema_version: schema_version(),
            body,
            families,
            seed: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Absolute containment tolerance: `1e-9` relative to the body diameter.
    pub fn tolerance(&self) -> f64 {
        CONTAINMENT_TOL * self.body.diameter()
    }

    pub fn n_families(&self) -> usize {
        self.families.len()
    }

    /// `(family, member, offset)` for every translate.
    pub fn members(&self) -> impl Iterator<Item = (usize, usize, Vec2)> + '_ {
        self.families
            .iter()
            .enumerate()
            .flat_map(|(f, fam)| fam.iter().enumerate().map(move |(m, &x)| (f, m, x)))
    }

    pub fn translate(&self, family: usize, member: usize) -> ConvexPolygon {
        self.body.translated(self.families[family][member])
    }

    /// Check `n >= 2`, non-empty finite families, and the cross-family
    /// intersection hypothesis via the difference body.
    pub fn validate(&self) -> Result<()> {
        if self.families.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least 2 families, got {}",
                self.families.len()
            )));
        }
        if let Some(i) = self.families.iter().position(|f| f.is_empty()) {
            return Err(Error::InvalidInstance(format!("family {i} is empty")));
        }
        if self.members().any(|(_, _, x)| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let diff = self.body.difference_body();
        let tol = self.tolerance();
        for (a, fa) in self.families.iter().enumerate() {
            for (b, fb) in self.families.iter().enumerate().skip(a + 1) {
                for &x in fa {
                    for &y in fb {
                        if !diff.contains_point(x - y, tol) {
                            return Err(Error::HypothesisViolation { a, b });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::NonFinite);
        }
        if lo > hi {
            return Err(Error::InvalidInstance(format!("interval [{lo}, {hi}] is reversed")));
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    #[inline]
    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn padded(&self, r: f64) -> Interval {
        Interval {
            lo: self.lo - r,
            hi: self.hi + r,
        }
    }
}

/// Project every translate onto the axis `axis_normal`, family by family.
pub fn project_to_intervals(inst: &Instance, axis_normal: Vec2) -> Vec<Vec<Interval>> {
    let (base_lo, base_hi) = inst.body.extent(axis_normal);
    inst.families
        .iter()
        .map(|fam| {
            fam.iter()
                .map(|&x| {
                    let s = axis_normal.dot(x);
                    Interval {
                        lo: base_lo + s,
                        hi: base_hi + s,
                    }
                })
                .collect()
        })
        .collect()
}

/// Max of the lows when it does not exceed the min of the highs.
pub fn common_point(intervals: &[Interval]) -> Option<f64> {
    if intervals.is_empty() {
        return None;
    }
    let lo = intervals.iter().map(|i| i.lo).fold(f64::NEG_INFINITY, f64::max);
    let hi = intervals.iter().map(|i| i.hi).fold(f64::INFINITY, f64::min);
    (lo <= hi).then_some(lo)
}

/// `min hi − max lo` of all projections onto the normal of `theta`:
/// non-negative exactly when a transversal with that direction exists.
pub fn slack(inst: &Instance, theta: Direction) -> f64 {
    let n = theta.normal();
    let body = inst.body.width(n);
    let (lo, hi) = inst
        .members()
        .map(|(_, _, x)| n.dot(x))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
    body - (hi - lo)
}

/// Re-check a line against every translate directly from the vertices.
pub fn meets_all(inst: &Instance, line: &Line, tol: f64) -> bool {
    inst.members()
        .all(|(_, _, x)| line.distance_to_points(inst.body.vertices(), x) <= tol)
}

fn line_for(inst: &Instance, theta: Direction) -> Option<Line> {
    let n = theta.normal();
    let all: Vec<Interval> = project_to_intervals(inst, n).into_iter().flatten().collect();
    let lo = common_point(&all)?;
    let hi = all.iter().map(|i| i.hi).fold(f64::INFINITY, f64::min);
    Some(Line {
        normal: n,
        offset: 0.5 * (lo + hi),
    })
}

/// A line with direction `theta` meeting every translate, through the
/// middle of the common projection.
pub fn transversal_in_direction(inst: &Instance, theta: Direction) -> Option<Line> {
    let line = line_for(inst, theta)?;
    meets_all(inst, &line, inst.tolerance()).then_some(line)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransversalConfig {
    pub coarse_samples: usize,
    pub refine_iters: usize,
    /// Local maxima of the coarse scan that get refined.
    pub refine_candidates: usize,
}

impl Default for TransversalConfig {
    fn default() -> Self {
        TransversalConfig {
            coarse_samples: 720,
            refine_iters: 60,
            refine_candidates: 8,
        }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        c
    } else {
        d
    }
}

/// Search for a direction admitting a transversal: coarse scan of the slack
/// over `[0, π)`, returning the first non-negative sample, then golden-section
/// refinement around the best local maxima. Every returned line has been
/// re-validated against all translates.
pub fn find_transversal(inst: &Instance, cfg: &TransversalConfig) -> Option<(Direction, Line)> {
    let n = cfg.coarse_samples.max(1);
    let tol = inst.tolerance();
    let dir = |a: f64| Direction::from_angle(a).ok();
    let try_angle = |a: f64| -> Option<(Direction, Line)> {
        let d = dir(a)?;
        let line = line_for(inst, d)?;
        meets_all(inst, &line, tol).then_some((d, line))
    };

    let angles: Vec<f64> = (0..n).map(|k| k as f64 * PI / n as f64).collect();
    let mut values = Vec::with_capacity(n);
    for &a in &angles {
        let s = dir(a).map_or(f64::NEG_INFINITY, |d| slack(inst, d));
        if s >= 0.0 {
            if let Some(found) = try_angle(a) {
                return Some(found);
            }
        }
        values.push(s);
    }

    let mut maxima: Vec<usize> = (0..n)
        .filter(|&k| values[k] >= values[(k + n - 1) % n] && values[k] >= values[(k + 1) % n])
        .collect();
    maxima.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(std::cmp::Ordering::Equal));
    let step = PI / n as f64;
    for &k in maxima.iter().take(cfg.refine_candidates) {
        let f = |a: f64| dir(a).map_or(f64::NEG_INFINITY, |d| slack(inst, d));
        let best = golden_max(f, angles[k] - step, angles[k] + step, cfg.refine_iters);
        if f(best) >= 0.0 {
            if let Some(found) = try_angle(best) {
                return Some(found);
            }
        }
    }
    None
}
