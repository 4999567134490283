//! The four-point piercing pipeline and its certificates.

use serde::{Deserialize, Serialize};

use crate::approx::{find_homothetic_pair, ApproxConfig, ApproxResult};
use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Line, Parallelogram, Point2, Vec2};
use crate::oracle::brute_force_piercing;
use crate::transversal::{find_transversal, project_to_intervals, Instance, Interval, TransversalConfig};

/// Relative tolerance on `ρ ≤ 2` in [`four_cover`] and on parallelism checks.
pub const COVER_TOL: f64 = 1e-9;

/// Choose `(j, t)` so that `t` lies in every interval outside family `j`.
///
/// When all intervals share a point, `j = 0` and `t` is the largest left
/// endpoint. Otherwise the first disjoint pair in `(family, member)` order
/// must come from one family, and `t` is the midpoint of its gap.
pub fn colorful_interval_pierce(families: &[Vec<Interval>]) -> Result<(usize, f64)> {
    let flat: Vec<(usize, Interval)> = families
        .iter()
        .enumerate()
        .flat_map(|(f, fam)| fam.iter().map(move |&i| (f, i)))
        .collect();
    let lo = flat.iter().map(|(_, i)| i.lo).fold(f64::NEG_INFINITY, f64::max);
    let hi = flat.iter().map(|(_, i)| i.hi).fold(f64::INFINITY, f64::min);
    if lo <= hi {
        return Ok((0, if flat.is_empty() { 0.0 } else { lo }));
    }
    for (a, &(fa, ia)) in flat.iter().enumerate() {
        for &(fb, ib) in &flat[a + 1..] {
            if ia.intersects(&ib) {
                continue;
            }
            if fa != fb {
                return Err(Error::HypothesisViolation { a: fa, b: fb });
            }
            let (left, right) = if ia.hi < ib.lo { (ia, ib) } else { (ib, ia) };
            return Ok((fa, 0.5 * (left.hi + right.lo)));
        }
    }
    unreachable!("intervals without a common point contain a disjoint pair")
}

/// The line `{x : x·axis_normal = t}`.
pub fn lift_to_line(t: f64, axis_normal: Vec2) -> Line {
    Line {
        normal: axis_normal,
        offset: t,
    }
}

fn parallel(a: Vec2, b: Vec2) -> bool {
    a.cross(b).abs() <= COVER_TOL * a.norm() * b.norm()
}

/// `{x : Q + x meets ℓ and ℓ'}`, which is `−Q + (ℓ ∩ ℓ')` when the lines
/// run along the sides of `Q`.
pub fn region_r(q: &Parallelogram, ell: &Line, ell_prime: &Line) -> Result<Parallelogram> {
    let (d1, d2) = (ell.direction().unit(), ell_prime.direction().unit());
    if parallel(d1, d2) {
        return Err(Error::DegenerateLines);
    }
    let sides_ok = (parallel(d1, q.e1) && parallel(d2, q.e2)) || (parallel(d1, q.e2) && parallel(d2, q.e1));
    if !sides_ok {
        return Err(Error::NotParallel);
    }
    let p = ell.intersect(ell_prime)?;
    Ok(Parallelogram {
        anchor: p - q.anchor,
        e1: -q.e1,
        e2: -q.e2,
    })
}

/// Anchors `a_k` with `R ⊆ ⋃ (−P + a_k)`, one per quarter of `R`.
/// Each `a_k` lies in `P + x` for every `x` in its quarter.
pub fn four_cover(region: &Parallelogram, p: &Parallelogram) -> Result<[Point2; 4]> {
    // pair each edge of R with the edge of P it is parallel to
    let (r1, r2) = if parallel(region.e1, p.e1) && parallel(region.e2, p.e2) {
        (region.e1, region.e2)
    } else if parallel(region.e1, p.e2) && parallel(region.e2, p.e1) {
        (region.e2, region.e1)
    } else {
        return Err(Error::NotParallel);
    };
    // write R = {O − s f1 − t f2 : s, t ∈ [0, 1]} with f_i a positive multiple of e_i(P)
    let mut o = region.anchor;
    let mut f = [Vec2::ZERO; 2];
    for (i, (r, e)) in [(r1, p.e1), (r2, p.e2)].into_iter().enumerate() {
        let rho = r.dot(e) / e.norm_sq();
        if rho.abs() > 2.0 + COVER_TOL {
            return Err(Error::RatioExceeded { ratio: rho.abs() });
        }
        if rho < 0.0 {
            f[i] = -r;
        } else {
            o += r;
            f[i] = r;
        }
    }
    // −P + a = {a − p.anchor − s e1 − t e2}
    let a = |d1: f64, d2: f64| p.anchor + o - f[0] * (0.5 * d1) - f[1] * (0.5 * d2);
    Ok([a(0.0, 0.0), a(1.0, 0.0), a(0.0, 1.0), a(1.0, 1.0)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    TransversalFourPoints,
    FallbackBruteForce,
}

impl Branch {
    /// Points allowed on this branch.
    pub fn max_points(self) -> usize {
        match self {
            Branch::TransversalFourPoints => 4,
            Branch::FallbackBruteForce => 3,
        }
    }
}

/// `(family, member, point index)`.
pub type AssignmentEntry = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiercingCertificate {
    pub branch: Branch,
    pub excluded_family: usize,
    pub points: Vec<Point2>,
    pub ell: Option<Line>,
    pub ell_prime: Option<Line>,
    pub assignment: Vec<AssignmentEntry>,
    pub approx: Option<ApproxResult>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PierceConfig {
    pub transversal: TransversalConfig,
    pub approx: ApproxConfig,
}

/// First point containing each translate outside `excluded`; `None` if some
/// translate is missed.
fn assign(inst: &Instance, excluded: usize, points: &[Point2], tol: f64) -> Option<Vec<AssignmentEntry>> {
    inst.members()
        .filter(|&(f, _, _)| f != excluded)
        .map(|(f, m, x)| {
            points
                .iter()
                .position(|&p| inst.body.contains_point(p - x, tol))
                .map(|i| (f, m, i))
        })
        .collect()
}

/// Keep only used points and renumber the assignment.
fn prune(points: Vec<Point2>, assignment: Vec<AssignmentEntry>) -> (Vec<Point2>, Vec<AssignmentEntry>) {
    let mut remap = vec![usize::MAX; points.len()];
    let mut kept = Vec::new();
    let assignment = assignment
        .into_iter()
        .map(|(f, m, i)| {
            if remap[i] == usize::MAX {
                remap[i] = kept.len();
                kept.push(points[i]);
            }
            (f, m, remap[i])
        })
        .collect();
    (kept, assignment)
}

fn transversal_branch(inst: &Instance, cfg: &PierceConfig, tol: f64) -> Result<PiercingCertificate> {
    let (u, ell) = find_transversal(inst, &cfg.transversal).ok_or_else(|| Error::PipelineFailure {
        reason: "no line transversal found".into(),
        repro: String::new(),
    })?;
    let approx = find_homothetic_pair(&inst.body, u, &cfg.approx)?;
    let axis = approx.v.normal();
    let intervals = project_to_intervals(inst, axis);
    let (j, t) = match colorful_interval_pierce(&intervals) {
        Ok(r) => r,
        Err(Error::HypothesisViolation { .. }) => {
            let padded: Vec<Vec<Interval>> = intervals
                .iter()
                .map(|f| f.iter().map(|i| i.padded(tol)).collect())
                .collect();
            colorful_interval_pierce(&padded)?
        }
        Err(e) => return Err(e),
    };
    let ell_prime = lift_to_line(t, axis);
    let region = region_r(&approx.q, &ell, &ell_prime)?;
    let candidates = four_cover(&region, &approx.p)?;
    let assignment = assign(inst, j, &candidates, tol).ok_or_else(|| Error::PipelineFailure {
        reason: "a translate outside the excluded family contains none of the four points".into(),
        repro: String::new(),
    })?;
    let (points, assignment) = prune(candidates.to_vec(), assignment);
    Ok(PiercingCertificate {
        branch: Branch::TransversalFourPoints,
        excluded_family: j,
        points,
        ell: Some(ell),
        ell_prime: Some(ell_prime),
        assignment,
        approx: Some(approx),
    })
}

fn fallback_branch(inst: &Instance, tol: f64) -> Option<PiercingCertificate> {
    for j in 0..inst.n_families() {
        let polys: Vec<ConvexPolygon> = inst
            .members()
            .filter(|&(f, _, _)| f != j)
            .map(|(_, _, x)| inst.body.translated(x))
            .collect();
        let Ok(Some((_, pts))) = brute_force_piercing(&polys, 3) else {
            continue;
        };
        let Some(assignment) = assign(inst, j, &pts, tol) else {
            continue;
        };
        let (points, assignment) = prune(pts, assignment);
        return Some(PiercingCertificate {
            branch: Branch::FallbackBruteForce,
            excluded_family: j,
            points,
            ell: None,
            ell_prime: None,
            assignment,
            approx: None,
        });
    }
    None
}

/// Pierce all translates outside one family with at most four points.
///
/// Runs the transversal construction; if it fails for any reason, searches
/// for a family whose removal leaves a union pierceable by three points.
pub fn pierce(inst: &Instance, cfg: &PierceConfig) -> Result<PiercingCertificate> {
    inst.validate()?;
    let tol = inst.tolerance();
    let primary = transversal_branch(inst, cfg, tol);
    let cert = match primary {
        Ok(c) => c,
        Err(first) => fallback_branch(inst, tol).ok_or_else(|| Error::PipelineFailure {
            reason: format!("transversal branch failed ({first}) and no family leaves a 3-pierceable union"),
            repro: serde_json::to_string(inst).unwrap_or_default(),
        })?,
    };
    let report = verify_certificate(inst, &cert);
    if !report.passed() {
        return Err(Error::PipelineFailure {
            reason: format!("certificate failed verification: {:?}", report.violations.first()),
            repro: serde_json::to_string(inst).unwrap_or_default(),
        });
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub family: usize,
    pub member: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// Translates outside the excluded family that were checked.
    pub checked: usize,
    pub points: usize,
    pub max_points: usize,
    pub violations: Vec<Violation>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-check every translate outside the excluded family directly against its
/// assigned point, at the instance tolerance.
pub fn verify_certificate(inst: &Instance, cert: &PiercingCertificate) -> CertificateReport {
    let tol = inst.tolerance();
    let j = cert.excluded_family;
    let mut violations = Vec::new();
    let max_points = cert.branch.max_points();
    if cert.points.len() > max_points {
        violations.push(Violation {
            family: usize::MAX,
            member: usize::MAX,
            reason: format!("{} points exceed the branch limit {max_points}", cert.points.len()),
        });
    }
    if j >= inst.n_families() {
        violations.push(Violation {
            family: j,
            member: usize::MAX,
            reason: "excluded family index out of range".into(),
        });
    }
    let mut checked = 0;
    for (f, m, x) in inst.members() {
        if f == j {
            continue;
        }
        checked += 1;
        let entry = cert.assignment.iter().find(|&&(af, am, _)| af == f && am == m);
        let reason = match entry {
            None => Some("no assigned point".to_string()),
            Some(&(_, _, i)) => match cert.points.get(i) {
                None => Some(format!("point index {i} out of range")),
                Some(&p) if !inst.body.contains_point(p - x, tol) => {
                    Some(format!("point {i} lies outside, distance {:e}", inst.body.signed_distance(p - x)))
                }
                Some(_) => None,
            },
        };
        if let Some(reason) = reason {
            violations.push(Violation { family: f, member: m, reason });
        }
    }
    CertificateReport {
        checked,
        points: cert.points.len(),
        max_points,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Direction;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn square(side: f64) -> Parallelogram {
        Parallelogram::new(Vec2::ZERO, Vec2::new(side, 0.0), Vec2::new(0.0, side)).unwrap()
    }

    #[test]
    fn colorful_examples() {
        assert_eq!(
            colorful_interval_pierce(&[vec![iv(0.0, 1.0), iv(4.0, 5.0)], vec![iv(0.5, 4.5)]]).unwrap(),
            (0, 2.5)
        );
        let (j, t) = colorful_interval_pierce(&[vec![iv(0.0, 2.0)], vec![iv(1.0, 3.0)]]).unwrap();
        assert_eq!(j, 0);
        assert!((1.0..=2.0).contains(&t));
        let (_, t) = colorful_interval_pierce(&[vec![iv(0.0, 1.0), iv(0.2, 0.9)], vec![iv(0.5, 2.0)]]).unwrap();
        assert!((0.5..=0.9).contains(&t));
        assert_eq!(
            colorful_interval_pierce(&[vec![iv(0.0, 1.0)], vec![iv(2.0, 3.0)]]),
            Err(Error::HypothesisViolation { a: 0, b: 1 })
        );
        // separated pair in the second family
        let (j, t) =
            colorful_interval_pierce(&[vec![iv(0.0, 10.0)], vec![iv(0.0, 1.0), iv(3.0, 4.0)], vec![iv(0.5, 3.5)]])
                .unwrap();
        assert_eq!((j, t), (1, 2.0));
    }

    #[test]
    fn lift_examples() {
        let l = lift_to_line(2.5, Vec2::new(1.0, 0.0));
        assert!(l.direction().angle_to(Direction::VERTICAL) < 1e-15);
        assert_eq!(l.signed_distance(Vec2::new(2.5, 7.0)), 0.0);
        let l = lift_to_line(0.0, Vec2::new(0.0, 1.0));
        assert_eq!(l.signed_distance(Vec2::new(3.0, 0.0)), 0.0);
    }

    #[test]
    fn region_examples() {
        let q = square(2.0);
        let x_axis = Line::through(Vec2::ZERO, Direction::HORIZONTAL);
        let y_axis = Line::through(Vec2::ZERO, Direction::VERTICAL);
        let r = region_r(&q, &x_axis, &y_axis).unwrap();
        let mut v: Vec<_> = r.vertices().iter().map(|p| (p.x, p.y)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(v, vec![(-2.0, -2.0), (-2.0, 0.0), (0.0, -2.0), (0.0, 0.0)]);
        assert_eq!((r.e1, r.e2), (-q.e1, -q.e2));

        let d = Vec2::new(0.3, -1.7);
        let r2 = region_r(&q, &x_axis.translated(d), &y_axis.translated(d)).unwrap();
        assert!((r2.anchor - (r.anchor + d)).norm() < 1e-15);
        assert_eq!(region_r(&q, &x_axis, &x_axis.translated(d)), Err(Error::DegenerateLines));
        let slanted = Line::through(Vec2::ZERO, Direction::from_degrees(30.0).unwrap());
        assert_eq!(region_r(&q, &x_axis, &slanted), Err(Error::NotParallel));
    }

    #[test]
    fn cover_examples() {
        let region = Parallelogram::new(Vec2::new(0.0, 0.0), Vec2::new(-2.0, 0.0), Vec2::new(0.0, -2.0));
        // new() rejects clockwise edge pairs; negated edges keep orientation
        let region = region.unwrap_or(Parallelogram {
            anchor: Vec2::ZERO,
            e1: Vec2::new(-2.0, 0.0),
            e2: Vec2::new(0.0, -2.0),
        });
        let pts = four_cover(&region, &square(1.0)).unwrap();
        let expect = [(0.0, 0.0), (-1.0, 0.0), (0.0, -1.0), (-1.0, -1.0)];
        for (p, e) in pts.iter().zip(expect) {
            assert_eq!((p.x, p.y), e);
        }
        // same region with positive edges anchored at its lower-left corner
        let pos = Parallelogram::new(Vec2::new(-2.0, -2.0), Vec2::new(2.0, 0.0), Vec2::new(0.0, 2.0)).unwrap();
        let mut a: Vec<_> = four_cover(&pos, &square(1.0)).unwrap().iter().map(|p| (p.x, p.y)).collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut b = expect.to_vec();
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(a, b);

        let big = Parallelogram {
            anchor: Vec2::ZERO,
            e1: Vec2::new(-2.5, 0.0),
            e2: Vec2::new(0.0, -2.0),
        };
        assert!(matches!(four_cover(&big, &square(1.0)), Err(Error::RatioExceeded { .. })));
    }

    #[test]
    fn trivial_pipeline() {
        let k = crate::oracle::gen_body("square").unwrap();
        let inst = Instance::new(k, vec![vec![Vec2::new(1.0, 2.0)], vec![Vec2::new(1.0, 2.0)]]).unwrap();
        let cert = pierce(&inst, &PierceConfig::default()).unwrap();
        assert_eq!(cert.branch, Branch::TransversalFourPoints);
        assert!((1..=4).contains(&cert.points.len()));
        assert!(verify_certificate(&inst, &cert).passed());
    }

    #[test]
    fn tampering_is_caught() {
        let k = crate::oracle::gen_body("disk256").unwrap();
        let inst = Instance::new(
            k,
            vec![vec![Vec2::ZERO, Vec2::new(0.3, 0.1)], vec![Vec2::new(0.2, -0.2)]],
        )
        .unwrap();
        let cert = pierce(&inst, &PierceConfig::default()).unwrap();
        let mut bad = cert.clone();
        bad.points[0] += Vec2::new(2.0 * inst.body.diameter(), 0.0);
        assert!(!verify_certificate(&inst, &bad).passed());

        // adding to the excluded family keeps the certificate valid
        let mut grown = inst.clone();
        let j = cert.excluded_family;
        let extra = grown.families[j][0];
        grown.families[j].push(extra);
        assert!(verify_certificate(&grown, &cert).passed());

        // an instance whose remaining families are empty passes vacuously
        let mut empty = cert.clone();
        empty.points.clear();
        empty.assignment.clear();
        let single = Instance {
            families: vec![inst.families[0].clone(), vec![]],
            ..inst.clone()
        };
        empty.excluded_family = 0;
        assert!(verify_certificate(&single, &empty).passed());
    }
}
