use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Vec2};

fn regular(k: usize, radius: f64) -> Vec<Vec2> {
    // bottom edge horizontal, so `ngon4` is axis-aligned
    let start = -PI / 2.0 + PI / k as f64;
    (0..k)
        .map(|i| {
            let a = start + TAU * i as f64 / k as f64;
            Vec2::new(radius * a.cos(), radius * a.sin())
        })
        .collect()
}

fn ellipse(n: usize, ratio: f64) -> Vec<Vec2> {
    (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            Vec2::new(0.5 * ratio * a.cos(), 0.5 * a.sin())
        })
        .collect()
}

fn reuleaux(per_arc: usize) -> Vec<Vec2> {
    let corners: Vec<Vec2> = (0..3)
        .map(|i| {
            let a = PI / 2.0 + TAU * i as f64 / 3.0;
            Vec2::new(a.cos(), a.sin()) * (1.0 / 3f64.sqrt())
        })
        .collect();
    let mut pts = Vec::with_capacity(3 * per_arc);
    for i in 0..3 {
        // arc centered at corner i between the other two, counterclockwise
        let c = corners[i];
        let from = corners[(i + 1) % 3] - c;
        let a0 = from.y.atan2(from.x);
        for s in 0..per_arc {
            let a = a0 + (PI / 3.0) * s as f64 / per_arc as f64;
            pts.push(c + Vec2::new(a.cos(), a.sin()));
        }
    }
    pts
}

fn random_convex(k: usize, seed: u64) -> Result<ConvexPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() * TAU).collect();
    angles.sort_by(f64::total_cmp);
    let stretch = rng.gen_range(0.4..2.5);
    let shear = rng.gen_range(-0.6..0.6);
    let rot = rng.gen::<f64>() * PI;
    let (s, c) = rot.sin_cos();
    let pts: Vec<Vec2> = angles
        .iter()
        .map(|a| {
            let p = Vec2::new(stretch * a.cos() + shear * a.sin(), a.sin());
            Vec2::new(c * p.x - s * p.y, s * p.x + c * p.y)
        })
        .collect();
    ConvexPolygon::new(pts)
}

fn unknown(spec: &str) -> Error {
    Error::UnknownBody(spec.to_string())
}

/// Named test bodies:
///
/// | name | body |
/// |------|------|
/// | `square` | unit square `[0,1]²` |
/// | `triangle` | `(0,0), (1,0), (0,1)` |
/// | `ngon<k>` | regular `k`-gon, `3 <= k <= 64`, circumradius ½, bottom edge horizontal |
/// | `disk256` | 256-gon inscribed in the disk of radius ½ |
/// | `ellipse256[:r]` | 256-gon on the ellipse with semi-axes `r/2`, `1/2` (default `r = 2`) |
/// | `reuleaux192` | Reuleaux triangle of width 1, 64 vertices per arc |
/// | `random<k>:<seed>` | `k` seeded points in convex position, affinely stretched |
pub fn gen_body(spec: &str) -> Result<ConvexPolygon> {
    let spec = spec.trim();
    let pts = match spec {
        "square" => vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ],
        "triangle" => vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)],
        "disk256" => regular(256, 0.5),
        "reuleaux192" => reuleaux(64),
        _ => {
            if let Some(rest) = spec.strip_prefix("ngon") {
                let k: usize = rest.parse().map_err(|_| unknown(spec))?;
                if !(3..=64).contains(&k) {
                    return Err(unknown(spec));
                }
                regular(k, 0.5)
            } else if let Some(rest) = spec.strip_prefix("ellipse256") {
                let ratio = match rest.strip_prefix(':') {
                    Some(r) => r.parse::<f64>().map_err(|_| unknown(spec))?,
                    None if rest.is_empty() => 2.0,
                    None => return Err(unknown(spec)),
                };
                if !(ratio.is_finite() && ratio > 0.0) {
                    return Err(unknown(spec));
                }
                ellipse(256, ratio)
            } else if let Some(rest) = spec.strip_prefix("random") {
                let (k, seed) = rest.split_once(':').ok_or_else(|| unknown(spec))?;
                let k: usize = k.parse().map_err(|_| unknown(spec))?;
                let seed: u64 = seed.parse().map_err(|_| unknown(spec))?;
                if !(3..=4096).contains(&k) {
                    return Err(unknown(spec));
                }
                return random_convex(k, seed);
            } else {
                return Err(unknown(spec));
            }
        }
    };
    ConvexPolygon::new(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn widths(p: &ConvexPolygon, n: usize) -> (f64, f64) {
        (0..n)
            .map(|i| {
                let a = PI * i as f64 / n as f64;
                p.width(Vec2::new(a.cos(), a.sin()))
            })
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| (lo.min(w), hi.max(w)))
    }

    #[test]
    fn named_shapes() {
        let sq = gen_body("ngon4").unwrap();
        assert_eq!(sq.len(), 4);
        for (a, b) in sq.edges() {
            let side = b - a;
            assert!(side.x.abs() < 1e-15 || side.y.abs() < 1e-15);
            assert!((side.norm() - 0.5 * 2f64.sqrt()).abs() < 1e-15);
        }
        assert_eq!(gen_body("triangle").unwrap().len(), 3);
        assert_eq!(gen_body("disk256").unwrap().len(), 256);
        assert_eq!(gen_body("reuleaux192").unwrap().len(), 192);
        let e = gen_body("ellipse256:3").unwrap();
        assert!((e.width(Vec2::new(1.0, 0.0)) - 3.0).abs() < 1e-12);
        assert!((gen_body("ellipse256").unwrap().width(Vec2::new(1.0, 0.0)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn widths_match_shapes() {
        let (lo, hi) = widths(&gen_body("disk256").unwrap(), 360);
        assert!((lo - 1.0).abs() <= 2e-4 && (hi - 1.0).abs() <= 2e-4);
        let (lo, hi) = widths(&gen_body("reuleaux192").unwrap(), 360);
        assert!(hi - lo <= 5e-4 && (hi - 1.0).abs() <= 5e-4);
    }

    #[test]
    fn random_is_seeded() {
        let a = gen_body("random24:7").unwrap();
        assert_eq!(a, gen_body("random24:7").unwrap());
        assert_ne!(a, gen_body("random24:8").unwrap());
        assert!(a.len() >= 20);
    }

    #[test]
    fn bad_names() {
        for s in ["blob", "ngon2", "ngon65", "random5", "ellipse256:x", "ellipse256:-1", "ngonx"] {
            assert!(matches!(gen_body(s), Err(Error::UnknownBody(_))), "{s}");
        }
    }
}
