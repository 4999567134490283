use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Vec2};
use crate::transversal::Instance;

use super::gen_body;

/// Strict containment margin for cross-family offset differences, relative to
/// the body diameter.
const STRICT_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodySource {
    Named(String),
    Vertices(Vec<Vec2>),
}

impl BodySource {
    pub fn build(&self) -> Result<ConvexPolygon> {
        match self {
            BodySource::Named(s) => gen_body(s),
            BodySource::Vertices(v) => ConvexPolygon::new(v.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub body: BodySource,
    /// Member count per family; its length is the number of families.
    pub sizes: Vec<usize>,
    /// Within-family dispersion, in units of the body diameter.
    pub spread: f64,
    /// Family anchors are kept pairwise inside `(1 − margin)` times the difference body.
    pub margin: f64,
    pub max_rejections: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            body: BodySource::Named("disk256".into()),
            sizes: vec![5, 5, 5],
            spread: 0.5,
            margin: 0.1,
            max_rejections: 100_000,
        }
    }
}

impl GenConfig {
    pub fn n_families(&self) -> usize {
        self.sizes.len()
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInstance(m.to_string()));
        if self.sizes.len() < 2 {
            return bad("at least 2 families are required");
        }
        if self.sizes.contains(&0) {
            return bad("family sizes must be positive");
        }
        if !(self.spread.is_finite() && self.spread >= 0.0) {
            return bad("spread must be finite and non-negative");
        }
        if !(0.0..1.0).contains(&self.margin) {
            return bad("margin must lie in [0, 1)");
        }
        Ok(())
    }
}

fn in_unit_disk(rng: &mut ChaCha8Rng) -> Vec2 {
    loop {
        let p = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if p.norm_sq() <= 1.0 {
            return p;
        }
    }
}

/// Rejection-sampled instance satisfying the cross-family hypothesis with a
/// strict margin. Deterministic in `cfg`.
pub fn gen_instance(cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    let body = cfg.body.build()?;
    let diff = body.difference_body();
    let scale = body.diameter();
    let strict = -STRICT_MARGIN * scale;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rejections = 0usize;
    let mut reject = || -> Result<()> {
        rejections += 1;
        if rejections > cfg.max_rejections {
            Err(Error::RejectionBudgetExceeded(cfg.max_rejections))
        } else {
            Ok(())
        }
    };

    // anchors in half of the shrunken difference body have pairwise
    // differences in the whole shrunken body
    let half = 0.5 * (1.0 - cfg.margin);
    let (xl, xh) = diff.extent(Vec2::new(1.0, 0.0));
    let (yl, yh) = diff.extent(Vec2::new(0.0, 1.0));
    let centroid = body.centroid();
    let mut anchors = Vec::with_capacity(cfg.n_families());
    while anchors.len() < cfg.n_families() {
        let p = Vec2::new(rng.gen_range(xl..=xh), rng.gen_range(yl..=yh));
        if diff.signed_distance(p) <= 0.0 {
            anchors.push(p * half - centroid);
        } else {
            reject()?;
        }
    }

    let mut families: Vec<Vec<Vec2>> = vec![Vec::new(); cfg.n_families()];
    let rounds = cfg.sizes.iter().copied().max().unwrap_or(0);
    for r in 0..rounds {
        for f in 0..cfg.n_families() {
            if cfg.sizes[f] <= r {
                continue;
            }
            loop {
                let x = anchors[f] + in_unit_disk(&mut rng) * (cfg.spread * scale);
                let ok = families
                    .iter()
                    .enumerate()
                    .filter(|&(g, _)| g != f)
                    .all(|(_, fam)| fam.iter().all(|&y| diff.signed_distance(x - y) < strict));
                if ok {
                    families[f].push(x);
                    break;
                }
                reject()?;
            }
        }
    }
    let mut inst = Instance::new(body, families)?;
    inst.seed = Some(cfg.seed);
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_spread_uses_anchors() {
        let cfg = GenConfig {
            spread: 0.0,
            sizes: vec![3, 2, 4],
            ..GenConfig::default()
        };
        let inst = gen_instance(&cfg).unwrap();
        for fam in &inst.families {
            assert!(fam.iter().all(|&x| x == fam[0]));
        }
        assert_eq!(inst.families.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2, 4]);
    }

    #[test]
    fn deterministic_and_valid() {
        let cfg = GenConfig {
            seed: 42,
            body: BodySource::Named("triangle".into()),
            ..GenConfig::default()
        };
        let a = gen_instance(&cfg).unwrap();
        let b = gen_instance(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        a.validate().unwrap();
        let c = gen_instance(&GenConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = GenConfig {
            spread: 50.0,
            sizes: vec![8, 8],
            max_rejections: 10,
            ..GenConfig::default()
        };
        assert_eq!(gen_instance(&cfg), Err(Error::RejectionBudgetExceeded(10)));
    }

    #[test]
    fn bad_configs() {
        for cfg in [
            GenConfig { sizes: vec![3], ..GenConfig::default() },
            GenConfig { sizes: vec![3, 0], ..GenConfig::default() },
            GenConfig { spread: -1.0, ..GenConfig::default() },
        ] {
            assert!(gen_instance(&cfg).is_err());
        }
    }
}
