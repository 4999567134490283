use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::ConvexPolygon;
use crate::transversal::Instance;

use super::{gen_body, gen_instance, BodySource, GenConfig};

const RANDOM_BODIES: [(usize, u64); 5] = [(12, 1), (18, 2), (24, 3), (32, 4), (40, 5)];

/// Names of the reference bodies: regular 3..12-gons, the unit square, five
/// seeded random polygons, and the round shapes.
pub fn acceptance_body_names() -> Vec<String> {
    let mut names: Vec<String> = (3..=12).map(|k| format!("ngon{k}")).collect();
    names.push("square".into());
    names.extend(RANDOM_BODIES.iter().map(|(k, s)| format!("random{k}:{s}")));
    names.extend(["disk256", "ellipse256", "reuleaux192"].map(String::from));
    names
}

/// The reference bodies with their names.
pub fn acceptance_bodies() -> Vec<(String, ConvexPolygon)> {
    acceptance_body_names()
        .into_iter()
        .map(|n| {
            let b = gen_body(&n).expect("reference body names are valid");
            (n, b)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub count: usize,
    pub base_seed: u64,
    pub n_choices: Vec<usize>,
    pub max_size: usize,
    pub spreads: Vec<f64>,
    /// Body names; defaults to the reference bodies plus `triangle`.
    pub bodies: Vec<String>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        let mut bodies = acceptance_body_names();
        bodies.push("triangle".into());
        CorpusConfig {
            count: 1000,
            base_seed: 0,
            n_choices: vec![2, 3, 5],
            max_size: 8,
            spreads: vec![0.0, 0.25, 0.5, 1.0, 2.0],
            bodies,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub index: usize,
    pub body: String,
    pub gen: GenConfig,
    pub instance: Instance,
}

/// Generator configuration of case `index`, before any retry.
fn case_config(cfg: &CorpusConfig, index: usize) -> GenConfig {
    let seed = cfg.base_seed.wrapping_add(index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let n = cfg.n_choices[index % cfg.n_choices.len()];
    let body = cfg.bodies[(index / cfg.n_choices.len()) % cfg.bodies.len()].clone();
    GenConfig {
        seed,
        body: BodySource::Named(body),
        sizes: (0..n).map(|_| rng.gen_range(1..=cfg.max_size)).collect(),
        spread: cfg.spreads[rng.gen_range(0..cfg.spreads.len())],
        margin: 0.1,
        max_rejections: 20_000,
    }
}

/// Build `count` instances deterministically. A case whose rejection budget
/// runs out is retried with halved spread.
pub fn instance_corpus(cfg: &CorpusConfig) -> Result<Vec<CorpusCase>> {
    if cfg.n_choices.is_empty() || cfg.bodies.is_empty() || cfg.spreads.is_empty() || cfg.max_size == 0 {
        if cfg.count == 0 {
            return Ok(Vec::new());
        }
        return Err(Error::InvalidInstance("corpus configuration has an empty choice list".into()));
    }
    (0..cfg.count)
        .map(|index| {
            let mut gen = case_config(cfg, index);
            loop {
                match gen_instance(&gen) {
                    Ok(instance) => {
                        let body = match &gen.body {
                            BodySource::Named(n) => n.clone(),
                            BodySource::Vertices(_) => "custom".into(),
                        };
                        return Ok(CorpusCase { index, body, gen, instance });
                    }
                    Err(Error::RejectionBudgetExceeded(_)) if gen.spread > 1e-3 => gen.spread *= 0.5,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_bodies() {
        let b = acceptance_bodies();
        assert_eq!(b.len(), 19);
        for (name, k) in &b {
            if let Some(r) = name.strip_prefix("random") {
                let n: usize = r.split(':').next().unwrap().parse().unwrap();
                assert!((12..=40).contains(&n) && k.len() >= 10, "{name}: {}", k.len());
            }
        }
    }

    #[test]
    fn small_corpus_is_deterministic() {
        let cfg = CorpusConfig {
            count: 12,
            ..CorpusConfig::default()
        };
        let a = instance_corpus(&cfg).unwrap();
        assert_eq!(a, instance_corpus(&cfg).unwrap());
        assert!(a.iter().all(|c| c.instance.families.iter().all(|f| f.len() <= 8)));
        assert!(instance_corpus(&CorpusConfig { count: 0, bodies: vec![], ..CorpusConfig::default() })
            .unwrap()
            .is_empty());
    }
}
