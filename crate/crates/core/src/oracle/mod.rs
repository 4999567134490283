//! Independent oracles and seeded generators used as ground truth.

mod bodies;
mod brute;
mod corpus;
mod generate;
mod probe;

pub use bodies::gen_body;
pub use brute::{
    brute_force_piercing, exhaustive_interval_piercing, greedy_interval_piercing, grid_piercing, MAX_K, MAX_POLYS,
};
pub use corpus::{acceptance_bodies, acceptance_body_names, instance_corpus, CorpusCase, CorpusConfig};
pub use generate::{gen_instance, BodySource, GenConfig};
pub use probe::{conjecture_probe, probe_case, summarize, ProbeOutcome, ProbeReport, ProbeRow};
