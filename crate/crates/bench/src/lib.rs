//! Fixtures shared by the criterion benches.

use pierce4::oracle::{gen_body, instance_corpus, CorpusCase, CorpusConfig};
use pierce4::{ConvexPolygon, Direction};

/// Bodies of increasing vertex count, with a generic direction for each.
pub fn approx_fixtures() -> Vec<(String, ConvexPolygon, Direction)> {
    ["triangle", "ngon12", "random40:5", "reuleaux192", "disk256"]
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let body = gen_body(name).expect("fixture names are valid");
            let dir = Direction::from_degrees(11.0 + 17.0 * i as f64).expect("finite angle");
            (name.to_string(), body, dir)
        })
        .collect()
}

/// The first `count` instances of the default corpus restricted to `body`.
pub fn corpus_for(body: &str, count: usize) -> Vec<CorpusCase> {
    instance_corpus(&CorpusConfig {
        count,
        bodies: vec![body.to_string()],
        ..CorpusConfig::default()
    })
    .expect("default corpus generates")
}
