use std::path::PathBuf;
use std::time::Instant;

use anyhow::anyhow;
use pierce4::oracle::{acceptance_bodies, instance_corpus, probe_case, summarize, CorpusConfig};
use pierce4::report::{to_json, BenchSummary, Tolerances};
use pierce4::{
    find_homothetic_pair, pierce, verify_approx, verify_certificate, ApproxConfig, Branch, Direction, Payload,
    PierceConfig, RunReport,
};
use rayon::prelude::*;

use crate::commands::effective_seed;
use crate::io::emit;
use crate::{failure, input_err, CliResult};

pub struct BenchArgs {
    pub corpus: String,
    pub seeds: String,
    pub jobs: usize,
    pub bodies: Option<Vec<String>>,
    pub directions: usize,
    pub out: Option<PathBuf>,
}

struct Parts {
    approx: bool,
    pierce: bool,
    probe: bool,
}

fn parts(name: &str) -> CliResult<Parts> {
    let p = |approx, pierce, probe| Ok(Parts { approx, pierce, probe });
    match name {
        "default" => p(true, true, false),
        "approx" => p(true, false, false),
        "pierce" => p(false, true, false),
        "probe" => p(false, true, true),
        "all" => p(true, true, true),
        "empty" => p(false, false, false),
        other => Err(input_err(anyhow!("unknown corpus {other:?}"))),
    }
}

fn seed_range(s: &str) -> CliResult<(u64, u64)> {
    let bad = || input_err(anyhow!("--seeds must look like START..END, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if b < a {
        return Err(bad());
    }
    Ok((a, b))
}

struct ApproxOutcome {
    passed: bool,
    ratio: f64,
    residual: f64,
}

struct PierceOutcome {
    passed: bool,
    size: usize,
    branch: Option<Branch>,
}

pub fn bench(argv: Vec<String>, a: BenchArgs) -> CliResult {
    let start = Instant::now();
    let parts = parts(&a.corpus)?;
    let (lo, hi) = seed_range(&a.seeds)?;
    let lo_eff = effective_seed(lo)?;
    let count = (hi - lo) as usize;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| input_err(anyhow!("thread pool: {e}")))?;
    let pcfg = PierceConfig::default();

    let mut bodies = acceptance_bodies();
    if let Some(filter) = &a.bodies {
        bodies.retain(|(n, _)| filter.contains(n));
    }
    let approx_jobs: Vec<(usize, usize)> = if parts.approx {
        (0..bodies.len()).flat_map(|b| (0..a.directions).map(move |d| (b, d))).collect()
    } else {
        Vec::new()
    };
    let acfg = ApproxConfig::default();
    let approx_out: Vec<ApproxOutcome> = pool.install(|| {
        approx_jobs
            .par_iter()
            .map(|&(b, d)| {
                let k = &bodies[b].1;
                let deg = 180.0 * d as f64 / a.directions as f64;
                let res = Direction::from_degrees(deg)
                    .and_then(|u| find_homothetic_pair(k, u, &acfg));
                match res {
                    Ok(r) => ApproxOutcome {
                        passed: verify_approx(k, &r, 1e-9, acfg.ratio_slack).passed(),
                        ratio: r.ratio,
                        residual: r.residual,
                    },
                    Err(_) => ApproxOutcome {
                        passed: false,
                        ratio: 0.0,
                        residual: 0.0,
                    },
                }
            })
            .collect()
    });

    let mut corpus_cfg = CorpusConfig {
        count: if parts.pierce { count } else { 0 },
        base_seed: lo_eff,
        ..CorpusConfig::default()
    };
    if let Some(filter) = &a.bodies {
        corpus_cfg.bodies.retain(|n| filter.contains(n));
        if corpus_cfg.bodies.is_empty() {
            corpus_cfg.count = 0;
        }
    }
    let cases = instance_corpus(&corpus_cfg).map_err(failure)?;
    let pierce_out: Vec<PierceOutcome> = pool.install(|| {
        cases
            .par_iter()
            .map(|c| match pierce(&c.instance, &pcfg) {
                Ok(cert) => PierceOutcome {
                    passed: verify_certificate(&c.instance, &cert).passed(),
                    size: cert.points.len(),
                    branch: Some(cert.branch),
                },
                Err(_) => PierceOutcome {
                    passed: false,
                    size: 0,
                    branch: None,
                },
            })
            .collect()
    });
    let probe = if parts.probe {
        let outcomes: Vec<_> = pool.install(|| cases.par_iter().map(|c| probe_case(c, &pcfg)).collect());
        Some(summarize(&outcomes))
    } else {
        None
    };

    let max_size = |b: Branch| {
        pierce_out
            .iter()
            .filter(|o| o.branch == Some(b))
            .map(|o| o.size)
            .max()
            .unwrap_or(0)
    };
    let summary = BenchSummary {
        cases: approx_out.len() + pierce_out.len(),
        approx_runs: approx_out.len(),
        approx_passed: approx_out.iter().filter(|o| o.passed).count(),
        max_ratio: approx_out.iter().map(|o| o.ratio).fold(0.0, f64::max),
        max_residual: approx_out.iter().map(|o| o.residual).fold(0.0, f64::max),
        pierce_runs: pierce_out.len(),
        pierce_passed: pierce_out.iter().filter(|o| o.passed).count(),
        fallback_runs: pierce_out
            .iter()
            .filter(|o| o.branch == Some(Branch::FallbackBruteForce))
            .count(),
        max_certificate_transversal: max_size(Branch::TransversalFourPoints),
        max_certificate_fallback: max_size(Branch::FallbackBruteForce),
        probe,
    };
    eprint!("{}", table(&summary));
    let input = serde_json::to_vec(&(&a.corpus, lo_eff, hi - lo + lo_eff, &a.bodies, a.directions))
        .expect("bench arguments serialize");
    let passed = summary.all_passed();
    let report = RunReport::new(argv, &input, Payload::Bench(summary), start.elapsed().as_secs_f64() * 1e3, Tolerances::default());
    emit(a.out.as_deref(), &to_json(&report))?;
    if passed {
        Ok(())
    } else {
        Err(failure(anyhow!("bench corpus has failures")))
    }
}

fn table(s: &BenchSummary) -> String {
    if s.cases == 0 {
        return "0 cases\n".into();
    }
    let mut t = String::new();
    t.push_str(&format!("{:<28} {:>10}\n", "metric", "value"));
    let mut row = |k: &str, v: String| t.push_str(&format!("{k:<28} {v:>10}\n"));
    row("approx passed", format!("{}/{}", s.approx_passed, s.approx_runs));
    row("max ratio", format!("{:.6}", s.max_ratio));
    row("max residual", format!("{:.2e}", s.max_residual));
    row("pierce passed", format!("{}/{}", s.pierce_passed, s.pierce_runs));
    row("fallback runs", s.fallback_runs.to_string());
    row("max points (transversal)", s.max_certificate_transversal.to_string());
    row("max points (fallback)", s.max_certificate_fallback.to_string());
    if let Some(p) = &s.probe {
        t.push_str(&p.table());
    }
    t
}
