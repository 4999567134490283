use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::anyhow;
use pierce4::oracle::{gen_instance, GenConfig};
use pierce4::report::{to_json, ApproxPayload, PiercePayload, Tolerances};
use pierce4::svg::{approx_svg, pierce_svg};
use pierce4::{
    find_homothetic_pair, pierce as run_pierce, verify_approx, verify_certificate, ApproxConfig, Direction, Payload,
    PierceConfig, RunReport, SupportHandling,
};

use crate::io::{emit, load_body, load_certificate, load_instance};
use crate::{failure, input_err, BodyArgs, CliResult};

pub const SEED_ENV: &str = "PIERCE4_SEED";

/// `PIERCE4_SEED` if set, else `fallback`.
pub fn effective_seed(fallback: u64) -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| input_err(anyhow!("{SEED_ENV}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(fallback),
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn write_svg(path: Option<PathBuf>, svg: impl FnOnce() -> String) -> CliResult {
    match path {
        Some(p) => emit(Some(&p), &svg()),
        None => Ok(()),
    }
}

pub struct GenArgs {
    pub body: BodyArgs,
    pub families: usize,
    pub sizes: Vec<usize>,
    pub spread: f64,
    pub margin: f64,
    pub seed: u64,
    pub max_rejections: usize,
    pub out: Option<PathBuf>,
}

pub fn gen(a: GenArgs) -> CliResult {
    let body = load_body(&a.body)?;
    let sizes = match a.sizes.len() {
        1 => vec![a.sizes[0]; a.families],
        n if n == a.families => a.sizes.clone(),
        n => {
            return Err(input_err(anyhow!(
                "--sizes lists {n} values but --families is {}",
                a.families
            )))
        }
    };
    let cfg = GenConfig {
        seed: effective_seed(a.seed)?,
        body: body.source,
        sizes,
        spread: a.spread,
        margin: a.margin,
        max_rejections: a.max_rejections,
    };
    let inst = gen_instance(&cfg).map_err(|e| match e {
        pierce4::Error::RejectionBudgetExceeded(_) => failure(e),
        other => input_err(other),
    })?;
    emit(a.out.as_deref(), &to_json(&inst))
}

pub fn approx(
    argv: Vec<String>,
    body: &BodyArgs,
    direction: f64,
    tol: f64,
    shave: Option<f64>,
    svg: Option<PathBuf>,
    out: Option<PathBuf>,
) -> CliResult {
    let start = Instant::now();
    let body = load_body(body)?;
    let u = Direction::from_degrees(direction).map_err(input_err)?;
    let cfg = ApproxConfig {
        support: shave.map_or(SupportHandling::Flush, SupportHandling::Shave),
        ..ApproxConfig::default()
    };
    let result = find_homothetic_pair(&body.polygon, u, &cfg).map_err(failure)?;
    let verification = verify_approx(&body.polygon, &result, tol, cfg.ratio_slack);
    write_svg(svg, || approx_svg(&body.polygon, &result))?;
    let passed = verification.passed();
    let mut input = body.bytes.clone();
    input.extend_from_slice(format!("|{direction}").as_bytes());
    let tolerances = Tolerances {
        approx: cfg,
        ..Tolerances::new(&PierceConfig::default(), tol)
    };
    let report = RunReport::new(
        argv,
        &input,
        Payload::Approx(ApproxPayload {
            body: body.label,
            direction_degrees: direction,
            result,
            verification,
        }),
        ms(start),
        tolerances,
    );
    emit(out.as_deref(), &to_json(&report))?;
    if passed {
        Ok(())
    } else {
        Err(failure(anyhow!("approximation failed verification")))
    }
}

pub fn pierce(
    argv: Vec<String>,
    instance: &Path,
    svg: Option<PathBuf>,
    certificate_out: Option<PathBuf>,
    out: Option<PathBuf>,
) -> CliResult {
    let start = Instant::now();
    let (inst, bytes) = load_instance(instance)?;
    let cfg = PierceConfig::default();
    let cert = run_pierce(&inst, &cfg).map_err(|e| {
        if let pierce4::Error::PipelineFailure { repro, .. } = &e {
            eprintln!("repro instance: {repro}");
        }
        failure(e)
    })?;
    let verification = verify_certificate(&inst, &cert);
    write_svg(svg, || pierce_svg(&inst, &cert))?;
    if let Some(p) = &certificate_out {
        emit(Some(p), &to_json(&cert))?;
    }
    let passed = verification.passed();
    let report = RunReport::new(
        argv,
        &bytes,
        Payload::Pierce(PiercePayload {
            certificate: cert,
            verification,
        }),
        ms(start),
        Tolerances::default(),
    );
    emit(out.as_deref(), &to_json(&report))?;
    if passed {
        Ok(())
    } else {
        Err(failure(anyhow!("certificate failed verification")))
    }
}

pub fn verify(argv: Vec<String>, instance: &Path, certificate: &Path, out: Option<PathBuf>) -> CliResult {
    let start = Instant::now();
    let (inst, mut bytes) = load_instance(instance)?;
    let (cert, cert_bytes) = load_certificate(certificate)?;
    bytes.extend_from_slice(&cert_bytes);
    let report = verify_certificate(&inst, &cert);
    let passed = report.passed();
    let violations = report.violations.len();
    let run = RunReport::new(argv, &bytes, Payload::Verify(report), ms(start), Tolerances::default());
    emit(out.as_deref(), &to_json(&run))?;
    if passed {
        Ok(())
    } else {
        Err(failure(anyhow!("{violations} violation(s)")))
    }
}
