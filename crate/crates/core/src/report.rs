//! Versioned JSON run reports.

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::approx::{ApproxConfig, ApproxReport, ApproxResult, RESIDUAL_LIMIT};
use crate::geom::CONTAINMENT_TOL;
use crate::oracle::ProbeReport;
use crate::piercing::{CertificateReport, PierceConfig, PiercingCertificate, COVER_TOL};
use crate::transversal::TransversalConfig;

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Every tolerance a run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Containment tolerance, relative to the body diameter.
    pub containment: f64,
    pub cover: f64,
    pub residual_limit: f64,
    pub approx: ApproxConfig,
    pub transversal: TransversalConfig,
}

impl Tolerances {
    pub fn new(cfg: &PierceConfig, containment: f64) -> Self {
        Tolerances {
            containment,
            cover: COVER_TOL,
            residual_limit: RESIDUAL_LIMIT,
            approx: cfg.approx,
            transversal: cfg.transversal,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::new(&PierceConfig::default(), CONTAINMENT_TOL)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxPayload {
    pub body: String,
    pub direction_degrees: f64,
    pub result: ApproxResult,
    pub verification: ApproxReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiercePayload {
    pub certificate: PiercingCertificate,
    pub verification: CertificateReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub cases: usize,
    pub approx_runs: usize,
    pub approx_passed: usize,
    pub max_ratio: f64,
    pub max_residual: f64,
    pub pierce_runs: usize,
    pub pierce_passed: usize,
    pub fallback_runs: usize,
    pub max_certificate_transversal: usize,
    pub max_certificate_fallback: usize,
    pub probe: Option<ProbeReport>,
}

impl BenchSummary {
    pub fn all_passed(&self) -> bool {
        self.approx_passed == self.approx_runs
            && self.pierce_passed == self.pierce_runs
            && self.max_certificate_transversal <= 4
            && self.max_certificate_fallback <= 3
            && self.probe.as_ref().is_none_or(|p| p.below_optimum == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Approx(ApproxPayload),
    Pierce(PiercePayload),
    Verify(CertificateReport),
    Bench(BenchSummary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub tool_version: String,
    pub command: Vec<String>,
    /// SHA-256 of the input bytes.
    pub input_digest: String,
    pub payload: Payload,
    pub elapsed_ms: f64,
    pub tolerances: Tolerances,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: &[u8], payload: Payload, elapsed_ms: f64, tolerances: Tolerances) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            command,
            input_digest: digest(input),
            payload,
            elapsed_ms,
            tolerances,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> serde_json::Result<T> {
    serde_json::from_str(s)
}
