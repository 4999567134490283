use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::ConvexPolygon;
use crate::piercing::{pierce, Branch, PierceConfig};

use super::{brute_force_piercing, CorpusCase, MAX_POLYS};

/// Outcome of probing one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub index: usize,
    pub body: String,
    pub n_families: usize,
    /// `None` if `pierce` failed.
    pub certificate_size: Option<usize>,
    pub branch: Option<Branch>,
    /// Minimum piercing number outside the chosen family when at most 4;
    /// `Some(None)` means more than 4, `None` means not computed.
    pub optimum: Option<Option<usize>>,
}

/// Certificate size against the exact optimum of the same union.
pub fn probe_case(case: &CorpusCase, cfg: &PierceConfig) -> ProbeOutcome {
    let inst = &case.instance;
    let mut out = ProbeOutcome {
        index: case.index,
        body: case.body.clone(),
        n_families: inst.n_families(),
        certificate_size: None,
        branch: None,
        optimum: None,
    };
    let Ok(cert) = pierce(inst, cfg) else {
        return out;
    };
    out.certificate_size = Some(cert.points.len());
    out.branch = Some(cert.branch);
    let polys: Vec<ConvexPolygon> = inst
        .members()
        .filter(|&(f, _, _)| f != cert.excluded_family)
        .map(|(_, _, x)| inst.body.translated(x))
        .collect();
    if polys.len() <= MAX_POLYS {
        if let Ok(r) = brute_force_piercing(&polys, 4) {
            out.optimum = Some(r.map(|(k, _)| k));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub body: String,
    pub n: usize,
    pub cases: usize,
    /// Cases whose optimum is at most 3, over cases with a computed optimum.
    pub optimum_le3_fraction: f64,
    pub max_certificate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub cases: usize,
    pub optimum_computed: usize,
    pub optimum_le3: usize,
    pub optimum_le3_fraction: f64,
    /// Cases where the certificate is smaller than the optimum; must be 0.
    pub below_optimum: usize,
    pub pierce_failures: usize,
    pub max_certificate_transversal: usize,
    pub max_certificate_fallback: usize,
}

fn fraction(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Aggregate outcomes, grouped by `(body, n)`.
pub fn summarize(outcomes: &[ProbeOutcome]) -> ProbeReport {
    #[derive(Default)]
    struct Acc {
        cases: usize,
        computed: usize,
        le3: usize,
        max_cert: usize,
    }
    let mut groups: BTreeMap<(String, usize), Acc> = BTreeMap::new();
    let mut report = ProbeReport {
        rows: Vec::new(),
        cases: outcomes.len(),
        optimum_computed: 0,
        optimum_le3: 0,
        optimum_le3_fraction: 0.0,
        below_optimum: 0,
        pierce_failures: 0,
        max_certificate_transversal: 0,
        max_certificate_fallback: 0,
    };
    for o in outcomes {
        let acc = groups.entry((o.body.clone(), o.n_families)).or_default();
        acc.cases += 1;
        let Some(size) = o.certificate_size else {
            report.pierce_failures += 1;
            continue;
        };
        acc.max_cert = acc.max_cert.max(size);
        match o.branch {
            Some(Branch::FallbackBruteForce) => {
                report.max_certificate_fallback = report.max_certificate_fallback.max(size)
            }
            _ => report.max_certificate_transversal = report.max_certificate_transversal.max(size),
        }
        if let Some(opt) = o.optimum {
            acc.computed += 1;
            report.optimum_computed += 1;
            if let Some(k) = opt {
                if k <= 3 {
                    acc.le3 += 1;
                    report.optimum_le3 += 1;
                }
                if size < k {
                    report.below_optimum += 1;
                }
            }
        }
    }
    report.optimum_le3_fraction = fraction(report.optimum_le3, report.optimum_computed);
    report.rows = groups
        .into_iter()
        .map(|((body, n), a)| ProbeRow {
            body,
            n,
            cases: a.cases,
            optimum_le3_fraction: fraction(a.le3, a.computed),
            max_certificate: a.max_cert,
        })
        .collect();
    report
}

/// Probe the three-point conjecture over a corpus. Informational only.
pub fn conjecture_probe(cases: &[CorpusCase], cfg: &PierceConfig) -> ProbeReport {
    let outcomes: Vec<ProbeOutcome> = cases.iter().map(|c| probe_case(c, cfg)).collect();
    summarize(&outcomes)
}

impl ProbeReport {
    /// Fixed-width text table.
    pub fn table(&self) -> String {
        let mut s = format!("{:<14} {:>2} {:>6} {:>10} {:>9}\n", "body", "n", "cases", "opt<=3", "max_cert");
        for r in &self.rows {
            s.push_str(&format!(
                "{:<14} {:>2} {:>6} {:>10.3} {:>9}\n",
                r.body, r.n, r.cases, r.optimum_le3_fraction, r.max_certificate
            ));
        }
        s.push_str(&format!(
            "total {} cases, optimum computed for {}, opt<=3 fraction {:.4}, below optimum {}, failures {}\n",
            self.cases, self.optimum_computed, self.optimum_le3_fraction, self.below_optimum, self.pierce_failures
        ));
        s
    }
}
