//! JSON report types and their text rendering.

use std::fmt::Write;

use qsqc::oracle::KlReport;
use qsqc::{BoundReport, Classification, Distance, QsqcCertificate, Strategy, SympVector, Target, UstReport};
use serde::Serialize;

pub struct Outcome {
    pub success: bool,
    pub json: String,
    pub text: String,
}

impl Outcome {
    pub fn new<T: Serialize>(success: bool, report: &T, text: String) -> Self {
        Self {
            success,
            json: serde_json::to_string_pretty(report).expect("reports serialize"),
            text,
        }
    }
}

#[derive(Serialize)]
pub struct ProfileReport {
    pub d: usize,
    pub lowweight: Vec<SympVector>,
    pub s: usize,
    pub d_s: Distance,
    pub degenerate: bool,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    pub min_weight: Distance,
    pub dm: Distance,
    pub self_dual: bool,
    pub generators: Vec<SympVector>,
    pub profile: Option<ProfileReport>,
}

impl AnalyzeReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}, dim C = {}, k = {}", self.n, self.dim, self.k);
        let _ = writeln!(s, "d(C) = {}, d_m = {}, self-dual: {}", self.min_weight, self.dm, self.self_dual);
        if let Some(p) = &self.profile {
            let _ = writeln!(
                s,
                "at d = {}: s = {}, d_s = {}, {}",
                p.d,
                p.s,
                p.d_s,
                if p.degenerate { "degenerate" } else { "nondegenerate" }
            );
            for v in &p.lowweight {
                let _ = writeln!(s, "  low-weight element {v}");
            }
        }
        s
    }
}

fn certificate_text(s: &mut String, cert: &QsqcCertificate) {
    if cert.is_certified() {
        let _ = writeln!(s, "certified {} = {}", cert.params(), cert.params_factored());
    } else {
        let _ = writeln!(s, "rejected at d = {}", cert.claimed_d);
        for r in cert.reasons() {
            let _ = writeln!(s, "  {r}");
        }
    }
    let _ = writeln!(
        s,
        "  d_m = {}, QSC distance = {} (need {}), s = {}, {} norm",
        cert.dm, cert.qsc_distance, cert.required_qsc_distance, cert.s, cert.norm
    );
    if let Some(t) = &cert.translation {
        let _ = writeln!(s, "  translated by {t}");
    }
}

fn oracle_text(s: &mut String, o: &KlReport) {
    let scope = if o.partial { "sampled" } else { "all" };
    if o.ok {
        let _ = writeln!(
            s,
            "oracle ok: {scope} {} of {} errors, basis of {} states, {} nonzero f(e)",
            o.errors_checked,
            o.errors_total,
            o.basis_size,
            o.f_table.len()
        );
    } else if let Some(w) = &o.witness {
        let _ = writeln!(
            s,
            "oracle FAILED: error {} (weight {}) on states {} and {}: {:?} value {}",
            w.error, w.weight, w.left, w.right, w.kind, w.value
        );
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub certificate: QsqcCertificate,
    pub classification: Classification,
    pub oracle: Option<KlReport>,
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        certificate_text(&mut s, &self.certificate);
        if self.certificate.is_certified() {
            let labels: Vec<String> = self
                .classification
                .labels
                .iter()
                .map(|l| format!("{l:?}").to_lowercase())
                .collect();
            let c = &self.classification.containing_code;
            let _ = writeln!(s, "  {}; inside [[{}, {}, {}]]", labels.join(", "), c.n, c.k, c.d);
        }
        if let Some(o) = &self.oracle {
            oracle_text(&mut s, o);
        }
        s
    }
}

#[derive(Serialize)]
pub struct SearchReport {
    pub found: bool,
    pub target: Target,
    pub strategy: Strategy,
    pub omega: Vec<SympVector>,
    pub size: usize,
    pub nodes: u64,
    pub optimal: bool,
    pub elapsed_ms: u128,
    pub certificate: Option<QsqcCertificate>,
    pub reason: Option<String>,
}

impl SearchReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        match &self.reason {
            Some(r) => {
                let _ = writeln!(s, "not found: {r}");
            }
            None => {
                let _ = writeln!(
                    s,
                    "found {} cosets ({} nodes, {} ms{})",
                    self.size,
                    self.nodes,
                    self.elapsed_ms,
                    if self.optimal { ", optimal" } else { "" }
                );
                for v in &self.omega {
                    let _ = writeln!(s, "{v}");
                }
            }
        }
        if let Some(c) = &self.certificate {
            certificate_text(&mut s, c);
        }
        s
    }
}

#[derive(Serialize)]
pub struct BoundsReport {
    pub params: String,
    pub certified: bool,
    pub hamming_type: Option<BoundReport>,
    pub gv_type: BoundReport,
    pub singleton: BoundReport,
    pub general_hamming_compare: BoundReport,
}

fn bound_line(s: &mut String, b: &BoundReport) {
    let verdict = match b.holds {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "not applicable",
    };
    let _ = writeln!(s, "{}: {} ({verdict})", b.bound_name, b.relation);
}

impl BoundsReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        match &self.hamming_type {
            Some(h) => bound_line(&mut s, h),
            None => {
                let _ = writeln!(s, "hamming_type: skipped, {} is not certified", self.params);
            }
        }
        bound_line(&mut s, &self.gv_type);
        bound_line(&mut s, &self.singleton);
        let g = &self.general_hamming_compare;
        let _ = writeln!(s, "{}: {}", g.bound_name, g.relation);
        s
    }
}

#[derive(Serialize)]
pub struct UstSummary {
    pub n: usize,
    pub size: usize,
    pub qsc_distance: Distance,
    pub dm: Distance,
    pub code_distance: Distance,
    pub report: UstReport,
}

impl UstSummary {
    pub fn text(&self) -> String {
        let r = &self.report;
        format!(
            "ust distance {} {} union distance {}{}\nQSC distance {}, d_m {}, d(C) {}\nexclusion set: {} (dim {})\n",
            r.ust_distance,
            if r.strict { ">" } else { "vs" },
            r.classical_union_distance,
            if r.strict { " (strict)" } else { "" },
            self.qsc_distance,
            self.dm,
            self.code_distance,
            r.exclusion_reading,
            r.exclusion_dim
        )
    }
}

#[derive(Serialize)]
pub struct ExampleEntry {
    pub name: &'static str,
    pub family: &'static str,
    pub expected: String,
    pub matches: bool,
    pub certificate: QsqcCertificate,
    pub code_distance: Distance,
    pub ust: UstReport,
    pub hamming_type: Option<BoundReport>,
    pub singleton: BoundReport,
    pub oracle_ok: Option<bool>,
    pub oracle_errors: Option<usize>,
}

impl ExampleEntry {
    pub fn ok(&self) -> bool {
        self.certificate.is_certified()
            && self.matches
            && self.hamming_type.as_ref().is_some_and(|h| h.holds == Some(true))
            && self.singleton.holds != Some(false)
            && self.oracle_ok != Some(false)
    }
}

#[derive(Serialize)]
pub struct ExamplesReport {
    pub ok: bool,
    pub examples: Vec<ExampleEntry>,
}

impl ExamplesReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.examples {
            let c = &e.certificate;
            let status = if e.ok() { "ok" } else { "MISMATCH" };
            let _ = write!(s, "{:<4} {} via {} [{status}]", e.name, c.params(), c.params_factored());
            if e.ust.strict {
                let _ = write!(
                    s,
                    "  ust {} > {} = d(union)",
                    e.ust.ust_distance, e.ust.classical_union_distance
                );
            }
            if c.qsc_distance.at_least(c.claimed_d) && e.code_distance < Distance::Finite(c.claimed_d) {
                let _ = write!(s, "  d(C) = {}", e.code_distance);
            }
            if let Some(n) = e.oracle_errors {
                let _ = write!(s, "  oracle {} over {n} errors", if e.oracle_ok == Some(true) { "ok" } else { "FAILED" });
            }
            s.push('\n');
        }
        s
    }
}
