use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lang::Convention;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Refuted,
    ExhaustedWithoutDecision,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Verified => "VERIFIED",
            Status::Refuted => "REFUTED",
            Status::ExhaustedWithoutDecision => "EXHAUSTED",
        }
    }
}

/// One yes/no sub-check of a claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Data backing a report. Every `word` is in word-language syntax over the
/// generators, so it can be re-parsed without any bindings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    NormalForm { label: String, word: String, normal_form: String },
    Degree { label: String, word: String, degree: i64 },
    Matrix { label: String, word: String, rows: Vec<Vec<i64>> },
    /// Result of one scan of the freeness enumeration.
    Scan { n: i64, words: usize, nontrivial_mod_center: usize, nontrivial: usize, first_failure: Option<String> },
    Counterexample { label: String, word: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub claim: String,
    pub status: Status,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub evidence: Vec<Evidence>,
    pub notes: Vec<String>,
    /// Present only when timings were requested, so that default output is
    /// byte-for-byte reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl CertificateReport {
    pub fn new(claim: &str) -> Self {
        CertificateReport {
            claim: claim.to_string(),
            status: Status::ExhaustedWithoutDecision,
            params: BTreeMap::new(),
            checks: Vec::new(),
            evidence: Vec::new(),
            notes: Vec::new(),
            duration_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> bool {
        self.checks.push(Check { name: name.into(), passed });
        passed
    }

    pub fn all_passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// Verified iff every check passed, otherwise refuted.
    pub fn settle(&mut self) {
        self.status = if self.all_passed() { Status::Verified } else { Status::Refuted };
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Refuted if any report is refuted, verified if all are, exhausted otherwise.
pub fn aggregate(reports: &[CertificateReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Refuted) {
        Status::Refuted
    } else if reports.iter().all(|r| r.status == Status::Verified) {
        Status::Verified
    } else {
        Status::ExhaustedWithoutDecision
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn format_reports(reports: &[CertificateReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => reports.iter().map(format_text).collect(),
    }
}

pub fn parse_reports(json: &str) -> Result<Vec<CertificateReport>, serde_json::Error> {
    serde_json::from_str(json)
}

fn format_text(r: &CertificateReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "claim {}: {}", r.claim, r.status.label());
    for (k, v) in &r.params {
        let _ = writeln!(out, "  param {k} = {v}");
    }
    for c in &r.checks {
        let _ = writeln!(out, "  check [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name);
    }
    for e in &r.evidence {
        let _ = match e {
            Evidence::NormalForm { label, word, normal_form } => {
                writeln!(out, "  evidence normal-form {label}: {normal_form}\n    word {word}")
            }
            Evidence::Degree { label, degree, .. } => writeln!(out, "  evidence degree {label}: {degree}"),
            Evidence::Matrix { label, rows, .. } => {
                let rows: Vec<String> =
                    rows.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
                writeln!(out, "  evidence matrix {label}: [{}]", rows.join("; "))
            }
            Evidence::Scan { n, words, nontrivial_mod_center, nontrivial, first_failure } => writeln!(
                out,
                "  evidence scan n={n}: {nontrivial_mod_center}/{words} nontrivial mod center, {nontrivial}/{words} nontrivial{}",
                first_failure.as_ref().map(|w| format!(", first failure {w}")).unwrap_or_default()
            ),
            Evidence::Counterexample { label, word, reason } => {
                writeln!(out, "  counterexample {label}: {reason}\n    word {word}")
            }
        };
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note {n}");
    }
    if let Some(ms) = r.duration_ms {
        let _ = writeln!(out, "  duration_ms {ms}");
    }
    out
}

pub(crate) fn convention_tag(c: Convention) -> &'static str {
    match c {
        Convention::RightAction => "right",
        Convention::LeftAction => "left",
    }
}
