//! Verdict reports as key/value text or single-line JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use acsum_core::{Certificate, CheckOutcome, CheckRecord, ManifoldDescriptor, Status, Verdict};
use serde::Serialize;

pub const EXIT_ADMITS: i32 = 0;
pub const EXIT_NOT_ADMITS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Admits => EXIT_ADMITS,
        Status::NotAdmits => EXIT_NOT_ADMITS,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub query: String,
    pub formal_invariants: FormalInvariants,
    pub checks: Vec<CheckEntry>,
    pub verdict: VerdictEntry,
    pub exit_code: i32,
}

/// Integers are kept as decimal strings so that no precision is lost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalInvariants {
    pub summands: u64,
    pub dimension: u32,
    pub chi: i64,
    pub tau: i64,
    pub connectivity: Option<u32>,
    pub pontrjagin_numbers: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub relation: String,
    pub outcome: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictEntry {
    pub status: String,
    pub certificate: CertificateEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateEntry {
    Admits {
        assignment: Vec<String>,
        coefficients: Vec<String>,
        total: String,
        modulus: Option<String>,
    },
    NotAdmits {
        failed: String,
        lhs: Option<String>,
        rhs: Option<String>,
    },
    Unknown {
        examined: Vec<String>,
        explored: u64,
        exhausted: bool,
    },
}

impl CheckEntry {
    fn from_record(r: &CheckRecord) -> Self {
        let (lhs, rhs, reason) = match &r.outcome {
            CheckOutcome::Pass { lhs, rhs } | CheckOutcome::Fail { lhs, rhs } => {
                (Some(lhs.to_string()), Some(rhs.to_string()), None)
            }
            CheckOutcome::NotApplicable { reason } => (None, None, Some(reason.clone())),
        };
        CheckEntry {
            name: r.kind.name().to_string(),
            relation: r.kind.relation().to_string(),
            outcome: r.outcome.keyword().to_string(),
            lhs,
            rhs,
            reason,
        }
    }
}

impl Report {
    /// `formal` is the formal connected sum of the `summands` summands that
    /// `verdict` was computed for.
    pub fn new(
        query: String,
        summands: u64,
        formal: &ManifoldDescriptor,
        verdict: &Verdict,
    ) -> Self {
        let formal_invariants = FormalInvariants {
            summands,
            dimension: formal.dimension(),
            chi: formal.euler_characteristic(),
            tau: formal.signature(),
            connectivity: formal.connectivity(),
            pontrjagin_numbers: formal
                .pontrjagin_numbers()
                .iter()
                .map(|(p, v)| (p.to_string(), v.to_string()))
                .collect(),
        };
        let certificate = match &verdict.certificate {
            Certificate::Admits {
                assignment,
                coefficients,
                total,
                ..
            } => CertificateEntry::Admits {
                assignment: assignment.labels(),
                coefficients: coefficients.iter().map(|c| c.k().to_string()).collect(),
                total: total.k().to_string(),
                modulus: total.modulus().map(ToString::to_string),
            },
            Certificate::NotAdmits { failed } => {
                let entry = CheckEntry::from_record(failed);
                CertificateEntry::NotAdmits {
                    failed: entry.name,
                    lhs: entry.lhs,
                    rhs: entry.rhs,
                }
            }
            Certificate::Unknown {
                examined,
                explored,
                exhausted,
            } => CertificateEntry::Unknown {
                examined: examined.iter().map(ToString::to_string).collect(),
                explored: *explored,
                exhausted: *exhausted,
            },
        };
        Report {
            query,
            formal_invariants,
            checks: verdict.checks.iter().map(CheckEntry::from_record).collect(),
            verdict: VerdictEntry {
                status: verdict.status.as_str().to_string(),
                certificate,
            },
            exit_code: exit_code(verdict.status),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One `key: value` pair per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            writeln!(out, "{k}: {v}").expect("write to string");
        };
        let f = &self.formal_invariants;
        kv("query", &self.query);
        kv("formal.summands", &f.summands);
        kv("formal.dimension", &f.dimension);
        kv("formal.chi", &f.chi);
        kv("formal.tau", &f.tau);
        match f.connectivity {
            Some(c) => kv("formal.connectivity", &c),
            None => kv("formal.connectivity", &"unknown"),
        }
        for (p, v) in &f.pontrjagin_numbers {
            kv(&format!("formal.pontrjagin[{p}]"), v);
        }
        for c in &self.checks {
            let detail = match (&c.lhs, &c.rhs, &c.reason) {
                (Some(l), Some(r), _) => format!("{} lhs={l} rhs={r} [{}]", c.outcome, c.relation),
                (_, _, Some(reason)) => format!("{} ({reason}) [{}]", c.outcome, c.relation),
                _ => c.outcome.clone(),
            };
            kv(&format!("check.{}", c.name), &detail);
        }
        kv("verdict.status", &self.verdict.status);
        match &self.verdict.certificate {
            CertificateEntry::Admits {
                assignment,
                coefficients,
                total,
                modulus,
            } => {
                kv("certificate.assignment", &assignment.join(", "));
                kv("certificate.coefficients", &coefficients.join(", "));
                kv("certificate.total", total);
                if let Some(d) = modulus {
                    kv("certificate.modulus", d);
                }
            }
            CertificateEntry::NotAdmits { failed, lhs, rhs } => {
                kv("certificate.failed", failed);
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    kv("certificate.lhs", l);
                    kv("certificate.rhs", r);
                }
            }
            CertificateEntry::Unknown {
                examined,
                explored,
                exhausted,
            } => {
                let list = if examined.is_empty() {
                    "none".to_string()
                } else {
                    examined.join(", ")
                };
                kv("certificate.examined", &list);
                kv("certificate.explored", explored);
                kv("certificate.exhausted", exhausted);
            }
        }
        kv("exit_code", &self.exit_code);
        out
    }
}
