//! Reports and their JSON form.
//!
//! Sets are written as lists of labels. A family of opens is a list of
//! such sets, in the canonical order of the open-set lattice.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fintop_core::consonance::{Mode, Witness, WitnessCertificate};
use fintop_core::error::render;
use fintop_core::suite::{CheckRecord, InstanceReport, Verdict as CoreVerdict};
use fintop_core::{FiniteSpace, IndexedLattice, Subset};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// The published JSON schema for [`Report`].
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl From<CoreVerdict> for Verdict {
    fn from(v: CoreVerdict) -> Self {
        match v {
            CoreVerdict::Pass => Verdict::Pass,
            CoreVerdict::Fail => Verdict::Fail,
            CoreVerdict::Skipped => Verdict::Skipped,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub instances: Vec<InstanceEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceEntry {
    pub name: String,
    pub size: usize,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<Certificate>>,
    /// Command-specific dumps (lattices, powerspace points, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMode {
    Consonant,
    CoConsonant,
}

/// `U ∈ □Q ⊆ 𝓕` (one witness set `Q`) or `U ∈ ⋂◊𝓔 ⊆ 𝓕` (the closed
/// sets of `𝓔`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub mode: CertificateMode,
    pub family: Vec<Vec<String>>,
    pub target: Vec<String>,
    pub witness: Vec<Vec<String>>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

impl Check {
    pub fn new(id: &str, verdict: Verdict, detail: impl Into<String>) -> Self {
        Check {
            id: id.to_string(),
            verdict,
            detail: detail.into(),
            metrics: BTreeMap::new(),
            certificates: None,
            data: None,
            elapsed_ms: None,
        }
    }

    pub fn pass_if(id: &str, ok: bool, detail: impl Into<String>) -> Self {
        Check::new(id, if ok { Verdict::Pass } else { Verdict::Fail }, detail)
    }

    pub fn metric(mut self, key: &str, value: usize) -> Self {
        self.metrics.insert(key.to_string(), value as u64);
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }
}

impl From<&CheckRecord> for Check {
    fn from(r: &CheckRecord) -> Self {
        let mut c = Check::new(&r.id, r.verdict.into(), r.detail.clone());
        for (k, v) in &r.metrics {
            c = c.metric(k, *v);
        }
        c
    }
}

impl From<&InstanceReport> for InstanceEntry {
    fn from(r: &InstanceReport) -> Self {
        InstanceEntry {
            name: r.name.clone(),
            size: r.size,
            checks: r.checks.iter().map(Check::from).collect(),
            elapsed_ms: None,
        }
    }
}

pub fn labels_of(space: &FiniteSpace, s: &Subset) -> Vec<String> {
    render(space.labels(), s)
}

pub fn certificate(
    space: &FiniteSpace,
    lattice: &IndexedLattice,
    cert: &WitnessCertificate,
    trace: &[String],
) -> Certificate {
    let witness = match &cert.witness {
        Witness::Compact(q) => vec![labels_of(space, q)],
        Witness::Closed(e) => e.iter().map(|a| labels_of(space, a)).collect(),
    };
    Certificate {
        mode: match cert.mode {
            Mode::Consonant => CertificateMode::Consonant,
            Mode::CoConsonant => CertificateMode::CoConsonant,
        },
        family: cert.family.iter().map(|i| labels_of(space, lattice.set(i))).collect(),
        target: labels_of(space, lattice.set(cert.target)),
        witness,
        verified: cert.verified,
        trace: trace.to_vec(),
    }
}

impl Report {
    pub fn new(command: &str, instances: Vec<InstanceEntry>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            instances,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.instances
            .iter()
            .flat_map(|i| &i.checks)
            .any(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let _ = write!(out, "{} ({} points)", inst.name, inst.size);
            if let Some(ms) = inst.elapsed_ms {
                let _ = write!(out, " [{ms} ms]");
            }
            out.push('\n');
            for c in &inst.checks {
                let mark = match c.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Skipped => "skip",
                };
                let _ = write!(out, "  {mark:4} {}: {}", c.id, c.detail);
                if let Some(ms) = c.elapsed_ms {
                    let _ = write!(out, " [{ms} ms]");
                }
                out.push('\n');
                if let Some(certs) = &c.certificates {
                    for cert in certs {
                        let _ = writeln!(
                            out,
                            "       U={} witness {}",
                            show(&cert.target),
                            cert.witness.iter().map(|s| show(s)).collect::<Vec<_>>().join(" ")
                        );
                    }
                }
            }
        }
        let counts = |v| {
            self.instances
                .iter()
                .flat_map(|i| &i.checks)
                .filter(|c| c.verdict == v)
                .count()
        };
        let _ = writeln!(
            out,
            "{} instances: {} passed, {} failed, {} skipped",
            self.instances.len(),
            counts(Verdict::Pass),
            counts(Verdict::Fail),
            counts(Verdict::Skipped)
        );
        out
    }
}

fn show(s: &[String]) -> String {
    format!("{{{}}}", s.join(","))
}
