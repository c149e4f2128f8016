//! The JSON report shared by `check`, `reproduce` and `replay`.

use insertion_core::certificate::Certificate;
use insertion_core::conditions::{ConditionReport, ImplicationMatrix};
use insertion_core::replay::verify;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub id: String,
    pub task: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub observed: String,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ConditionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<ImplicationMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
}

impl Entry {
    /// Every certificate carried by the entry, the condition report's first.
    pub fn all_certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.report.iter().filter_map(|r| r.certificate.as_ref()).chain(&self.certificates)
    }

    /// One line describing a mismatch, or `None` when the entry matches.
    pub fn diff(&self) -> Option<String> {
        if self.matches {
            return None;
        }
        let expected = self.expected.as_deref().unwrap_or("-");
        let mut line = format!("{}: expected {expected}, observed {}", self.id, self.observed);
        for n in &self.notes {
            line.push_str("\n  ");
            line.push_str(n);
        }
        Some(line)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub command: String,
    pub entries: Vec<Entry>,
    pub all_match: bool,
}

impl RunReport {
    pub fn new(command: impl Into<String>, entries: Vec<Entry>) -> Self {
        let all_match = entries.iter().all(|e| e.matches);
        RunReport { command: command.into(), entries, all_match }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayFailure {
    pub entry: String,
    pub kind: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplaySummary {
    pub checked: usize,
    pub failures: Vec<ReplayFailure>,
}

/// Re-verifies every certificate in the report.
pub fn replay_report(report: &RunReport) -> ReplaySummary {
    let mut checked = 0;
    let mut failures = Vec::new();
    for e in &report.entries {
        for cert in e.all_certificates() {
            checked += 1;
            if let Err(err) = verify(cert) {
                failures.push(ReplayFailure { entry: e.id.clone(), kind: cert.kind().to_string(), reason: err.to_string() });
            }
        }
    }
    ReplaySummary { checked, failures }
}
