//! Verification reports: one entry per checked instance.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportEntry {
    pub lemma: String,
    pub instance: Value,
    pub status: Status,
    /// Reduced difference (or error text) on failure, reason when skipped.
    pub witness: Option<String>,
}

impl ReportEntry {
    /// Runs a check. `Ok(None)` passes, `Ok(Some(w))` fails with witness `w`,
    /// a budget error skips, and any other error fails.
    pub fn run(lemma: &str, instance: Value, check: impl FnOnce() -> Result<Option<String>>) -> Self {
        let (status, witness) = match check() {
            Ok(None) => (Status::Pass, None),
            Ok(Some(w)) => (Status::Fail, Some(w)),
            Err(e) if e.is_budget() => (Status::Skipped, Some(format!("budget: {e}"))),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        Self { lemma: lemma.to_string(), instance, status, witness }
    }

    pub fn skipped(lemma: &str, instance: Value, reason: impl Into<String>) -> Self {
        Self { lemma: lemma.to_string(), instance, status: Status::Skipped, witness: Some(reason.into()) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(entries: Vec<ReportEntry>) -> Self {
        Self { entries }
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(Status::Pass) == self.entries.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    /// JSON with object keys sorted, so output is byte-for-byte reproducible.
    pub fn to_json(&self) -> Value {
        // Value's map is a BTreeMap without the preserve_order feature.
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("{status:4} {} {}", e.lemma, e.instance));
            if let Some(w) = &e.witness {
                out.push_str(&format!("  [{w}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "total {}: {} pass, {} fail, {} skipped\n",
            self.entries.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}

impl From<Vec<ReportEntry>> for Report {
    fn from(entries: Vec<ReportEntry>) -> Self {
        Self { entries }
    }
}

impl FromIterator<ReportEntry> for Report {
    fn from_iter<I: IntoIterator<Item = ReportEntry>>(iter: I) -> Self {
        Self { entries: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use serde_json::json;

    #[test]
    fn statuses() {
        let r: Report = [
            ReportEntry::run("a", json!({"k": 1}), || Ok(None)),
            ReportEntry::run("a", json!({"k": 2}), || Ok(Some("x".into()))),
            ReportEntry::run("a", json!({"k": 3}), || {
                Err(Error::BudgetExceeded { what: "w".into(), size: 10, cap: 1 })
            }),
        ]
        .into_iter()
        .collect();
        assert_eq!(r.count(Status::Pass), 1);
        assert_eq!(r.count(Status::Fail), 1);
        assert_eq!(r.count(Status::Skipped), 1);
        let js = r.to_json().to_string();
        assert!(js.starts_with("[{\"instance\":{\"k\":1},\"lemma\":\"a\",\"status\":\"pass\""));
    }
}
