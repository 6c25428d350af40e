//! Outcome of a sampled law audit.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub samples: usize,
    /// First failing sample, rendered as text.
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn new(law: &str) -> Self {
        LawReport { law: law.to_string(), samples: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "law": self.law,
            "samples": self.samples,
            "passed": self.passed(),
            "counterexample": self.counterexample,
        })
    }
}

pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(LawReport::passed)
}
