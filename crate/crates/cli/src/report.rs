use rota_core::LawReport;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "rota-core/1";

/// A command's findings. `passed` is false iff some law failed.
pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub passed: bool,
}

impl Report {
    pub fn new() -> Self {
        Report { command: "", body: Map::new(), passed: true }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    /// Folds law outcomes into the verdict.
    pub fn laws(reports: &[LawReport]) -> (Value, bool) {
        (Value::Array(reports.iter().map(LawReport::to_json).collect()), reports.iter().all(LawReport::passed))
    }

    pub fn render(&self, precision: i64, seed: u64) -> String {
        let mut top = Map::new();
        top.insert("schema".into(), json!(SCHEMA));
        top.insert("command".into(), json!(self.command));
        top.insert("config".into(), json!({"precision": precision, "seed": seed}));
        for (k, v) in &self.body {
            top.insert(k.clone(), v.clone());
        }
        top.insert("passed".into(), json!(self.passed));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}
