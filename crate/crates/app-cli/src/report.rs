//! Suite reports: an ordered list of named checks plus free-form data, serialized as
//! JSON or as a text summary.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Tables and values behind the checks, keyed by name.
    pub data: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), ..Default::default() }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
        passed
    }

    pub fn data(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            let failed = r.failures().len();
            let name = if r.suite.is_empty() { "report" } else { &r.suite };
            writeln!(out, "{name}: {} checks, {failed} failed", r.checks.len()).unwrap();
            for c in &r.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(out, "  {tag} {}", c.name).unwrap();
                } else {
                    writeln!(out, "  {tag} {}: {}", c.name, c.detail).unwrap();
                }
            }
            for (k, v) in &r.data {
                writeln!(out, "  {k}: {v}").unwrap();
            }
            out
        }
    }
}
