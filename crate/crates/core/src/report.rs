//! Check results shared by manifests and the relation table.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Paper,
    Derived,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    pub provenance: Provenance,
    pub anchor: String,
    pub millis: u64,
}

impl CheckResult {
    /// Actual value recorded when a budget ran out.
    pub fn unknown_value(reason: &str) -> Value {
        json!({ "unknown": reason })
    }

    pub fn is_unknown(&self) -> bool {
        self.actual.get("unknown").is_some()
    }
}
