//! The JSON report shared by every verifier and CLI command.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    pub e: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl Params {
    pub fn new(field: &Field, n: usize, k: usize) -> Params {
        Params { n, k, p: field.p(), e: field.e(), mode: None, seed: None }
    }

    pub fn with_mode(mut self, mode: &str) -> Params {
        self.mode = Some(mode.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Params {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub kind: String,
    pub description: String,
    /// Offending subspaces as row-major coefficient lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subspaces: Vec<Vec<Vec<u8>>>,
}

impl Counterexample {
    pub fn new(kind: &str, description: impl Into<String>) -> Counterexample {
        Counterexample { kind: kind.to_string(), description: description.into(), subspaces: Vec::new() }
    }

    pub fn with_subspaces(mut self, subspaces: Vec<Vec<Vec<u8>>>) -> Counterexample {
        self.subspaces = subspaces;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub theorem: String,
    pub params: Params,
    pub passed: bool,
    pub counts_by_degree: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    /// Command-specific results, serialized as top-level keys.
    #[serde(flatten)]
    pub details: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(theorem: &str, params: Params) -> Report {
        Report {
            theorem: theorem.to_string(),
            params,
            passed: true,
            counts_by_degree: BTreeMap::new(),
            counterexamples: Vec::new(),
            details: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn count_degree(&mut self, degree: usize) {
        *self.counts_by_degree.entry(degree.to_string()).or_insert(0) += 1;
    }

    pub fn fail(&mut self, c: Counterexample) {
        self.passed = false;
        self.counterexamples.push(c);
    }

    pub fn finish(mut self, started: std::time::Instant) -> Report {
        self.passed = self.passed && self.counterexamples.is_empty();
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    /// Stable JSON (struct fields in declaration order, maps sorted).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
