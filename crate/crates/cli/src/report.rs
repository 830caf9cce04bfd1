//! Deterministic run reports. Maps are ordered and floats print through the
//! standard shortest-round-trip formatter, so identical inputs produce
//! byte-identical JSON. Wall time is measured but deliberately kept out of
//! the serialized body; it goes to stderr instead.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::commands::Opts;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub metrics: BTreeMap<String, f64>,
    pub verdicts: BTreeMap<String, bool>,
    pub witnesses: Vec<Vec<f64>>,
    pub budget_used: u64,
    #[serde(skip)]
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(command: &str, inputs_digest: String) -> Self {
        Report {
            command: command.to_string(),
            inputs_digest,
            metrics: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            witnesses: Vec::new(),
            budget_used: 0,
            wall_time_ms: 0.0,
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    pub fn verdict(&mut self, name: impl Into<String>, value: bool) {
        self.verdicts.insert(name.into(), value);
    }

    pub fn witness(&mut self, point: &multiplank::geom::Point) {
        self.witnesses.push(point.coords().to_vec());
    }

    pub fn canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// SHA-256 over the scene bytes and the canonical flag string.
pub fn inputs_digest(scene_bytes: &[u8], opts: &Opts, command: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(scene_bytes);
    hasher.update(command.as_bytes());
    hasher.update(opts.canonical_string().as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
