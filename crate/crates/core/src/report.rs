//! Verification reports.

use std::time::Instant;

use serde_json::{json, Map, Value};

/// Outcome of one verified claim.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub claim: String,
    pub algebra: String,
    pub polynomial: String,
    pub pass: bool,
    pub witness: Option<Value>,
    pub runtime_ms: Option<u128>,
}

impl Report {
    pub fn new(claim: impl Into<String>, algebra: impl Into<String>, polynomial: impl Into<String>) -> Self {
        Report { claim: claim.into(), algebra: algebra.into(), polynomial: polynomial.into(), pass: true, witness: None, runtime_ms: None }
    }

    pub fn passed(mut self) -> Self {
        self.pass = true;
        self.witness = None;
        self
    }

    pub fn failed(mut self, witness: Value) -> Self {
        self.pass = false;
        self.witness = Some(witness);
        self
    }

    pub fn verdict(self, pass: bool, witness: impl FnOnce() -> Value) -> Self {
        if pass {
            self.passed()
        } else {
            self.failed(witness())
        }
    }

    /// Runs `f` and records its wall time.
    pub fn timed(f: impl FnOnce() -> Report) -> Report {
        let start = Instant::now();
        let mut r = f();
        r.runtime_ms = Some(start.elapsed().as_millis());
        r
    }

    /// `runtime_ms` is emitted only when `timings` is set, so that reports
    /// are reproducible byte for byte.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut m = Map::new();
        m.insert("claim".into(), json!(self.claim));
        m.insert("algebra".into(), json!(self.algebra));
        m.insert("polynomial".into(), json!(self.polynomial));
        m.insert("pass".into(), json!(self.pass));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        if timings {
            if let Some(t) = self.runtime_ms {
                m.insert("runtime_ms".into(), json!(t));
            }
        }
        Value::Object(m)
    }

    pub fn line(&self) -> String {
        format!("{} {} [{} / {}]", if self.pass { "PASS" } else { "FAIL" }, self.claim, self.algebra, self.polynomial)
    }
}
