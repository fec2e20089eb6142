use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::ScenarioId;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub unit: String,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: Option<bool>,
}

impl Metric {
    pub fn new(name: impl Into<String>, value: f64, unit: &str) -> Self {
        Self {
            name: name.into(),
            value,
            unit: unit.into(),
            expected: None,
            tolerance: None,
            pass: None,
        }
    }

    /// Attaches an absolute tolerance band around `expected`.
    pub fn expect(mut self, expected: f64, tolerance: f64) -> Self {
        self.expected = Some(expected);
        self.tolerance = Some(tolerance);
        self.pass = Some((self.value - expected).abs() <= tolerance);
        self
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} {}", self.name, self.value, self.unit)?;
        if let (Some(e), Some(t), Some(p)) = (self.expected, self.tolerance, self.pass) {
            write!(
                f,
                "  [expected {e} ± {t}: {}]",
                if p { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub scenario: ScenarioId,
    pub seed: u64,
    pub metrics: Vec<Metric>,
    pub artifacts: Vec<PathBuf>,
}

impl RunReport {
    pub fn new(scenario: ScenarioId, seed: u64) -> Self {
        Self {
            scenario,
            seed,
            metrics: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }

    /// `false` when any checked metric missed its expectation.
    pub fn passed(&self) -> bool {
        self.metrics.iter().all(|m| m.pass != Some(false))
    }

    /// Process exit code: 0 on pass, 2 on a missed expectation.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn save_json(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Config(format!("cannot serialise report: {e}")))?;
        std::fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {} (seed {})", self.scenario, self.seed)?;
        for m in &self.metrics {
            writeln!(f, "  {m}")?;
        }
        for a in &self.artifacts {
            writeln!(f, "  wrote {}", a.display())?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
