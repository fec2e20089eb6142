//! Calibrated bleeding threshold.
//!
//! A wound bleeds when the pump pressure behind it exceeds a threshold that
//! grows linearly with the pressure the device applies:
//! `threshold = P0 + k · p_applied`.

use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BleedScenario {
    /// Pump pressure at which the bare wound starts to bleed.
    pub open_threshold: f64,
    pub coupling: f64,
    pub pump_pressure: f64,
}

impl BleedScenario {
    pub fn new(open_threshold: f64, coupling: f64, pump_pressure: f64) -> Result<Self> {
        let s = Self {
            open_threshold,
            coupling,
            pump_pressure,
        };
        let v = s.violations();
        if v.is_empty() {
            Ok(s)
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(self.open_threshold > 0.0) {
            v.push(format!(
                "open threshold must be > 0, got {}",
                self.open_threshold
            ));
        }
        if !(self.coupling >= 0.0) {
            v.push(format!("coupling must be >= 0, got {}", self.coupling));
        }
        if !(self.pump_pressure >= 0.0) {
            v.push(format!(
                "pump pressure must be >= 0, got {}",
                self.pump_pressure
            ));
        }
        v
    }

    pub fn with_pump(self, pump_pressure: f64) -> Self {
        Self {
            pump_pressure,
            ..self
        }
    }
}

impl Default for BleedScenario {
    /// Calibrated on the bare-wound onset and the resume pressure under the
    /// inflated balloon.
    fn default() -> Self {
        let coupling = calibrate_coupling(
            defaults::BLEED_ONSET_PA,
            defaults::BLEED_RESUME_PA,
            defaults::BALLOON_SETPOINT_PA,
        )
        .expect("default calibration points are valid");
        Self {
            open_threshold: defaults::BLEED_ONSET_PA,
            coupling,
            pump_pressure: 0.0,
        }
    }
}

pub fn bleeding_threshold(scn: &BleedScenario, applied_pressure: f64) -> f64 {
    scn.open_threshold + scn.coupling * applied_pressure
}

/// Coupling that maps `applied_pressure` onto `threshold_with_device`.
pub fn calibrate_coupling(
    open_threshold: f64,
    threshold_with_device: f64,
    applied_pressure: f64,
) -> Result<f64> {
    if !(applied_pressure > 0.0) {
        return Err(Error::domain(format!(
            "applied pressure must be > 0 to calibrate, got {applied_pressure}"
        )));
    }
    if !(threshold_with_device >= open_threshold) {
        return Err(Error::domain(format!(
            "threshold with device {threshold_with_device} below open threshold {open_threshold}"
        )));
    }
    Ok((threshold_with_device - open_threshold) / applied_pressure)
}

/// Bleeding iff the pump pressure is strictly above the threshold.
pub fn is_bleeding(scn: &BleedScenario, applied_pressure: f64) -> bool {
    scn.pump_pressure > bleeding_threshold(scn, applied_pressure)
}

/// First pump pressure of `pumps` that bleeds.
pub fn flip_point(
    scn: &BleedScenario,
    applied_pressure: f64,
    pumps: impl IntoIterator<Item = f64>,
) -> Option<f64> {
    pumps
        .into_iter()
        .find(|&p| is_bleeding(&scn.with_pump(p), applied_pressure))
}
