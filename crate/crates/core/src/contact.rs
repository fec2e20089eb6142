//! Force delivered by the balloon to the contact surface.
//!
//! `F = A · (P_balloon − P_atm)`, with the parenthesis being the balloon's gauge
//! pressure. What `A` is depends on how the contact is defined: a plate of
//! known area under the balloon, or the area enclosed by the ring. The ring
//! area can be blended with a configuration-independent balloon footprint,
//! since the ring only partly restricts the balloon.

use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ContactMode {
    /// A plate of known area is the only contact surface.
    PlateDefined { plate_area: f64 },
    /// Contact area taken from the ring, blended with the balloon footprint:
    /// `A = β·ring_area + (1 − β)·footprint_area`.
    RingDefined {
        ring_area: f64,
        footprint_area: f64,
        blend: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactModel {
    pub mode: ContactMode,
    /// Absolute ambient pressure, Pa.
    pub atmospheric_pressure: f64,
    /// Area the force spreads over when it differs from the force-generating
    /// area, e.g. a balloon footprint larger than the plate pushing on it.
    pub spread_area: Option<f64>,
}

impl ContactModel {
    pub fn plate(plate_area: f64) -> Result<Self> {
        Self::new(ContactMode::PlateDefined { plate_area })
    }

    pub fn ring(ring_area: f64, footprint_area: f64, blend: f64) -> Result<Self> {
        Self::new(ContactMode::RingDefined {
            ring_area,
            footprint_area,
            blend,
        })
    }

    pub fn new(mode: ContactMode) -> Result<Self> {
        let model = Self {
            mode,
            atmospheric_pressure: defaults::ATMOSPHERIC_PRESSURE_PA,
            spread_area: None,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_spread_area(mut self, area: f64) -> Result<Self> {
        self.spread_area = Some(area);
        self.validate()?;
        Ok(self)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let mut positive = |name: &str, a: f64| {
            if !(a > 0.0 && a.is_finite()) {
                v.push(format!("{name} must be > 0, got {a}"));
            }
        };
        match self.mode {
            ContactMode::PlateDefined { plate_area } => positive("plate area", plate_area),
            ContactMode::RingDefined {
                ring_area,
                footprint_area,
                ..
            } => {
                positive("ring area", ring_area);
                positive("footprint area", footprint_area);
            }
        }
        if let Some(a) = self.spread_area {
            positive("spread area", a);
        }
        if let ContactMode::RingDefined { blend, .. } = self.mode {
            if !(0.0..=1.0).contains(&blend) {
                v.push(format!("blend must be in [0, 1], got {blend}"));
            }
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }
}

/// Force-generating area.
pub fn effective_area(model: &ContactModel) -> f64 {
    match model.mode {
        ContactMode::PlateDefined { plate_area } => plate_area,
        ContactMode::RingDefined {
            ring_area,
            footprint_area,
            blend,
        } => blend * ring_area + (1.0 - blend) * footprint_area,
    }
}

/// Force on the contact surface at balloon gauge pressure `gauge_pressure`.
pub fn contact_force(model: &ContactModel, gauge_pressure: f64) -> Result<f64> {
    if !(gauge_pressure >= 0.0) {
        return Err(Error::domain(format!(
            "balloon gauge pressure must be >= 0, got {gauge_pressure}"
        )));
    }
    Ok(effective_area(model) * gauge_pressure)
}

/// Same as [`contact_force`] for an absolute balloon pressure.
pub fn contact_force_absolute(model: &ContactModel, balloon_pressure_abs: f64) -> Result<f64> {
    contact_force(model, balloon_pressure_abs - model.atmospheric_pressure)
}

/// Mean pressure on the contact surface.
pub fn contact_pressure(model: &ContactModel, gauge_pressure: f64) -> Result<f64> {
    let force = contact_force(model, gauge_pressure)?;
    Ok(force / model.spread_area.unwrap_or_else(|| effective_area(model)))
}
