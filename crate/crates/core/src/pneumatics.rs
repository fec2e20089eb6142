//! Inflatable ring and airbag balloon.
//!
//! Each inflatable follows a linear pressure/volume compliance through its
//! deflated volume and one measured (pressure, volume) point, capped at a
//! tendon-limited maximum volume. Pressure is driven by a first-order
//! regulator with a slew limit. Reaching the burst pressure empties the
//! component for good.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InflatableSpec {
    pub name: String,
    pub deflated_volume: f64,
    pub reference_volume: f64,
    pub reference_pressure: f64,
    pub max_volume: f64,
    /// `None` when the component has not been burst-tested.
    pub burst_pressure: Option<f64>,
    pub wall_thickness: f64,
    /// Observed failure mode, free text.
    pub failure_note: String,
}

impl InflatableSpec {
    /// The donut-shaped ring that constrains the balloon edge.
    pub fn ring() -> Self {
        Self {
            name: "ring".into(),
            deflated_volume: defaults::RING_DEFLATED_VOLUME_M3,
            reference_volume: defaults::RING_REFERENCE_VOLUME_M3,
            reference_pressure: defaults::REFERENCE_PRESSURE_PA,
            max_volume: defaults::RING_REFERENCE_VOLUME_M3 * defaults::RING_MAX_VOLUME_FACTOR,
            burst_pressure: Some(defaults::RING_BURST_PRESSURE_PA),
            wall_thickness: defaults::RING_WALL_THICKNESS_M,
            failure_note: defaults::RING_FAILURE_NOTE.into(),
        }
    }

    /// The airbag balloon pressing on the wound.
    pub fn balloon() -> Self {
        Self {
            name: "balloon".into(),
            deflated_volume: defaults::BALLOON_DEFLATED_VOLUME_M3,
            reference_volume: defaults::BALLOON_REFERENCE_VOLUME_M3,
            reference_pressure: defaults::REFERENCE_PRESSURE_PA,
            max_volume: defaults::BALLOON_REFERENCE_VOLUME_M3 * defaults::BALLOON_MAX_VOLUME_FACTOR,
            burst_pressure: Some(defaults::BALLOON_BURST_PRESSURE_PA),
            wall_thickness: defaults::BALLOON_WALL_THICKNESS_M,
            failure_note: defaults::BALLOON_FAILURE_NOTE.into(),
        }
    }

    /// Lists every violated invariant.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let n = &self.name;
        if !(self.deflated_volume > 0.0) {
            v.push(format!("{n}: deflated volume must be > 0"));
        }
        if !(self.deflated_volume < self.reference_volume) {
            v.push(format!(
                "{n}: deflated volume must be below the reference volume"
            ));
        }
        if !(self.reference_volume <= self.max_volume) {
            v.push(format!(
                "{n}: max volume must be at least the reference volume"
            ));
        }
        if !(self.reference_pressure > 0.0) {
            v.push(format!("{n}: reference pressure must be > 0"));
        }
        if let Some(burst) = self.burst_pressure {
            if !(burst > self.reference_pressure) {
                v.push(format!(
                    "{n}: burst pressure {burst} Pa must exceed the reference pressure {} Pa",
                    self.reference_pressure
                ));
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

    fn bursts_at(&self, pressure: f64) -> bool {
        self.burst_pressure.is_some_and(|b| pressure >= b)
    }
}

/// Gauge pressure and volume of one inflatable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PneumaticState {
    pub gauge_pressure: f64,
    pub volume: f64,
    pub burst: bool,
}

impl PneumaticState {
    pub fn deflated(spec: &InflatableSpec) -> Self {
        Self {
            gauge_pressure: 0.0,
            volume: spec.deflated_volume,
            burst: false,
        }
    }

    /// State at `pressure`, burst if the pressure reaches the burst limit.
    pub fn at_pressure(spec: &InflatableSpec, pressure: f64) -> Self {
        if spec.bursts_at(pressure) {
            Self::burst(spec)
        } else {
            let p = pressure.max(0.0);
            Self {
                gauge_pressure: p,
                volume: compliance_volume(spec, p),
                burst: false,
            }
        }
    }

    fn burst(spec: &InflatableSpec) -> Self {
        Self {
            gauge_pressure: 0.0,
            volume: spec.deflated_volume,
            burst: true,
        }
    }
}

/// Closed-loop pressure regulator feeding one inflatable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegulatorModel {
    pub setpoint: f64,
    pub time_constant: f64,
    pub max_rate: f64,
    /// Standard deviation of the pressure sensor, Pa.
    pub sensor_noise_sd: f64,
}

impl RegulatorModel {
    pub fn new(setpoint: f64) -> Self {
        Self {
            setpoint,
            time_constant: defaults::REGULATOR_TIME_CONSTANT_S,
            max_rate: defaults::REGULATOR_MAX_RATE_PA_PER_S,
            sensor_noise_sd: 0.0,
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(self.time_constant > 0.0) {
            v.push(format!(
                "regulator time constant must be > 0, got {}",
                self.time_constant
            ));
        }
        if !(self.max_rate > 0.0) {
            v.push(format!(
                "regulator max rate must be > 0, got {}",
                self.max_rate
            ));
        }
        if !(self.sensor_noise_sd >= 0.0) {
            v.push(format!(
                "sensor noise sd must be >= 0, got {}",
                self.sensor_noise_sd
            ));
        }
        v
    }
}

fn compliance_volume(spec: &InflatableSpec, pressure: f64) -> f64 {
    let gain = (spec.reference_volume - spec.deflated_volume) / spec.reference_pressure;
    (spec.deflated_volume + gain * pressure).min(spec.max_volume)
}

/// Volume held at gauge pressure `pressure`.
pub fn volume_at_pressure(spec: &InflatableSpec, pressure: f64) -> Result<f64> {
    if spec.bursts_at(pressure) {
        return Err(Error::Burst {
            component: spec.name.clone(),
            burst_pa: spec.burst_pressure.unwrap_or(f64::NAN),
            requested_pa: pressure,
        });
    }
    if !(pressure >= 0.0) {
        return Err(Error::domain(format!(
            "gauge pressure must be >= 0, got {pressure}"
        )));
    }
    Ok(compliance_volume(spec, pressure))
}

/// Advances the regulator by `dt`.
///
/// The regulator closes the gap between its setpoint and the sensed pressure
/// with a first-order lag, limited to `max_rate·dt` per step. A burst state is
/// absorbing.
pub fn step_pressure<R: Rng + ?Sized>(
    spec: &InflatableSpec,
    state: &PneumaticState,
    reg: &RegulatorModel,
    dt: f64,
    rng: &mut R,
) -> PneumaticState {
    if state.burst {
        return PneumaticState::burst(spec);
    }
    if !(dt > 0.0) {
        return *state;
    }
    let p = state.gauge_pressure;
    let sensed = if reg.sensor_noise_sd > 0.0 {
        let noise = Normal::new(0.0, reg.sensor_noise_sd).expect("finite sd");
        p + noise.sample(rng)
    } else {
        p
    };
    let alpha = 1.0 - (-dt / reg.time_constant).exp();
    let limit = reg.max_rate * dt;
    let delta = ((reg.setpoint - sensed) * alpha).clamp(-limit, limit);
    PneumaticState::at_pressure(spec, p + delta)
}

/// Ramps the pressure up from zero in steps of `rate·dt` until the component
/// bursts. Returns the last pressure it held.
pub fn inflate_to_burst(spec: &InflatableSpec, rate: f64, dt: f64) -> Result<f64> {
    let burst = spec.burst_pressure.ok_or_else(|| {
        Error::Config(format!("`{}` has no burst pressure configured", spec.name))
    })?;
    if !(rate > 0.0 && dt > 0.0) {
        return Err(Error::domain(format!(
            "ramp rate and time step must be > 0, got ({rate}, {dt})"
        )));
    }
    Ok(burst_ramp(spec, rate, dt)
        .last()
        .map_or(0.0, |(_, s)| s.gauge_pressure)
        .min(burst))
}

/// The pre-burst samples of a constant-rate inflation, `(t, state)`.
pub fn burst_ramp(
    spec: &InflatableSpec,
    rate: f64,
    dt: f64,
) -> impl Iterator<Item = (f64, PneumaticState)> + '_ {
    (0u64..)
        .map(move |k| {
            let t = k as f64 * dt;
            (t, PneumaticState::at_pressure(spec, rate * t))
        })
        .take_while(|(_, s)| !s.burst)
}
