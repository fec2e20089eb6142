//! TOML scenario configuration.
//!
//! Every section is optional and every field falls back to the measured
//! device constants in [`crate::defaults`]. Inflatable sections are keyed by
//! component (`[inflatable.ring]`, `[inflatable.balloon]`) and fill missing
//! fields from that component's preset.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::controller::{Command, DeviceConfig, ScriptEntry};
use crate::defaults;
use crate::error::{Error, Result};
use crate::geometry::ArmDesign;
use crate::pneumatics::{InflatableSpec, RegulatorModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioId {
    Stiffness,
    Geometry,
    Burst,
    Contact,
    Bleed,
    FullDevice,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 6] = [
        ScenarioId::Stiffness,
        ScenarioId::Geometry,
        ScenarioId::Burst,
        ScenarioId::Contact,
        ScenarioId::Bleed,
        ScenarioId::FullDevice,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioId::Stiffness => "stiffness",
            ScenarioId::Geometry => "geometry",
            ScenarioId::Burst => "burst",
            ScenarioId::Contact => "contact",
            ScenarioId::Bleed => "bleed",
            ScenarioId::FullDevice => "full_device",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::Config(format!("unknown scenario `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArmSection {
    pub name: String,
    pub radius_m: f64,
    pub arc_angle_rad: f64,
    pub thickness_m: f64,
    pub web_thickness_m: Option<f64>,
    pub bending_stiffness_n_m2: f64,
}

impl Default for ArmSection {
    fn default() -> Self {
        let a = ArmDesign::default();
        Self {
            name: a.name,
            radius_m: a.arc_radius,
            arc_angle_rad: a.arc_angle,
            thickness_m: a.thickness,
            web_thickness_m: a.web_thickness,
            bending_stiffness_n_m2: a.bending_stiffness,
        }
    }
}

impl ArmSection {
    pub fn design(&self) -> ArmDesign {
        ArmDesign {
            name: self.name.clone(),
            arc_radius: self.radius_m,
            arc_angle: self.arc_angle_rad,
            thickness: self.thickness_m,
            web_thickness: self.web_thickness_m,
            bending_stiffness: self.bending_stiffness_n_m2,
            max_stress_ref: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignEntry {
    pub name: String,
    pub ei_n_m2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StiffnessSection {
    /// Arm radius used to convert compliance to stiffness; the arm radius
    /// when absent.
    pub radius_m: Option<f64>,
    pub loads_n: Vec<f64>,
    pub designs: Vec<DesignEntry>,
    /// Relative standard deviation of the multiplicative deflection noise.
    pub noise_rel: f64,
    pub trials: usize,
}

impl Default for StiffnessSection {
    fn default() -> Self {
        let designs = [
            ("standard", defaults::EI_STANDARD.0),
            ("cutout", defaults::EI_CUTOUT.0),
            ("ridges", defaults::EI_RIDGES.0),
        ];
        Self {
            radius_m: None,
            loads_n: vec![1e-5, 2e-5, 3e-5, 4e-5],
            designs: designs
                .into_iter()
                .map(|(n, ei)| DesignEntry {
                    name: n.into(),
                    ei_n_m2: ei,
                })
                .collect(),
            noise_rel: 0.02,
            trials: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometrySection {
    /// Sweep bounds; 2% and 98% of the admissible interval when absent.
    pub d_min_m: Option<f64>,
    pub d_max_m: Option<f64>,
    pub points: usize,
    pub samples_per_arc: usize,
    /// Separations drawn in the outline plot; 0.75, 1 and 1.25 times the
    /// circular separation when absent.
    pub outline_separations_m: Option<Vec<f64>>,
}

impl Default for GeometrySection {
    fn default() -> Self {
        Self {
            d_min_m: None,
            d_max_m: None,
            points: 1000,
            samples_per_arc: 256,
            outline_separations_m: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InflatableSection {
    pub deflated_volume_m3: Option<f64>,
    pub reference_volume_m3: Option<f64>,
    pub reference_pressure_pa: Option<f64>,
    pub max_volume_m3: Option<f64>,
    pub burst_pressure_pa: Option<f64>,
    pub wall_thickness_m: Option<f64>,
    pub failure_note: Option<String>,
}

impl InflatableSection {
    fn resolve(&self, preset: InflatableSpec) -> InflatableSpec {
        let reference_volume = self.reference_volume_m3.unwrap_or(preset.reference_volume);
        // Keep the preset's cap ratio when only the reference volume changes.
        let cap = preset.max_volume / preset.reference_volume;
        InflatableSpec {
            name: preset.name,
            deflated_volume: self.deflated_volume_m3.unwrap_or(preset.deflated_volume),
            reference_volume,
            reference_pressure: self
                .reference_pressure_pa
                .unwrap_or(preset.reference_pressure),
            max_volume: self.max_volume_m3.unwrap_or(reference_volume * cap),
            burst_pressure: self.burst_pressure_pa.or(preset.burst_pressure),
            wall_thickness: self.wall_thickness_m.unwrap_or(preset.wall_thickness),
            failure_note: self.failure_note.clone().unwrap_or(preset.failure_note),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InflatableSections {
    pub ring: Option<InflatableSection>,
    pub balloon: Option<InflatableSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegulatorSection {
    pub time_constant_s: f64,
    pub max_rate_pa_per_s: f64,
    pub sensor_noise_sd_pa: f64,
}

impl Default for RegulatorSection {
    fn default() -> Self {
        Self {
            time_constant_s: defaults::REGULATOR_TIME_CONSTANT_S,
            max_rate_pa_per_s: defaults::REGULATOR_MAX_RATE_PA_PER_S,
            sensor_noise_sd_pa: 0.0,
        }
    }
}

impl RegulatorSection {
    pub fn model(&self) -> RegulatorModel {
        RegulatorModel {
            setpoint: 0.0,
            time_constant: self.time_constant_s,
            max_rate: self.max_rate_pa_per_s,
            sensor_noise_sd: self.sensor_noise_sd_pa,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BurstSection {
    pub ramp_rate_pa_per_s: f64,
    pub dt_s: f64,
    /// Balloon setpoint commanded to drive the device into a burst.
    pub device_setpoint_pa: f64,
    pub device_dt_s: f64,
    pub device_max_time_s: f64,
}

impl Default for BurstSection {
    fn default() -> Self {
        Self {
            ramp_rate_pa_per_s: 100.0,
            dt_s: 0.1,
            device_setpoint_pa: 20_000.0,
            device_dt_s: 0.01,
            device_max_time_s: 60.0,
        }
    }
}

impl BurstSection {
    pub fn step_pa(&self) -> f64 {
        self.ramp_rate_pa_per_s * self.dt_s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactModeId {
    Plate,
    Ring,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContactSection {
    pub mode: ContactModeId,
    pub plate_area_m2: f64,
    /// Balloon footprint; required in ring mode.
    pub footprint_area_m2: Option<f64>,
    pub blend: f64,
    /// Ring separations whose enclosed area defines the ring contact area;
    /// the circular separation when absent.
    pub separations_m: Option<Vec<f64>>,
    pub spread_area_m2: Option<f64>,
    pub atmospheric_pressure_pa: f64,
    pub pressure_min_pa: f64,
    pub pressure_max_pa: f64,
    pub pressure_step_pa: f64,
}

impl Default for ContactSection {
    fn default() -> Self {
        Self {
            mode: ContactModeId::Plate,
            plate_area_m2: 0.01,
            footprint_area_m2: None,
            blend: 0.0,
            separations_m: None,
            spread_area_m2: None,
            atmospheric_pressure_pa: defaults::ATMOSPHERIC_PRESSURE_PA,
            pressure_min_pa: 0.0,
            pressure_max_pa: 10_000.0,
            pressure_step_pa: 250.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BleedSection {
    pub open_threshold_pa: f64,
    pub resume_threshold_pa: f64,
    pub calibration_applied_pa: f64,
    /// Fixed coupling; calibrated from the two thresholds when absent.
    pub coupling: Option<f64>,
    pub applied_pressure_pa: f64,
    pub pump_min_pa: f64,
    pub pump_max_pa: f64,
    pub pump_step_pa: f64,
}

impl Default for BleedSection {
    fn default() -> Self {
        Self {
            open_threshold_pa: defaults::BLEED_ONSET_PA,
            resume_threshold_pa: defaults::BLEED_RESUME_PA,
            calibration_applied_pa: defaults::BALLOON_SETPOINT_PA,
            coupling: None,
            applied_pressure_pa: defaults::BALLOON_SETPOINT_PA,
            pump_min_pa: 0.0,
            pump_max_pa: 20_000.0,
            pump_step_pa: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceSection {
    /// Starting separation; circular when absent.
    pub initial_separation_m: Option<f64>,
    pub dt_s: f64,
    pub duration_s: f64,
    pub torque_pressure_limit_pa: f64,
    pub holding_tolerance_pa: f64,
    pub setpoint_guard: bool,
    pub setpoint_margin_pa: f64,
    pub ring_setpoint_pa: f64,
    pub screw_lead_m_per_rev: f64,
    pub screw_speed_rev_per_s: f64,
    /// Mechanical stops; 25% and 95% of the admissible interval when absent.
    pub separation_limits_m: Option<[f64; 2]>,
    /// Pump pressure at which the final state is checked for bleeding.
    pub check_pump_pa: f64,
}

impl Default for DeviceSection {
    fn default() -> Self {
        let d = DeviceConfig::default();
        Self {
            initial_separation_m: None,
            dt_s: 0.01,
            duration_s: 60.0,
            torque_pressure_limit_pa: d.torque_pressure_limit,
            holding_tolerance_pa: d.holding_tolerance,
            setpoint_guard: true,
            setpoint_margin_pa: d.setpoint_margin.unwrap_or(1000.0),
            ring_setpoint_pa: d.ring_setpoint,
            screw_lead_m_per_rev: d.screw_lead,
            screw_speed_rev_per_s: d.screw_speed,
            separation_limits_m: None,
            check_pump_pa: defaults::BLEED_ONSET_PA,
        }
    }
}

/// Expected headline values. Pass/fail is only computed when `check` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExpectSection {
    pub check: bool,
    pub stiffness_rel_tol: f64,
    pub stiffness_noisy_rel_tol: f64,
    pub circle_area_rel_tol: f64,
    pub burst_ring_pa: f64,
    pub burst_balloon_pa: f64,
    pub bleed_flip_pa: f64,
    pub bleed_open_flip_pa: f64,
    pub threshold_ratio: f64,
    pub threshold_ratio_tol: f64,
    pub contact_rel_tol: f64,
}

impl Default for ExpectSection {
    fn default() -> Self {
        Self {
            check: true,
            stiffness_rel_tol: 1e-3,
            stiffness_noisy_rel_tol: 0.05,
            circle_area_rel_tol: 1e-12,
            burst_ring_pa: defaults::RING_BURST_PRESSURE_PA,
            burst_balloon_pa: defaults::BALLOON_BURST_PRESSURE_PA,
            bleed_flip_pa: defaults::BLEED_RESUME_PA,
            bleed_open_flip_pa: defaults::BLEED_ONSET_PA,
            threshold_ratio: 1.855,
            threshold_ratio_tol: 1e-3,
            contact_rel_tol: 1e-12,
        }
    }
}

/// On-disk layout of a configuration file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    scenario: Option<ScenarioId>,
    seed: Option<u64>,
    out_dir: Option<PathBuf>,
    plot: Option<bool>,
    arm: ArmSection,
    stiffness: StiffnessSection,
    geometry: GeometrySection,
    inflatable: Option<InflatableSections>,
    regulator: RegulatorSection,
    burst: BurstSection,
    contact: ContactSection,
    bleed: BleedSection,
    device: DeviceSection,
    script: Option<Vec<ScriptEntry>>,
    expect: ExpectSection,
}

/// Validated configuration of one scenario run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioId,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub plot: bool,
    pub arm: ArmSection,
    pub stiffness: StiffnessSection,
    pub geometry: GeometrySection,
    pub ring: Option<InflatableSpec>,
    pub balloon: Option<InflatableSpec>,
    pub regulator: RegulatorSection,
    pub burst: BurstSection,
    pub contact: ContactSection,
    pub bleed: BleedSection,
    pub device: DeviceSection,
    pub script: Vec<ScriptEntry>,
    pub expect: ExpectSection,
}

/// Reshape at zero pressure, then inflate the balloon and hold.
pub fn default_script() -> Vec<ScriptEntry> {
    vec![
        ScriptEntry {
            time: 0.0,
            command: Command::Reshape { target_d: 0.25 },
        },
        ScriptEntry {
            time: 15.0,
            command: Command::InflateTo {
                setpoint: defaults::BALLOON_SETPOINT_PA,
            },
        },
    ]
}

impl ScenarioConfig {
    /// Defaults for `scenario`, with both inflatables present.
    pub fn defaults(scenario: ScenarioId) -> Self {
        let file = FileConfig {
            inflatable: Some(InflatableSections {
                ring: Some(InflatableSection::default()),
                balloon: Some(InflatableSection::default()),
            }),
            ..FileConfig::default()
        };
        Self::resolve(file, Some(scenario)).expect("built-in defaults are valid")
    }

    /// Parses TOML text. `scenario` overrides the file's `scenario` key.
    pub fn from_toml_str(text: &str, scenario: Option<ScenarioId>) -> Result<Self> {
        let file: FileConfig = toml::from_str(text).map_err(|e| parse_error(text, &e))?;
        Self::resolve(file, scenario)
    }

    fn resolve(file: FileConfig, scenario: Option<ScenarioId>) -> Result<Self> {
        let mut problems = Vec::new();
        let scenario = scenario.or(file.scenario);
        if scenario.is_none() {
            problems.push("no scenario given".to_owned());
        }
        let inflatable = file.inflatable.unwrap_or_default();
        let ring = inflatable.ring.map(|s| s.resolve(InflatableSpec::ring()));
        let balloon = inflatable
            .balloon
            .map(|s| s.resolve(InflatableSpec::balloon()));
        let cfg = ScenarioConfig {
            scenario: scenario.unwrap_or(ScenarioId::Bleed),
            seed: file.seed.unwrap_or(0),
            out_dir: file.out_dir.unwrap_or_else(|| PathBuf::from("out")),
            plot: file.plot.unwrap_or(false),
            arm: file.arm,
            stiffness: file.stiffness,
            geometry: file.geometry,
            ring,
            balloon,
            regulator: file.regulator,
            burst: file.burst,
            contact: file.contact,
            bleed: file.bleed,
            device: file.device,
            script: file.script.unwrap_or_else(default_script),
            expect: file.expect,
        };
        problems.extend(cfg.violations());
        if problems.is_empty() {
            Ok(cfg)
        } else {
            Err(Error::Validation(problems))
        }
    }

    pub fn ring_spec(&self) -> InflatableSpec {
        self.ring.clone().unwrap_or_else(InflatableSpec::ring)
    }

    pub fn balloon_spec(&self) -> InflatableSpec {
        self.balloon.clone().unwrap_or_else(InflatableSpec::balloon)
    }

    pub fn stiffness_radius(&self) -> f64 {
        self.stiffness.radius_m.unwrap_or(self.arm.radius_m)
    }

    pub fn device_config(&self) -> DeviceConfig {
        let arm = self.arm.design();
        let c = arm.chord();
        let d = &self.device;
        let limits = d
            .separation_limits_m
            .map_or((0.5 * c, 1.9 * c), |[lo, hi]| (lo, hi));
        DeviceConfig {
            arm,
            balloon: self.balloon_spec(),
            ring: self.ring_spec(),
            regulator: self.regulator.model(),
            ring_setpoint: d.ring_setpoint_pa,
            torque_pressure_limit: d.torque_pressure_limit_pa,
            holding_tolerance: d.holding_tolerance_pa,
            setpoint_margin: d.setpoint_guard.then_some(d.setpoint_margin_pa),
            screw_lead: d.screw_lead_m_per_rev,
            screw_speed: d.screw_speed_rev_per_s,
            separation_limits: limits,
        }
    }

    /// Every problem with the configuration for its scenario.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let arm = self.arm.design();
        if let Err(e) = arm.validate() {
            v.push(e.to_string());
        }
        for spec in self.ring.iter().chain(self.balloon.iter()) {
            v.extend(spec.violations());
        }
        v.extend(self.regulator.model().violations());

        match self.scenario {
            ScenarioId::Stiffness => {
                let s = &self.stiffness;
                positive(&mut v, "stiffness.radius_m", self.stiffness_radius());
                if s.loads_n.iter().all(|&p| p <= 0.0) {
                    v.push("stiffness.loads_n needs at least one positive load".into());
                }
                if s.loads_n.iter().any(|&p| !(p >= 0.0)) {
                    v.push("stiffness.loads_n must be non-negative".into());
                }
                if s.designs.is_empty() {
                    v.push("stiffness.designs is empty".into());
                }
                for d in &s.designs {
                    if !(d.ei_n_m2 > 0.0) {
                        v.push(format!("stiffness design `{}` needs ei_n_m2 > 0", d.name));
                    }
                }
                if !(s.noise_rel >= 0.0) {
                    v.push("stiffness.noise_rel must be >= 0".into());
                }
            }
            ScenarioId::Geometry => {
                let g = &self.geometry;
                let max = arm.max_separation();
                let lo = g.d_min_m.unwrap_or(0.02 * max);
                let hi = g.d_max_m.unwrap_or(0.98 * max);
                if !(lo > 0.0 && lo < hi && hi < max) {
                    v.push(format!(
                        "geometry sweep [{lo}, {hi}] must lie inside (0, {max})"
                    ));
                }
                if g.points < 2 {
                    v.push("geometry.points must be >= 2".into());
                }
                if g.samples_per_arc < 64 {
                    v.push("geometry.samples_per_arc must be >= 64".into());
                }
                for &d in g.outline_separations_m.iter().flatten() {
                    if !(d > 0.0 && d < max) {
                        v.push(format!("outline separation {d} outside (0, {max})"));
                    }
                }
            }
            ScenarioId::Burst => {
                if self.ring.is_none() && self.balloon.is_none() {
                    v.push(
                        "burst scenario needs an [inflatable.ring] or [inflatable.balloon] section"
                            .into(),
                    );
                }
                for spec in self.ring.iter().chain(self.balloon.iter()) {
                    if spec.burst_pressure.is_none() {
                        v.push(format!("inflatable `{}` has no burst pressure", spec.name));
                    }
                }
                let b = &self.burst;
                positive(&mut v, "burst.ramp_rate_pa_per_s", b.ramp_rate_pa_per_s);
                positive(&mut v, "burst.dt_s", b.dt_s);
                positive(&mut v, "burst.device_dt_s", b.device_dt_s);
                positive(&mut v, "burst.device_max_time_s", b.device_max_time_s);
            }
            ScenarioId::Contact => {
                let c = &self.contact;
                positive(&mut v, "contact.plate_area_m2", c.plate_area_m2);
                positive(&mut v, "contact.pressure_step_pa", c.pressure_step_pa);
                if !(c.pressure_min_pa >= 0.0 && c.pressure_min_pa <= c.pressure_max_pa) {
                    v.push("contact pressure sweep must satisfy 0 <= min <= max".into());
                }
                if !(0.0..=1.0).contains(&c.blend) {
                    v.push(format!("contact.blend must be in [0, 1], got {}", c.blend));
                }
                if c.mode == ContactModeId::Ring && c.footprint_area_m2.is_none() {
                    v.push("contact.footprint_area_m2 is required in ring mode".into());
                }
                if let Some(a) = c.footprint_area_m2 {
                    positive(&mut v, "contact.footprint_area_m2", a);
                }
                if let Some(a) = c.spread_area_m2 {
                    positive(&mut v, "contact.spread_area_m2", a);
                }
                let max = arm.max_separation();
                for &d in c.separations_m.iter().flatten() {
                    if !(d > 0.0 && d < max) {
                        v.push(format!("contact separation {d} outside (0, {max})"));
                    }
                }
            }
            ScenarioId::Bleed => {
                let b = &self.bleed;
                positive(&mut v, "bleed.open_threshold_pa", b.open_threshold_pa);
                positive(&mut v, "bleed.pump_step_pa", b.pump_step_pa);
                if b.coupling.is_none() {
                    positive(
                        &mut v,
                        "bleed.calibration_applied_pa",
                        b.calibration_applied_pa,
                    );
                    if !(b.resume_threshold_pa >= b.open_threshold_pa) {
                        v.push("bleed.resume_threshold_pa must be >= open_threshold_pa".into());
                    }
                }
                if b.coupling.is_some_and(|k| !(k >= 0.0)) {
                    v.push("bleed.coupling must be >= 0".into());
                }
                if !(b.applied_pressure_pa >= 0.0) {
                    v.push("bleed.applied_pressure_pa must be >= 0".into());
                }
                if !(b.pump_min_pa >= 0.0 && b.pump_min_pa <= b.pump_max_pa) {
                    v.push("bleed pump sweep must satisfy 0 <= min <= max".into());
                }
            }
            ScenarioId::FullDevice => {
                let d = &self.device;
                positive(&mut v, "device.dt_s", d.dt_s);
                if !(d.duration_s >= 0.0) {
                    v.push("device.duration_s must be >= 0".into());
                }
                v.extend(self.device_config().violations());
                if self.script.windows(2).any(|w| !(w[0].time <= w[1].time)) {
                    v.push("script entries must be sorted by t_s".into());
                }
            }
        }
        v
    }
}

fn positive(v: &mut Vec<String>, what: &str, x: f64) {
    if !(x > 0.0 && x.is_finite()) {
        v.push(format!("{what} must be > 0, got {x}"));
    }
}

/// Converts a TOML error into a [`Error::Parse`] naming the line and key.
fn parse_error(text: &str, err: &toml::de::Error) -> Error {
    let location = match err.span() {
        Some(span) => {
            let line_no = text[..span.start].matches('\n').count() + 1;
            let line_start = text[..span.start].rfind('\n').map_or(0, |i| i + 1);
            let line = text[line_start..].lines().next().unwrap_or("");
            match line.split_once('=') {
                Some((key, _)) if !line.trim_start().starts_with('[') => {
                    format!("line {line_no}, field `{}`", key.trim())
                }
                _ => format!("line {line_no}"),
            }
        }
        None => "configuration".to_owned(),
    };
    Error::Parse {
        location,
        message: err.message().to_owned(),
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    load_config_for(path, None)
}

/// Like [`load_config`], with the scenario chosen by the caller.
pub fn load_config_for(path: &Path, scenario: Option<ScenarioId>) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ScenarioConfig::from_toml_str(&text, scenario)
}
