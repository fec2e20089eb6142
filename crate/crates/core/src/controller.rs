//! Device state machine.
//!
//! The controller owns the lead-screw motor and two pressure channels, one for
//! the balloon and one for the inflatable ring. Its guards:
//!
//! - the motor cannot reshape the ring once the balloon is pressurised above
//!   `torque_pressure_limit`; a reshape request is rejected, and a reshape in
//!   progress is aborted if the balloon pressure rises past the limit;
//! - inflation setpoints must stay a margin below the balloon burst pressure
//!   (the margin can be disabled to reproduce burst tests);
//! - a burst of either inflatable latches the device in `Fault`.
//!
//! Rejections are events, not faults.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::geometry::{ArmDesign, RingConfiguration};
use crate::pneumatics::{step_pressure, InflatableSpec, PneumaticState, RegulatorModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultReason {
    BalloonBurst,
    RingBurst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Deflated,
    Reshaping,
    Inflating,
    Holding,
    Deflating,
    Fault(FaultReason),
}

impl Phase {
    pub fn is_fault(self) -> bool {
        matches!(self, Phase::Fault(_))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Deflated => f.write_str("deflated"),
            Phase::Reshaping => f.write_str("reshaping"),
            Phase::Inflating => f.write_str("inflating"),
            Phase::Holding => f.write_str("holding"),
            Phase::Deflating => f.write_str("deflating"),
            Phase::Fault(FaultReason::BalloonBurst) => f.write_str("fault:balloon_burst"),
            Phase::Fault(FaultReason::RingBurst) => f.write_str("fault:ring_burst"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    Reshape {
        #[serde(rename = "target_d_m")]
        target_d: f64,
    },
    InflateTo {
        #[serde(rename = "setpoint_pa")]
        setpoint: f64,
    },
    Deflate,
    /// Halts the motor and holds the current pressures.
    Stop,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Reshape { target_d } => write!(f, "reshape({target_d})"),
            Command::InflateTo { setpoint } => write!(f, "inflate_to({setpoint})"),
            Command::Deflate => f.write_str("deflate"),
            Command::Stop => f.write_str("stop"),
        }
    }
}

/// What the pressure channels are doing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PressureGoal {
    /// Valves closed, no regulation.
    Idle,
    Inflate {
        balloon: f64,
        ring: f64,
    },
    Deflate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceState {
    pub time: f64,
    pub phase: Phase,
    pub ring_cfg: RingConfiguration,
    pub balloon: PneumaticState,
    pub ring_inflatable: PneumaticState,
    pub torque_pressure_limit: f64,
    pub goal: PressureGoal,
    pub target_d: Option<f64>,
}

impl DeviceState {
    pub fn balloon_setpoint(&self) -> Option<f64> {
        match self.goal {
            PressureGoal::Idle => None,
            PressureGoal::Inflate { balloon, .. } => Some(balloon),
            PressureGoal::Deflate => Some(0.0),
        }
    }

    /// Equality ignoring the clock.
    pub fn same_as(&self, other: &DeviceState) -> bool {
        DeviceState {
            time: other.time,
            ..self.clone()
        } == *other
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum EventKind {
    Accepted { command: Command },
    RejectedCommand { command: Command, reason: String },
    PhaseChanged { from: Phase, to: Phase },
    TargetReached { d: f64 },
    LimitReached { requested: f64, d: f64 },
    ReshapeAborted { balloon_pa: f64 },
    Burst { component: String },
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventKind::Accepted { command } => write!(f, "accepted {command}"),
            EventKind::RejectedCommand { command, reason } => {
                write!(f, "rejected {command}: {reason}")
            }
            EventKind::PhaseChanged { from, to } => write!(f, "{from}->{to}"),
            EventKind::TargetReached { d } => write!(f, "target reached d={d}"),
            EventKind::LimitReached { requested, d } => {
                write!(f, "limit reached: requested d={requested} clamped to {d}")
            }
            EventKind::ReshapeAborted { balloon_pa } => {
                write!(f, "reshape aborted at balloon {balloon_pa} Pa")
            }
            EventKind::Burst { component } => write!(f, "{component} burst"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceConfig {
    pub arm: ArmDesign,
    pub balloon: InflatableSpec,
    pub ring: InflatableSpec,
    /// Shared regulator dynamics; the setpoint comes from the active goal.
    pub regulator: RegulatorModel,
    /// Ring channel pressure while the device is inflated.
    pub ring_setpoint: f64,
    pub torque_pressure_limit: f64,
    pub holding_tolerance: f64,
    /// Required gap between an inflation setpoint and the balloon burst
    /// pressure. `None` turns the check off.
    pub setpoint_margin: Option<f64>,
    pub screw_lead: f64,
    pub screw_speed: f64,
    /// Mechanical stops on the hinge separation.
    pub separation_limits: (f64, f64),
}

impl Default for DeviceConfig {
    fn default() -> Self {
        let arm = ArmDesign::default();
        let c = arm.chord();
        Self {
            arm,
            balloon: InflatableSpec::balloon(),
            ring: InflatableSpec::ring(),
            regulator: RegulatorModel::new(0.0),
            ring_setpoint: defaults::REFERENCE_PRESSURE_PA,
            torque_pressure_limit: defaults::TORQUE_PRESSURE_LIMIT_PA,
            holding_tolerance: 50.0,
            setpoint_margin: Some(1000.0),
            screw_lead: defaults::SCREW_LEAD_M_PER_REV,
            screw_speed: defaults::SCREW_SPEED_REV_PER_S,
            separation_limits: (0.5 * c, 1.9 * c),
        }
    }
}

impl DeviceConfig {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if let Err(e) = self.arm.validate() {
            v.push(e.to_string());
        }
        v.extend(self.balloon.violations());
        v.extend(self.ring.violations());
        v.extend(self.regulator.violations());
        if !(self.torque_pressure_limit >= 0.0) {
            v.push("torque pressure limit must be >= 0".into());
        }
        if !(self.holding_tolerance > 0.0) {
            v.push("holding tolerance must be > 0".into());
        }
        if !(self.screw_lead > 0.0 && self.screw_speed > 0.0) {
            v.push("screw lead and speed must be > 0".into());
        }
        let (lo, hi) = self.separation_limits;
        if !(lo > 0.0 && lo < hi && hi < self.arm.max_separation()) {
            v.push(format!(
                "separation limits ({lo}, {hi}) must satisfy 0 < lo < hi < {}",
                self.arm.max_separation()
            ));
        }
        if self
            .ring
            .burst_pressure
            .is_some_and(|b| self.ring_setpoint >= b)
        {
            v.push("ring setpoint must be below the ring burst pressure".into());
        }
        if let Some(m) = self.setpoint_margin {
            if !(m >= 0.0) {
                v.push("setpoint margin must be >= 0".into());
            }
        }
        v
    }

    /// Separation travel per second.
    pub fn reshape_speed(&self) -> f64 {
        self.screw_speed * self.screw_lead
    }
}

/// Steps a [`DeviceState`] under a [`DeviceConfig`], drawing sensor noise
/// from its own seeded generator.
#[derive(Debug, Clone)]
pub struct Controller {
    config: DeviceConfig,
    rng: ChaCha8Rng,
}

impl Controller {
    pub fn new(config: DeviceConfig, seed: u64) -> Result<Self> {
        let v = config.violations();
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        Ok(Self {
            config,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn config(&self) -> &DeviceConfig {
        &self.config
    }

    /// Deflated device with the ring at separation `d`.
    pub fn initial_state(&self, d: f64) -> Result<DeviceState> {
        let (lo, hi) = self.config.separation_limits;
        if !(lo..=hi).contains(&d) {
            return Err(Error::Range(format!(
                "initial separation {d} m outside the stops [{lo}, {hi}]"
            )));
        }
        Ok(DeviceState {
            time: 0.0,
            phase: Phase::Deflated,
            ring_cfg: RingConfiguration::new(self.config.arm.clone(), d)?,
            balloon: PneumaticState::deflated(&self.config.balloon),
            ring_inflatable: PneumaticState::deflated(&self.config.ring),
            torque_pressure_limit: self.config.torque_pressure_limit,
            goal: PressureGoal::Idle,
            target_d: None,
        })
    }

    pub fn step(
        &mut self,
        state: &DeviceState,
        cmd: Option<&Command>,
        dt: f64,
    ) -> (DeviceState, Vec<Event>) {
        let t0 = state.time;
        let t1 = t0 + dt;
        let mut next = state.clone();
        next.time = t1;
        let mut events = Vec::new();

        if state.phase.is_fault() {
            if let Some(&command) = cmd {
                events.push(Event {
                    time: t0,
                    kind: EventKind::RejectedCommand {
                        command,
                        reason: format!("device in {}", state.phase),
                    },
                });
            }
            return (next, events);
        }

        if let Some(&command) = cmd {
            let kind = match self.apply_command(&mut next, command) {
                Ok(extra) => {
                    events.extend(extra.into_iter().map(|kind| Event { time: t0, kind }));
                    EventKind::Accepted { command }
                }
                Err(reason) => EventKind::RejectedCommand { command, reason },
            };
            events.insert(0, Event { time: t0, kind });
        }

        if dt > 0.0 {
            if let Some(fault) = self.advance_pressures(&mut next, dt) {
                let component = match fault {
                    FaultReason::BalloonBurst => &self.config.balloon.name,
                    FaultReason::RingBurst => &self.config.ring.name,
                };
                events.push(Event {
                    time: t1,
                    kind: EventKind::Burst {
                        component: component.clone(),
                    },
                });
                next.goal = PressureGoal::Idle;
                next.target_d = None;
                next.balloon = PneumaticState {
                    gauge_pressure: 0.0,
                    ..next.balloon
                };
                next.ring_inflatable = PneumaticState {
                    gauge_pressure: 0.0,
                    ..next.ring_inflatable
                };
                next.phase = Phase::Fault(fault);
                push_phase_change(state.phase, next.phase, t1, &mut events);
                return (next, events);
            }
            self.advance_motor(&mut next, dt, t1, &mut events);
        }

        if next.phase != Phase::Reshaping {
            next.phase = self.resting_phase(&mut next);
        }
        push_phase_change(state.phase, next.phase, t1, &mut events);
        (next, events)
    }

    /// Applies a command to the state; `Err` carries the rejection reason.
    fn apply_command(
        &self,
        state: &mut DeviceState,
        cmd: Command,
    ) -> std::result::Result<Vec<EventKind>, String> {
        let cfg = &self.config;
        match cmd {
            Command::Reshape { target_d } => {
                if !target_d.is_finite() {
                    return Err(format!("target separation {target_d} is not finite"));
                }
                let p = state.balloon.gauge_pressure;
                if p > state.torque_pressure_limit {
                    return Err(format!(
                        "balloon at {p} Pa exceeds motor torque limit {} Pa",
                        state.torque_pressure_limit
                    ));
                }
                let (lo, hi) = cfg.separation_limits;
                let clamped = target_d.clamp(lo, hi);
                let mut extra = Vec::new();
                if clamped != target_d {
                    extra.push(EventKind::LimitReached {
                        requested: target_d,
                        d: clamped,
                    });
                }
                state.target_d = Some(clamped);
                state.phase = Phase::Reshaping;
                Ok(extra)
            }
            Command::InflateTo { setpoint } => {
                if !(setpoint >= 0.0 && setpoint.is_finite()) {
                    return Err(format!(
                        "setpoint {setpoint} Pa is not a valid gauge pressure"
                    ));
                }
                if let (Some(margin), Some(burst)) =
                    (cfg.setpoint_margin, cfg.balloon.burst_pressure)
                {
                    if setpoint >= burst - margin {
                        return Err(format!(
                            "setpoint {setpoint} Pa within {margin} Pa of balloon burst {burst} Pa"
                        ));
                    }
                }
                state.goal = PressureGoal::Inflate {
                    balloon: setpoint,
                    ring: cfg.ring_setpoint,
                };
                Ok(Vec::new())
            }
            Command::Deflate => {
                state.goal = PressureGoal::Deflate;
                Ok(Vec::new())
            }
            Command::Stop => {
                state.target_d = None;
                if state.phase == Phase::Reshaping {
                    state.phase = Phase::Deflated;
                }
                if state.goal != PressureGoal::Idle {
                    state.goal = PressureGoal::Inflate {
                        balloon: state.balloon.gauge_pressure,
                        ring: state.ring_inflatable.gauge_pressure,
                    };
                }
                Ok(Vec::new())
            }
        }
    }

    fn advance_pressures(&mut self, state: &mut DeviceState, dt: f64) -> Option<FaultReason> {
        let (balloon_sp, ring_sp) = match state.goal {
            PressureGoal::Idle => return None,
            PressureGoal::Inflate { balloon, ring } => (balloon, ring),
            PressureGoal::Deflate => (0.0, 0.0),
        };
        let cfg = &self.config;
        let reg = |setpoint| RegulatorModel {
            setpoint,
            ..cfg.regulator
        };
        state.balloon = step_pressure(
            &cfg.balloon,
            &state.balloon,
            &reg(balloon_sp),
            dt,
            &mut self.rng,
        );
        state.ring_inflatable = step_pressure(
            &cfg.ring,
            &state.ring_inflatable,
            &reg(ring_sp),
            dt,
            &mut self.rng,
        );
        if state.balloon.burst {
            Some(FaultReason::BalloonBurst)
        } else if state.ring_inflatable.burst {
            Some(FaultReason::RingBurst)
        } else {
            None
        }
    }

    fn advance_motor(&self, state: &mut DeviceState, dt: f64, t: f64, events: &mut Vec<Event>) {
        if state.phase != Phase::Reshaping {
            return;
        }
        let p = state.balloon.gauge_pressure;
        if p > state.torque_pressure_limit {
            events.push(Event {
                time: t,
                kind: EventKind::ReshapeAborted { balloon_pa: p },
            });
            state.target_d = None;
            state.phase = Phase::Deflated;
            return;
        }
        let Some(target) = state.target_d else {
            state.phase = Phase::Deflated;
            return;
        };
        let d = state.ring_cfg.hinge_separation;
        let travel = self.config.reshape_speed() * dt;
        let new_d = if (target - d).abs() <= travel {
            target
        } else {
            d + travel.copysign(target - d)
        };
        // Targets are clamped to the stops, which lie inside the valid interval.
        state.ring_cfg.hinge_separation = new_d;
        if new_d == target {
            events.push(Event {
                time: t,
                kind: EventKind::TargetReached { d: new_d },
            });
            state.target_d = None;
            state.phase = Phase::Deflated;
        }
    }

    /// Phase implied by the pressure goal when the motor is idle. Completes a
    /// deflation by venting both channels.
    fn resting_phase(&self, state: &mut DeviceState) -> Phase {
        let tol = self.config.holding_tolerance;
        match state.goal {
            PressureGoal::Idle => Phase::Deflated,
            PressureGoal::Inflate { balloon, .. } => {
                if (state.balloon.gauge_pressure - balloon).abs() <= tol {
                    Phase::Holding
                } else {
                    Phase::Inflating
                }
            }
            PressureGoal::Deflate => {
                if state.balloon.gauge_pressure <= tol
                    && state.ring_inflatable.gauge_pressure <= tol
                {
                    state.balloon = PneumaticState::deflated(&self.config.balloon);
                    state.ring_inflatable = PneumaticState::deflated(&self.config.ring);
                    state.goal = PressureGoal::Idle;
                    Phase::Deflated
                } else {
                    Phase::Deflating
                }
            }
        }
    }
}

fn push_phase_change(from: Phase, to: Phase, t: f64, events: &mut Vec<Event>) {
    if from != to {
        events.push(Event {
            time: t,
            kind: EventKind::PhaseChanged { from, to },
        });
    }
}

/// A command issued at a scripted time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScriptEntry {
    #[serde(rename = "t_s")]
    pub time: f64,
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub state: DeviceState,
    pub events: Vec<Event>,
}

/// Recorded run: the initial state followed by one sample per step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn final_state(&self) -> &DeviceState {
        &self
            .samples
            .last()
            .expect("trajectory has an initial sample")
            .state
    }

    pub fn events(&self) -> impl Iterator<Item = &Event> {
        self.samples.iter().flat_map(|s| s.events.iter())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t_s", "phase", "d_m", "balloon_pa", "ring_pa", "events"])?;
        for s in &self.samples {
            let events = s
                .events
                .iter()
                .map(|e| e.kind.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            w.write_record([
                s.state.time.to_string(),
                s.state.phase.to_string(),
                s.state.ring_cfg.hinge_separation.to_string(),
                s.state.balloon.gauge_pressure.to_string(),
                s.state.ring_inflatable.gauge_pressure.to_string(),
                events,
            ])?;
        }
        w.flush().map_err(|e| Error::io("<trajectory>", e))?;
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

/// Replays `script` through [`Controller::step`] for `duration` seconds.
///
/// A command fires on the first step starting at or after its time; commands
/// falling due together are issued on consecutive steps in script order.
pub fn run_sequence(
    controller: &mut Controller,
    initial: DeviceState,
    script: &[ScriptEntry],
    dt: f64,
    duration: f64,
) -> Result<Trajectory> {
    if !(dt > 0.0) {
        return Err(Error::Config(format!("time step must be > 0, got {dt}")));
    }
    if !(duration >= 0.0) {
        return Err(Error::Config(format!(
            "duration must be >= 0, got {duration}"
        )));
    }
    if let Some(w) = script.windows(2).find(|w| !(w[0].time <= w[1].time)) {
        return Err(Error::Config(format!(
            "script not sorted by time: {} s ({}) before {} s ({})",
            w[0].time, w[0].command, w[1].time, w[1].command
        )));
    }
    let steps = (duration / dt).round() as usize;
    let start = initial.time;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(TrajectorySample {
        state: initial.clone(),
        events: Vec::new(),
    });
    let mut state = initial;
    let mut pending = script.iter().peekable();
    for k in 0..steps {
        let now = start + k as f64 * dt;
        let cmd = pending
            .next_if(|e| e.time <= now + 1e-9 * dt)
            .map(|e| &e.command);
        let (next, events) = controller.step(&state, cmd, dt);
        // Accumulating dt drifts; pin the clock to the step index.
        state = DeviceState {
            time: start + (k + 1) as f64 * dt,
            ..next
        };
        samples.push(TrajectorySample {
            state: state.clone(),
            events,
        });
    }
    Ok(Trajectory { samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn controller() -> Controller {
        Controller::new(DeviceConfig::default(), 0).unwrap()
    }

    fn settle(c: &mut Controller, mut s: DeviceState, secs: f64) -> DeviceState {
        for _ in 0..(secs / 0.01) as usize {
            s = c.step(&s, None, 0.01).0;
        }
        s
    }

    #[test]
    fn inflate_from_deflated() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let (s1, ev) = c.step(&s0, Some(&Command::InflateTo { setpoint: 8270.0 }), 0.01);
        assert_eq!(s1.phase, Phase::Inflating);
        assert!(matches!(ev[0].kind, EventKind::Accepted { .. }));
        let s = settle(&mut c, s1, 10.0);
        assert_eq!(s.phase, Phase::Holding);
        assert!((s.balloon.gauge_pressure - 8270.0).abs() <= 50.0);
        assert!((s.ring_inflatable.gauge_pressure - 4830.0).abs() < 1.0);
    }

    #[test]
    fn reshape_rejected_while_holding() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let s1 = c
            .step(&s0, Some(&Command::InflateTo { setpoint: 8270.0 }), 0.01)
            .0;
        let held = settle(&mut c, s1, 10.0);
        assert_eq!(held.phase, Phase::Holding);
        let (s2, ev) = c.step(&held, Some(&Command::Reshape { target_d: 0.25 }), 0.01);
        assert!(matches!(ev[0].kind, EventKind::RejectedCommand { .. }));
        assert_eq!(s2.phase, Phase::Holding);
        assert_eq!(s2.ring_cfg, held.ring_cfg);
    }

    #[test]
    fn reshape_moves_at_screw_speed_and_stops_at_target() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let (s1, _) = c.step(&s0, Some(&Command::Reshape { target_d: 0.25 }), 0.1);
        assert_eq!(s1.phase, Phase::Reshaping);
        let expected = 0.2 + 2.0 * defaults::SCREW_LEAD_M_PER_REV * 0.1;
        assert!((s1.ring_cfg.hinge_separation - expected).abs() < 1e-15);
        let s = settle(&mut c, s1, 20.0);
        assert_eq!(s.phase, Phase::Deflated);
        assert_eq!(s.ring_cfg.hinge_separation, 0.25);
    }

    #[test]
    fn reshape_is_clamped_to_stops() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let (_, ev) = c.step(&s0, Some(&Command::Reshape { target_d: 1.0 }), 0.01);
        let hi = c.config().separation_limits.1;
        assert!(ev
            .iter()
            .any(|e| matches!(e.kind, EventKind::LimitReached { d, .. } if d == hi)));
    }

    #[test]
    fn reshape_aborts_when_balloon_pressurises() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let s1 = c
            .step(&s0, Some(&Command::Reshape { target_d: 0.08 }), 0.01)
            .0;
        let (mut s, _) = c.step(&s1, Some(&Command::InflateTo { setpoint: 8270.0 }), 0.01);
        let mut aborted = false;
        for _ in 0..500 {
            let (n, ev) = c.step(&s, None, 0.01);
            aborted |= ev
                .iter()
                .any(|e| matches!(e.kind, EventKind::ReshapeAborted { .. }));
            assert!(
                !(n.phase == Phase::Reshaping
                    && n.balloon.gauge_pressure > n.torque_pressure_limit)
            );
            s = n;
        }
        assert!(aborted);
        assert_eq!(s.phase, Phase::Holding);
    }

    #[test]
    fn setpoint_margin_guard() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let (s1, ev) = c.step(&s0, Some(&Command::InflateTo { setpoint: 18_000.0 }), 0.01);
        assert!(matches!(ev[0].kind, EventKind::RejectedCommand { .. }));
        assert_eq!(s1.phase, Phase::Deflated);
    }

    #[test]
    fn burst_faults_and_latches() {
        let cfg = DeviceConfig {
            setpoint_margin: None,
            ..DeviceConfig::default()
        };
        let mut c = Controller::new(cfg, 0).unwrap();
        let s0 = c.initial_state(0.2).unwrap();
        let mut s = c
            .step(&s0, Some(&Command::InflateTo { setpoint: 20_000.0 }), 0.01)
            .0;
        for _ in 0..1000 {
            s = c.step(&s, None, 0.01).0;
        }
        assert_eq!(s.phase, Phase::Fault(FaultReason::BalloonBurst));
        let (s2, ev) = c.step(&s, Some(&Command::Deflate), 0.01);
        assert!(s2.phase.is_fault());
        assert!(matches!(ev[0].kind, EventKind::RejectedCommand { .. }));
    }

    #[test]
    fn deflate_returns_to_deflated() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let s1 = c
            .step(&s0, Some(&Command::InflateTo { setpoint: 5000.0 }), 0.01)
            .0;
        let s = settle(&mut c, s1, 5.0);
        let (s, _) = c.step(&s, Some(&Command::Deflate), 0.01);
        assert_eq!(s.phase, Phase::Deflating);
        let s = settle(&mut c, s, 10.0);
        assert_eq!(s.phase, Phase::Deflated);
        assert_eq!(s.balloon.gauge_pressure, 0.0);
        assert_eq!(s.goal, PressureGoal::Idle);
    }

    #[test]
    fn stop_holds_current_pressure() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let mut s = c
            .step(&s0, Some(&Command::InflateTo { setpoint: 8000.0 }), 0.01)
            .0;
        for _ in 0..20 {
            s = c.step(&s, None, 0.01).0;
        }
        let p = s.balloon.gauge_pressure;
        let (s, _) = c.step(&s, Some(&Command::Stop), 0.01);
        assert_eq!(s.phase, Phase::Holding);
        assert_eq!(s.balloon_setpoint(), Some(p));
    }

    #[test]
    fn unsorted_script_is_rejected() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let script = [
            ScriptEntry {
                time: 2.0,
                command: Command::Deflate,
            },
            ScriptEntry {
                time: 1.0,
                command: Command::Stop,
            },
        ];
        assert!(matches!(
            run_sequence(&mut c, s0, &script, 0.01, 3.0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn empty_script_is_stationary() {
        let mut c = controller();
        let s0 = c.initial_state(0.2).unwrap();
        let traj = run_sequence(&mut c, s0.clone(), &[], 0.01, 1.0).unwrap();
        assert_eq!(traj.samples.len(), 101);
        assert!(traj
            .samples
            .iter()
            .all(|s| s.state.same_as(&s0) && s.events.is_empty()));
    }

    #[test]
    fn initial_state_outside_stops() {
        assert!(matches!(
            controller().initial_state(0.01),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn script_entries_parse_from_toml() {
        #[derive(Deserialize)]
        struct S {
            script: Vec<ScriptEntry>,
        }
        let s: S = toml::from_str(
            r#"
            [[script]]
            t_s = 0.0
            command = "reshape"
            target_d_m = 0.25
            [[script]]
            t_s = 15.0
            command = "inflate_to"
            setpoint_pa = 8270.0
            [[script]]
            t_s = 40.0
            command = "deflate"
            "#,
        )
        .unwrap();
        assert_eq!(s.script[0].command, Command::Reshape { target_d: 0.25 });
        assert_eq!(s.script[1].command, Command::InflateTo { setpoint: 8270.0 });
        assert_eq!(s.script[2].command, Command::Deflate);
    }
}
