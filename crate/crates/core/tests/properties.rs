//! Invariants over random inputs.

use std::f64::consts::{FRAC_PI_2, PI};

use hemoring_core::beam::{self, DeflectionSample};
use hemoring_core::contact::{self, ContactModel};
use hemoring_core::controller::{Command, Controller, DeviceConfig, EventKind, Phase};
use hemoring_core::geometry::{self, ArmDesign, RingConfiguration};
use hemoring_core::hemostasis::{self, BleedScenario};
use hemoring_core::pneumatics::{self, InflatableSpec, PneumaticState, RegulatorModel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arm(r: f64, phi: f64) -> ArmDesign {
    ArmDesign {
        arc_radius: r,
        arc_angle: phi,
        ..ArmDesign::default()
    }
}

fn polygon_area(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum::<f64>()
        / 2.0
}

fn command() -> impl Strategy<Value = Option<Command>> {
    prop_oneof![
        6 => Just(None),
        1 => (0.05..0.3f64).prop_map(|d| Some(Command::Reshape { target_d: d })),
        1 => (0.0..17_000.0f64).prop_map(|p| Some(Command::InflateTo { setpoint: p })),
        1 => Just(Some(Command::Deflate)),
        1 => Just(Some(Command::Stop)),
    ]
}

proptest! {
    #[test]
    fn pins_sit_one_chord_apart(r in 0.01..0.5f64, phi in 0.1..PI, frac in 0.01..0.99f64) {
        let a = arm(r, phi);
        let d = frac * a.max_separation();
        let h = geometry::lateral_offset(&RingConfiguration::new(a.clone(), d).unwrap()).unwrap();
        let c = 2.0 * r * (phi / 2.0).sin();
        prop_assert!((h.hypot(d / 2.0) - c).abs() <= 1e-12 * c);
    }

    #[test]
    fn outline_matches_closed_form_area(r in 0.01..0.5f64, phi in 0.2..FRAC_PI_2, frac in 0.05..0.95f64) {
        let a = arm(r, phi);
        let ring = RingConfiguration::new(a.clone(), frac * a.max_separation()).unwrap();
        let pts: Vec<_> = geometry::boundary_polyline(&ring, 512)
            .unwrap()
            .iter()
            .map(|p| (p.x, p.y))
            .collect();
        let closed = geometry::enclosed_area(&ring).unwrap();
        let poly = polygon_area(&pts);
        prop_assert!(poly > 0.0, "boundary must run counterclockwise");
        prop_assert!((poly - closed).abs() <= 1e-4 * closed, "{poly} vs {closed}");
    }

    #[test]
    fn quarter_arcs_never_beat_the_circle(r in 0.01..0.5f64, frac in 0.01..0.99f64) {
        let a = arm(r, FRAC_PI_2);
        let area = geometry::enclosed_area(&RingConfiguration::new(a.clone(), frac * a.max_separation()).unwrap()).unwrap();
        prop_assert!(area > 0.0 && area <= PI * r * r * (1.0 + 1e-12));
    }

    #[test]
    fn extents_swap_under_reflection(frac in 0.05..0.95f64) {
        // Separation d and the lateral span 2h give mirror-image rings.
        let a = ArmDesign::default();
        let d = frac * a.max_separation();
        let ring = RingConfiguration::new(a.clone(), d).unwrap();
        let h = geometry::lateral_offset(&ring).unwrap();
        let mirror = RingConfiguration::new(a, 2.0 * h).unwrap();
        let (x0, y0) = geometry::axis_extents(&ring, 256).unwrap();
        let (x1, y1) = geometry::axis_extents(&mirror, 256).unwrap();
        prop_assert!((x0 - y1).abs() < 1e-4 && (y0 - x1).abs() < 1e-4);
    }

    #[test]
    fn screw_travel_is_reversible(revs in -10.0..10.0f64) {
        let a = ArmDesign::default();
        let lead = 0.0254 / 12.0;
        let d0 = a.circular_separation();
        if let Ok(d) = geometry::screw_to_separation(&a, revs, lead, d0) {
            prop_assert!((d - d0 - revs * lead).abs() < 1e-12);
            let back = geometry::screw_to_separation(&a, -revs, lead, d).unwrap();
            prop_assert!((back - d0).abs() < 1e-12);
        }
    }

    #[test]
    fn deflection_scales_with_load_and_compliance(ei in 1e-8..1e-4f64, r in 0.01..0.3f64, phi in 0.05..PI, p in 1e-6..10.0f64, k in 0.5..4.0f64) {
        let q = beam::tip_deflection(ei, r, phi, p).unwrap();
        prop_assert!(q > 0.0);
        prop_assert!((beam::tip_deflection(ei, r, phi, k * p).unwrap() - k * q).abs() <= 1e-12 * k * q);
        prop_assert!((beam::tip_deflection(k * ei, r, phi, p).unwrap() - q / k).abs() <= 1e-12 * q);
    }

    #[test]
    fn fit_recovers_noiseless_stiffness(ei in 1e-8..1e-5f64, r in 0.02..0.2f64, loads in prop::collection::vec(1e-6..1e-2f64, 1..8)) {
        let samples: Vec<_> = loads
            .iter()
            .map(|&p| DeflectionSample::new(p, beam::tip_deflection(ei, r, FRAC_PI_2, p).unwrap()).unwrap())
            .collect();
        let fit = beam::fit_stiffness(&samples, r).unwrap();
        prop_assert!((fit.ei - ei).abs() <= 1e-9 * ei);
        prop_assert!(fit.std <= 1e-6 * ei);
    }

    #[test]
    fn volume_is_monotone_and_capped(p0 in 0.0..18_000.0f64, dp in 0.0..5_000.0f64) {
        let spec = InflatableSpec::balloon();
        let burst = spec.burst_pressure.unwrap();
        let p1 = (p0 + dp).min(burst - 1.0);
        let v0 = pneumatics::volume_at_pressure(&spec, p0.min(p1)).unwrap();
        let v1 = pneumatics::volume_at_pressure(&spec, p1).unwrap();
        prop_assert!(v0 <= v1 && v1 <= spec.max_volume);
        prop_assert!(v0 >= spec.deflated_volume);
    }

    #[test]
    fn regulator_step_is_bounded(p in 0.0..15_000.0f64, sp in 0.0..15_000.0f64, dt in 1e-4..0.5f64) {
        let spec = InflatableSpec::balloon();
        let state = PneumaticState::at_pressure(&spec, p);
        let reg = RegulatorModel::new(sp);
        let next = pneumatics::step_pressure(&spec, &state, &reg, dt, &mut ChaCha8Rng::seed_from_u64(0));
        let moved = next.gauge_pressure - p;
        prop_assert!(moved.abs() <= reg.max_rate * dt * (1.0 + 1e-12));
        prop_assert!((next.gauge_pressure - sp).abs() <= (p - sp).abs() + 1e-9, "overshoot");
        prop_assert!(moved * (sp - p) >= 0.0, "moved away from the setpoint");
    }

    #[test]
    fn burst_is_absorbing(sp in 0.0..30_000.0f64, steps in 1usize..50) {
        let spec = InflatableSpec::ring();
        let mut state = PneumaticState::at_pressure(&spec, f64::INFINITY);
        prop_assert!(state.burst);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..steps {
            state = pneumatics::step_pressure(&spec, &state, &RegulatorModel::new(sp), 0.01, &mut rng);
            prop_assert!(state.burst && state.gauge_pressure == 0.0);
        }
    }

    #[test]
    fn ring_mode_area_lies_between_its_inputs(ring in 1e-4..0.1f64, foot in 1e-4..0.1f64, beta in 0.0..=1.0f64, dp in 0.0..20_000.0f64) {
        let m = ContactModel::ring(ring, foot, beta).unwrap();
        let a = contact::effective_area(&m);
        prop_assert!(a >= ring.min(foot) * (1.0 - 1e-12) && a <= ring.max(foot) * (1.0 + 1e-12));
        let f = contact::contact_force(&m, dp).unwrap();
        prop_assert!(f >= 0.0 && (f - a * dp).abs() <= 1e-12 * a * dp.max(1.0));
    }

    #[test]
    fn threshold_rises_with_applied_pressure(a0 in 0.0..20_000.0f64, da in 0.0..5_000.0f64, k in 0.0..2.0f64) {
        let scn = BleedScenario::new(4830.0, k, 0.0).unwrap();
        prop_assert!(hemostasis::bleeding_threshold(&scn, a0 + da) >= hemostasis::bleeding_threshold(&scn, a0));
    }

    #[test]
    fn flip_point_is_first_pump_over_threshold(applied in 0.0..15_000.0f64) {
        let scn = BleedScenario::default();
        let t = hemostasis::bleeding_threshold(&scn, applied);
        let flip = hemostasis::flip_point(&scn, applied, (0..=30_000).map(f64::from)).unwrap();
        prop_assert!(flip > t && flip - 1.0 <= t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn controller_keeps_its_guards(seed in any::<u64>(), script in prop::collection::vec(command(), 1..400)) {
        let config = DeviceConfig::default();
        let (lo, hi) = config.separation_limits;
        let limit = config.torque_pressure_limit;
        let mut ctl = Controller::new(config, seed).unwrap();
        let mut state = ctl.initial_state(0.2).unwrap();
        let mut faulted = false;
        for cmd in &script {
            let (next, events) = ctl.step(&state, cmd.as_ref(), 0.05);
            prop_assert!((lo..=hi).contains(&next.ring_cfg.hinge_separation));
            if next.ring_cfg.hinge_separation != state.ring_cfg.hinge_separation {
                prop_assert!(state.balloon.gauge_pressure <= limit, "moved the screw under pressure");
            }
            if next.phase == Phase::Reshaping {
                prop_assert!(next.balloon.gauge_pressure <= limit);
            }
            let changes = events.iter().filter(|e| matches!(e.kind, EventKind::PhaseChanged { .. })).count();
            prop_assert!(changes <= 1);
            if faulted {
                prop_assert_eq!(next.phase, state.phase);
            }
            faulted |= next.phase.is_fault();
            prop_assert!(next.time > state.time);
            state = next;
        }
    }

    #[test]
    fn controller_is_deterministic(seed in any::<u64>(), script in prop::collection::vec(command(), 1..200)) {
        let config = DeviceConfig {
            regulator: RegulatorModel { sensor_noise_sd: 20.0, ..DeviceConfig::default().regulator },
            ..DeviceConfig::default()
        };
        let run = || {
            let mut ctl = Controller::new(config.clone(), seed).unwrap();
            let mut state = ctl.initial_state(0.2).unwrap();
            let mut log = Vec::new();
            for cmd in &script {
                let (next, events) = ctl.step(&state, cmd.as_ref(), 0.05);
                log.push((next.clone(), events));
                state = next;
            }
            log
        };
        prop_assert_eq!(run(), run());
    }
}
