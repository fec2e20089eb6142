//! Experiment scenarios behind the command-line tool.
//!
//! One scenario per bench experiment: arm stiffness identification, ring
//! geometry sweep, burst test, contact-force sweep, bleeding test, and a
//! scripted run of the whole device. Each writes CSV (and SVG with `plot`)
//! into the output directory and returns a [`RunReport`].

mod config;
mod report;

use std::f64::consts::FRAC_PI_2;
use std::fs::File;
use std::io::{BufWriter, Read};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub use config::{
    default_script, load_config, load_config_for, ArmSection, BleedSection, BurstSection,
    ContactModeId, ContactSection, DesignEntry, DeviceSection, ExpectSection, GeometrySection,
    InflatableSection, RegulatorSection, ScenarioConfig, ScenarioId, StiffnessSection,
};
pub use report::{Metric, RunReport};

use crate::beam::{self, DeflectionSample, StiffnessEstimate};
use crate::contact::{self, ContactModel};
use crate::controller::{run_sequence, Command, Controller, Phase, ScriptEntry};
use crate::error::{Error, Result};
use crate::geometry::{self, RingConfiguration};
use crate::hemostasis::{self, BleedScenario};
use crate::plot::{emit_plot, Axes, Series};
use crate::pneumatics::{self, PneumaticState};

/// Runs the configured scenario. Errors carry the scenario name.
pub fn run(cfg: &ScenarioConfig) -> Result<RunReport> {
    let inner = || -> Result<RunReport> {
        let v = cfg.violations();
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
        let mut out = Output {
            cfg,
            report: RunReport::new(cfg.scenario, cfg.seed),
        };
        match cfg.scenario {
            ScenarioId::Stiffness => run_stiffness(&mut out)?,
            ScenarioId::Geometry => run_geometry(&mut out)?,
            ScenarioId::Burst => run_burst(&mut out)?,
            ScenarioId::Contact => run_contact(&mut out)?,
            ScenarioId::Bleed => run_bleed(&mut out)?,
            ScenarioId::FullDevice => run_full_device(&mut out)?,
        }
        Ok(out.report)
    };
    inner().map_err(|source| Error::Scenario {
        scenario: cfg.scenario.to_string(),
        source: Box::new(source),
    })
}

struct Output<'a> {
    cfg: &'a ScenarioConfig,
    report: RunReport,
}

impl Output<'_> {
    fn path(&self, name: &str) -> PathBuf {
        self.cfg.out_dir.join(name)
    }

    fn csv(&mut self, name: &str) -> Result<csv::Writer<BufWriter<File>>> {
        let path = self.path(name);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        self.report.artifacts.push(path);
        Ok(csv::Writer::from_writer(BufWriter::new(file)))
    }

    fn plot(&mut self, name: &str, series: &[Series], axes: &Axes) -> Result<()> {
        if self.cfg.plot {
            let path = self.path(name);
            emit_plot(series, axes, &path)?;
            self.report.artifacts.push(path);
        }
        Ok(())
    }

    fn metric(&mut self, m: Metric) {
        self.report.metrics.push(m);
    }

    /// Records `m`, checked against `expected ± tol` when checks are on.
    fn checked(&mut self, m: Metric, expected: f64, tol: f64) {
        let m = if self.cfg.expect.check {
            m.expect(expected, tol)
        } else {
            m
        };
        self.report.metrics.push(m);
    }
}

fn finish<W: std::io::Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::io("<csv>", e))
}

/// Evenly spaced values from `lo` to `hi` inclusive, stepping by `step`.
fn sweep(lo: f64, hi: f64, step: f64) -> impl Iterator<Item = f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(move |i| lo + i as f64 * step)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn run_stiffness(out: &mut Output) -> Result<()> {
    let cfg = out.cfg;
    let s = &cfg.stiffness;
    let radius = cfg.stiffness_radius();
    let tol = cfg.expect.stiffness_rel_tol;
    let noisy_tol = cfg.expect.stiffness_noisy_rel_tol;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let noise = Normal::new(0.0, s.noise_rel)
        .map_err(|e| Error::Config(format!("stiffness noise: {e}")))?;

    let mut w = out.csv("stiffness.csv")?;
    w.write_record(["design", "force_n", "deflection_m", "fitted_deflection_m"])?;
    let mut series = Vec::new();
    for design in &s.designs {
        let samples = s
            .loads_n
            .iter()
            .map(|&p| {
                Ok(DeflectionSample {
                    force: p,
                    deflection: beam::tip_deflection(design.ei_n_m2, radius, FRAC_PI_2, p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let fit = beam::fit_stiffness(&samples, radius)?;
        for smp in &samples {
            w.write_record([
                design.name.clone(),
                smp.force.to_string(),
                smp.deflection.to_string(),
                fit.deflection_at(smp.force).to_string(),
            ])?;
        }
        let truth = design.ei_n_m2;
        out.checked(
            Metric::new(format!("ei_{}", design.name), fit.ei, "N·m²"),
            truth,
            tol * truth,
        );

        let mut worst: f64 = 0.0;
        for _ in 0..s.trials {
            let noisy: Vec<_> = samples
                .iter()
                .map(|smp| DeflectionSample {
                    force: smp.force,
                    deflection: (smp.deflection * (1.0 + noise.sample(&mut rng))).max(0.0),
                })
                .collect();
            let est = beam::fit_stiffness(&noisy, radius)?;
            worst = worst.max((est.ei - truth).abs() / truth);
        }
        if s.trials > 0 {
            out.checked(
                Metric::new(format!("noisy_max_rel_err_{}", design.name), worst, ""),
                0.0,
                noisy_tol,
            );
        }

        let pts: Vec<_> = samples.iter().map(|x| (x.deflection, x.force)).collect();
        let max_p = s.loads_n.iter().copied().fold(0.0, f64::max);
        series.push(Series::scatter(format!("{} samples", design.name), pts));
        series.push(Series::line(
            format!("{} fit EI={:.3e}", design.name, fit.ei),
            vec![(0.0, 0.0), (fit.deflection_at(max_p), max_p)],
        ));
    }
    finish(w)?;
    out.plot(
        "stiffness.svg",
        &series,
        &Axes::new("Arm tip force vs deflection", "deflection [m]", "force [N]"),
    )
}

/// Fits a stiffness to a `force_N,deflection_m` CSV.
pub fn fit_csv(path: &Path, radius: f64) -> Result<(StiffnessEstimate, Vec<DeflectionSample>)> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut samples = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |j: usize, name: &str| -> Result<f64> {
            let raw = rec.get(j).unwrap_or("");
            raw.parse().map_err(|_| Error::Parse {
                location: format!("{} row {}, column `{name}`", path.display(), i + 2),
                message: format!("`{raw}` is not a number"),
            })
        };
        let sample = DeflectionSample::new(field(0, "force_N")?, field(1, "deflection_m")?)?;
        samples.push(sample);
    }
    let fit = beam::fit_stiffness(&samples, radius)?;
    Ok((fit, samples))
}

/// Writes the fitted line through `samples` and the estimate itself.
pub fn write_fit_csv(
    out_dir: &Path,
    fit: &StiffnessEstimate,
    samples: &[DeflectionSample],
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let summary = out_dir.join("stiffness_fit.csv");
    let mut w = csv::Writer::from_path(&summary)?;
    w.write_record(["ei_n_m2", "std_n_m2", "n_samples", "compliance_m_per_n"])?;
    w.write_record([
        fit.ei.to_string(),
        fit.std.to_string(),
        fit.n_samples.to_string(),
        fit.slope.to_string(),
    ])?;
    finish(w)?;

    let line = out_dir.join("stiffness_fit_line.csv");
    let mut w = csv::Writer::from_path(&line)?;
    w.write_record(["force_n", "deflection_m", "fitted_deflection_m"])?;
    for s in samples {
        w.write_record([
            s.force.to_string(),
            s.deflection.to_string(),
            fit.deflection_at(s.force).to_string(),
        ])?;
    }
    finish(w)?;
    Ok(vec![summary, line])
}

fn run_geometry(out: &mut Output) -> Result<()> {
    let cfg = out.cfg;
    let g = &cfg.geometry;
    let arm = cfg.arm.design();
    let max = arm.max_separation();
    let lo = g.d_min_m.unwrap_or(0.02 * max);
    let hi = g.d_max_m.unwrap_or(0.98 * max);
    let base = RingConfiguration::new(arm.clone(), lo)?;

    let mut w = out.csv("geometry.csv")?;
    w.write_record(["d_m", "h_m", "area_m2", "major_m", "minor_m"])?;
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    let mut curve = Vec::with_capacity(g.points);
    for d in linspace(lo, hi, g.points) {
        let ring = base.with_separation(d)?;
        let h = geometry::lateral_offset(&ring)?;
        let area = geometry::enclosed_area(&ring)?;
        let (major, minor) = geometry::axis_extents(&ring, g.samples_per_arc)?;
        w.write_record([d, h, area, major, minor].map(|x| x.to_string()))?;
        if area > best.1 {
            best = (d, area);
        }
        curve.push((d, area));
    }
    finish(w)?;

    let r = arm.arc_radius;
    out.metric(Metric::new("max_area_d", best.0, "m"));
    out.metric(Metric::new("max_area", best.1, "m²"));
    if (arm.arc_angle - FRAC_PI_2).abs() < 1e-12 {
        let circle = RingConfiguration::circular(arm.clone())?;
        let area = geometry::enclosed_area(&circle)?;
        let exact = std::f64::consts::PI * r * r;
        out.checked(
            Metric::new("circle_area_rel_err", (area - exact).abs() / exact, ""),
            0.0,
            cfg.expect.circle_area_rel_tol,
        );
        let spacing = (hi - lo) / (g.points - 1) as f64;
        out.checked(
            Metric::new("max_area_offset_from_circle", best.0 - 2.0 * r, "m"),
            0.0,
            0.5 * spacing * (1.0 + 1e-9),
        );
    }

    let outlines = g.outline_separations_m.clone().unwrap_or_else(|| {
        let c = arm.circular_separation();
        vec![0.75 * c, c, 1.25 * c]
    });
    let mut series = Vec::new();
    for d in outlines {
        let ring = base.with_separation(d)?;
        let pts = geometry::boundary_polyline(&ring, g.samples_per_arc)?;
        series.push(Series::outline(
            format!("d = {d:.4} m"),
            pts.iter().map(|p| (p.x, p.y)).collect(),
        ));
    }
    let mut axes = Axes::new("Ring outline", "x (screw axis) [m]", "y [m]");
    axes.equal_aspect = true;
    out.plot("geometry_outline.svg", &series, &axes)?;
    out.plot(
        "geometry_area.svg",
        &[Series::line("enclosed area", curve)],
        &Axes::new("Enclosed area vs hinge separation", "d [m]", "area [m²]"),
    )
}

fn run_burst(out: &mut Output) -> Result<()> {
    let cfg = out.cfg;
    let b = &cfg.burst;
    let step = b.step_pa();
    let specs = [
        (cfg.ring.clone(), cfg.expect.burst_ring_pa),
        (cfg.balloon.clone(), cfg.expect.burst_balloon_pa),
    ];
    let mut series = Vec::new();
    for (spec, expected) in specs {
        let Some(spec) = spec else { continue };
        let held = pneumatics::inflate_to_burst(&spec, b.ramp_rate_pa_per_s, b.dt_s)?;
        let mut w = out.csv(&format!("burst_{}.csv", spec.name))?;
        w.write_record(["t_s", "pressure_pa", "volume_m3", "burst"])?;
        let mut pts = Vec::new();
        let mut last_t = 0.0;
        for (t, s) in pneumatics::burst_ramp(&spec, b.ramp_rate_pa_per_s, b.dt_s) {
            w.write_record([
                t.to_string(),
                s.gauge_pressure.to_string(),
                s.volume.to_string(),
                "0".into(),
            ])?;
            pts.push((t, s.gauge_pressure));
            last_t = t;
        }
        let burst = PneumaticState::at_pressure(&spec, f64::INFINITY);
        w.write_record([
            (last_t + b.dt_s).to_string(),
            burst.gauge_pressure.to_string(),
            burst.volume.to_string(),
            "1".into(),
        ])?;
        finish(w)?;
        out.checked(
            Metric::new(format!("burst_{}_pa", spec.name), held, "Pa"),
            expected,
            step,
        );
        series.push(Series::line(format!("{} ramp", spec.name), pts));
    }

    if cfg.balloon.is_some() {
        let mut dev = cfg.device_config();
        dev.setpoint_margin = None;
        let mut ctl = Controller::new(dev, cfg.seed)?;
        let start = ctl.initial_state(cfg.arm.design().circular_separation())?;
        let script = [ScriptEntry {
            time: 0.0,
            command: Command::InflateTo {
                setpoint: b.device_setpoint_pa,
            },
        }];
        let traj = run_sequence(&mut ctl, start, &script, b.device_dt_s, b.device_max_time_s)?;
        let fault = traj.samples.iter().position(|s| s.state.phase.is_fault());
        out.metric(Metric::new(
            "device_fault_time_s",
            fault.map_or(f64::NAN, |i| traj.samples[i].state.time),
            "s",
        ));
        let peak = fault
            .map(|i| traj.samples[i - 1].state.balloon.gauge_pressure)
            .unwrap_or(f64::NAN);
        out.metric(Metric::new("device_peak_balloon_pa", peak, "Pa"));
        out.checked(
            Metric::new("device_faulted", f64::from(u8::from(fault.is_some())), ""),
            1.0,
            0.0,
        );
        let path = out.path("burst_device.csv");
        traj.save_csv(&path)?;
        out.report.artifacts.push(path);
    }
    out.plot(
        "burst.svg",
        &series,
        &Axes::new("Burst test ramp", "time [s]", "gauge pressure [Pa]"),
    )
}

fn contact_models(
    c: &ContactSection,
    arm: &geometry::ArmDesign,
) -> Result<Vec<(String, ContactModel)>> {
    let finish = |mut m: ContactModel| -> Result<ContactModel> {
        m.atmospheric_pressure = c.atmospheric_pressure_pa;
        match c.spread_area_m2 {
            Some(a) => m.with_spread_area(a),
            None => Ok(m),
        }
    };
    let mut models = Vec::new();
    match c.mode {
        ContactModeId::Plate => {
            models.push((
                "plate".to_owned(),
                finish(ContactModel::plate(c.plate_area_m2)?)?,
            ));
        }
        ContactModeId::Ring => {
            let footprint = c.footprint_area_m2.unwrap_or(f64::NAN);
            for d in ring_separations(c, arm) {
                let ring = geometry::enclosed_area(&RingConfiguration::new(arm.clone(), d)?)?;
                models.push((
                    format!("ring_d{d:.4}"),
                    finish(ContactModel::ring(ring, footprint, c.blend)?)?,
                ));
            }
        }
    }
    Ok(models)
}

fn ring_separations(c: &ContactSection, arm: &geometry::ArmDesign) -> Vec<f64> {
    c.separations_m
        .clone()
        .unwrap_or_else(|| vec![arm.circular_separation()])
}

fn run_contact(out: &mut Output) -> Result<()> {
    let cfg = out.cfg;
    let c = &cfg.contact;
    let arm = cfg.arm.design();
    let pressures: Vec<f64> =
        sweep(c.pressure_min_pa, c.pressure_max_pa, c.pressure_step_pa).collect();
    let models = contact_models(c, &arm)?;

    let mut w = out.csv("contact.csv")?;
    let mut header = vec!["pressure_pa".to_owned()];
    header.extend(models.iter().map(|(name, _)| {
        if models.len() == 1 {
            "force_n".to_owned()
        } else {
            format!("force_n_{name}")
        }
    }));
    w.write_record(&header)?;
    let mut worst: f64 = 0.0;
    let mut series: Vec<Series> = models
        .iter()
        .map(|(n, _)| Series::line(n.clone(), Vec::new()))
        .collect();
    for &p in &pressures {
        let mut row = vec![p.to_string()];
        for ((_, m), s) in models.iter().zip(series.iter_mut()) {
            let f = contact::contact_force(m, p)?;
            let direct = contact::effective_area(m) * p;
            if direct != 0.0 {
                worst = worst.max((f - direct).abs() / direct.abs());
            }
            row.push(f.to_string());
            s.points.push((p, f));
        }
        w.write_record(&row)?;
    }
    finish(w)?;
    out.checked(
        Metric::new("force_model_rel_err", worst, ""),
        0.0,
        cfg.expect.contact_rel_tol,
    );
    for (name, m) in &models {
        out.metric(Metric::new(
            format!("area_{name}"),
            contact::effective_area(m),
            "m²",
        ));
        if let Some(&p) = pressures.last() {
            out.metric(Metric::new(
                format!("contact_pressure_{name}_at_max"),
                contact::contact_pressure(m, p)?,
                "Pa",
            ));
        }
    }

    // Ring-area assumption against a fixed footprint, when a footprint is known.
    if let Some(footprint) = c.footprint_area_m2 {
        let footprint_model = ContactModel::ring(1.0, footprint, 0.0)?;
        let mut w = out.csv("contact_compare.csv")?;
        let seps = ring_separations(c, &arm);
        let mut header = vec!["pressure_pa".to_owned(), "footprint_force_n".to_owned()];
        let mut naive = Vec::new();
        for &d in &seps {
            header.push(format!("ring_force_n_d{d:.4}"));
            let area = geometry::enclosed_area(&RingConfiguration::new(arm.clone(), d)?)?;
            naive.push((d, ContactModel::ring(area, footprint, 1.0)?));
        }
        w.write_record(&header)?;
        for &p in &pressures {
            let mut row = vec![
                p.to_string(),
                contact::contact_force(&footprint_model, p)?.to_string(),
            ];
            for (_, m) in &naive {
                row.push(contact::contact_force(m, p)?.to_string());
            }
            w.write_record(&row)?;
        }
        finish(w)?;
        for (d, m) in &naive {
            let p = c.pressure_max_pa.max(1.0);
            let ratio =
                contact::contact_force(m, p)? / contact::contact_force(&footprint_model, p)?;
            out.metric(Metric::new(
                format!("ring_to_footprint_force_ratio_d{d:.4}"),
                ratio,
                "",
            ));
        }
    }
    out.plot(
        "contact.svg",
        &series,
        &Axes::new(
            "Contact force vs balloon pressure",
            "balloon gauge pressure [Pa]",
            "force [N]",
        ),
    )
}

/// Bleeding model from the `[bleed]` section.
pub fn bleed_scenario(b: &BleedSection) -> Result<BleedScenario> {
    let coupling = match b.coupling {
        Some(k) => k,
        None => hemostasis::calibrate_coupling(
            b.open_threshold_pa,
            b.resume_threshold_pa,
            b.calibration_applied_pa,
        )?,
    };
    BleedScenario::new(b.open_threshold_pa, coupling, 0.0)
}

fn run_bleed(out: &mut Output) -> Result<()> {
    let cfg = out.cfg;
    let b = &cfg.bleed;
    let scn = bleed_scenario(b)?;
    let pumps: Vec<f64> = sweep(b.pump_min_pa, b.pump_max_pa, b.pump_step_pa).collect();

    let mut w = out.csv("bleed.csv")?;
    w.write_record(["pump_pa", "bleeding"])?;
    let mut pts = Vec::with_capacity(pumps.len());
    for &p in &pumps {
        let bleeding = hemostasis::is_bleeding(&scn.with_pump(p), b.applied_pressure_pa);
        w.write_record([p.to_string(), u8::from(bleeding).to_string()])?;
        pts.push((p, f64::from(u8::from(bleeding))));
    }
    finish(w)?;

    out.metric(Metric::new("coupling", scn.coupling, ""));
    let with_device = hemostasis::flip_point(&scn, b.applied_pressure_pa, pumps.iter().copied());
    let bare = hemostasis::flip_point(&scn, 0.0, pumps.iter().copied());
    out.checked(
        Metric::new("flip_pa", with_device.unwrap_or(f64::NAN), "Pa"),
        cfg.expect.bleed_flip_pa,
        b.pump_step_pa,
    );
    out.checked(
        Metric::new("flip_without_device_pa", bare.unwrap_or(f64::NAN), "Pa"),
        cfg.expect.bleed_open_flip_pa,
        b.pump_step_pa,
    );
    let ratio = hemostasis::bleeding_threshold(&scn, b.applied_pressure_pa) / scn.open_threshold;
    out.checked(
        Metric::new("threshold_ratio", ratio, ""),
        cfg.expect.threshold_ratio,
        cfg.expect.threshold_ratio_tol,
    );
    let at_onset =
        hemostasis::is_bleeding(&scn.with_pump(b.open_threshold_pa), b.applied_pressure_pa);
    out.checked(
        Metric::new(
            "bleeding_at_open_threshold_with_device",
            f64::from(u8::from(at_onset)),
            "",
        ),
        0.0,
        0.0,
    );
    out.plot(
        "bleed.svg",
        &[Series::line("bleeding", pts)],
        &Axes::new(
            "Bleeding vs pump pressure",
            "pump pressure [Pa]",
            "bleeding (0/1)",
        ),
    )
}

fn run_full_device(out: &mut Output) -> Result<()> {
    let cfg = out.cfg;
    let d = &cfg.device;
    let mut ctl = Controller::new(cfg.device_config(), cfg.seed)?;
    let start_d = d
        .initial_separation_m
        .unwrap_or_else(|| cfg.arm.design().circular_separation());
    let start = ctl.initial_state(start_d)?;
    let traj = run_sequence(&mut ctl, start, &cfg.script, d.dt_s, d.duration_s)?;
    let path = out.path("trajectory.csv");
    traj.save_csv(&path)?;
    out.report.artifacts.push(path);

    let last = traj.final_state();
    out.metric(Metric::new("final_d", last.ring_cfg.hinge_separation, "m"));
    out.metric(Metric::new(
        "final_balloon_pa",
        last.balloon.gauge_pressure,
        "Pa",
    ));
    out.checked(
        Metric::new(
            "final_phase_holding",
            f64::from(u8::from(last.phase == Phase::Holding)),
            "",
        ),
        1.0,
        0.0,
    );
    let rejected = traj
        .events()
        .filter(|e| matches!(e.kind, crate::controller::EventKind::RejectedCommand { .. }))
        .count();
    out.metric(Metric::new("rejected_commands", rejected as f64, ""));
    let violations = traj
        .samples
        .iter()
        .filter(|s| {
            s.state.phase == Phase::Reshaping
                && s.state.balloon.gauge_pressure > s.state.torque_pressure_limit
        })
        .count();
    out.checked(
        Metric::new("guard_violations", violations as f64, ""),
        0.0,
        0.0,
    );

    // The wound sees the balloon pressure through the contact model.
    let models = contact_models(&cfg.contact, &cfg.arm.design()).or_else(|_| {
        Ok::<_, Error>(vec![(
            "plate".into(),
            ContactModel::plate(cfg.contact.plate_area_m2)?,
        )])
    })?;
    let applied = contact::contact_pressure(&models[0].1, last.balloon.gauge_pressure)?;
    let scn = bleed_scenario(&cfg.bleed)?.with_pump(d.check_pump_pa);
    let bleeding = hemostasis::is_bleeding(&scn, applied);
    out.metric(Metric::new("applied_pressure_pa", applied, "Pa"));
    out.checked(
        Metric::new("bleeding_at_check_pump", f64::from(u8::from(bleeding)), ""),
        0.0,
        0.0,
    );

    let series = [
        Series::line(
            "balloon",
            traj.samples
                .iter()
                .map(|s| (s.state.time, s.state.balloon.gauge_pressure))
                .collect(),
        ),
        Series::line(
            "ring",
            traj.samples
                .iter()
                .map(|s| (s.state.time, s.state.ring_inflatable.gauge_pressure))
                .collect(),
        ),
    ];
    out.plot(
        "trajectory.svg",
        &series,
        &Axes::new("Device pressures", "time [s]", "gauge pressure [Pa]"),
    )
}
