#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hemoring_core::scenario::{self, load_config_for, ContactModeId, ScenarioConfig, ScenarioId};

/// Hemorrhage-control ring digital twin: scenario runner.
#[derive(Debug, Parser)]
#[command(name = "hemoring", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Identify arm bending stiffness from simulated tip loads.
    Stiffness(Common),
    /// Sweep hinge separation; area and extents of the ring.
    Geometry(Common),
    /// Ramp ring and balloon pressure until they burst.
    Burst(Common),
    /// Contact force against balloon pressure.
    Contact {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        contact: ContactArgs,
    },
    /// Pump-pressure sweep of the bleeding model.
    Bleed {
        #[command(flatten)]
        common: Common,
        /// Pump sweep as MIN:MAX:STEP in Pa.
        #[arg(long, value_parser = parse_sweep)]
        pump_sweep: Option<(f64, f64, f64)>,
        /// Pressure applied by the device in Pa.
        #[arg(long)]
        applied_pressure: Option<f64>,
    },
    /// Scripted run of the whole device.
    FullDevice(Common),
    /// Fit bending stiffness to measured force/deflection pairs.
    StiffnessFit {
        /// CSV with columns force_N, deflection_m.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        radius_m: f64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// TOML configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long)]
    plot: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Plate,
    Ring,
}

#[derive(Debug, Args)]
struct ContactArgs {
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    plate_area_m2: Option<f64>,
    #[arg(long)]
    footprint_area_m2: Option<f64>,
    /// Weight of the ring area in ring mode (0..1).
    #[arg(long)]
    beta: Option<f64>,
    /// Pressure sweep as MIN:MAX:STEP in Pa.
    #[arg(long, value_parser = parse_sweep)]
    pressure_sweep: Option<(f64, f64, f64)>,
}

fn parse_sweep(s: &str) -> std::result::Result<(f64, f64, f64), String> {
    let parts: Vec<_> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected MIN:MAX:STEP, got `{s}`"));
    };
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{x}` is not a number"))
    };
    Ok((num(a)?, num(b)?, num(c)?))
}

fn load(id: ScenarioId, common: &Common) -> Result<ScenarioConfig> {
    let mut cfg = match &common.config {
        Some(path) => load_config_for(path, Some(id))
            .with_context(|| format!("loading {}", path.display()))?,
        None => ScenarioConfig::defaults(id),
    };
    if common.plot {
        cfg.plot = true;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out_dir = out.clone();
    }
    Ok(cfg)
}

fn run(cfg: &ScenarioConfig) -> Result<i32> {
    let report = scenario::run(cfg)?;
    let json = cfg.out_dir.join("report.json");
    report.save_json(&json)?;
    println!("{report}");
    Ok(report.exit_code())
}

fn dispatch(cli: Cli) -> Result<i32> {
    let cfg = match cli.command {
        Cmd::Stiffness(c) => load(ScenarioId::Stiffness, &c)?,
        Cmd::Geometry(c) => load(ScenarioId::Geometry, &c)?,
        Cmd::Burst(c) => load(ScenarioId::Burst, &c)?,
        Cmd::FullDevice(c) => load(ScenarioId::FullDevice, &c)?,
        Cmd::Contact { common, contact } => {
            let mut cfg = load(ScenarioId::Contact, &common)?;
            let c = &mut cfg.contact;
            if let Some(m) = contact.mode {
                c.mode = match m {
                    Mode::Plate => ContactModeId::Plate,
                    Mode::Ring => ContactModeId::Ring,
                };
            }
            if let Some(a) = contact.plate_area_m2 {
                c.plate_area_m2 = a;
            }
            if contact.footprint_area_m2.is_some() {
                c.footprint_area_m2 = contact.footprint_area_m2;
            }
            if let Some(b) = contact.beta {
                c.blend = b;
            }
            if let Some((lo, hi, step)) = contact.pressure_sweep {
                (c.pressure_min_pa, c.pressure_max_pa, c.pressure_step_pa) = (lo, hi, step);
            }
            cfg
        }
        Cmd::Bleed {
            common,
            pump_sweep,
            applied_pressure,
        } => {
            let mut cfg = load(ScenarioId::Bleed, &common)?;
            let b = &mut cfg.bleed;
            if let Some((lo, hi, step)) = pump_sweep {
                (b.pump_min_pa, b.pump_max_pa, b.pump_step_pa) = (lo, hi, step);
            }
            if let Some(p) = applied_pressure {
                b.applied_pressure_pa = p;
            }
            cfg
        }
        Cmd::StiffnessFit {
            input,
            radius_m,
            out,
        } => {
            if !(radius_m > 0.0) {
                bail!("--radius-m must be > 0, got {radius_m}");
            }
            let (fit, samples) = scenario::fit_csv(&input, radius_m)?;
            let paths = scenario::write_fit_csv(&out, &fit, &samples)?;
            println!(
                "EI = {:e} N·m² (std {:e}, {} samples)",
                fit.ei, fit.std, fit.n_samples
            );
            for p in paths {
                println!("  wrote {}", p.display());
            }
            return Ok(0);
        }
    };
    run(&cfg)
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
