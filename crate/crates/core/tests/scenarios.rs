use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use hemoring_core::scenario::{self, load_config, ScenarioConfig, ScenarioId};
use hemoring_core::Error;

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run_in(mut cfg: ScenarioConfig, dir: &Path) -> scenario::RunReport {
    cfg.out_dir = dir.to_path_buf();
    scenario::run(&cfg).unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn shipped_configs_load_and_pass() {
    for id in ScenarioId::ALL {
        let path = configs_dir().join(format!("{id}.toml"));
        let cfg = load_config(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(cfg.scenario, id);
        let dir = tempfile::tempdir().unwrap();
        let report = run_in(cfg, dir.path());
        assert!(report.passed(), "{report}");
        assert_eq!(report.exit_code(), 0);
    }
}

#[test]
fn geometry_csv_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::defaults(ScenarioId::Geometry);
    cfg.geometry.points = 51;
    run_in(cfg, dir.path());
    let (header, rows) = read_csv(&dir.path().join("geometry.csv"));
    assert_eq!(header, ["d_m", "h_m", "area_m2", "major_m", "minor_m"]);
    assert_eq!(rows.len(), 51);
    let (r, c) = (0.1_f64, 0.1 * 2f64.sqrt());
    for row in &rows {
        let d = num(&row[0]);
        let h = (c * c - d * d / 4.0).sqrt();
        let area = d * h + 2.0 * r * r * (PI / 2.0 - 1.0);
        assert!((num(&row[1]) - h).abs() < 1e-15);
        assert!((num(&row[2]) - area).abs() < 1e-15);
    }
}

#[test]
fn bleed_csv_flips_once() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_in(ScenarioConfig::defaults(ScenarioId::Bleed), dir.path());
    let (header, rows) = read_csv(&dir.path().join("bleed.csv"));
    assert_eq!(header, ["pump_pa", "bleeding"]);
    let flips = rows.windows(2).filter(|w| w[0][1] != w[1][1]).count();
    assert_eq!(flips, 1);
    let first = rows.iter().find(|r| r[1] == "1").unwrap();
    assert_eq!(num(&first[0]), report.metric("flip_pa").unwrap().value);
}

#[test]
fn contact_csv_is_linear_in_pressure() {
    let dir = tempfile::tempdir().unwrap();
    run_in(ScenarioConfig::defaults(ScenarioId::Contact), dir.path());
    let (header, rows) = read_csv(&dir.path().join("contact.csv"));
    assert_eq!(header, ["pressure_pa", "force_n"]);
    assert_eq!(rows.len(), 41);
    for row in rows {
        assert_eq!(num(&row[1]), 0.01 * num(&row[0]));
    }
}

#[test]
fn burst_csv_ends_at_failure() {
    let dir = tempfile::tempdir().unwrap();
    run_in(ScenarioConfig::defaults(ScenarioId::Burst), dir.path());
    let (header, rows) = read_csv(&dir.path().join("burst_ring.csv"));
    assert_eq!(header, ["t_s", "pressure_pa", "volume_m3", "burst"]);
    let last = rows.last().unwrap();
    assert_eq!(last[3], "1");
    assert_eq!(num(&last[1]), 0.0);
    assert!(rows[..rows.len() - 1].iter().all(|r| r[3] == "0"));
}

#[test]
fn trajectory_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_in(ScenarioConfig::defaults(ScenarioId::FullDevice), dir.path());
    let (header, rows) = read_csv(&dir.path().join("trajectory.csv"));
    assert_eq!(
        header,
        ["t_s", "phase", "d_m", "balloon_pa", "ring_pa", "events"]
    );
    assert_eq!(rows.last().unwrap()[1], "holding");
    assert_eq!(report.metric("guard_violations").unwrap().value, 0.0);
}

#[test]
fn stiffness_fit_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("loads.csv");
    let (ei, r) = (8.9e-7, 0.1);
    let mut text = String::from("force_N,deflection_m\n");
    for p in [1e-5, 2e-5, 3e-5] {
        text += &format!("{p},{}\n", PI / 4.0 * p * r * r * r / ei);
    }
    std::fs::write(&input, text).unwrap();
    let (fit, samples) = scenario::fit_csv(&input, r).unwrap();
    assert!((fit.ei - ei).abs() <= 1e-9 * ei);
    let written = scenario::write_fit_csv(dir.path(), &fit, &samples).unwrap();
    let (header, rows) = read_csv(&written[1]);
    assert_eq!(header, ["force_n", "deflection_m", "fitted_deflection_m"]);
    assert_eq!(rows.len(), 3);

    std::fs::write(&input, "force_N,deflection_m\n1e-5,abc\n").unwrap();
    let err = scenario::fit_csv(&input, r).unwrap_err();
    assert!(
        matches!(&err, Error::Parse { location, .. } if location.contains("row 2")),
        "{err}"
    );
}

#[test]
fn failed_expectation_gives_exit_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::defaults(ScenarioId::Bleed);
    cfg.expect.bleed_flip_pa = 9000.0;
    let report = run_in(cfg, dir.path());
    assert!(!report.passed());
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn errors_name_the_scenario() {
    let mut cfg = ScenarioConfig::defaults(ScenarioId::Contact);
    cfg.contact.blend = 3.0;
    let err = scenario::run(&cfg).unwrap_err();
    assert!(
        matches!(&err, Error::Scenario { scenario, .. } if scenario == "contact"),
        "{err}"
    );
}

#[test]
fn plots_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_in(ScenarioConfig::defaults(ScenarioId::Stiffness), dir.path());
    assert!(report
        .artifacts
        .iter()
        .all(|p| p.extension().unwrap() == "csv"));
    let mut cfg = ScenarioConfig::defaults(ScenarioId::Stiffness);
    cfg.plot = true;
    let report = run_in(cfg, dir.path());
    assert!(report
        .artifacts
        .iter()
        .any(|p| p.extension().unwrap() == "svg"));
}
