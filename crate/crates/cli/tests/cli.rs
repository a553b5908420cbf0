use std::f64::consts::PI;
use std::process::{Command, Output};

use grassfock_cli::format::{spectrum_from_csv, spectrum_from_json};

fn grassfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grassfock")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn verify_two_modes_passes() {
    let o = grassfock(&["verify", "--modes", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let passes = stdout(&o).lines().filter(|l| l.starts_with("PASS")).count();
    assert!(passes >= 20);
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_json_schema() {
    let o = grassfock(&["verify", "--modes", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let items = v.as_array().unwrap();
    assert!(!items.is_empty());
    for item in items {
        assert!(item["identity"].is_string());
        assert!(item["eq"].is_string());
        assert_eq!(item["pass"], serde_json::Value::Bool(true));
    }
}

#[test]
fn verify_csv_has_header() {
    let o = grassfock(&["verify", "--modes", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("identity,eq,modes,pass,max_residual\n"));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(code(&grassfock(&["verify", "--modes", "99"])), 2);
    assert_eq!(code(&grassfock(&["verify", "--modes", "0"])), 2);
    assert_eq!(code(&grassfock(&["verify", "--format", "xml"])), 2);
    assert_eq!(code(&grassfock(&["spectrum", "--rho", "1", "--a", "0.01", "--points", "0"])), 2);
    assert_eq!(code(&grassfock(&["spectrum", "--rho", "1", "--a", "0.01", "--kmin", "2", "--kmax", "1"])), 2);
    assert_eq!(code(&grassfock(&["spectrum", "--rho", "0", "--a", "0.01"])), 2);
    assert_eq!(code(&grassfock(&["coherent", "--modes", "2", "--phase-variance"])), 2);
    assert_eq!(code(&grassfock(&["coherent", "--format", "csv"])), 2);
    assert_eq!(code(&grassfock(&["verify", "--config", "/nonexistent/grassfock.conf"])), 2);
}

#[test]
fn spectrum_regression_row() {
    let o = grassfock(&["spectrum", "--rho", "1", "--a", "0.01", "--kmin", "0", "--kmax", "2", "--points", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "k,E_k,eps_k,gapless");
    assert_eq!(lines[3], "1.00000000,0.500000000,0.751327412,false");
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("gap 2ρg = 0.2513274"), "{stderr}");
}

#[test]
fn free_gas_columns_agree() {
    let o = grassfock(&["spectrum", "--rho", "1", "--a", "0", "--points", "9"]);
    let points = spectrum_from_csv(&stdout(&o)).unwrap();
    assert_eq!(points.len(), 9);
    for p in points {
        assert_eq!(p.free_energy, p.quasi_energy);
    }
}

#[test]
fn gapless_at_critical_coupling() {
    let a = format!("{}", -0.25 / (4.0 * PI));
    let o = grassfock(&["spectrum", "--rho", "1", "--a", &a, "--kmin", "0", "--kmax", "2", "--points", "5"]);
    assert_eq!(code(&o), 0);
    let flagged: Vec<f64> = spectrum_from_csv(&stdout(&o)).unwrap().iter().filter(|p| p.gapless).map(|p| p.k).collect();
    assert_eq!(flagged, [1.0]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("gapless at k = 1"));
}

#[test]
fn spectrum_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.json");
    let path_str = path.to_str().unwrap();
    let o = grassfock(&["spectrum", "--rho", "1", "--a", "0.01", "--format", "json", "--output", path_str]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let d = spectrum_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d.points.len(), 21);
    assert_eq!(d.gap, 2.0 * d.coupling);
}

#[test]
fn si_spectrum_needs_mass() {
    assert_eq!(code(&grassfock(&["spectrum", "--units", "si", "--rho", "1e19", "--a", "2e-9"])), 2);
    let o = grassfock(&["spectrum", "--units", "si", "--rho", "1e19", "--a", "2e-9", "--mass", "1e-26", "--kmax", "1e7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(spectrum_from_csv(&stdout(&o)).unwrap().len(), 21);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--modes", "2", "--format", "json"][..],
        &["spectrum", "--rho", "2", "--a", "0.03", "--format", "json"][..],
        &["coherent", "--modes", "2", "--theta", "0.5", "--occupancy", "3,4"][..],
    ] {
        assert_eq!(grassfock(args).stdout, grassfock(args).stdout);
    }
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# sweep\nrho = 1\na = 0.01\npoints = 3\nformat = csv\n").unwrap();
    let conf = conf.to_str().unwrap();
    let from_file = grassfock(&["--config", conf, "spectrum"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file).lines().count(), 4);
    let overridden = grassfock(&["--config", conf, "spectrum", "--points", "5"]);
    assert_eq!(stdout(&overridden).lines().count(), 6);

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(code(&grassfock(&["--config", bad.to_str().unwrap(), "verify"])), 2);
}

#[test]
fn coherent_reports() {
    let one = grassfock(&["coherent", "--modes", "1"]);
    assert_eq!(code(&one), 0);
    let text = stdout(&one);
    assert!(text.contains("|0⟩"));
    assert!(text.contains("residual: mode 1 0"));

    let o = grassfock(&["coherent", "--modes", "2", "--occupancy", "50,50", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["substituted"]["phase_variance"], 0.0025);

    let rotated = grassfock(&["coherent", "--modes", "2", "--theta", "1.5707963", "--format", "json"]);
    assert_eq!(code(&rotated), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&rotated)).unwrap();
    assert_eq!(v["rotation"]["overlap_residual"], 0.0);
    assert_eq!(v["rotation"]["state_residual"], 0.0);
}

#[test]
fn negative_values_parse_as_numbers() {
    assert_eq!(code(&grassfock(&["spectrum", "--rho", "1", "--a", "-0.01"])), 0);
    assert_eq!(code(&grassfock(&["coherent", "--theta", "-1.0"])), 0);
}
