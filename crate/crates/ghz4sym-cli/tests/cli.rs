//! End-to-end tests of the binary: spawn the real executable and check
//! outputs, file artifacts, and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use ghz4sym::boundaries::alphas_from_yz;
use ghz4sym::export::parse_obj;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ghz4sym"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ghz4sym")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn state_uniform_mixture_reports_origin() {
    let o = run(&["state", "--alphas", "0.0625,0.0625,0.0625", "--beta", "0.0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("point: (0, 0"), "{text}");
    assert!(text.contains("physical: yes"), "{text}");
    assert!(text.contains("checksum ="), "{text}");
}

#[test]
fn state_json_is_parseable_with_expected_fields() {
    let o = run(&[
        "state",
        "--alphas",
        "0.25,0.03125,0.04166666666666666",
        "--beta",
        "0.1",
        "--json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).expect("valid json");
    assert_eq!(v["physical"], serde_json::Value::Bool(true));
    assert!((v["point"]["x"].as_f64().unwrap() - 0.1).abs() < 1e-15);
    assert!(v["density_checksum"].as_str().unwrap().len() == 16);
    let purity = v["purity"].as_f64().unwrap();
    assert!(purity > 0.0 && purity <= 1.0 + 1e-12);
}

#[test]
fn state_rejects_trace_violation_and_bad_arity() {
    let o = run(&["state", "--alphas", "0.3,0.1,0.1", "--beta", "0.0"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("trace"), "{}", stderr(&o));

    let o = run(&["state", "--alphas", "0.25,0.0625", "--beta", "0.0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn twirl_ghz_plus_lands_on_first_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.json");
    let w = 1.0 / 2.0f64.sqrt();
    let mut amps = vec![[0.0, 0.0]; 16];
    amps[0] = [w, 0.0];
    amps[15] = [w, 0.0];
    std::fs::write(&path, serde_json::to_string(&serde_json::json!({ "amplitudes": amps })).unwrap())
        .unwrap();
    let o = run(&["twirl", "--in", path.to_str().unwrap(), "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["point"]["x"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let want_y = (7.0f64 / 32.0).sqrt();
    assert!((v["point"]["y"].as_f64().unwrap() - want_y).abs() < 1e-12);
    assert!(v["point"]["z"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn twirl_reads_stdin_and_normalizes() {
    // Unnormalized bare-array form; the CLI normalizes before twirling.
    let mut amps = vec![[0.0, 0.0]; 16];
    amps[3] = [2.0, 0.0];
    let payload = serde_json::to_string(&amps).unwrap();
    let mut child = bin()
        .args(["twirl", "--in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(payload.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    // |0011> twirls to the two-excitation vertex: alpha3 = 1/6.
    assert!(stdout(&o).contains("alpha3 = 0.16666666"), "{}", stdout(&o));
}

#[test]
fn twirl_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"amplitudes\": [[1.0, 0.0]]}").unwrap();
    let o = run(&["twirl", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("16"), "{}", stderr(&o));
}

#[test]
fn boundary_la2b2_csv_matches_linear_form() {
    let o = run(&["boundary", "--class", "la2b2", "--grid", "8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "y,z,x_max,x_effective,empty");
    let mut rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 5);
        let y: f64 = cells[0].parse().unwrap();
        let z: f64 = cells[1].parse().unwrap();
        let x_max: f64 = cells[2].parse().unwrap();
        let (_, _, a3) = alphas_from_yz(y, z);
        assert_eq!(cells[4], "false");
        assert!((x_max - 3.0 * a3).abs() < 1e-12, "row {line}");
        rows += 1;
    }
    assert_eq!(rows, 36);
}

#[test]
fn boundary_writes_file_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surface.csv");
    let o = run(&[
        "boundary",
        "--class",
        "la4",
        "--grid",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("wrote 21 rows"), "{}", stdout(&o));
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("y,z,x_max,x_effective,empty\n"));
}

#[test]
fn boundary_rejects_unsolved_and_unknown_classes() {
    let o = run(&["boundary", "--class", "lab3", "--grid", "6"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("open problem"), "{}", stderr(&o));

    let o = run(&["boundary", "--class", "nonsense", "--grid", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("known tags"), "{}", stderr(&o));
}

#[test]
fn oracle_emits_json_with_analytic_comparison() {
    let o = run(&[
        "oracle", "--class", "la2b2", "--y", "0.12", "--z", "0.01", "--restarts", "2", "--seed",
        "7",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).expect("valid json");
    assert_eq!(v["class"], "la2b2");
    assert!(v["x_best"].as_f64().is_some());
    assert!(v["constraint_residual"].as_f64().unwrap() < 1e-6);
    assert!(v["starts_converged"].as_u64().unwrap() > 0);
    let (a1, _, a3) = alphas_from_yz(0.12, 0.01);
    let eff = (3.0 * a3).min(a1);
    assert!((v["analytic"]["x_effective"].as_f64().unwrap() - eff).abs() < 1e-12);
    assert_eq!(v["best_op"].as_array().unwrap().len(), 4);
}

#[test]
fn hull_writes_obj_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("region.obj");
    let o = run(&[
        "hull",
        "--class",
        "l031031",
        "--grid",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let h = parse_obj(&std::fs::read_to_string(&path).unwrap()).expect("obj parses");
    assert!(h.vertices.len() >= 4);
    assert!(!h.faces.is_empty());
    let j: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path.with_extension("json")).unwrap())
            .expect("json parses");
    assert_eq!(j["class"], "l031031");
    assert!(j["volume"].as_f64().unwrap() > 0.0);
    assert_eq!(j["vertices"].as_array().unwrap().len(), h.vertices.len());
}

#[test]
fn hierarchy_exit_codes_match_inclusion() {
    let o = run(&[
        "hierarchy", "--inner", "labc2", "--outer", "la4", "--grid", "12", "--tol", "1e-9",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}\n{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("HOLDS"));

    let o = run(&[
        "hierarchy", "--inner", "l031031", "--outer", "la2b2", "--grid", "12", "--tol", "1e-9",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["holds"], serde_json::Value::Bool(false));
    assert!(v["max_violation"].as_f64().unwrap() > 0.0);
    assert!(!v["violating_points"].as_array().unwrap().is_empty());
}

#[test]
fn hierarchy_rejects_unsolved_member() {
    let o = run(&[
        "hierarchy", "--inner", "l053", "--outer", "gabcd", "--grid", "8", "--tol", "1e-9",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}
