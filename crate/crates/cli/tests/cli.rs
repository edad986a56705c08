use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn disk_area(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disk-area"))
        .args(args)
        .env_remove("DISK_AREA_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// CSV rows as maps from header to cell.
fn rows(csv: &str) -> Vec<Vec<(String, String)>> {
    let mut lines = csv.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_owned).collect();
    lines
        .map(|l| header.iter().cloned().zip(l.split(',').map(str::to_owned)).collect())
        .collect()
}

fn cell<'a>(row: &'a [(String, String)], name: &str) -> &'a str {
    &row.iter().find(|(k, _)| k == name).unwrap().1
}

/// Drops the wall-time column so runs can be compared byte for byte.
fn without_timing(csv: &str) -> String {
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let drop = header.iter().position(|h| *h == "wall_time_ms").unwrap();
    csv.lines()
        .map(|l| {
            l.split(',')
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, c)| c)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn identity_area_at_half() {
    let out = disk_area(&["area", "--family", "identity", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("schema,map_id,family,params,r,method,value,resolution,error_indicator,wall_time_ms"));
    let value: f64 = cell(&rows(&text)[0], "value").parse().unwrap();
    assert!((value - PI / 4.0).abs() < 1e-12);
}

#[test]
fn shear_area_by_jacobian() {
    let out = disk_area(&["area", "--family", "shear:0.3", "--r", "0.8", "--method", "jacobian"]);
    assert_eq!(out.status.code(), Some(0));
    let value: f64 = cell(&rows(&stdout(&out))[0], "value").parse().unwrap();
    let want = PI * (0.64 - 2.0 * 0.09 * 0.8f64.powi(4));
    assert!((value - want).abs() < 1e-7, "{value} vs {want}");
}

#[test]
fn kernel_paths_agree_from_cli() {
    let out = disk_area(&["area", "--family", "random:7:0.5", "--r", "0.6", "--method", "kernel-fft,kernel-direct"]);
    assert_eq!(out.status.code(), Some(0));
    let values: Vec<f64> = rows(&stdout(&out)).iter().map(|r| cell(r, "value").parse().unwrap()).collect();
    assert_eq!(values.len(), 2);
    assert!((values[0] - values[1]).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(disk_area(&["area", "--family", "bogus", "--r", "0.5"]).status.code(), Some(64));
    assert_eq!(disk_area(&["area", "--family", "identity", "--r", "1.5"]).status.code(), Some(64));
    assert_eq!(disk_area(&["verify", "--suite", "nope"]).status.code(), Some(64));
    assert_eq!(disk_area(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn proof_suite_passes() {
    let out = disk_area(&["verify", "--suite", "proof", "--r", "0.6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(rows(&text).iter().all(|r| cell(r, "passed") == "true"));
}

#[test]
fn shear_concavity_is_an_expected_violation() {
    let out = disk_area(&["verify", "--suite", "convexity", "--family", "shear:0.3", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let rec = rows(&text);
    let shear = rec.iter().find(|r| cell(r, "family") == "shear").unwrap();
    assert_eq!(cell(shear, "passed"), "false");
}

#[test]
fn verdict_header_is_fixed() {
    let out = disk_area(&["verify", "--suite", "theorem1", "--seeds", "0..1", "--radii", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "schema,check_name,map_id,family,params,r,method,lhs,rhs,slack,tolerance,passed,resolution,error_indicator,wall_time_ms"
    );
    // 2 seeds × 3 mollifier widths × 2 default methods.
    assert_eq!(rows(&text).len(), 12);
}

#[test]
fn repeated_runs_are_identical_up_to_timing() {
    let args = ["verify", "--suite", "equality", "--seeds", "0..4", "--radii", "0.3,0.9"];
    let a = stdout(&disk_area(&args));
    let b = stdout(&disk_area(&args));
    assert!(!a.is_empty());
    assert_eq!(without_timing(&a), without_timing(&b));
}

#[test]
fn jsonl_carries_schema() {
    let out = disk_area(&["area", "--family", "rotation:1", "--r", "0.5", "--format", "jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(line.trim_end().starts_with("{\"schema\":1,"), "{line}");
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_disk-area"))
        .args(["area", "--family", "identity", "--r", "0.5"])
        .env("DISK_AREA_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("area.csv")).unwrap();
    assert!(written.starts_with("schema,"));
}

#[test]
fn explicit_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/bench.jsonl");
    let out = disk_area(&["bench", "--m", "64,128", "--format", "jsonl", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
}

fn write_map(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn map_file_and_conjugate() {
    let dir = tempfile::tempdir().unwrap();
    let forward = write_map(
        dir.path(),
        "quarter.json",
        r#"{"kind":"Homeomorphism","omega_re":1.0,"omega_im":0.0,"knots":[[0.0,0.0],[3.0,1.0],[5.0,4.0]]}"#,
    );
    let out = disk_area(&["area", "--map-file", &forward, "--r", "0.7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let row = &rows(&text)[0];
    assert_eq!(cell(row, "map_id"), "file:quarter");
    let value: f64 = cell(row, "value").parse().unwrap();
    assert!(value > 0.0 && value <= PI * 0.49);

    // t ↦ −t reversed; its conjugate is the identity up to a turn.
    let reversed = write_map(
        dir.path(),
        "reversed.json",
        r#"{"kind":"Homeomorphism","omega_re":1.0,"omega_im":0.0,"knots":[[0.0,0.0],[3.141592653589793,-3.141592653589793]]}"#,
    );
    let out = disk_area(&["area", "--map-file", &reversed, "--conjugate", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let value: f64 = cell(&rows(&stdout(&out))[0], "value").parse().unwrap();
    assert!((value - PI / 4.0).abs() < 1e-10, "{value}");

    let bad = write_map(dir.path(), "bad.json", "{not json");
    assert_eq!(disk_area(&["area", "--map-file", &bad, "--r", "0.5"]).status.code(), Some(64));
    // A reversed lift without --conjugate is not a valid map.
    assert_eq!(disk_area(&["area", "--map-file", &reversed, "--r", "0.5"]).status.code(), Some(64));
}

#[test]
fn conjugate_requires_map_file() {
    assert_eq!(disk_area(&["area", "--conjugate", "--r", "0.5", "--family", "identity"]).status.code(), Some(64));
}

#[test]
fn bench_default_sizes_agree() {
    let out = disk_area(&["bench", "--m", "256,1024"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("schema,m,method,value,wall_time_ms,rel_diff"));
    for r in rows(&text) {
        let rel: f64 = cell(&r, "rel_diff").parse().unwrap();
        assert!(rel < 1e-10);
    }
}

#[test]
fn schwarz_grid_and_center_shift() {
    // The Möbius map sends a to 0, so shifting the center to a meets the hypothesis.
    let ok = disk_area(&[
        "verify", "--suite", "schwarz", "--family", "mobius:0.3:0.1", "--schwarz-grid", "16,16", "--center-shift", "0.3,0.1",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let off_center =
        disk_area(&["verify", "--suite", "schwarz", "--family", "step:two", "--schwarz-grid", "16,16", "--center-shift", "0.1"]);
    assert_eq!(off_center.status.code(), Some(64));
    assert_eq!(disk_area(&["verify", "--suite", "schwarz", "--schwarz-grid", "16"]).status.code(), Some(64));
}
