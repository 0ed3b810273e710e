//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

fn sfl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_the_known_facts() {
    let out = sfl(&["check", "catalog:group1"]);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "sfl/1");
    assert_eq!(v["selfadjoint"], true);
    assert_eq!(v["hadamard"], true);
    assert_eq!(v["class"]["class"], "N2");
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["admissible_lattice_count"], 2);
}

#[test]
fn check_exit_code_reflects_verification() {
    // selfadjoint system passes
    assert!(sfl(&["check", "catalog:group1"]).status.success());
    // the ternary system has no lattice: hadamard+expansive suffice
    assert!(sfl(&["check", "catalog:cantor3"]).status.success());
    // a symmetric-but-not-selfadjoint lattice choice fails
    let dir = tempdir();
    let path = dir.join("sym.json");
    std::fs::write(
        &path,
        r#"{"n":1,"R":[["3"]],"B":[["0"],["2/3"]],"L":[["0"],["3/4"]],"K":[["2"]]}"#,
    )
    .unwrap();
    let out = sfl(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["symmetric"], true);
    assert_eq!(v["selfadjoint"], false);
    assert_eq!(v["selfadjoint_diagnosis"]["dual_contains_l"], false);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["check", "catalog:group2"],
        vec!["lattices", "catalog:group2", "--index-bound", "8"],
        vec!["muhat", "catalog:group1", "--grid", "0:4:33"],
        vec!["cuntz", "catalog:group1", "--window", "6"],
    ] {
        let a = sfl(&args);
        let b = sfl(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn lattices_for_the_ternary_system_is_an_empty_report() {
    let out = sfl(&["lattices", "catalog:cantor3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["count"], 0);
    assert_eq!(v["complete"], true);
    assert!(v["note"].as_str().unwrap().contains("no lattice"));
}

#[test]
fn muhat_matches_the_closed_form_at_a_rational_point() {
    let out = sfl(&["muhat", "catalog:reducible2", "--at", "1/3", "0"]);
    let v = stdout_json(&out);
    let e = &v["evaluations"][0];
    let (re, im) = (e["re"].as_f64().unwrap(), e["im"].as_f64().unwrap());
    let bound = e["bound"].as_f64().unwrap();
    let pi3 = std::f64::consts::PI / 3.0;
    let scale = pi3.sin() / pi3;
    let want = (scale * pi3.cos(), scale * pi3.sin());
    let err = ((re - want.0).powi(2) + (im - want.1).powi(2)).sqrt();
    assert!(err <= bound + 1e-9, "err {err} bound {bound}");
}

#[test]
fn spectrum_lambda_window() {
    let out = sfl(&["spectrum", "catalog:group1", "--lambda", "--bound", "5"]);
    let v = stdout_json(&out);
    assert_eq!(v["count"], 6);
    let pts: Vec<String> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p[0].as_str().unwrap().to_string())
        .collect();
    assert_eq!(pts, ["-4", "-3", "0", "1", "4", "5"]);
}

#[test]
fn ortho_and_cuntz_pass_on_the_catalog() {
    let out = sfl(&["ortho", "catalog:group1", "--window", "20"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["digit_map_injective"], true);

    let out = sfl(&["cuntz", "catalog:group2", "--window", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
}

#[test]
fn maximality_reports_inconclusive_for_the_shear_system() {
    let out = sfl(&[
        "maximality",
        "catalog:reducible2",
        "--candidates",
        "-2..-1;0..0",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["witnessed"], 0);
    assert_eq!(v["inconclusive"].as_array().unwrap().len(), 2);
}

#[test]
fn attractor_csv_and_pgm() {
    let out = sfl(&["attractor", "catalog:group1", "--depth", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,weight"));
    assert_eq!(text.lines().count(), 1 + 8);

    let dir = tempdir();
    let path = dir.join("cloud.pgm");
    let out = sfl(&[
        "attractor",
        "catalog:sierpinski2",
        "--depth",
        "6",
        "--render",
        "32x32",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P5\n32 32\n255\n"));
    assert_eq!(bytes.len(), 13 + 32 * 32);
}

#[test]
fn attractor_budget_env_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_sfl"))
        .args(["attractor", "catalog:group1", "--depth", "12"])
        .env("SFL_MAX_POINTS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn dual_round_trips_through_the_cli() {
    let dir = tempdir();
    let d1 = dir.join("dual.json");
    let d2 = dir.join("dual2.json");
    let out = sfl(&["dual", "catalog:group1", "--out", d1.to_str().unwrap()]);
    assert!(out.status.success());
    let out = sfl(&["dual", d1.to_str().unwrap(), "--out", d2.to_str().unwrap()]);
    assert!(out.status.success());
    // applying the dual twice returns the original system file
    let original = sfl(&["catalog", "export", "group1"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        ""
    );
    assert_eq!(
        std::fs::read_to_string(&d2).unwrap(),
        String::from_utf8_lossy(&original.stdout).trim_end_matches('\n')
    );
}

#[test]
fn catalog_listing_and_bad_input() {
    let out = sfl(&["catalog", "list"]);
    let v = stdout_json(&out);
    assert_eq!(v["ids"].as_array().unwrap().len(), 7);

    let out = sfl(&["catalog", "show", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempdir();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\"n\": 1, \"R\": [[\"4\"").unwrap();
    let out = sfl(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "parse errors carry a location: {err}");
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "sfl-cli-test-{}-{}",
        std::process::id(),
        std::thread::current().name().unwrap_or("t").replace("::", "-")
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
