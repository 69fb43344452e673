//! End-to-end checks of the command-line surface, driving the built
//! binary through its JSON/DOT interfaces.

use std::path::Path;
use std::process::{Command, Output};

fn gl2(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl2"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_form(dir: &Path, name: &str, coeffs: [&str; 9]) -> String {
    let path = dir.join(name);
    let json = serde_json::json!({
        "degree": 8,
        "basis": "binomial",
        "coeffs": coeffs,
    });
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_mixed_type_example() {
    let dir = tempfile::tempdir().unwrap();
    // x^4 (x^2 + y^2)^2 in binomial coordinates
    let form = write_form(
        dir.path(),
        "form.json",
        ["1", "0", "1/14", "0", "1/70", "0", "0", "0", "0"],
    );
    let out = gl2(&["classify", &form], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "{4,[2,2]} dim=4 sym=5 planar=Goursat rank=4");

    // the float path agrees
    let out = gl2(&["classify", &form, "--float", "--eps", "1e-8"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("{4,[2,2]}"));
}

#[test]
fn jmat_reports_rank_det_disc() {
    let dir = tempfile::tempdir().unwrap();
    let form = write_form(
        dir.path(),
        "x8.json",
        ["1", "0", "0", "0", "0", "0", "0", "0", "0"],
    );
    let out = gl2(&["jmat", &form], dir.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["det"], "0");
    assert_eq!(v["discriminant"], "0");
    assert_eq!(v["matrix"][0][5], "1"); // lam column of x^8
    assert_eq!(v["matrix"][0][7], "16"); // ph0 column
}

#[test]
fn verify_absorption_and_x8() {
    let dir = tempfile::tempdir().unwrap();
    let out = gl2(&["verify", "absorption"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("a2 = 3/10"));
    assert!(text.contains("d4 = -1/160"));
    assert!(text.contains("absorption: PASS"));

    let out = gl2(&["verify", "x8"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("x8: PASS"));
}

#[test]
fn verify_tangency_single_type() {
    let dir = tempfile::tempdir().unwrap();
    let out = gl2(&["verify", "tangency", "--type", "{4,[2,2]}"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tangency: PASS"));
    assert!(text.contains("{4,[2,2]}"));
}

#[test]
fn verify_detdisc_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let out = gl2(&["verify", "detdisc", "--n", "4"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("detdisc: PASS"));
}

#[test]
fn strata_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h.dot");
    let out = gl2(&["strata", "--dot", dot.to_str().unwrap()], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("54 nontrivial types"));
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.contains("digraph"));
    assert!(dot_text.contains("\"{8}\" -> \"{0}\""));
}

#[test]
fn pde_reconstruct_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = gl2(&["pde", "reconstruct", "--type", "{0}"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("U22"), "{text}");
    assert!(text.contains("reconstruct: PASS"));

    let out = gl2(&["pde", "check", "--name", "611"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("check 611: PASS"));
}

#[test]
fn cone_emits_curve_json() {
    let dir = tempfile::tempdir().unwrap();
    // the wave symbol
    let path = dir.path().join("symbol.json");
    let json = serde_json::json!({
        "matrix": [
            ["0", "0", "-1/2"],
            ["0", "1", "0"],
            ["-1/2", "0", "0"],
        ]
    });
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let out = gl2(&["cone", path.to_str().unwrap()], dir.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["basis"][0], "s^2-t^2");
    assert_eq!(v["columns"].as_array().unwrap().len(), 3);

    // a definite symbol is rejected with nonzero exit
    let bad = dir.path().join("bad.json");
    let json = serde_json::json!({
        "matrix": [["1","0","0"],["0","1","0"],["0","0","1"]]
    });
    std::fs::write(&bad, serde_json::to_string(&json).unwrap()).unwrap();
    let out = gl2(&["cone", bad.to_str().unwrap()], dir.path());
    assert!(!out.status.success());
}

#[test]
fn malformed_inputs_fail_with_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = gl2(&["classify", bad.to_str().unwrap()], dir.path());
    assert!(!out.status.success());

    // wrong degree
    let path = dir.path().join("deg4.json");
    let json = serde_json::json!({
        "degree": 4, "basis": "binomial",
        "coeffs": ["1", "0", "0", "0", "1"]
    });
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let out = gl2(&["classify", path.to_str().unwrap()], dir.path());
    assert!(!out.status.success());
}

#[test]
fn config_and_seed_env() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("gl2.conf");
    std::fs::write(&cfg, "seed=42\neps=1e-7\n").unwrap();
    let out = gl2(
        &["--config", cfg.to_str().unwrap(), "verify", "detdisc", "--n", "3"],
        dir.path(),
    );
    assert!(out.status.success());

    // GL2_SEED overrides
    let out = Command::new(env!("CARGO_BIN_EXE_gl2"))
        .args(["verify", "detdisc", "--n", "3"])
        .env("GL2_SEED", "7")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
}
