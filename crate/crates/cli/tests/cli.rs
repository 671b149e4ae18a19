//! End-to-end tests of the binary: subcommand output and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecohom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn mul_examples() {
    let out = run(&["mul", "E8", "--coeff", "F2", "z3*z3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x6");

    let out = run(&["mul", "E8", "--coeff", "F2", "C{1,3}*C{1,3}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x6^2*x18 + x10^3");

    let out = run(&["mul", "E8", "--coeff", "F2", "z23^2"]);
    assert_eq!(stdout(&out).trim(), "x6^6*x10");

    // Label aliases resolve through the provenance map.
    let out = run(&["mul", "E8", "--coeff", "F2", "theta_1*theta_1"]);
    assert_eq!(stdout(&out).trim(), "x10");

    // Odd squares vanish rationally.
    let out = run(&["mul", "E8", "--coeff", "Q", "z3*z3"]);
    assert_eq!(stdout(&out).trim(), "0");
    let out = run(&["mul", "E8", "--coeff", "Q", "2*z3*z15 + z15*z3"]);
    assert_eq!(stdout(&out).trim(), "z3*z15");
}

#[test]
fn mul_integral() {
    let out = run(&["mul", "G2", "--coeff", "Z", "rho3*rho3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x6");
    let out = run(&["mul", "G2", "--coeff", "Z", "rho11*x6"]);
    assert_eq!(stdout(&out).trim(), "0");
    let out = run(&["mul", "E8", "--coeff", "Z", "rho3*x6"]);
    assert_eq!(stdout(&out).trim(), "x6*rho3");
}

#[test]
fn betti_output() {
    let out = run(&["betti", "G2", "--coeff", "Q"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0:1 3:1 11:1 14:1");

    let out = run(&["betti", "G2", "--coeff", "Z"]);
    let text = stdout(&out);
    assert!(text.contains("free: 0:1 3:1 11:1 14:1"), "{text}");
    assert!(text.contains("2-torsion: 6:1 9:1"), "{text}");

    let out = run(&["betti", "F4", "--coeff", "F3", "--max-degree", "9"]);
    assert_eq!(stdout(&out).trim(), "0:1 3:1 7:1 8:1");
}

#[test]
fn info_matches_table_row() {
    let out = run(&["info", "E8"]);
    let text = stdout(&out);
    assert!(text.contains("(k, m) = (3, 7)"), "{text}");
    assert!(
        text.contains("deg y_j = [6, 8, 10, 12, 18, 20, 30]"),
        "{text}"
    );
    assert!(text.contains("p_j     = [2, 3, 2, 5, 2, 3, 2]"), "{text}");
    assert!(text.contains("k_j     = [8, 3, 4, 5, 2, 3, 2]"), "{text}");
    assert!(text.contains("dim = 248"), "{text}");
}

#[test]
fn present_text_shapes() {
    let out = run(&["present", "E7", "--coeff", "F2"]);
    let text = stdout(&out);
    assert!(text.contains("F2[x6,x10,x18]"), "{text}");
    assert!(text.contains("Delta(z3,z5,z9)"), "{text}");
    assert!(text.contains("Lambda_F2(z15,z17,z23,z27)"), "{text}");
    assert!(text.contains("z3^2 = x6"), "{text}");
    assert!(text.contains("tau_2(E7)"), "{text}");

    let out = run(&["present", "G2", "--coeff", "Z"]);
    let text = stdout(&out);
    assert!(text.contains("Delta_Z(rho3)"), "{text}");
    assert!(text.contains("rho3^2 - x6"), "{text}");
    assert!(text.contains("rho11*x6"), "{text}");
}

#[test]
fn export_json_is_well_formed() {
    let out = run(&["export", "F4", "--coeff", "F3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["group"], "F4");
    assert_eq!(doc["coefficients"], "F3");
    assert_eq!(doc["betti"]["0"], 1);
    assert_eq!(doc["torsion"]["3"]["8"], 1);
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 5);
    assert!(doc["basis"]["52"].as_array().unwrap().len() == 1);
    assert_eq!(doc["products"]["x8*x8"], "x8^2");
}

#[test]
fn exit_codes() {
    // Parse errors exit 2.
    let out = run(&["info", "E9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["mul", "E8", "--coeff", "F2", "z3*"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["betti", "G2", "--coeff", "F6"]);
    assert_eq!(out.status.code(), Some(2));
    // A product needing a missing square exits 3 and names the generator.
    let out = run(&["mul", "Spin(7)", "--coeff", "F2", "z3*z3"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("z3"), "{err}");
    // Verification of one group succeeds with exit 0.
    let out = run(&["verify", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn verify_spin_reports_skipped_squares() {
    let out = run(&["verify", "Spin(10)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("skipped: square of") && text.contains("not determined"),
        "{text}"
    );
}

#[test]
fn verify_all_respects_rank_bound_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_liecohom"))
        .args(["verify", "--all"])
        .env("LIECOHOM_MAX_RANK", "2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Sp(2)/Q dimension identity"), "{text}");
    assert!(!text.contains("Sp(3)/Q"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}
