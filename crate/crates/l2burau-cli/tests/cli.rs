//! End-to-end tests of the binary: output shapes, round trips, formats,
//! config files, determinism, and exit codes.

use std::process::{Command, Output};

use l2burau::io::{LaurentMatrixDto, OperatorMatrixDto};
use l2burau::{burau, reduced_l2_burau, BraidWord, GammaMap, GroupOracle, TorsionReport, Word};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l2burau"))
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
fn burau_generator_matches_library() {
    let out = run(&["burau", "--braid", "1", "--strands", "2"]);
    let json = stdout_json(&out);
    assert_eq!(json["braid"], "s1");
    assert_eq!(json["strands"], 2);
    let dto: LaurentMatrixDto = serde_json::from_value(json["matrix"].clone()).unwrap();
    let expected = burau(&BraidWord::new(2, [1]).unwrap());
    assert_eq!(dto.build().unwrap(), expected);
}

#[test]
fn braid_words_accept_commas_and_prefixes() {
    let a = run(&["burau", "--braid", "1,-2,1", "--strands", "3"]);
    let b = run(&["burau", "--braid", "s1 -s2 s1", "--strands", "3"]);
    assert_eq!(stdout_json(&a), stdout_json(&b));
}

#[test]
fn reduced_operator_round_trips() {
    let out = run(&["reduced", "--braid", "1", "--strands", "2", "--gamma", "id"]);
    let json = stdout_json(&out);
    let dto: OperatorMatrixDto = serde_json::from_value(json["matrix"].clone()).unwrap();
    let m = dto.build().unwrap();
    let gamma = GammaMap::identity(2).unwrap();
    assert_eq!(
        m,
        reduced_l2_burau(&BraidWord::new(2, [1]).unwrap(), &gamma).unwrap()
    );
    assert_eq!(m.rows(), 1);
    assert_eq!(
        m.entry(0, 0).display('x'),
        "-x1 x2 x1^-1"
    );
}

#[test]
fn abelianization_gamma_changes_target() {
    let out = run(&[
        "l2",
        "--braid",
        "1 2",
        "--strands",
        "3",
        "--gamma",
        "abelianization",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["gamma"]["target"]["kind"], "free-abelian");
}

#[test]
fn torsion_of_trivial_braid_is_zero() {
    let out = run(&["torsion", "--braid", "", "--strands", "2"]);
    let report: TorsionReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(out.status.success());
    assert_eq!(report.points.len(), 2);
    for p in &report.points {
        assert_eq!(p.det, 0.0);
        assert_eq!(p.torsion, 0.0);
    }
}

#[test]
fn torsion_report_round_trips() {
    let out = run(&[
        "torsion", "--braid", "1", "--strands", "2", "--t", "2", "--gamma",
        "id",
    ]);
    // The identity map does not kill the closure relator.
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("z.toml");
    std::fs::write(&cfg, "kind = \"free-abelian\"\nrank = 1\ngamma = [\"x1\", \"x1\"]\n").unwrap();
    let out = run(&[
        "torsion",
        "--braid",
        "1",
        "--strands",
        "2",
        "--t",
        "1/2,2",
        "--gamma",
        cfg.to_str().unwrap(),
    ]);
    let report: TorsionReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(out.status.success());
    let json = serde_json::to_value(&report).unwrap();
    let back: TorsionReport = serde_json::from_value(json).unwrap();
    assert_eq!(back.points.len(), report.points.len());
    for p in &report.points {
        let expected = p.t_value.max(1.0);
        assert!((p.det - expected).abs() / expected < 0.05, "det {} at t {}", p.det, p.t);
    }
}

#[test]
fn group_flag_supplies_gamma_when_gamma_flag_is_absent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("trefoil.toml");
    std::fs::write(
        &cfg,
        "kind = \"torus-knot\"\np = 2\nq = 3\ngamma = [\"x2^-1 x1\", \"x1^-1 x2 x2\"]\n",
    )
    .unwrap();
    let out = run(&[
        "torsion",
        "--braid",
        "1,1,1",
        "--strands",
        "2",
        "--t",
        "2",
        "--group",
        cfg.to_str().unwrap(),
    ]);
    let report: TorsionReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(out.status.success());
    assert!(report.oracle.contains("torus-knot(2,3)"));
    let det = report.points[0].det;
    assert!((det - 8.0).abs() / 8.0 < 0.15, "det {det}");
}

#[test]
fn gamma_images_must_grade_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "kind = \"free-abelian\"\nrank = 1\ngamma = [\"x1 x1\", \"x1\"]\n")
        .unwrap();
    let out = run(&[
        "reduced",
        "--braid",
        "1",
        "--strands",
        "2",
        "--gamma",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn out_flag_writes_the_stdout_payload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let direct = run(&["burau", "--braid", "1 1", "--strands", "2"]);
    let filed = run(&[
        "burau",
        "--braid",
        "1 1",
        "--strands",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(filed.status.success());
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn csv_format_emits_one_row_per_entry() {
    let out = run(&["burau", "--braid", "1", "--strands", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "row,col,entry");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "0,0,1 - T");
    assert_eq!(lines[3], "1,0,T");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "torsion", "--braid", "1 1 1", "--strands", "2", "--t", "1/2,2", "--gamma", "id",
    ];
    // Relators are not killed; still deterministic, and exit code 2 both times.
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());

    let a = run(&["l2", "--braid", "1 -2 1 -2", "--strands", "3"]);
    let b = run(&["l2", "--braid", "1 -2 1 -2", "--strands", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_single_suite_reports_checks() {
    let out = run(&["verify", "unlink"]);
    let json = stdout_json(&out);
    assert_eq!(json["passed"], true);
    assert_eq!(json["suites"][0]["suite"], "unlink");
    assert!(json["suites"][0]["checks"].as_array().unwrap().len() >= 2);
    let table = String::from_utf8_lossy(&out.stderr);
    assert!(table.contains("PASS unlink/determinant-zero"));
}

#[test]
fn verify_rejects_unknown_suites() {
    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_braid_letters_exit_with_error() {
    let out = run(&["burau", "--braid", "7", "--strands", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn invalid_t_values_exit_with_error() {
    let out = run(&["torsion", "--braid", "", "--strands", "2", "--t", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["torsion", "--braid", "", "--strands", "2", "--t", "-2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_oracle_weights_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("weighted.toml");
    std::fs::write(
        &cfg,
        "kind = \"torus-knot\"\np = 2\nq = 3\nweights = [3, 2]\ngamma = [\"x2^-1 x1\", \"x1^-1 x2 x2\"]\n",
    )
    .unwrap();
    let out = run(&[
        "reduced",
        "--braid",
        "1 1 1",
        "--strands",
        "2",
        "--gamma",
        cfg.to_str().unwrap(),
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["gamma"]["target"]["weights"], serde_json::json!([3, 2]));
    // Entry is -u with u = gamma(g2^2 g1^-1), a grade-3 word.
    assert_eq!(json["matrix"]["entries"][0][0][0][2], 3);
}

#[test]
fn fixture_free_group_word_syntax() {
    assert_eq!(
        Word::parse("x2^-1 x1", 'x').unwrap(),
        Word::from_letters([-2, 1])
    );
    let oracle = GroupOracle::torus_knot(2, 3).unwrap();
    assert_eq!(oracle.describe(), "torus-knot(2,3) weights [3, 2]");
}
