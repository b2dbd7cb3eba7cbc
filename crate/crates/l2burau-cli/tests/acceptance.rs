//! Acceptance gate: every criterion runs through the shipped binary's
//! verification suites and prints one PASS/FAIL line, with wall-clock
//! budgets enforced where a criterion carries one.

use std::process::Command;
use std::time::{Duration, Instant};

struct SuiteRun {
    report: serde_json::Value,
    elapsed: Duration,
}

fn run_suite(suite: &str) -> Result<SuiteRun, String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_l2burau"))
        .args(["verify", suite])
        .output()
        .map_err(|e| format!("failed to launch the binary: {e}"))?;
    let elapsed = start.elapsed();
    let report = serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "no JSON report: {e}; stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(SuiteRun { report, elapsed })
}

/// Evaluates the named checks of a suite run; returns the failing names.
fn failing_checks(run: &SuiteRun, suite: &str, names: &[&str]) -> Vec<String> {
    let mut failing = Vec::new();
    let empty = Vec::new();
    let suites = run.report["suites"].as_array().unwrap_or(&empty);
    let checks = suites
        .iter()
        .find(|s| s["suite"] == suite)
        .map(|s| s["checks"].clone())
        .unwrap_or_default();
    for name in names {
        let passed = checks
            .as_array()
            .into_iter()
            .flatten()
            .any(|c| c["name"] == *name && c["passed"] == true);
        if !passed {
            failing.push(name.to_string());
        }
    }
    failing
}

fn criterion(
    number: u32,
    description: &str,
    suite: &str,
    checks: &[&str],
    budget: Option<Duration>,
) {
    let outcome = run_suite(suite);
    let (passed, note) = match &outcome {
        Ok(run) => {
            let failing = failing_checks(run, suite, checks);
            let over_budget = budget.is_some_and(|b| run.elapsed > b);
            let mut notes = Vec::new();
            if !failing.is_empty() {
                notes.push(format!("failed checks: {}", failing.join(", ")));
            }
            match budget {
                Some(b) if over_budget => notes.push(format!(
                    "over budget: {:.1}s > {:.0}s",
                    run.elapsed.as_secs_f64(),
                    b.as_secs_f64()
                )),
                Some(b) => notes.push(format!(
                    "{:.1}s of {:.0}s budget",
                    run.elapsed.as_secs_f64(),
                    b.as_secs_f64()
                )),
                None => notes.push(format!("{:.1}s", run.elapsed.as_secs_f64())),
            }
            (failing.is_empty() && !over_budget, notes.join("; "))
        }
        Err(e) => (false, e.clone()),
    };
    println!(
        "ACCEPTANCE {number} {}: {description} ({note})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {number} failed: {note}");
}

#[test]
fn criterion_1_longpaton_separation() {
    criterion(
        1,
        "6-strand kernel braid: classical Burau is the 6x6 identity, permutation trivial, \
         free action and operator matrix nontrivial",
        "longpaton",
        &[
            "classical-burau-identity",
            "permutation-trivial",
            "free-action-nontrivial",
            "operator-matrix-nontrivial",
        ],
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_2_cocycle_law() {
    criterion(
        2,
        "cocycle law exact on 100 random pairs in B_3..B_5 of length <= 8, full and reduced",
        "cocycle",
        &["full-map", "reduced-map"],
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn criterion_3_classical_recovery() {
    criterion(
        3,
        "grading the operator matrix recovers the classical Burau matrix on 100 random \
         braids under id and abelianization maps",
        "theta",
        &["classical-recovery"],
        None,
    );
}

#[test]
fn criterion_4_block_structure() {
    criterion(
        4,
        "g-basis matrix has the standard last column on 100 random braids",
        "theta",
        &["block-structure"],
        None,
    );
}

#[test]
fn criterion_5_infinite_order_determinant() {
    criterion(
        5,
        "both estimators match max(1,t) at t in {1/4, 1/2, 2, 4}: within 2% over Z and \
         5% over F_2, with non-growing truncation increments",
        "prop23",
        &[
            "truncation-z",
            "series-z",
            "truncation-increments-z",
            "truncation-f2",
            "series-f2",
            "truncation-increments-f2",
        ],
        Some(Duration::from_secs(300)),
    );
}

#[test]
fn criterion_6_unknot_pipeline() {
    criterion(
        6,
        "unknot closure: determinant within 5% of max(1,t) and torsion within 5% of \
         1/max(1,t) at t in {1/2, 2}",
        "unknot",
        &["determinant", "torsion"],
        None,
    );
}

#[test]
fn criterion_7_split_closure_vanishes() {
    criterion(
        7,
        "trivial 2-strand braid closes to a split link: determinant exactly 0",
        "unlink",
        &["determinant-zero", "torsion-zero"],
        None,
    );
}

#[test]
fn criterion_8_trefoil_pipeline() {
    criterion(
        8,
        "trefoil closure over the (2,3) torus-knot oracle: determinant within 15% of \
         max(1,t)^3, estimators within 10% of each other, presentation route agrees",
        "trefoil",
        &["determinant", "estimators-agree", "fox-route-agrees"],
        Some(Duration::from_secs(600)),
    );
}

#[test]
fn criterion_9_fox_identities() {
    criterion(
        9,
        "Fox product rule and fundamental identity hold on 1000 random cases each",
        "cocycle",
        &["fox-product-rule", "fox-fundamental-identity"],
        None,
    );
}
