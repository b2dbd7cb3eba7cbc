//! Built-in verification suites, each a batch of named checks with exact
//! symbolic comparisons or pinned numeric tolerances.

use l2burau::{
    burau, closure_presentation, fk_det_series, fk_det_truncation, fox_derivative,
    fox_torsion_from_presentation, g_basis_l2_burau, l2_burau, longpaton, parse_positive_rational,
    precompose_gamma, ratio_to_f64, reduced_l2_burau, theta, torsion_determinant, BasisTag,
    BraidWord, DetParams, GammaMap, GroupOracle, GroupRingElt, LaurentMatrix, OperatorMatrix,
    Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const SUITES: [&str; 7] = [
    "longpaton",
    "cocycle",
    "theta",
    "prop23",
    "unknot",
    "unlink",
    "trefoil",
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

fn check(checks: &mut Vec<Check>, name: &str, passed: bool, detail: String) {
    checks.push(Check {
        name: name.to_string(),
        passed,
        detail,
    });
}

fn finish(suite: &str, checks: Vec<Check>) -> SuiteReport {
    SuiteReport {
        suite: suite.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn random_braid<R: Rng>(rng: &mut R, strands: u32, len: usize) -> BraidWord {
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters are in range")
}

fn random_word<R: Rng>(rng: &mut R, rank: u32, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| {
        let i = rng.gen_range(1..=rank as i32);
        if rng.gen_bool(0.5) {
            i
        } else {
            -i
        }
    }))
}

fn rel_err(value: f64, expected: f64) -> f64 {
    (value - expected).abs() / expected.abs().max(1e-300)
}

/// Runs one named suite, or all of them for `"all"`.
pub fn run(suite: &str) -> anyhow::Result<VerifyReport> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        anyhow::bail!(
            "unknown suite `{suite}` (expected one of {} or all)",
            SUITES.join(", ")
        );
    };
    let suites = names
        .into_iter()
        .map(|name| -> anyhow::Result<SuiteReport> {
            Ok(match name {
                "longpaton" => suite_longpaton()?,
                "cocycle" => suite_cocycle()?,
                "theta" => suite_theta()?,
                "prop23" => suite_prop23()?,
                "unknot" => suite_unknot()?,
                "unlink" => suite_unlink()?,
                "trefoil" => suite_trefoil()?,
                _ => unreachable!(),
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport { suites, passed })
}

/// A nontrivial pure braid whose unreduced Burau matrix is the identity but
/// whose symbolic operator matrix is not.
fn suite_longpaton() -> anyhow::Result<SuiteReport> {
    let b = longpaton();
    let mut checks = Vec::new();

    let m = burau(&b);
    check(
        &mut checks,
        "classical-burau-identity",
        m == LaurentMatrix::identity(6),
        format!("{}-letter braid on {} strands", b.letters().len(), b.strands()),
    );
    check(
        &mut checks,
        "permutation-trivial",
        b.is_pure(),
        "closure is a 6-component link".to_string(),
    );
    let image = b.act_on_x(1);
    check(
        &mut checks,
        "free-action-nontrivial",
        image != Word::generator(1),
        format!("h(x1) has {} letters", image.letters().len()),
    );
    let gamma = GammaMap::identity(6)?;
    let op = l2_burau(&b, &gamma)?;
    check(
        &mut checks,
        "operator-matrix-nontrivial",
        !op.is_identity(),
        "symbolic matrix at the identity map differs from Id".to_string(),
    );
    Ok(finish("longpaton", checks))
}

/// Exact composition law on random pairs, plus the Fox calculus identities
/// the law rests on.
fn suite_cocycle() -> anyhow::Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(101);

    let mut full_ok = 0;
    let mut reduced_ok = 0;
    let pairs = 100;
    for _ in 0..pairs {
        let strands = rng.gen_range(3..=5);
        let len_a = rng.gen_range(0..=8);
        let len_b = rng.gen_range(0..=8);
        let a = random_braid(&mut rng, strands, len_a);
        let b = random_braid(&mut rng, strands, len_b);
        let ab = a.concat(&b)?;
        let gamma = GammaMap::identity(strands)?;
        let twisted = precompose_gamma(&gamma, &b)?;
        if l2_burau(&b, &gamma)?.compose(&l2_burau(&a, &twisted)?)? == l2_burau(&ab, &gamma)? {
            full_ok += 1;
        }
        if reduced_l2_burau(&b, &gamma)?.compose(&reduced_l2_burau(&a, &twisted)?)?
            == reduced_l2_burau(&ab, &gamma)?
        {
            reduced_ok += 1;
        }
    }
    check(
        &mut checks,
        "full-map",
        full_ok == pairs,
        format!("{full_ok}/{pairs} random pairs in B_3..B_5 compose exactly"),
    );
    check(
        &mut checks,
        "reduced-map",
        reduced_ok == pairs,
        format!("{reduced_ok}/{pairs} random pairs in B_3..B_5 compose exactly"),
    );

    let cases = 1000;
    let mut product_ok = 0;
    for _ in 0..cases {
        let len_u = rng.gen_range(0..=10);
        let len_v = rng.gen_range(0..=10);
        let u = random_word(&mut rng, 3, len_u);
        let v = random_word(&mut rng, 3, len_v);
        let i = rng.gen_range(1..=3u32);
        let lhs = fox_derivative(&u.concat(&v), i);
        let rhs = fox_derivative(&u, i)
            .add(&GroupRingElt::from_word(u.clone()).mul(&fox_derivative(&v, i)));
        if lhs == rhs {
            product_ok += 1;
        }
    }
    check(
        &mut checks,
        "fox-product-rule",
        product_ok == cases,
        format!("{product_ok}/{cases} random cases"),
    );

    let mut fundamental_ok = 0;
    for _ in 0..cases {
        let len = rng.gen_range(0..=14);
        let w = random_word(&mut rng, 4, len);
        let mut acc = GroupRingElt::zero();
        for i in 1..=4u32 {
            let factor =
                GroupRingElt::from_word(Word::generator(i)).sub(&GroupRingElt::one());
            acc = acc.add(&fox_derivative(&w, i).mul(&factor));
        }
        if acc == GroupRingElt::from_word(w).sub(&GroupRingElt::one()) {
            fundamental_ok += 1;
        }
    }
    check(
        &mut checks,
        "fox-fundamental-identity",
        fundamental_ok == cases,
        format!("{fundamental_ok}/{cases} random cases"),
    );
    Ok(finish("cocycle", checks))
}

/// Grading the operator matrix recovers the classical matrix, and the
/// g-basis matrix has the predicted block shape.
fn suite_theta() -> anyhow::Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(102);

    let braids = 100;
    let mut recovered = 0;
    for k in 0..braids {
        let strands = rng.gen_range(2..=5);
        let len = rng.gen_range(0..=10);
        let b = random_braid(&mut rng, strands, len);
        let gamma = if k % 2 == 0 {
            GammaMap::identity(strands)?
        } else {
            GammaMap::abelianization(strands)?
        };
        if theta(&l2_burau(&b, &gamma)?)? == burau(&b) {
            recovered += 1;
        }
    }
    check(
        &mut checks,
        "classical-recovery",
        recovered == braids,
        format!("{recovered}/{braids} braids under id and abelianization maps"),
    );

    let mut blocks = 0;
    for _ in 0..braids {
        let strands = rng.gen_range(2..=5);
        let n = strands as usize;
        let len = rng.gen_range(0..=10);
        let b = random_braid(&mut rng, strands, len);
        let gamma = GammaMap::identity(strands)?;
        let full = g_basis_l2_burau(&b, &gamma)?;
        let reduced = reduced_l2_burau(&b, &gamma)?;
        let top_left = (0..n - 1)
            .all(|i| (0..n - 1).all(|j| full.entry(i, j) == reduced.entry(i, j)));
        let last_column = (0..n - 1).all(|i| full.entry(i, n - 1).is_zero())
            && *full.entry(n - 1, n - 1) == GroupRingElt::one();
        if top_left && last_column {
            blocks += 1;
        }
    }
    check(
        &mut checks,
        "block-structure",
        blocks == braids,
        format!("{blocks}/{braids} braids have a standard last g-basis column"),
    );
    Ok(finish("theta", checks))
}

/// Both determinant estimators on `Id - t R_g` for an infinite-order `g`,
/// against the exact value `max(1,t)`.
fn suite_prop23() -> anyhow::Result<SuiteReport> {
    let mut checks = Vec::new();
    let grid = ["1/4", "1/2", "2", "4"];
    let params = DetParams::default();

    let cases = [
        ("z", GroupOracle::free_abelian(1)?, 0.02),
        ("f2", GroupOracle::free(2)?, 0.05),
    ];
    for (label, oracle, tol) in cases {
        let mut m = OperatorMatrix::zeros(oracle.clone(), BasisTag::X, 1, 1);
        m.set_entry(
            0,
            0,
            GroupRingElt::one().sub(&GroupRingElt::from_word(Word::generator(1))),
        );

        let mut worst_truncation: f64 = 0.0;
        let mut worst_series: f64 = 0.0;
        let mut increments_ok = true;
        for t_str in grid {
            let t = parse_positive_rational(t_str)?;
            let expected = ratio_to_f64(&t).max(1.0);
            let truncation = fk_det_truncation(&m, &t, &params)?;
            let series = fk_det_series(&m, &t, &params)?;
            worst_truncation = worst_truncation.max(rel_err(truncation.value, expected));
            worst_series = worst_series.max(rel_err(series.value, expected));
            let ladder: Vec<f64> = truncation
                .radius_estimates
                .iter()
                .map(|r| r.value)
                .collect();
            for w in ladder.windows(3) {
                if (w[1] - w[0]).abs() + 1e-12 < (w[2] - w[1]).abs() {
                    increments_ok = false;
                }
            }
        }
        check(
            &mut checks,
            &format!("truncation-{label}"),
            worst_truncation <= tol,
            format!(
                "worst relative error {worst_truncation:.2e} vs max(1,t), tolerance {tol}"
            ),
        );
        check(
            &mut checks,
            &format!("series-{label}"),
            worst_series <= tol,
            format!("worst relative error {worst_series:.2e} vs max(1,t), tolerance {tol}"),
        );
        check(
            &mut checks,
            &format!("truncation-increments-{label}"),
            increments_ok,
            "successive radius increments do not grow".to_string(),
        );
    }
    Ok(finish("prop23", checks))
}

fn knot_grid() -> Vec<(String, f64)> {
    vec![("1/2".to_string(), 0.5), ("2".to_string(), 2.0)]
}

/// Closure of the one-crossing braid: determinant `max(1,t)`, torsion
/// `1/max(1,t)` after dividing by `max(1,t)^2`.
fn suite_unknot() -> anyhow::Result<SuiteReport> {
    let mut checks = Vec::new();
    let b = BraidWord::new(2, [1])?;
    let gamma = GammaMap::new(
        2,
        GroupOracle::free_abelian(1)?,
        vec![Word::generator(1), Word::generator(1)],
    )?;
    let params = DetParams::default();
    let grid = knot_grid();
    let ts = grid
        .iter()
        .map(|(s, _)| parse_positive_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    let report = torsion_determinant(&b, &gamma, &ts, &params)?;

    let mut det_ok = true;
    let mut torsion_ok = true;
    let mut fox_ok = true;
    let presentation = closure_presentation(&b)?;
    for (point, (_, tf)) in report.points.iter().zip(&grid) {
        let expected_det = tf.max(1.0);
        let expected_torsion = 1.0 / tf.max(1.0);
        if rel_err(point.det, expected_det) > 0.05 {
            det_ok = false;
        }
        if rel_err(point.torsion, expected_torsion) > 0.05 {
            torsion_ok = false;
        }
        let t = parse_positive_rational(&point.t)?;
        let fox = fox_torsion_from_presentation(&presentation, &gamma, &t, &params)?;
        if rel_err(fox.value, point.torsion) > 0.10 {
            fox_ok = false;
        }
    }
    check(
        &mut checks,
        "determinant",
        det_ok,
        "within 5% of max(1,t) at t = 1/2, 2".to_string(),
    );
    check(
        &mut checks,
        "torsion",
        torsion_ok,
        "det/max(1,t)^2 within 5% of 1/max(1,t)".to_string(),
    );
    check(
        &mut checks,
        "fox-route-agrees",
        fox_ok,
        "presentation route within 10% of the reduced route".to_string(),
    );
    Ok(finish("unknot", checks))
}

/// The trivial two-strand braid closes to a split link: the operator is
/// identically zero and the determinant vanishes exactly.
fn suite_unlink() -> anyhow::Result<SuiteReport> {
    let mut checks = Vec::new();
    let b = BraidWord::trivial(2);
    let gamma = GammaMap::new(
        2,
        GroupOracle::free_abelian(1)?,
        vec![Word::generator(1), Word::generator(1)],
    )?;
    let ts = vec![parse_positive_rational("1/2")?, parse_positive_rational("2")?];
    let report = torsion_determinant(&b, &gamma, &ts, &DetParams::default())?;
    let zero_det = report.points.iter().all(|p| p.det == 0.0);
    let zero_torsion = report.points.iter().all(|p| p.torsion == 0.0);
    let flagged = report
        .points
        .iter()
        .all(|p| p.det_tolerance_diag.iter().any(|d| d.contains("zero_operator")));
    check(
        &mut checks,
        "determinant-zero",
        zero_det,
        "exactly 0 at every t".to_string(),
    );
    check(
        &mut checks,
        "torsion-zero",
        zero_torsion,
        "exactly 0 at every t".to_string(),
    );
    check(
        &mut checks,
        "zero-operator-flagged",
        flagged,
        "estimator reports the operator as identically zero".to_string(),
    );
    Ok(finish("unlink", checks))
}

/// Closure of the cubed one-crossing braid over the (2,3) torus-knot
/// oracle: determinant `max(1,t)^3`.
fn suite_trefoil() -> anyhow::Result<SuiteReport> {
    let mut checks = Vec::new();
    let b = BraidWord::new(2, [1, 1, 1])?;
    let gamma = GammaMap::new(
        2,
        GroupOracle::torus_knot(2, 3)?,
        vec![
            Word::from_letters([-2, 1]),
            Word::from_letters([-1, 2, 2]),
        ],
    )?;
    let params = DetParams::default();
    let grid = knot_grid();
    let ts = grid
        .iter()
        .map(|(s, _)| parse_positive_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    let report = torsion_determinant(&b, &gamma, &ts, &params)?;

    let operator = reduced_l2_burau(&b, &gamma)?.sub_identity()?;
    let presentation = closure_presentation(&b)?;
    let mut det_ok = true;
    let mut agree_ok = true;
    let mut fox_ok = true;
    for (point, (_, tf)) in report.points.iter().zip(&grid) {
        let expected = tf.max(1.0).powi(3);
        if rel_err(point.det, expected) > 0.15 {
            det_ok = false;
        }
        let t = parse_positive_rational(&point.t)?;
        let truncation = fk_det_truncation(&operator, &t, &params)?;
        let series = fk_det_series(&operator, &t, &params)?;
        if rel_err(truncation.value, series.value) > 0.10 {
            agree_ok = false;
        }
        let fox = fox_torsion_from_presentation(&presentation, &gamma, &t, &params)?;
        if rel_err(fox.value, point.torsion) > 0.25 {
            fox_ok = false;
        }
    }
    check(
        &mut checks,
        "determinant",
        det_ok,
        "within 15% of max(1,t)^3 at t = 1/2, 2".to_string(),
    );
    check(
        &mut checks,
        "estimators-agree",
        agree_ok,
        "truncation and series within 10% of each other".to_string(),
    );
    check(
        &mut checks,
        "fox-route-agrees",
        fox_ok,
        "presentation route within combined tolerance of the reduced route".to_string(),
    );
    Ok(finish("trefoil", checks))
}
