//! L2-Alexander torsion of braid closures.
//!
//! A braid closure group has the deficiency-one presentation with
//! generators `g_1 .. g_n` and relators `h_b(g_j) g_j^-1` for `j < n`
//! (the `g_n` relator is automatically trivial). For a map `gamma` that
//! kills those relators, the torsion at `t` is the Fuglede-Kadison
//! determinant of `reduced L2-Burau minus Id` divided by `max(1,t)^n`.
//! The determinant is the primary output: at a single `t` the monomial
//! normalization is unobservable, so torsion values are defined up to a
//! power of `t`.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::fkdet::{fk_det, ratio_to_f64, DetEstimate, DetParams};
use crate::fox::fox_derivative;
use crate::groups::GammaMap;
use crate::l2::{reduced_l2_burau, BasisTag, OperatorMatrix};
use crate::word::Word;

/// The deficiency-one presentation data of a braid closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosurePresentation {
    pub braid: BraidWord,
    /// Relators `h_b(g_j) g_j^-1` for `j = 1 .. n-1`, in the `g`-alphabet.
    pub relators: Vec<Word>,
    /// Relators of the extended presentation with the axis meridian `x`
    /// (letter `n+1`): `h_b(g_j) x g_j^-1 x^-1` for every `j`.
    pub axis_relators: Vec<Word>,
}

/// Computes the closure presentation of a braid. The `g_n` relator must
/// freely reduce to the identity; anything else indicates a bug in the
/// braid action.
pub fn closure_presentation(b: &BraidWord) -> Result<ClosurePresentation> {
    let n = b.strands();
    let mut relators = Vec::with_capacity(n as usize - 1);
    let mut axis_relators = Vec::with_capacity(n as usize);
    let x = Word::generator(n + 1);
    for j in 1..=n {
        let image = b.act_on_g(j);
        let g_inv = Word::generator(j).inverse();
        let r = image.concat(&g_inv);
        if j == n {
            if !r.is_identity() {
                return Err(Error::Internal(format!(
                    "the g_{n} relator of {} is {}, not the identity",
                    b.display(),
                    r
                )));
            }
        } else {
            relators.push(r);
        }
        axis_relators.push(image.concat(&x).concat(&g_inv).concat(&x.inverse()));
    }
    Ok(ClosurePresentation {
        braid: b.clone(),
        relators,
        axis_relators,
    })
}

fn check_relators(gamma: &GammaMap, relators: &[Word]) -> Result<()> {
    for r in relators {
        let image = gamma.apply_g_word(r)?;
        if !image.is_identity() {
            return Err(Error::RelatorNotPreserved(format!(
                "relator {r} maps to {image}"
            )));
        }
    }
    Ok(())
}

/// One evaluation point of a torsion report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorsionPoint {
    /// The parameter as given, an exact rational.
    pub t: String,
    /// The parameter as a float, for plotting.
    pub t_value: f64,
    /// Determinant estimate of `reduced L2-Burau minus Id`.
    pub det: f64,
    /// Convergence and cross-check notes from the estimator.
    pub det_tolerance_diag: Vec<String>,
    /// `det / max(1,t)^n`, defined up to a power of `t`.
    pub torsion: f64,
}

/// Torsion estimates of a braid closure over a grid of parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorsionReport {
    pub braid: String,
    pub strands: u32,
    pub oracle: String,
    pub gamma_images: Vec<String>,
    pub points: Vec<TorsionPoint>,
}

/// Estimates the torsion of the closure of `b` under `gamma` at each `t`.
/// `gamma` must kill the closure relators.
pub fn torsion_determinant(
    b: &BraidWord,
    gamma: &GammaMap,
    ts: &[BigRational],
    params: &DetParams,
) -> Result<TorsionReport> {
    let presentation = closure_presentation(b)?;
    check_relators(gamma, &presentation.relators)?;
    let m = reduced_l2_burau(b, gamma)?.sub_identity()?;
    let n = b.strands() as i32;
    let points = ts
        .par_iter()
        .map(|t| {
            let est = fk_det(&m, t, params)?;
            let tf = ratio_to_f64(t);
            let mut diag = est.diagnostics.clone();
            diag.extend(est.flags.iter().map(|f| format!("flag: {f}")));
            Ok(TorsionPoint {
                t: t.to_string(),
                t_value: tf,
                det: est.value,
                det_tolerance_diag: diag,
                torsion: est.value / tf.max(1.0).powi(n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TorsionReport {
        braid: b.display(),
        strands: b.strands(),
        oracle: gamma.target().describe(),
        gamma_images: gamma.images().iter().map(|w| w.to_string()).collect(),
        points,
    })
}

/// The Fox matrix of the presentation's relators in the `g`-alphabet,
/// mapped through `gamma`: entry `(i, j)` is `gamma(d r_j / d g_i)`.
pub fn fox_matrix(p: &ClosurePresentation, gamma: &GammaMap) -> Result<OperatorMatrix> {
    let n = p.braid.strands();
    if gamma.source_rank() != n {
        return Err(Error::AlphabetMismatch(format!(
            "map has source rank {} but the braid has {} strands",
            gamma.source_rank(),
            n
        )));
    }
    let k = n as usize - 1;
    let mut m = OperatorMatrix::zeros(gamma.target().clone(), BasisTag::Reduced, k, k);
    for (j, r) in p.relators.iter().enumerate() {
        for i in 1..n {
            let entry = gamma.apply_g_elt(&fox_derivative(r, i))?;
            m.set_entry(i as usize - 1, j, entry);
        }
    }
    Ok(m)
}

/// Estimates the torsion through the presentation route: the determinant of
/// the relator Fox matrix divided by `max(1,t)^|phi(g_n)|`. Must agree with
/// [`torsion_determinant`] within estimator tolerance; the two routes share
/// no matrix-assembly code.
pub fn fox_torsion_from_presentation(
    p: &ClosurePresentation,
    gamma: &GammaMap,
    t: &BigRational,
    params: &DetParams,
) -> Result<DetEstimate> {
    check_relators(gamma, &p.relators)?;
    let m = fox_matrix(p, gamma)?;
    let mut est = fk_det(&m, t, params)?;
    let g_n = gamma
        .g_images()?
        .pop()
        .ok_or_else(|| Error::Internal("empty generator family".into()))?;
    let exponent = gamma.target().psi(&g_n)?.unsigned_abs() as i32;
    let scale = ratio_to_f64(t).max(1.0).powi(exponent);
    est.diagnostics.push(format!(
        "torsion normalization: determinant divided by max(1,t)^{exponent} = {scale:.6e}"
    ));
    est.value /= scale;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupOracle;
    use num_bigint::BigInt;

    fn braid(strands: u32, letters: &[i32]) -> BraidWord {
        BraidWord::new(strands, letters.iter().copied()).unwrap()
    }

    fn w(letters: &[i32]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// B_2 -> Z sending both strand generators to the single generator.
    fn unknot_gamma() -> GammaMap {
        let z = GroupOracle::free_abelian(1).unwrap();
        GammaMap::new(2, z, vec![w(&[1]), w(&[1])]).unwrap()
    }

    /// B_2 -> torus-knot(2,3) group killing the trefoil relator.
    fn trefoil_gamma() -> GammaMap {
        let oracle = GroupOracle::torus_knot(2, 3).unwrap();
        GammaMap::new(2, oracle, vec![w(&[-2, 1]), w(&[-1, 2, 2])]).unwrap()
    }

    #[test]
    fn presentation_relators() {
        let p = closure_presentation(&braid(2, &[1])).unwrap();
        assert_eq!(p.relators, vec![w(&[2, -1, -1])]);
        assert_eq!(
            p.axis_relators,
            vec![w(&[2, -1, 3, -1, -3]), w(&[2, 3, -2, -3])]
        );

        let p = closure_presentation(&braid(2, &[1, 1, 1])).unwrap();
        assert_eq!(p.relators, vec![w(&[2, 2, -1, -2, -1])]);

        let p = closure_presentation(&BraidWord::trivial(4)).unwrap();
        assert_eq!(p.relators.len(), 3);
        assert!(p.relators.iter().all(|r| r.is_identity()));
    }

    #[test]
    fn relator_check_rejects_bad_map() {
        // The identity of B_2 into the free group does not kill the unknot
        // relator.
        let free = GammaMap::identity(2).unwrap();
        let err = torsion_determinant(&braid(2, &[1]), &free, &[rat(2, 1)], &DetParams::default());
        assert!(matches!(err, Err(Error::RelatorNotPreserved(_))));
    }

    #[test]
    fn fox_matrix_is_reduced_burau_minus_identity() {
        for (b, gamma) in [
            (braid(2, &[1]), unknot_gamma()),
            (braid(2, &[1, 1, 1]), trefoil_gamma()),
        ] {
            let p = closure_presentation(&b).unwrap();
            let fox = fox_matrix(&p, &gamma).unwrap();
            let reduced = reduced_l2_burau(&b, &gamma).unwrap().sub_identity().unwrap();
            assert_eq!(fox, reduced);
        }
    }

    #[test]
    fn fox_matrix_ignores_right_monomial_factors() {
        // Multiplying every relator by a power of g_n changes no Fox
        // derivative with respect to g_1 .. g_{n-1}.
        let b = braid(2, &[1, 1, 1]);
        let gamma = trefoil_gamma();
        let p = closure_presentation(&b).unwrap();
        let fox = fox_matrix(&p, &gamma).unwrap();
        for k in [1i64, 2, -3] {
            let mut modified = p.clone();
            let tail = Word::generator(2).pow(k);
            for r in modified.relators.iter_mut() {
                *r = r.concat(&tail);
            }
            assert_eq!(fox_matrix(&modified, &gamma).unwrap(), fox);
        }
    }

    #[test]
    fn unknot_torsion_values() {
        let report = torsion_determinant(
            &braid(2, &[1]),
            &unknot_gamma(),
            &[rat(1, 2), rat(2, 1)],
            &DetParams { radius: Some(64), ..DetParams::default() },
        )
        .unwrap();
        assert_eq!(report.strands, 2);
        let half = &report.points[0];
        assert!((half.det - 1.0).abs() < 0.05, "det {}", half.det);
        assert!((half.torsion - 1.0).abs() < 0.05, "torsion {}", half.torsion);
        let two = &report.points[1];
        assert!((two.det - 2.0).abs() < 0.1, "det {}", two.det);
        assert!((two.torsion - 0.5).abs() < 0.025, "torsion {}", two.torsion);
    }

    #[test]
    fn unlink_determinant_is_exactly_zero() {
        let report = torsion_determinant(
            &BraidWord::trivial(2),
            &GammaMap::identity(2).unwrap(),
            &[rat(2, 1)],
            &DetParams::default(),
        )
        .unwrap();
        assert_eq!(report.points[0].det, 0.0);
        assert_eq!(report.points[0].torsion, 0.0);
    }

    #[test]
    fn trefoil_determinant_and_both_routes() {
        let b = braid(2, &[1, 1, 1]);
        let gamma = trefoil_gamma();
        let params = DetParams { radius: Some(8), ..DetParams::default() };
        let report =
            torsion_determinant(&b, &gamma, &[rat(1, 2), rat(2, 1)], &params).unwrap();
        let half = &report.points[0];
        let two = &report.points[1];
        assert!((half.det - 1.0).abs() < 0.15, "det {}", half.det);
        assert!((two.det - 8.0).abs() < 1.2, "det {}", two.det);

        let p = closure_presentation(&b).unwrap();
        for (t, point) in [(rat(1, 2), half), (rat(2, 1), two)] {
            let fox = fox_torsion_from_presentation(&p, &gamma, &t, &params).unwrap();
            assert!(
                (fox.value - point.torsion).abs() < 0.1 * point.torsion.max(0.1),
                "fox {} vs reduced {}",
                fox.value,
                point.torsion
            );
        }
    }

    #[test]
    fn report_serializes() {
        let report = torsion_determinant(
            &braid(2, &[1]),
            &unknot_gamma(),
            &[rat(2, 1)],
            &DetParams { radius: Some(16), ..DetParams::default() },
        )
        .unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"torsion\""));
        assert!(json.contains("\"det_tolerance_diag\""));
        let back: TorsionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.points.len(), 1);
        assert_eq!(back.points[0].t, "2");
    }
}
