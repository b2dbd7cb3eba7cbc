//! Fuglede-Kadison determinant estimation for matrices over group rings.
//!
//! A square [`OperatorMatrix`] is first evaluated at a parameter `t > 0`:
//! every term `c * w` becomes `c * t^psi(w) * R_w` with an exact rational
//! coefficient, so the Gram operator `S = F* F` is computed symbolically
//! with no rounding. Two independent estimators then approximate
//! `det = exp((1/2) * Tr ln S)`, where `Tr` is the von Neumann trace
//! (the sum of the identity-word coefficients on the diagonal):
//!
//! * truncation: compress `S` to the span of a word ball and evaluate the
//!   localized traces `<ln(S_B) d_(i,e), d_(i,e)>` by Lanczos quadrature,
//!   over a ladder of increasing radii;
//! * series: expand `ln S = ln b + ln(Id - X)` with `X = Id - S/b` for an
//!   l1 norm bound `b`, and sum exact rational traces of powers of `X`.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GroupOracle, OracleKind};
use crate::l2::OperatorMatrix;
use crate::word::Word;

/// Budgets for the determinant estimators.
#[derive(Clone, Debug)]
pub struct DetParams {
    /// Ball radius for the truncation estimator; `None` picks a default
    /// suited to the oracle's growth rate.
    pub radius: Option<u32>,
    /// Number of power-series terms for the series estimator.
    pub series_order: usize,
    /// Maximum Lanczos iterations per localized trace.
    pub lanczos_steps: usize,
    /// Maximum number of ball elements before giving up.
    pub ball_cap: usize,
    /// Maximum number of symbolic terms in a series power before giving up.
    pub term_cap: usize,
}

impl Default for DetParams {
    fn default() -> Self {
        DetParams {
            radius: None,
            series_order: 40,
            lanczos_steps: 200,
            ball_cap: 2_000_000,
            term_cap: 1_000_000,
        }
    }
}

/// Default truncation radius per oracle: abelian balls grow polynomially so
/// large radii stay cheap; free, braid and torus-knot balls grow
/// exponentially.
pub fn default_radius(oracle: &GroupOracle) -> u32 {
    match *oracle.kind() {
        OracleKind::FreeAbelian { rank: 1 } => 2000,
        OracleKind::FreeAbelian { rank: 2 } => 60,
        OracleKind::FreeAbelian { rank: 3 } => 14,
        _ => 8,
    }
}

/// Which estimator produced a determinant value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetMethod {
    Truncation,
    Series,
}

/// One rung of the truncation ladder.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub radius: u32,
    pub ball_size: usize,
    pub value: f64,
    /// Smallest Ritz value seen at this radius, a proxy for the smallest
    /// singular value of the compression.
    pub min_ritz: f64,
}

/// A determinant estimate with its convergence history.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DetEstimate {
    pub value: f64,
    pub method: DetMethod,
    pub flags: Vec<String>,
    pub diagnostics: Vec<String>,
    pub radius_estimates: Vec<RadiusEstimate>,
    pub series_partials: Vec<f64>,
    pub cross_deviation: Option<f64>,
}

/// Parses a positive rational parameter: an integer `"2"`, a decimal
/// `"0.25"`, or a fraction `"3/7"`.
pub fn parse_positive_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |txt: &str| -> Result<BigInt> {
        txt.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid number `{txt}`")))
    };
    let value = if let Some((num, den)) = s.split_once('/') {
        let d = parse_int(den)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        BigRational::new(parse_int(num)?, d)
    } else if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid decimal `{s}`")));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let int_part = parse_int(if int.is_empty() { "0" } else { int })?;
        let frac_part = parse_int(frac)?;
        let signed_frac = if int.starts_with('-') { -frac_part } else { frac_part };
        BigRational::new(int_part * &scale + signed_frac, scale)
    } else {
        BigRational::from(parse_int(s)?)
    };
    if value <= BigRational::zero() {
        return Err(Error::InvalidParameter(format!(
            "parameter t must be positive, got {s}"
        )));
    }
    Ok(value)
}

/// Converts an exact rational to the nearest `f64`, splitting off binary
/// exponents first so that huge numerators or denominators cannot overflow
/// on their own.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    fn split(x: &BigInt) -> (f64, i64) {
        let bits = x.bits();
        if bits <= 512 {
            (x.to_f64().unwrap_or(0.0), 0)
        } else {
            let shift = bits - 512;
            ((x >> shift).to_f64().unwrap_or(0.0), shift as i64)
        }
    }
    if r.is_zero() {
        return 0.0;
    }
    let (n, ne) = split(r.numer());
    let (d, de) = split(r.denom());
    let exp = (ne - de).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    (n / d) * 2f64.powi(exp)
}

/// A matrix over the rational group ring, produced by evaluating an
/// [`OperatorMatrix`] at a parameter `t`: the grading power `t^psi(w)` is
/// absorbed into the coefficient of each word.
#[derive(Clone, Debug)]
pub struct EvalMatrix {
    oracle: GroupOracle,
    rows: usize,
    cols: usize,
    entries: Vec<HashMap<Word, BigRational>>,
}

fn add_rat_term(map: &mut HashMap<Word, BigRational>, w: Word, c: BigRational) {
    use std::collections::hash_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl EvalMatrix {
    fn zeros(oracle: GroupOracle, rows: usize, cols: usize) -> Self {
        EvalMatrix {
            oracle,
            rows,
            cols,
            entries: vec![HashMap::new(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn oracle(&self) -> &GroupOracle {
        &self.oracle
    }

    /// The terms of entry `(i, j)` in shortlex word order.
    pub fn entry_terms(&self, i: usize, j: usize) -> Vec<(&Word, &BigRational)> {
        let mut out: Vec<_> = self.entries[i * self.cols + j].iter().collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }

    fn num_terms(&self) -> usize {
        self.entries.iter().map(|e| e.len()).sum()
    }

    /// The adjoint operator matrix: transpose entries and invert words.
    /// Coefficients already carry their `t` powers, so this is the true
    /// Hilbert-space adjoint at the evaluation parameter.
    pub fn adjoint(&self) -> Result<EvalMatrix> {
        let mut out = EvalMatrix::zeros(self.oracle.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut map = HashMap::new();
                for (w, c) in &self.entries[i * self.cols + j] {
                    add_rat_term(&mut map, self.oracle.normalize(&w.inverse())?, c.clone());
                }
                out.entries[j * self.rows + i] = map;
            }
        }
        Ok(out)
    }

    /// Operator composition `self . rhs`, the opposite-ring matrix product;
    /// see [`OperatorMatrix::compose`] for the convention.
    pub fn compose(&self, rhs: &EvalMatrix) -> Result<EvalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "composing {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.oracle != rhs.oracle {
            return Err(Error::OracleMismatch(format!(
                "{} vs {}",
                self.oracle.describe(),
                rhs.oracle.describe()
            )));
        }
        let mut out = EvalMatrix::zeros(self.oracle.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let m_ij = &self.entries[i * self.cols + j];
                if m_ij.is_empty() {
                    continue;
                }
                for k in 0..rhs.cols {
                    let n_jk = &rhs.entries[j * rhs.cols + k];
                    if n_jk.is_empty() {
                        continue;
                    }
                    for (u, a) in n_jk {
                        for (v, b) in m_ij {
                            add_rat_term(
                                &mut out.entries[i * rhs.cols + k],
                                self.oracle.multiply(u, v)?,
                                a * b,
                            );
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The Gram operator `self* . self`.
    pub fn gram(&self) -> Result<EvalMatrix> {
        self.adjoint()?.compose(self)
    }

    /// Von Neumann trace: the sum over the diagonal of the coefficient of
    /// the identity word, an exact rational.
    pub fn vn_trace(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let e = Word::identity();
        let mut acc = BigRational::zero();
        for i in 0..self.rows {
            if let Some(c) = self.entries[i * self.cols + i].get(&e) {
                acc += c;
            }
        }
        Ok(acc)
    }

    /// The l1 norm bound `max over columns j of sum_i |entry (i,j)|_1`,
    /// an upper bound for the operator norm of a self-adjoint matrix.
    pub fn norm_bound(&self) -> BigRational {
        let mut best = BigRational::zero();
        for j in 0..self.cols {
            let mut col = BigRational::zero();
            for i in 0..self.rows {
                for c in self.entries[i * self.cols + j].values() {
                    col += c.abs();
                }
            }
            if col > best {
                best = col;
            }
        }
        best
    }
}

/// Evaluates a symbolic operator matrix at `t > 0`, folding `t^psi(w)` into
/// exact rational coefficients.
pub fn evaluate(m: &OperatorMatrix, t: &BigRational) -> Result<EvalMatrix> {
    if *t <= BigRational::zero() {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    let oracle = m.oracle().clone();
    let mut out = EvalMatrix::zeros(oracle.clone(), m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let mut map = HashMap::new();
            for (w, c) in m.entry(i, j).terms() {
                let grade = oracle.psi(w)?;
                let grade = i32::try_from(grade).map_err(|_| {
                    Error::GradingViolation(format!("grading {grade} out of range"))
                })?;
                let coeff = BigRational::from(c.clone()) * t.pow(grade);
                add_rat_term(&mut map, w.clone(), coeff);
            }
            out.entries[i * m.cols() + j] = map;
        }
    }
    Ok(out)
}

/// Symbolic adjoint of an operator matrix: transpose and invert words.
/// Evaluating it at `1/t` gives the true adjoint of the evaluation at `t`.
pub fn adjoint(m: &OperatorMatrix) -> Result<OperatorMatrix> {
    let oracle = m.oracle().clone();
    let mut out = OperatorMatrix::zeros(oracle.clone(), m.basis(), m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let mut e = crate::ring::GroupRingElt::zero();
            for (w, c) in m.entry(i, j).terms() {
                e.add_term(oracle.normalize(&w.inverse())?, c.clone());
            }
            out.set_entry(j, i, e);
        }
    }
    Ok(out)
}

struct CooMatrix {
    dim: usize,
    rows: Vec<u32>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl CooMatrix {
    fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        for ((&r, &c), &v) in self.rows.iter().zip(&self.cols).zip(&self.vals) {
            y[r as usize] += v * x[c as usize];
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lanczos quadrature for `<f(A) e_start, e_start>` with `f = ln` floored at
/// `floor`. Returns the local estimate and the smallest Ritz value.
fn lanczos_local_log(
    a: &CooMatrix,
    start: usize,
    steps: usize,
    breakdown_tol: f64,
    floor: f64,
) -> (f64, f64) {
    let steps = steps.max(1);
    let dim = a.dim;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut v = vec![0.0; dim];
    v[start] = 1.0;
    basis.push(v);
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; dim];
    for _ in 0..steps {
        let vj = basis.last().unwrap();
        a.matvec(vj, &mut w);
        let alpha = dot(&w, vj);
        alphas.push(alpha);
        for (wi, vi) in w.iter_mut().zip(vj) {
            *wi -= alpha * vi;
        }
        if let Some(beta) = betas.last() {
            let prev = &basis[basis.len() - 2];
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= beta * pi;
            }
        }
        // Full reorthogonalization, two passes.
        for _ in 0..2 {
            for u in &basis {
                let c = dot(&w, u);
                if c != 0.0 {
                    for (wi, ui) in w.iter_mut().zip(u) {
                        *wi -= c * ui;
                    }
                }
            }
        }
        let beta = dot(&w, &w).sqrt();
        if beta <= breakdown_tol {
            break;
        }
        betas.push(beta);
        basis.push(w.iter().map(|x| x / beta).collect());
    }
    let m = alphas.len();
    let mut tri = DMatrix::<f64>::zeros(m, m);
    for (i, &al) in alphas.iter().enumerate() {
        tri[(i, i)] = al;
    }
    for (i, &be) in betas.iter().enumerate().take(m.saturating_sub(1)) {
        tri[(i, i + 1)] = be;
        tri[(i + 1, i)] = be;
    }
    let eig = SymmetricEigen::new(tri);
    let mut local = 0.0;
    let mut min_ritz = f64::INFINITY;
    for l in 0..m {
        let lambda = eig.eigenvalues[l];
        min_ritz = min_ritz.min(lambda);
        let weight = eig.eigenvectors[(0, l)].powi(2);
        local += weight * lambda.max(floor).ln();
    }
    (local, min_ritz)
}

/// Estimates the determinant by compressing the Gram operator to word balls
/// of increasing radius and applying Lanczos log quadrature to the localized
/// trace vectors.
pub fn fk_det_truncation(
    m: &OperatorMatrix,
    t: &BigRational,
    params: &DetParams,
) -> Result<DetEstimate> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let k = m.rows();
    let oracle = m.oracle().clone();
    let f = evaluate(m, t)?;
    let s = f.gram()?;
    let bound = ratio_to_f64(&s.norm_bound());
    let floor = 1e-13 * (1.0 + bound);
    let breakdown_tol = 1e-12 * (1.0 + bound);

    let radius = params.radius.unwrap_or_else(|| default_radius(&oracle)).max(1);
    let mut ladder: Vec<u32> = [radius / 8, radius / 4, radius / 2, radius]
        .iter()
        .map(|&r| r.max(1))
        .collect();
    ladder.dedup();

    let mut diagnostics = Vec::new();
    let mut radius_estimates = Vec::new();
    for &rho in &ladder {
        let ball = oracle.ball(rho, params.ball_cap)?;
        let nb = ball.len();
        let words: Vec<&Word> = ball.iter().map(|(w, _)| w).collect();
        let index: HashMap<&Word, usize> =
            words.iter().enumerate().map(|(idx, w)| (*w, idx)).collect();
        let e = Word::identity();
        let id_idx = *index
            .get(&e)
            .ok_or_else(|| Error::Internal("ball does not contain the identity".into()))?;

        let mut coo = CooMatrix {
            dim: k * nb,
            rows: Vec::new(),
            cols: Vec::new(),
            vals: Vec::new(),
        };
        for i in 0..k {
            for j in 0..k {
                for (w, c) in s.entry_terms(i, j) {
                    let cf = ratio_to_f64(c);
                    for (ui, u) in words.iter().enumerate() {
                        let v = oracle.multiply(u, w)?;
                        if let Some(&vi) = index.get(&v) {
                            coo.rows.push((i * nb + vi) as u32);
                            coo.cols.push((j * nb + ui) as u32);
                            coo.vals.push(cf);
                        }
                    }
                }
            }
        }

        let mut ln_total = 0.0;
        let mut min_ritz = f64::INFINITY;
        for i in 0..k {
            let (local, ritz) = lanczos_local_log(
                &coo,
                i * nb + id_idx,
                params.lanczos_steps,
                breakdown_tol,
                floor,
            );
            ln_total += local;
            min_ritz = min_ritz.min(ritz);
        }
        let value = (0.5 * ln_total).exp();
        diagnostics.push(format!(
            "radius {rho}: ball {nb}, estimate {value:.9e}, min ritz {min_ritz:.3e}"
        ));
        radius_estimates.push(RadiusEstimate {
            radius: rho,
            ball_size: nb,
            value,
            min_ritz,
        });
    }

    let mut flags = Vec::new();
    if radius_estimates.len() >= 3 {
        let ritzes: Vec<f64> = radius_estimates.iter().map(|r| r.min_ritz).collect();
        let balls: Vec<usize> = radius_estimates.iter().map(|r| r.ball_size).collect();
        let decaying = ritzes.windows(2).all(|w| w[1] < w[0])
            && balls.windows(2).all(|w| w[1] > w[0])
            && *ritzes.last().unwrap() < 1e-8 * (1.0 + bound);
        if decaying {
            flags.push("rank_deficiency_heuristic".to_string());
            diagnostics.push(
                "smallest Ritz value decays toward 0 as the ball grows; the operator \
                 looks non-injective"
                    .to_string(),
            );
        }
    }

    Ok(DetEstimate {
        value: radius_estimates.last().map(|r| r.value).unwrap_or(0.0),
        method: DetMethod::Truncation,
        flags,
        diagnostics,
        radius_estimates,
        series_partials: Vec::new(),
        cross_deviation: None,
    })
}

/// Estimates the determinant from the power series
/// `ln det = (1/2)(k ln b - sum_m Tr((Id - S/b)^m)/m)` with exact rational
/// traces.
pub fn fk_det_series(
    m: &OperatorMatrix,
    t: &BigRational,
    params: &DetParams,
) -> Result<DetEstimate> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let k = m.rows();
    let f = evaluate(m, t)?;
    let s = f.gram()?;
    let b = s.norm_bound();
    if b.is_zero() {
        return Ok(DetEstimate {
            value: 0.0,
            method: DetMethod::Series,
            flags: vec!["zero_operator".to_string()],
            diagnostics: vec!["the Gram operator is zero; the determinant is 0".to_string()],
            radius_estimates: Vec::new(),
            series_partials: Vec::new(),
            cross_deviation: None,
        });
    }

    let mut x = EvalMatrix::zeros(s.oracle.clone(), k, k);
    let e = Word::identity();
    for i in 0..k {
        for j in 0..k {
            let mut map = HashMap::new();
            if i == j {
                add_rat_term(&mut map, e.clone(), BigRational::from(BigInt::from(1)));
            }
            for (w, c) in &s.entries[i * k + j] {
                add_rat_term(&mut map, w.clone(), -(c / &b));
            }
            x.entries[i * k + j] = map;
        }
    }

    let ln_b = ratio_to_f64(&b).ln();
    let mut power = x.clone();
    let mut acc = BigRational::zero();
    let mut partials = Vec::with_capacity(params.series_order);
    for order in 1..=params.series_order {
        if order > 1 {
            power = power.compose(&x)?;
        }
        if power.num_terms() > params.term_cap {
            return Err(Error::TermCapExceeded { cap: params.term_cap });
        }
        let tr = power.vn_trace()?;
        acc += tr / BigRational::from(BigInt::from(order));
        let value = (0.5 * (k as f64 * ln_b - ratio_to_f64(&acc))).exp();
        partials.push(value);
    }

    let diagnostics = vec![
        format!("norm bound b = {:.6e}", ratio_to_f64(&b)),
        format!(
            "series of order {}: estimate {:.9e}",
            params.series_order,
            partials.last().copied().unwrap_or(0.0)
        ),
    ];
    Ok(DetEstimate {
        value: partials.last().copied().unwrap_or(0.0),
        method: DetMethod::Series,
        flags: Vec::new(),
        diagnostics,
        radius_estimates: Vec::new(),
        series_partials: partials,
        cross_deviation: None,
    })
}

/// Runs both estimators: the truncation value is primary, the series value
/// supplies a cross-method deviation diagnostic. An identically zero
/// operator short-circuits to the exact value 0, and the rank-deficiency
/// heuristic also reports 0 (the regular-determinant convention).
pub fn fk_det(m: &OperatorMatrix, t: &BigRational, params: &DetParams) -> Result<DetEstimate> {
    if m.is_zero() {
        return Ok(DetEstimate {
            value: 0.0,
            method: DetMethod::Truncation,
            flags: vec!["zero_operator".to_string()],
            diagnostics: vec![
                "the operator is identically zero; its regular determinant is 0".to_string(),
            ],
            radius_estimates: Vec::new(),
            series_partials: Vec::new(),
            cross_deviation: None,
        });
    }
    let mut est = fk_det_truncation(m, t, params)?;
    match fk_det_series(m, t, params) {
        Ok(series) => {
            let vt = est.value;
            let vs = series.value;
            let dev = (vt - vs).abs() / vt.abs().max(vs.abs()).max(1e-300);
            est.cross_deviation = Some(dev);
            est.series_partials = series.series_partials;
            est.diagnostics.extend(series.diagnostics);
            est.diagnostics
                .push(format!("cross-method relative deviation {dev:.3e}"));
        }
        Err(Error::TermCapExceeded { cap }) => {
            est.flags.push("series_skipped_term_cap".to_string());
            est.diagnostics.push(format!(
                "series estimator skipped: symbolic power exceeded {cap} terms"
            ));
        }
        Err(other) => return Err(other),
    }
    if est.flags.iter().any(|f| f == "rank_deficiency_heuristic") {
        est.diagnostics.push(format!(
            "reporting 0 instead of the raw estimate {:.3e}",
            est.value
        ));
        est.value = 0.0;
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::l2::BasisTag;
    use crate::ring::GroupRingElt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn one_by_one(oracle: GroupOracle, entry: GroupRingElt) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(oracle, BasisTag::X, 1, 1);
        m.set_entry(0, 0, entry);
        m
    }

    /// `1 - x1` over the given oracle.
    fn one_minus_gen(oracle: GroupOracle) -> OperatorMatrix {
        let e = GroupRingElt::one().sub(&GroupRingElt::from_word(Word::generator(1)));
        one_by_one(oracle, e)
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_positive_rational("2").unwrap(), rat(2, 1));
        assert_eq!(parse_positive_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_positive_rational("3/7").unwrap(), rat(3, 7));
        assert_eq!(parse_positive_rational(" 4.50 ").unwrap(), rat(9, 2));
        assert!(parse_positive_rational("0").is_err());
        assert!(parse_positive_rational("-2").is_err());
        assert!(parse_positive_rational("1/0").is_err());
        assert!(parse_positive_rational("2.x").is_err());
    }

    #[test]
    fn ratio_to_f64_handles_huge_values() {
        let huge = BigInt::from(3u32).pow(900u32);
        let r = BigRational::new(huge.clone() * 2, huge);
        assert!((ratio_to_f64(&r) - 2.0).abs() < 1e-12);
        assert_eq!(ratio_to_f64(&BigRational::zero()), 0.0);
        assert!((ratio_to_f64(&rat(-7, 4)) + 1.75).abs() < 1e-15);
    }

    #[test]
    fn gram_trace_of_one_minus_gen() {
        // (1 - g)* (1 - g) has von Neumann trace 1 + t^2.
        let m = one_minus_gen(GroupOracle::free(1).unwrap());
        for t in [rat(2, 1), rat(1, 2), rat(3, 7)] {
            let s = evaluate(&m, &t).unwrap().gram().unwrap();
            assert_eq!(s.vn_trace().unwrap(), BigRational::from(BigInt::from(1)) + &t * &t);
        }
    }

    #[test]
    fn gram_terms_of_one_minus_gen() {
        let m = one_minus_gen(GroupOracle::free(1).unwrap());
        let s = evaluate(&m, &rat(2, 1)).unwrap().gram().unwrap();
        let terms = s.entry_terms(0, 0);
        assert_eq!(terms.len(), 3);
        let coeff = |w: &Word| -> BigRational {
            s.entries[0].get(w).cloned().unwrap_or_else(BigRational::zero)
        };
        assert_eq!(coeff(&Word::identity()), rat(5, 1));
        assert_eq!(coeff(&Word::generator(1)), rat(-2, 1));
        assert_eq!(coeff(&Word::generator(1).inverse()), rat(-2, 1));
    }

    #[test]
    fn truncation_integer_oracle() {
        let m = one_minus_gen(GroupOracle::free_abelian(1).unwrap());
        let params = DetParams { radius: Some(64), ..DetParams::default() };
        for (t, expect) in [
            (rat(2, 1), 2.0),
            (rat(4, 1), 4.0),
            (rat(1, 2), 1.0),
            (rat(1, 4), 1.0),
        ] {
            let est = fk_det_truncation(&m, &t, &params).unwrap();
            assert!(
                (est.value - expect).abs() < 1e-5 * expect,
                "t = {t}: got {}, want {expect}",
                est.value
            );
            assert!(est.flags.is_empty());
            assert!(!est.diagnostics.is_empty());
        }
    }

    #[test]
    fn truncation_free_oracle() {
        let m = one_minus_gen(GroupOracle::free(2).unwrap());
        let params = DetParams { radius: Some(8), ..DetParams::default() };
        for (t, expect) in [(rat(2, 1), 2.0), (rat(1, 4), 1.0)] {
            let est = fk_det_truncation(&m, &t, &params).unwrap();
            assert!(
                (est.value - expect).abs() < 1e-3 * expect,
                "t = {t}: got {}, want {expect}",
                est.value
            );
        }
    }

    #[test]
    fn truncation_increments_decrease() {
        let m = one_minus_gen(GroupOracle::free(2).unwrap());
        let params = DetParams { radius: Some(8), ..DetParams::default() };
        let est = fk_det_truncation(&m, &rat(2, 1), &params).unwrap();
        let values: Vec<f64> = est.radius_estimates.iter().map(|r| r.value).collect();
        assert!(values.len() >= 3);
        let incs: Vec<f64> = values.windows(2).map(|w| (w[0] - w[1]).abs()).collect();
        for pair in incs.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9, "increments {incs:?}");
        }
    }

    #[test]
    fn series_integer_oracle() {
        let m = one_minus_gen(GroupOracle::free_abelian(1).unwrap());
        let params = DetParams::default();
        for (t, expect, tol) in [
            (rat(2, 1), 2.0, 0.02),
            (rat(4, 1), 4.0, 0.002),
            (rat(1, 2), 1.0, 0.02),
            (rat(1, 4), 1.0, 0.002),
        ] {
            let est = fk_det_series(&m, &t, &params).unwrap();
            assert!(
                (est.value - expect).abs() < tol * expect,
                "t = {t}: got {}, want {expect}",
                est.value
            );
        }
    }

    #[test]
    fn series_partials_decrease() {
        let m = one_minus_gen(GroupOracle::free(2).unwrap());
        let est = fk_det_series(&m, &rat(2, 1), &DetParams::default()).unwrap();
        assert_eq!(est.series_partials.len(), 40);
        for pair in est.series_partials.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-12, "partials must decrease");
        }
    }

    #[test]
    fn series_term_cap() {
        let m = one_minus_gen(GroupOracle::free(2).unwrap());
        let params = DetParams { term_cap: 3, ..DetParams::default() };
        assert!(matches!(
            fk_det_series(&m, &rat(2, 1), &params),
            Err(Error::TermCapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn scaling_multiplies_determinant() {
        let m = one_minus_gen(GroupOracle::free_abelian(1).unwrap());
        let scaled = m.scale(&BigInt::from(3));
        let params = DetParams { radius: Some(48), ..DetParams::default() };
        let est = fk_det_truncation(&scaled, &rat(2, 1), &params).unwrap();
        assert!((est.value - 6.0).abs() < 1e-4, "got {}", est.value);
    }

    #[test]
    fn adjoint_pairs_with_reciprocal_parameter() {
        let m = one_minus_gen(GroupOracle::free_abelian(1).unwrap());
        let adj = adjoint(&m).unwrap();
        let params = DetParams { radius: Some(48), ..DetParams::default() };
        let a = fk_det_truncation(&m, &rat(2, 1), &params).unwrap();
        let b = fk_det_truncation(&adj, &rat(1, 2), &params).unwrap();
        assert!((a.value - b.value).abs() < 1e-6, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn adjoint_at_same_parameter_on_ungraded_words() {
        // With a weight-zero word the evaluation is independent of t, so the
        // symbolic adjoint already is the true adjoint.
        let oracle = GroupOracle::free(2).unwrap();
        let comm = Word::from_letters([1, 2, -1, -2]);
        let entry = GroupRingElt::from_term(Word::identity(), BigInt::from(2))
            .sub(&GroupRingElt::from_word(comm));
        let m = one_by_one(oracle, entry);
        let adj = adjoint(&m).unwrap();
        let params = DetParams { radius: Some(6), ..DetParams::default() };
        let a = fk_det_truncation(&m, &rat(2, 1), &params).unwrap();
        let b = fk_det_truncation(&adj, &rat(2, 1), &params).unwrap();
        assert!((a.value - b.value).abs() < 1e-9, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn torus_knot_shift_determinant() {
        // 1 + t^3 R_u with u = b^2 a^-1 b of grade 3 in the (2,3) torus knot
        // group: the determinant is max(1, t)^3.
        let oracle = GroupOracle::torus_knot(2, 3).unwrap();
        let u = Word::from_letters([2, 2, -1, 2]);
        assert_eq!(oracle.psi(&u).unwrap(), 3);
        let entry = GroupRingElt::one().add(&GroupRingElt::from_word(u));
        let m = one_by_one(oracle, entry);
        let params = DetParams { radius: Some(8), ..DetParams::default() };
        let est = fk_det_truncation(&m, &rat(2, 1), &params).unwrap();
        assert!((est.value - 8.0).abs() < 0.05, "got {}", est.value);
        let est = fk_det_truncation(&m, &rat(1, 2), &params).unwrap();
        assert!((est.value - 1.0).abs() < 0.05, "got {}", est.value);
    }

    #[test]
    fn dispatcher_cross_checks() {
        let m = one_minus_gen(GroupOracle::free_abelian(1).unwrap());
        let params = DetParams { radius: Some(64), ..DetParams::default() };
        let est = fk_det(&m, &rat(2, 1), &params).unwrap();
        assert_eq!(est.method, DetMethod::Truncation);
        let dev = est.cross_deviation.expect("cross deviation recorded");
        assert!(dev < 0.02, "deviation {dev}");
        assert!(!est.series_partials.is_empty());
        assert!(!est.diagnostics.is_empty());
    }

    #[test]
    fn dispatcher_zero_operator() {
        let m = OperatorMatrix::zeros(GroupOracle::free(2).unwrap(), BasisTag::X, 2, 2);
        let est = fk_det(&m, &rat(2, 1), &DetParams::default()).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.flags.iter().any(|f| f == "zero_operator"));
        assert!(!est.diagnostics.is_empty());
    }

    #[test]
    fn dispatcher_survives_series_term_cap() {
        let m = one_minus_gen(GroupOracle::free(2).unwrap());
        let params = DetParams {
            radius: Some(4),
            term_cap: 3,
            ..DetParams::default()
        };
        let est = fk_det(&m, &rat(2, 1), &params).unwrap();
        assert!(est.flags.iter().any(|f| f == "series_skipped_term_cap"));
        assert!(est.value > 1.0);
    }

    #[test]
    fn estimate_serde_round_trip() {
        let m = one_minus_gen(GroupOracle::free_abelian(1).unwrap());
        let params = DetParams { radius: Some(16), ..DetParams::default() };
        let est = fk_det(&m, &rat(2, 1), &params).unwrap();
        let json = serde_json::to_string(&est).unwrap();
        assert!(json.contains("\"method\":\"truncation\""));
        let back: DetEstimate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.value, est.value);
        assert_eq!(back.radius_estimates.len(), est.radius_estimates.len());
    }

    #[test]
    fn non_square_rejected() {
        let oracle = GroupOracle::free(1).unwrap();
        let m = OperatorMatrix::zeros(oracle, BasisTag::X, 1, 2);
        assert!(fk_det_truncation(&m, &rat(2, 1), &DetParams::default()).is_err());
        assert!(fk_det_series(&m, &rat(2, 1), &DetParams::default()).is_err());
    }
}
