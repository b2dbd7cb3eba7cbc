//! Integer Laurent polynomials in one variable and matrices over them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial with arbitrary-precision integer coefficients,
/// stored as a sorted exponent-to-coefficient association without zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    /// The variable T.
    pub fn var() -> Self {
        LaurentPoly::monomial(1, BigInt::one())
    }

    /// The single term `c * T^exp`.
    pub fn monomial(exp: i64, c: BigInt) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of `T^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `c * T^exp` in place, dropping cancelled terms.
    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly::zero().sub(self)
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in self.terms() {
            for (&e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Specialization T -> 1 (the sum of all coefficients).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Renders with the given variable name, e.g. `"1 - T + 2 T^-1"`.
    pub fn display(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if e != 0 {
                if show_coeff {
                    out.push(' ');
                }
                out.push(var);
                if e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('T'))
    }
}

/// A dense matrix of Laurent polynomials, row-major, 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LaurentMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = LaurentPoly::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self == &LaurentMatrix::identity(self.rows)
    }

    /// Ordinary matrix product `self * rhs`.
    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = LaurentMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let e = out.get_mut(i, j);
                    *e = e.add(&prod);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Laplace expansion along the first column; intended for
    /// the small matrices this crate produces (n <= 6).
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(det_rec(self))
    }

    /// Integer matrix obtained by specializing T -> 1.
    pub fn eval_at_one(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_at_one()).collect())
            .collect()
    }
}

fn det_rec(m: &LaurentMatrix) -> LaurentPoly {
    let n = m.rows();
    if n == 0 {
        return LaurentPoly::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = LaurentPoly::zero();
    for i in 0..n {
        let a = m.get(i, 0);
        if a.is_zero() {
            continue;
        }
        let mut minor = LaurentMatrix::zeros(n - 1, n - 1);
        for r in 0..n - 1 {
            let src = if r < i { r } else { r + 1 };
            for c in 0..n - 1 {
                *minor.get_mut(r, c) = m.get(src, c + 1).clone();
            }
        }
        let cof = a.mul(&det_rec(&minor));
        acc = if i % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}
