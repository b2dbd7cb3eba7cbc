//! Classical Burau matrices over Laurent polynomials, and the recovery map
//! from symbolic operator matrices.
//!
//! Conventions: matrices act on column vectors from the left, and column `j`
//! of the unreduced matrix is built from the image of the `j`-th generator,
//! so `burau(a.concat(&b)) = burau(b) * burau(a)` (an anti-homomorphism).

use num_bigint::BigInt;
use num_traits::One;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::l2::OperatorMatrix;
use crate::laurent::{LaurentMatrix, LaurentPoly};


/// Unreduced Burau matrix: the `(i,j)` entry is `T^phi(d h_b(x_j) / d x_i)`,
/// where `phi` maps every free generator to `T`.
///
/// Computed per column in one scan of the image word: the letter `x_i` at a
/// position with prefix exponent sum `s` contributes `+T^s` to row `i`, and
/// `x_i^-1` contributes `-T^(s-1)`.
pub fn burau(b: &BraidWord) -> LaurentMatrix {
    let n = b.strands() as usize;
    let mut m = LaurentMatrix::zeros(n, n);
    for j in 1..=n as u32 {
        let image = b.act_on_x(j);
        let mut phi: i64 = 0;
        for &l in image.letters() {
            if l > 0 {
                m.get_mut(l as usize - 1, j as usize - 1).add_term(phi, BigInt::one());
                phi += 1;
            } else {
                phi -= 1;
                m.get_mut(-l as usize - 1, j as usize - 1).add_term(phi, -BigInt::one());
            }
        }
    }
    m
}

/// Reduced Burau matrix of size `(n-1) x (n-1)`: the same Fox-derivative
/// construction in the alphabet `g_j = x1 .. xj`, where `phi(g_i) = i`.
/// Letters `g_n` in image words contribute to prefix grades but index no row.
pub fn reduced_burau(b: &BraidWord) -> Result<LaurentMatrix> {
    let n = b.strands() as usize;
    if n < 2 {
        return Err(Error::InvalidParameter("reduced Burau needs at least 2 strands".into()));
    }
    let mut m = LaurentMatrix::zeros(n - 1, n - 1);
    for j in 1..n as u32 {
        let image = b.act_on_g(j);
        let mut phi: i64 = 0;
        for &l in image.letters() {
            let i = l.unsigned_abs() as usize;
            if l > 0 {
                if i < n {
                    m.get_mut(i - 1, j as usize - 1).add_term(phi, BigInt::one());
                }
                phi += i as i64;
            } else {
                phi -= i as i64;
                if i < n {
                    m.get_mut(i - 1, j as usize - 1).add_term(phi, -BigInt::one());
                }
            }
        }
    }
    Ok(m)
}

/// Recovery of the classical matrix from a symbolic operator matrix: every
/// group-ring entry is specialized through `g -> T^psi(g)` entrywise.
/// Applied to the L2-Burau matrix of a braid under any admissible map, this
/// returns exactly the braid's classical Burau matrix.
pub fn theta(m: &OperatorMatrix) -> Result<LaurentMatrix> {
    let mut out = LaurentMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let mut p = LaurentPoly::zero();
            for (w, c) in m.entry(i, j).terms() {
                p.add_term(m.oracle().psi(w)?, c.clone());
            }
            *out.get_mut(i, j) = p;
        }
    }
    Ok(out)
}
