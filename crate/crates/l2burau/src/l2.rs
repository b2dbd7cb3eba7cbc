//! Symbolic L2-Burau and reduced L2-Burau matrices over group rings.
//!
//! An [`OperatorMatrix`] entry `a = sum of c_w * w` stands, at a parameter
//! `t > 0`, for the bounded operator `sum of c_w * t^psi(w) * R_w` on
//! `l2(G)`, where `R_w` is right multiplication. Matrices act on column
//! vectors from the left. Because `R_a . R_b = R_{ba}`, operator composition
//! is the opposite-ring matrix product: `(M . N)_{ik} = sum_j N_{jk} M_{ij}`.
//! The parameter `t` is never stored; it is recovered from the oracle's
//! weight homomorphism at evaluation time.

use num_bigint::BigInt;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::fox::fox_derivative;
use crate::groups::{GammaMap, GroupOracle};
use crate::ring::GroupRingElt;

/// Which generating family indexes the rows and columns of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTag {
    /// Free generators `x1 .. xn`.
    X,
    /// The generators `g_j = x1 .. xj`, all `n` of them.
    G,
    /// The first `n-1` of the `g`-generators (the reduced subspace).
    Reduced,
}

/// A matrix of group-ring elements over a fixed oracle, with all entry
/// terms kept in the oracle's normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    oracle: GroupOracle,
    basis: BasisTag,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElt>,
}

impl OperatorMatrix {
    pub fn zeros(oracle: GroupOracle, basis: BasisTag, rows: usize, cols: usize) -> Self {
        OperatorMatrix {
            oracle,
            basis,
            rows,
            cols,
            entries: vec![GroupRingElt::zero(); rows * cols],
        }
    }

    pub fn identity(oracle: GroupOracle, basis: BasisTag, n: usize) -> Self {
        let mut m = OperatorMatrix::zeros(oracle, basis, n, n);
        for i in 0..n {
            m.entries[i * n + i] = GroupRingElt::one();
        }
        m
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

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElt {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, e: GroupRingElt) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.entry(i, j);
                    if i == j {
                        *e == GroupRingElt::one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_shape(rhs)?;
        let mut out = self.clone();
        for (e, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *e = e.sub(r);
        }
        Ok(out)
    }

    /// `self - Id`, for square matrices.
    pub fn sub_identity(&self) -> Result<OperatorMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "subtracting identity from {}x{}",
                self.rows, self.cols
            )));
        }
        let id = OperatorMatrix::identity(self.oracle.clone(), self.basis, self.rows);
        self.sub(&id)
    }

    /// Entrywise integer scaling.
    pub fn scale(&self, c: &BigInt) -> OperatorMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scale(c);
        }
        out
    }

    fn check_same_shape(&self, rhs: &OperatorMatrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
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
        if self.basis != rhs.basis {
            return Err(Error::DimensionMismatch("matrices use different bases".into()));
        }
        Ok(())
    }

    /// Operator composition `self . rhs` (apply `rhs` first, then `self`):
    /// the opposite-ring product with entries
    /// `(self . rhs)_{ik} = sum_j rhs_{jk} * self_{ij}`, renormalized.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
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
        if self.basis != rhs.basis {
            return Err(Error::DimensionMismatch("matrices use different bases".into()));
        }
        let mut out =
            OperatorMatrix::zeros(self.oracle.clone(), self.basis, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let m_ij = self.entry(i, j);
                if m_ij.is_zero() {
                    continue;
                }
                for k in 0..rhs.cols {
                    let n_jk = rhs.entry(j, k);
                    if n_jk.is_zero() {
                        continue;
                    }
                    let mut acc = out.entries[i * out.cols + k].clone();
                    for (u, a) in n_jk.terms() {
                        for (v, b) in m_ij.terms() {
                            acc.add_term(self.oracle.normalize(&u.concat(v))?, a * b);
                        }
                    }
                    out.entries[i * out.cols + k] = acc;
                }
            }
        }
        Ok(out)
    }
}

/// Operator composition as a free function; see [`OperatorMatrix::compose`].
pub fn compose(m: &OperatorMatrix, k: &OperatorMatrix) -> Result<OperatorMatrix> {
    m.compose(k)
}

/// The L2-Burau matrix of a braid under a map `gamma`: the `(i,j)` entry is
/// `gamma(d h_b(x_j) / d x_i)` as a normalized group-ring element.
pub fn l2_burau(b: &BraidWord, gamma: &GammaMap) -> Result<OperatorMatrix> {
    let n = b.strands();
    check_rank(gamma, n)?;
    let mut m =
        OperatorMatrix::zeros(gamma.target().clone(), BasisTag::X, n as usize, n as usize);
    for j in 1..=n {
        let image = b.act_on_x(j);
        for i in 1..=n {
            let entry = gamma.apply(&fox_derivative(&image, i))?;
            m.set_entry(i as usize - 1, j as usize - 1, entry);
        }
    }
    Ok(m)
}

/// The reduced L2-Burau matrix: Fox derivatives taken directly in the
/// `g`-alphabet, restricted to the first `n-1` generators.
pub fn reduced_l2_burau(b: &BraidWord, gamma: &GammaMap) -> Result<OperatorMatrix> {
    let n = b.strands();
    if n < 2 {
        return Err(Error::InvalidParameter("reduced map needs at least 2 strands".into()));
    }
    check_rank(gamma, n)?;
    let mut m = OperatorMatrix::zeros(
        gamma.target().clone(),
        BasisTag::Reduced,
        n as usize - 1,
        n as usize - 1,
    );
    for j in 1..n {
        let image = b.act_on_g(j);
        for i in 1..n {
            let entry = gamma.apply_g_elt(&fox_derivative(&image, i))?;
            m.set_entry(i as usize - 1, j as usize - 1, entry);
        }
    }
    Ok(m)
}

/// The full `n x n` matrix in the `g`-basis. Because `g_n` is fixed by every
/// braid, its last column is always the standard basis column, giving the
/// block shape `[[reduced, 0], [V, 1]]`.
pub fn g_basis_l2_burau(b: &BraidWord, gamma: &GammaMap) -> Result<OperatorMatrix> {
    let n = b.strands();
    check_rank(gamma, n)?;
    let mut m =
        OperatorMatrix::zeros(gamma.target().clone(), BasisTag::G, n as usize, n as usize);
    for j in 1..=n {
        let image = b.act_on_g(j);
        for i in 1..=n {
            let entry = gamma.apply_g_elt(&fox_derivative(&image, i))?;
            m.set_entry(i as usize - 1, j as usize - 1, entry);
        }
    }
    Ok(m)
}

/// The map `gamma . h_b`, given by the images `gamma(h_b(x_i))`.
pub fn precompose_gamma(gamma: &GammaMap, b: &BraidWord) -> Result<GammaMap> {
    let n = b.strands();
    check_rank(gamma, n)?;
    let images = (1..=n)
        .map(|j| gamma.apply_word(&b.act_on_x(j)))
        .collect::<Result<Vec<_>>>()?;
    GammaMap::new(n, gamma.target().clone(), images)
}

fn check_rank(gamma: &GammaMap, strands: u32) -> Result<()> {
    if gamma.source_rank() != strands {
        return Err(Error::AlphabetMismatch(format!(
            "map has source rank {} but the braid has {} strands",
            gamma.source_rank(),
            strands
        )));
    }
    Ok(())
}
