//! JSON data-transfer shapes for the symbolic matrix types.
//!
//! Laurent matrices serialize entries as lists of `[exponent, coefficient]`
//! pairs; operator matrices as lists of `[word, coefficient, grade]`
//! triples, words printed in the `x`-prefixed alphabet of the target
//! oracle. Coefficients are decimal strings so arbitrarily large integers
//! survive the trip. Every DTO parses back into the producing type.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GammaMap, GroupOracle, OracleKind};
use crate::l2::{BasisTag, OperatorMatrix};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::ring::GroupRingElt;
use crate::word::Word;

/// A word-problem oracle in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OracleDto {
    Free { rank: u32, weights: Vec<i64> },
    FreeAbelian { rank: u32, weights: Vec<i64> },
    Braid { strands: u32, weights: Vec<i64> },
    TorusKnot { p: u32, q: u32, weights: Vec<i64> },
}

impl From<&GroupOracle> for OracleDto {
    fn from(oracle: &GroupOracle) -> Self {
        let weights = oracle.weights().to_vec();
        match *oracle.kind() {
            OracleKind::Free { rank } => OracleDto::Free { rank, weights },
            OracleKind::FreeAbelian { rank } => OracleDto::FreeAbelian { rank, weights },
            OracleKind::Braid { strands } => OracleDto::Braid { strands, weights },
            OracleKind::TorusKnot { p, q } => OracleDto::TorusKnot { p, q, weights },
        }
    }
}

impl OracleDto {
    pub fn build(&self) -> Result<GroupOracle> {
        match self {
            OracleDto::Free { rank, weights } => {
                GroupOracle::free(*rank)?.with_weights(weights.clone())
            }
            OracleDto::FreeAbelian { rank, weights } => {
                GroupOracle::free_abelian(*rank)?.with_weights(weights.clone())
            }
            OracleDto::Braid { strands, weights } => {
                GroupOracle::braid(*strands)?.with_weights(weights.clone())
            }
            OracleDto::TorusKnot { p, q, weights } => {
                GroupOracle::torus_knot(*p, *q)?.with_weights(weights.clone())
            }
        }
    }
}

/// A matrix over Laurent polynomials; each entry is a list of
/// `[exponent, coefficient]` pairs in ascending exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentMatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<(i64, String)>>>,
}

impl From<&LaurentMatrix> for LaurentMatrixDto {
    fn from(m: &LaurentMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        m.get(i, j)
                            .terms()
                            .map(|(e, c)| (*e, c.to_string()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        LaurentMatrixDto {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }
}

impl LaurentMatrixDto {
    pub fn build(&self) -> Result<LaurentMatrix> {
        check_shape(self.rows, self.cols, &self.entries)?;
        let mut m = LaurentMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let mut p = LaurentPoly::zero();
                for (exp, coeff) in entry {
                    p.add_term(*exp, parse_bigint(coeff)?);
                }
                *m.get_mut(i, j) = p;
            }
        }
        Ok(m)
    }
}

/// A matrix over a group ring; each entry is a list of
/// `[word, coefficient, grade]` triples in shortlex word order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrixDto {
    pub oracle: OracleDto,
    pub basis: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<(String, String, i64)>>>,
}

fn basis_name(tag: BasisTag) -> &'static str {
    match tag {
        BasisTag::X => "x",
        BasisTag::G => "g",
        BasisTag::Reduced => "reduced",
    }
}

fn basis_tag(name: &str) -> Result<BasisTag> {
    match name {
        "x" => Ok(BasisTag::X),
        "g" => Ok(BasisTag::G),
        "reduced" => Ok(BasisTag::Reduced),
        other => Err(Error::Parse(format!("unknown basis `{other}`"))),
    }
}

impl OperatorMatrixDto {
    pub fn encode(m: &OperatorMatrix) -> Result<Self> {
        let oracle = m.oracle();
        let mut entries = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut row = Vec::with_capacity(m.cols());
            for j in 0..m.cols() {
                let mut terms = Vec::new();
                for (w, c) in m.entry(i, j).sorted_terms() {
                    terms.push((w.display('x'), c.to_string(), oracle.psi(w)?));
                }
                row.push(terms);
            }
            entries.push(row);
        }
        Ok(OperatorMatrixDto {
            oracle: OracleDto::from(oracle),
            basis: basis_name(m.basis()).to_string(),
            rows: m.rows(),
            cols: m.cols(),
            entries,
        })
    }

    pub fn build(&self) -> Result<OperatorMatrix> {
        check_shape(self.rows, self.cols, &self.entries)?;
        let oracle = self.oracle.build()?;
        let basis = basis_tag(&self.basis)?;
        let mut m = OperatorMatrix::zeros(oracle.clone(), basis, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, terms) in row.iter().enumerate() {
                let mut e = GroupRingElt::zero();
                for (word, coeff, grade) in terms {
                    let w = oracle.normalize(&Word::parse(word, 'x')?)?;
                    let actual = oracle.psi(&w)?;
                    if actual != *grade {
                        return Err(Error::GradingViolation(format!(
                            "word {word} has grade {actual}, serialized as {grade}"
                        )));
                    }
                    e.add_term(w, parse_bigint(coeff)?);
                }
                m.set_entry(i, j, e);
            }
        }
        Ok(m)
    }
}

/// A generator-image map in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaDto {
    pub source_rank: u32,
    pub target: OracleDto,
    pub images: Vec<String>,
}

impl From<&GammaMap> for GammaDto {
    fn from(gamma: &GammaMap) -> Self {
        GammaDto {
            source_rank: gamma.source_rank(),
            target: OracleDto::from(gamma.target()),
            images: gamma.images().iter().map(|w| w.display('x')).collect(),
        }
    }
}

impl GammaDto {
    pub fn build(&self) -> Result<GammaMap> {
        let target = self.target.build()?;
        let images = self
            .images
            .iter()
            .map(|s| Word::parse(s, 'x'))
            .collect::<Result<Vec<_>>>()?;
        GammaMap::new(self.source_rank, target, images)
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("invalid integer `{s}`")))
}

fn check_shape<T>(rows: usize, cols: usize, entries: &[Vec<T>]) -> Result<()> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!(
            "entry grid does not match declared shape {rows}x{cols}"
        )));
    }
    Ok(())
}
