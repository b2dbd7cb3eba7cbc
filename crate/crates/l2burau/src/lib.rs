//! Burau and L2-Burau matrices of braids, Fuglede-Kadison determinant
//! estimation, and L2-Alexander torsion of braid closures.
//!
//! The pipeline: a braid word acts on a free group (`braid`), Fox derivatives
//! of the images (`fox`) assemble into matrices over Laurent polynomials
//! (`burau`) or over group rings of a target group given by a word-problem
//! oracle (`groups`, `l2`). Fuglede-Kadison determinants of evaluated
//! operators are estimated numerically (`fkdet`), and the determinant of the
//! reduced operator of a braid closure yields its L2-Alexander torsion up to
//! a monomial (`torsion`).

pub mod braid;
pub mod burau;
pub mod error;
pub mod fkdet;
pub mod fox;
pub mod garside;
pub mod groups;
pub mod io;
pub mod l2;
pub mod laurent;
pub mod ring;
pub mod torsion;
pub mod word;

pub use braid::{longpaton, BraidWord};
pub use burau::{burau, reduced_burau, theta};
pub use error::{Error, Result};
pub use fkdet::{
    adjoint, default_radius, evaluate, fk_det, fk_det_series, fk_det_truncation,
    parse_positive_rational, ratio_to_f64, DetEstimate, DetMethod, DetParams, EvalMatrix,
    RadiusEstimate,
};
pub use fox::{fox_derivative, fox_derivative_elt};
pub use garside::{garside_nf, GarsideNf};
pub use groups::{apply_gamma, verify_gamma, GammaMap, GroupOracle, OracleKind};
pub use l2::{
    compose, g_basis_l2_burau, l2_burau, precompose_gamma, reduced_l2_burau, BasisTag,
    OperatorMatrix,
};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use ring::GroupRingElt;
pub use torsion::{
    closure_presentation, fox_matrix, fox_torsion_from_presentation, torsion_determinant,
    ClosurePresentation, TorsionPoint, TorsionReport,
};
pub use word::{Letter, Word, WordBuilder};
