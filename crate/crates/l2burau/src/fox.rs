//! Free differential calculus on words.
//!
//! The Fox derivative with respect to generator `x_i` is the linear map
//! on the group ring determined by `d(x_j)/d(x_i) = delta_ij`,
//! `d(x_j^-1)/d(x_i) = -delta_ij x_j^-1`, and the product rule
//! `d(uv) = d(u) + u d(v)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::ring::GroupRingElt;
use crate::word::{Word, WordBuilder};

/// Fox derivative of a freely reduced word with respect to `x_index`.
///
/// Computed in one scan: the letter `x_i` at some position contributes
/// `+prefix`, and `x_i^-1` contributes `-prefix x_i^-1`, where `prefix` is
/// the subword strictly before that position. Prefixes of a reduced word
/// are reduced, so no further reduction is needed.
pub fn fox_derivative(w: &Word, index: u32) -> GroupRingElt {
    assert!(index >= 1, "generator index must be at least 1");
    let pos = index as i32;
    let mut acc = GroupRingElt::zero();
    let mut prefix = WordBuilder::with_capacity(w.len());
    for &l in w.letters() {
        if l == pos {
            acc.add_term(prefix.snapshot(), BigInt::one());
        }
        prefix.push(l);
        if l == -pos {
            acc.add_term(prefix.snapshot(), -BigInt::one());
        }
    }
    acc
}

/// Fox derivative extended linearly to a group ring element.
pub fn fox_derivative_elt(e: &GroupRingElt, index: u32) -> GroupRingElt {
    let mut acc = GroupRingElt::zero();
    for (w, c) in e.terms() {
        let d = fox_derivative(w, index);
        for (u, k) in d.terms() {
            acc.add_term(u.clone(), k * c);
        }
    }
    acc
}
