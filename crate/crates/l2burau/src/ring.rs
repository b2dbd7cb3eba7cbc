//! Elements of the integral group ring of a free group.
//!
//! An element is a finite formal sum of words with `BigInt` coefficients.
//! Multiplication concatenates words, so this is the group ring of the free
//! group on the ambient alphabet; quotient groups are handled by rewriting
//! the words of an element through a normal form map.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::word::Word;

/// A finite integer linear combination of group elements (words).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingElt {
    terms: HashMap<Word, BigInt>,
}

impl GroupRingElt {
    /// The zero element.
    pub fn zero() -> Self {
        GroupRingElt { terms: HashMap::new() }
    }

    /// The multiplicative unit `1 * e`.
    pub fn one() -> Self {
        GroupRingElt::from_word(Word::identity())
    }

    /// The element `1 * w`.
    pub fn from_word(w: Word) -> Self {
        GroupRingElt::from_term(w, BigInt::one())
    }

    /// The element `c * w`; the zero coefficient yields the zero element.
    pub fn from_term(w: Word, c: BigInt) -> Self {
        let mut e = GroupRingElt::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of words with nonzero coefficient.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `w` (zero when absent).
    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `c * w` in place, dropping the word when its coefficient cancels.
    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
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

    /// Unsorted view of the terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    /// Terms sorted shortlex by word, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&Word, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Sum of all coefficients (the augmentation map).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Sum of absolute values of all coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn add(&self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (w, k) in self.terms() {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    /// Ring product: words concatenate, coefficients multiply.
    pub fn mul(&self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// Left-multiplies every word by `w`.
    pub fn left_mul_word(&self, w: &Word) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (u, c) in self.terms() {
            out.add_term(w.concat(u), c.clone());
        }
        out
    }

    /// Applies a word map to every term, merging images that coincide.
    pub fn map_words<F>(&self, mut f: F) -> crate::error::Result<GroupRingElt>
    where
        F: FnMut(&Word) -> crate::error::Result<Word>,
    {
        let mut out = GroupRingElt::zero();
        for (w, c) in self.terms() {
            out.add_term(f(w)?, c.clone());
        }
        Ok(out)
    }

    /// Renders the element with a generator prefix, e.g. `"1 - x1 x2^-1"`.
    pub fn display(&self, prefix: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !mag.is_one() || w.is_identity();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if !w.is_identity() {
                if show_coeff {
                    out.push(' ');
                }
                out.push_str(&w.display(prefix));
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('x'))
    }
}
