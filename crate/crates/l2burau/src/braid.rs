//! Braid words and their right action on free groups.
//!
//! A braid on `n` strands is a word in the Artin generators `s1 .. s(n-1)`.
//! Composition is concatenation: in `a.concat(&b)` the word `a` is drawn
//! above `b`. The induced automorphism of the free group F_n then satisfies
//! the reversal law `h_{ab} = h_b . h_a`, so images are computed by applying
//! the letters' substitutions left to right.

use crate::error::{Error, Result};
use crate::word::{Letter, Word, WordBuilder};

/// A word in the braid group B_n on `strands` strands.
///
/// Letters are signed generator indices: `i` is the Artin generator
/// crossing strands `i` and `i+1` positively, `-i` its inverse. The letter
/// sequence is kept exactly as written; equality as braids is decided by
/// [`crate::garside::garside_nf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Builds a braid word, validating every letter against the strand count.
    pub fn new<I: IntoIterator<Item = i32>>(strands: u32, letters: I) -> Result<Self> {
        if strands < 1 {
            return Err(Error::InvalidParameter("strand count must be at least 1".into()));
        }
        let letters: Vec<Letter> = letters.into_iter().collect();
        for &l in &letters {
            let idx = l.unsigned_abs();
            if l == 0 || idx >= strands {
                return Err(Error::GeneratorRange {
                    index: l as i64,
                    reason: format!("braid on {strands} strands has generators 1..{}", strands - 1),
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The trivial braid on `strands` strands.
    pub fn trivial(strands: u32) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Parses braid syntax like `"s1 -s3 s2"` or `"1 -3 2"`.
    pub fn parse(input: &str, strands: u32) -> Result<Self> {
        let word = Word::parse(input, 's')?;
        BraidWord::new(strands, word.letters().iter().copied())
    }

    /// Renders the word as `"s1 s3^-1"`; the trivial braid renders empty.
    pub fn display(&self) -> String {
        // Braid letters are never adjacent-inverse-free in general, so bypass
        // Word and print directly.
        let mut out = String::new();
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push('s');
            out.push_str(&l.unsigned_abs().to_string());
            if l < 0 {
                out.push_str("^-1");
            }
        }
        out
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation: `self` drawn above `rhs`.
    pub fn concat(&self, rhs: &BraidWord) -> Result<BraidWord> {
        if self.strands != rhs.strands {
            return Err(Error::StrandMismatch(self.strands, rhs.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// The inverse braid word (letters reversed and negated).
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// The `k`-th power of the braid word.
    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(self.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Image `h_b(x_j)` of the free generator `x_j`, `1 <= j <= n`.
    pub fn act_on_x(&self, j: u32) -> Word {
        assert!(j >= 1 && j <= self.strands, "x-generator index out of range");
        self.act_on_x_word(&Word::generator(j))
    }

    /// Image of an arbitrary word in the `x`-alphabet under `h_b`.
    pub fn act_on_x_word(&self, w: &Word) -> Word {
        debug_assert!(w.max_generator() <= self.strands, "x-word outside alphabet");
        let mut cur = w.clone();
        for &bl in &self.letters {
            let mut b = WordBuilder::with_capacity(cur.len() + 2);
            for &l in cur.letters() {
                push_x_image(&mut b, bl, l);
            }
            cur = b.finish();
        }
        cur
    }

    /// Image `h_b(g_j)` of `g_j = x1 x2 .. xj`, expressed in the `g`-alphabet.
    pub fn act_on_g(&self, j: u32) -> Word {
        assert!(j >= 1 && j <= self.strands, "g-generator index out of range");
        self.act_on_g_word(&Word::generator(j))
    }

    /// Image of an arbitrary word in the `g`-alphabet under `h_b`.
    pub fn act_on_g_word(&self, w: &Word) -> Word {
        debug_assert!(w.max_generator() <= self.strands, "g-word outside alphabet");
        let mut cur = w.clone();
        for &bl in &self.letters {
            let mut b = WordBuilder::with_capacity(cur.len() + 2);
            for &l in cur.letters() {
                push_g_image(&mut b, bl, l);
            }
            cur = b.finish();
        }
        cur
    }

    /// Underlying permutation: entry `k` (0-based) is the end position of
    /// the strand starting at position `k`. Specializing the Burau matrix at
    /// T = 1 gives exactly this permutation's matrix.
    pub fn permutation(&self) -> Vec<u32> {
        let n = self.strands as usize;
        let mut occ: Vec<u32> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            occ.swap(i - 1, i);
        }
        let mut end = vec![0u32; n];
        for (pos, &strand) in occ.iter().enumerate() {
            end[strand as usize] = pos as u32;
        }
        end
    }

    /// Whether the underlying permutation is trivial (a pure braid).
    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(k, &p)| k as u32 == p)
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> u32 {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k] as usize;
            }
        }
        cycles
    }
}

/// Pushes the image of the single `x`-letter `l` under one braid letter `bl`.
///
/// Positive generator: `x_i -> x_i x_{i+1} x_i^-1`, `x_{i+1} -> x_i`.
/// Negative generator: `x_i -> x_{i+1}`, `x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}`.
fn push_x_image(b: &mut WordBuilder, bl: Letter, l: Letter) {
    let i = bl.unsigned_abs() as Letter;
    let v = l.unsigned_abs() as Letter;
    let image: &[Letter] = if bl > 0 {
        if v == i {
            &[i, i + 1, -i]
        } else if v == i + 1 {
            &[i]
        } else {
            b.push(l);
            return;
        }
    } else if v == i {
        &[i + 1]
    } else if v == i + 1 {
        &[-(i + 1), i, i + 1]
    } else {
        b.push(l);
        return;
    };
    if l > 0 {
        for &m in image {
            b.push(m);
        }
    } else {
        for &m in image.iter().rev() {
            b.push(-m);
        }
    }
}

/// Pushes the image of the single `g`-letter `l` under one braid letter `bl`.
///
/// Only `g_i` moves under `s_i^{+-1}`: positively `g_i -> g_{i+1} g_i^-1 g_{i-1}`,
/// negatively `g_i -> g_{i-1} g_i^-1 g_{i+1}`, with `g_0` read as the identity.
fn push_g_image(b: &mut WordBuilder, bl: Letter, l: Letter) {
    let i = bl.unsigned_abs() as Letter;
    let v = l.unsigned_abs() as Letter;
    if v != i {
        b.push(l);
        return;
    }
    let mut image: Vec<Letter> = Vec::with_capacity(3);
    if bl > 0 {
        image.push(i + 1);
        image.push(-i);
        if i > 1 {
            image.push(i - 1);
        }
    } else {
        if i > 1 {
            image.push(i - 1);
        }
        image.push(-i);
        image.push(i + 1);
    }
    if l > 0 {
        for &m in &image {
            b.push(m);
        }
    } else {
        for &m in image.iter().rev() {
            b.push(-m);
        }
    }
}

/// The six-strand braid of Long and Paton: a nontrivial pure braid whose
/// unreduced Burau matrix is the identity. Forty-four letters, read off the
/// standard picture floor by floor, top to bottom.
pub fn longpaton() -> BraidWord {
    #[rustfmt::skip]
    let letters = [
        -1, 5,   2, -4,   3,   4, -2,   -5, 1,   -5, 1,   -5, 1,
         4, -2,   3,   2, -4,   -1, 5,   -1, 5,
        -1, 5,   2, -4,  -3,   4, -2,   -5, 1,   -5, 1,   -5, 1,
         4, -2,  -3,   2, -4,   -1, 5,   -1, 5,
    ];
    BraidWord::new(6, letters).expect("valid fixed braid word")
}
