//! Freely reduced words over a numbered generator alphabet.
//!
//! A letter is a nonzero `i32`: positive `k` is the generator with index `k`
//! (1-based), negative `-k` is its inverse. Every `Word` is kept freely
//! reduced, so equality of words is equality in the free group.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// A single signed generator index. Never zero.
pub type Letter = i32;

/// A freely reduced word in a free group with numbered generators.
///
/// Words are immutable; build them with [`WordBuilder`], [`Word::from_letters`],
/// or the concatenation helpers. A 64-bit hash of the letter sequence is cached
/// so words can serve as group ring keys cheaply.
#[derive(Clone, Debug, Eq)]
pub struct Word {
    letters: Vec<Letter>,
    hash: u64,
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv1a(letters: &[Letter]) -> u64 {
    let mut h = FNV_OFFSET;
    for &l in letters {
        for b in l.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(FNV_PRIME);
        }
    }
    h
}

/// Sort key for a single letter: generators ordered by index, with the
/// positive letter immediately before its inverse.
#[inline]
fn letter_key(l: Letter) -> (u32, u8) {
    (l.unsigned_abs(), u8::from(l < 0))
}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word { letters: Vec::new(), hash: fnv1a(&[]) }
    }

    /// The single-generator word `x_index` (index is 1-based).
    pub fn generator(index: u32) -> Self {
        assert!(index >= 1, "generator index must be at least 1");
        Word::from_reduced(vec![index as Letter])
    }

    /// A one-letter word from a signed letter.
    pub fn single(letter: Letter) -> Self {
        assert!(letter != 0, "letter must be nonzero");
        Word::from_reduced(vec![letter])
    }

    /// Builds a word from letters, freely reducing adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let iter = letters.into_iter();
        let mut b = WordBuilder::with_capacity(iter.size_hint().0);
        for l in iter {
            b.push(l);
        }
        b.finish()
    }

    /// Wraps a letter sequence that is already freely reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(
            letters.windows(2).all(|w| w[0] != -w[1]) && letters.iter().all(|&l| l != 0),
            "letters not freely reduced"
        );
        let hash = fnv1a(&letters);
        Word { letters, hash }
    }

    /// The reduced letter sequence.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Reduced word length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Whether this is the empty word.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index appearing in the word, or 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// The inverse word (letters reversed and negated).
    pub fn inverse(&self) -> Self {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|&l| -l).collect();
        Word::from_reduced(letters)
    }

    /// Concatenation `self . rhs`, freely reduced at the seam.
    pub fn concat(&self, rhs: &Word) -> Self {
        let mut out = self.letters.clone();
        let mut cut = 0usize;
        for &l in &rhs.letters {
            if cut < rhs.letters.len() && out.last() == Some(&-l) {
                out.pop();
                cut += 1;
            } else {
                break;
            }
        }
        out.extend_from_slice(&rhs.letters[cut..]);
        Word::from_reduced(out)
    }

    /// The power `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Sum of `weights[|l| - 1]` with sign, over all letters `l`.
    ///
    /// This is the image of the word under the homomorphism sending the
    /// `i`-th generator to `weights[i - 1]` in the integers.
    pub fn weighted_exponent_sum(&self, weights: &[i64]) -> Result<i64> {
        let mut sum: i64 = 0;
        for &l in &self.letters {
            let idx = l.unsigned_abs() as usize;
            let w = *weights.get(idx - 1).ok_or_else(|| {
                Error::AlphabetMismatch(format!(
                    "letter with index {} but only {} weights",
                    idx,
                    weights.len()
                ))
            })?;
            sum += if l > 0 { w } else { -w };
        }
        Ok(sum)
    }

    /// Total exponent sum (all weights 1).
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| if l > 0 { 1i64 } else { -1i64 }).sum()
    }

    /// Substitutes `images[i - 1]` for generator `i` and reduces.
    pub fn rewrite_alphabet(&self, images: &[Word]) -> Result<Word> {
        let mut b = WordBuilder::with_capacity(self.len() * 2);
        for &l in &self.letters {
            let idx = l.unsigned_abs() as usize;
            let img = images.get(idx - 1).ok_or_else(|| {
                Error::AlphabetMismatch(format!(
                    "letter with index {} but only {} images",
                    idx,
                    images.len()
                ))
            })?;
            if l > 0 {
                b.push_word(img);
            } else {
                b.push_word_inverse(img);
            }
        }
        Ok(b.finish())
    }

    /// Parses a whitespace-separated word.
    ///
    /// Each token is `[-]<prefix><index>[^-1]` where the prefix letter is
    /// optional, e.g. with prefix `'x'`: `"x1 x2^-1 x1"` or `"1 -2 1"`.
    pub fn parse(input: &str, prefix: char) -> Result<Word> {
        let mut b = WordBuilder::new();
        for token in input.split_whitespace() {
            b.push(parse_letter(token, prefix)?);
        }
        Ok(b.finish())
    }

    /// Renders the word with the given generator prefix, e.g. `"x1 x2^-1"`.
    /// The identity renders as the empty string.
    pub fn display(&self, prefix: char) -> String {
        let mut out = String::new();
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push(prefix);
            out.push_str(&l.unsigned_abs().to_string());
            if l < 0 {
                out.push_str("^-1");
            }
        }
        out
    }
}

fn parse_letter(token: &str, prefix: char) -> Result<Letter> {
    let err = |msg: &str| Error::Parse(format!("token {token:?}: {msg}"));
    let mut rest = token;
    let neg_prefix = rest.starts_with('-');
    if neg_prefix {
        rest = &rest[1..];
    }
    let lower = prefix.to_ascii_lowercase();
    let upper = prefix.to_ascii_uppercase();
    if rest.starts_with(lower) || rest.starts_with(upper) {
        rest = &rest[lower.len_utf8()..];
    }
    let (digits, suffix) = match rest.find('^') {
        Some(p) => (&rest[..p], &rest[p + 1..]),
        None => (rest, ""),
    };
    let neg_suffix = match suffix {
        "" | "1" | "+1" => false,
        "-1" => true,
        _ => return Err(err("exponent must be 1 or -1")),
    };
    if neg_prefix && neg_suffix {
        return Err(err("both a leading '-' and exponent -1"));
    }
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(err(&format!("expected {prefix}<index> or a signed index")));
    }
    let index: u32 = digits
        .parse()
        .map_err(|_| err("index out of range"))?;
    if index == 0 {
        return Err(err("generator indices start at 1"));
    }
    if index > i32::MAX as u32 {
        return Err(err("index out of range"));
    }
    let letter = index as Letter;
    Ok(if neg_prefix || neg_suffix { -letter } else { letter })
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && self.letters == other.letters
    }
}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

impl Ord for Word {
    /// Shortlex: shorter words first, then letterwise with `x1 < x1^-1 < x2 < ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| {
                for (&a, &b) in self.letters.iter().zip(&other.letters) {
                    let o = letter_key(a).cmp(&letter_key(b));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.display('x'))
        }
    }
}

/// Incremental word constructor that cancels adjacent inverse pairs.
pub struct WordBuilder {
    letters: Vec<Letter>,
}

impl WordBuilder {
    pub fn new() -> Self {
        WordBuilder { letters: Vec::new() }
    }

    pub fn with_capacity(cap: usize) -> Self {
        WordBuilder { letters: Vec::with_capacity(cap) }
    }

    /// Appends one letter, cancelling it against the current last letter
    /// when they are mutually inverse.
    pub fn push(&mut self, letter: Letter) {
        assert!(letter != 0, "letter must be nonzero");
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    /// Appends all letters of `w`.
    pub fn push_word(&mut self, w: &Word) {
        for &l in w.letters() {
            self.push(l);
        }
    }

    /// Appends all letters of `w^-1`.
    pub fn push_word_inverse(&mut self, w: &Word) {
        for &l in w.letters().iter().rev() {
            self.push(-l);
        }
    }

    /// Current prefix as a word (clones the buffer).
    pub fn snapshot(&self) -> Word {
        Word::from_reduced(self.letters.clone())
    }

    pub fn finish(self) -> Word {
        Word::from_reduced(self.letters)
    }
}

impl Default for WordBuilder {
    fn default() -> Self {
        WordBuilder::new()
    }
}
