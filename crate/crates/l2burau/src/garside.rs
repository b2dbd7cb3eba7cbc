//! Garside left-canonical normal form for braid words.
//!
//! A braid is written uniquely as `Delta^inf . F_1 ... F_m` where `Delta` is
//! the positive half twist, each factor `F_k` is a permutation braid (every
//! pair of strands crosses at most once) that is neither trivial nor `Delta`,
//! and each adjacent pair is left-weighted. Two braid words are equal in the
//! braid group iff their normal forms coincide.
//!
//! Permutation braids are stored as one-line permutation arrays `p` with
//! `p[k]` = end position of the strand starting at position `k` (0-based).
//! In that encoding, for a permutation braid `A`:
//! starting set S(A) = descents of `p`, finishing set F(A) = descents of
//! `p^-1`, appending a crossing `A.s_i` swaps the values `i-1, i`, and
//! removing a leading crossing `s_i^-1 . A` swaps the entries `i-1, i`.

use crate::braid::BraidWord;
use crate::error::Result;
use crate::word::Letter;

/// Garside normal form `Delta^inf . factors`, the canonical form of a braid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GarsideNf {
    strands: u32,
    inf: i64,
    factors: Vec<Vec<u32>>,
}

/// Computes the left-canonical normal form of a braid word.
pub fn garside_nf(b: &BraidWord) -> GarsideNf {
    let n = b.strands() as usize;
    let mut inf: i64 = 0;
    let mut factors: Vec<Vec<u32>> = Vec::with_capacity(b.len());
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize;
        if l > 0 {
            let mut p = perm_identity(n);
            p.swap(i - 1, i);
            factors.push(p);
        } else {
            // s_i^-1 = Delta^-1 . (Delta s_i^-1); migrate Delta^-1 to the
            // front across the existing factors via A Delta^-1 = Delta^-1 tau(A).
            inf -= 1;
            for f in factors.iter_mut() {
                tau_in_place(f);
            }
            let w0 = perm_half_twist(n);
            let mut x: Vec<u32> = (0..n).map(|k| w0[k]).collect();
            for v in x.iter_mut() {
                if *v == (i - 1) as u32 {
                    *v = i as u32;
                } else if *v == i as u32 {
                    *v = (i - 1) as u32;
                }
            }
            factors.push(x);
        }
    }
    left_weight(n, &mut inf, &mut factors);
    GarsideNf { strands: b.strands(), inf, factors }
}

impl GarsideNf {
    pub fn strands(&self) -> u32 {
        self.strands
    }

    /// Power of the half twist in front of the factor sequence.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    /// Canonical length (number of non-trivial, non-Delta factors).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Vec<u32>] {
        &self.factors
    }

    /// Whether this is the trivial braid.
    pub fn is_trivial(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Canonical braid word: `Delta^inf` then each factor printed by
    /// repeatedly emitting its smallest starting generator. Distinct normal
    /// forms print distinct words, so this word can serve as a normal form
    /// for word-level deduplication.
    pub fn canonical_word(&self) -> Result<BraidWord> {
        let n = self.strands as usize;
        let mut letters: Vec<Letter> = Vec::new();
        let delta = print_permutation_braid(&perm_half_twist(n));
        if self.inf >= 0 {
            for _ in 0..self.inf {
                letters.extend_from_slice(&delta);
            }
        } else {
            let delta_inv: Vec<Letter> = delta.iter().rev().map(|&l| -l).collect();
            for _ in 0..(-self.inf) {
                letters.extend_from_slice(&delta_inv);
            }
        }
        for f in &self.factors {
            letters.extend_from_slice(&print_permutation_braid(f));
        }
        BraidWord::new(self.strands, letters)
    }
}

fn perm_identity(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

fn perm_half_twist(n: usize) -> Vec<u32> {
    (0..n as u32).rev().collect()
}

fn is_identity_perm(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(k, &v)| k as u32 == v)
}

fn is_half_twist(p: &[u32]) -> bool {
    let n = p.len();
    p.iter().enumerate().all(|(k, &v)| v as usize == n - 1 - k)
}

/// Conjugation by the half twist: `tau(A) = Delta^-1 A Delta`.
fn tau_in_place(p: &mut [u32]) {
    let n = p.len();
    let old = p.to_vec();
    for k in 0..n {
        p[k] = (n - 1 - old[n - 1 - k] as usize) as u32;
    }
}

fn invert_perm(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v as usize] = k as u32;
    }
    inv
}

/// Makes the adjacent factor pair (a, b) left-weighted by sliding initial
/// crossings of `b` into `a` while some `i` lies in S(b) but not in F(a).
/// Returns whether anything moved.
fn slide_pair(a: &mut [u32], b: &mut [u32]) -> bool {
    let n = a.len();
    let mut ainv = invert_perm(a);
    let mut changed = false;
    loop {
        let mut moved = false;
        for i in 1..n {
            if b[i - 1] > b[i] && ainv[i - 1] < ainv[i] {
                let (p, q) = (ainv[i - 1] as usize, ainv[i] as usize);
                a.swap(p, q);
                ainv.swap(i - 1, i);
                b.swap(i - 1, i);
                moved = true;
                changed = true;
                break;
            }
        }
        if !moved {
            return changed;
        }
    }
}

/// Rewrites `Delta^inf . factors` into left-canonical form in place.
fn left_weight(n: usize, inf: &mut i64, factors: &mut Vec<Vec<u32>>) {
    // Every slide moves one crossing left and each pass performs at least
    // one slide or terminates, so this bound is generous.
    let max_passes = factors.len() * n * n + 16;
    for _ in 0..max_passes {
        factors.retain(|f| !is_identity_perm(f));
        let mut changed = false;
        let mut i = 0;
        while i < factors.len() {
            if is_half_twist(&factors[i]) {
                for f in factors[..i].iter_mut() {
                    tau_in_place(f);
                }
                factors.remove(i);
                *inf += 1;
                changed = true;
            } else {
                i += 1;
            }
        }
        for j in 1..factors.len() {
            let (left, right) = factors.split_at_mut(j);
            if slide_pair(&mut left[j - 1], &mut right[0]) {
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
    unreachable!("left-weighting failed to stabilize");
}

/// Prints a permutation braid as a positive word by repeatedly emitting its
/// smallest starting generator; the word length equals the inversion count.
fn print_permutation_braid(p: &[u32]) -> Vec<Letter> {
    let n = p.len();
    let mut cur = p.to_vec();
    let mut out = Vec::new();
    loop {
        let mut emitted = false;
        for i in 1..n {
            if cur[i - 1] > cur[i] {
                out.push(i as Letter);
                cur.swap(i - 1, i);
                emitted = true;
                break;
            }
        }
        if !emitted {
            debug_assert!(is_identity_perm(&cur));
            return out;
        }
    }
}
