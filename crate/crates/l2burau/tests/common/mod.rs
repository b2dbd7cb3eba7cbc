#![allow(dead_code)]

use l2burau::{BraidWord, Word};
use rand::Rng;

/// A random braid word with letters drawn uniformly from the signed
/// generators of `B_strands`.
pub fn random_braid<R: Rng>(rng: &mut R, strands: u32, len: usize) -> BraidWord {
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

/// A random free-group word over `rank` generators, not necessarily reduced
/// before construction.
pub fn random_word<R: Rng>(rng: &mut R, rank: u32, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| {
        let i = rng.gen_range(1..=rank as i32);
        if rng.gen_bool(0.5) {
            i
        } else {
            -i
        }
    }))
}
