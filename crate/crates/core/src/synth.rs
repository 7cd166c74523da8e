//! Synthetic sequences, pangenome-like collections and query patterns.

use rand::seq::SliceRandom;
use rand::Rng;

pub const DNA: &[u8] = b"ACGT";

/// Uniform random sequence over `alphabet`.
pub fn random_sequence<R: Rng + ?Sized>(rng: &mut R, len: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..len).map(|_| *alphabet.choose(rng).expect("empty alphabet")).collect()
}

/// Replaces each symbol with probability `rate` by a different symbol of
/// `alphabet`.
pub fn mutate<R: Rng + ?Sized>(rng: &mut R, seq: &[u8], rate: f64, alphabet: &[u8]) -> Vec<u8> {
    let mut out = seq.to_vec();
    if alphabet.len() < 2 {
        return out;
    }
    for c in &mut out {
        if rng.gen_bool(rate) {
            *c = substitute(rng, *c, alphabet);
        }
    }
    out
}

fn substitute<R: Rng + ?Sized>(rng: &mut R, c: u8, alphabet: &[u8]) -> u8 {
    loop {
        let d = *alphabet.choose(rng).unwrap();
        if d != c {
            return d;
        }
    }
}

/// `copies` independently mutated copies of one random seed.
pub fn pangenome<R: Rng + ?Sized>(
    rng: &mut R,
    seed_len: usize,
    copies: usize,
    divergence: f64,
    alphabet: &[u8],
) -> Vec<Vec<u8>> {
    let seed = random_sequence(rng, seed_len, alphabet);
    (0..copies).map(|_| mutate(rng, &seed, divergence, alphabet)).collect()
}

/// Substrings of `text` of length `len` (shorter if `text` is), each mutated
/// at `rate`.
pub fn sample_patterns<R: Rng + ?Sized>(
    rng: &mut R,
    text: &[u8],
    count: usize,
    len: usize,
    rate: f64,
    alphabet: &[u8],
) -> Vec<Vec<u8>> {
    let len = len.min(text.len()).max(1);
    (0..count)
        .map(|_| {
            let start = rng.gen_range(0..=text.len().saturating_sub(len));
            mutate(rng, &text[start..start + len], rate, alphabet)
        })
        .collect()
}
