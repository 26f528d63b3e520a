#![allow(dead_code)]

use fga_core::scalar::ratio;
use fga_core::{Alphabet, Element, Letter, Scalar, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(rank: usize) -> Alphabet {
    Alphabet::new(rank).unwrap()
}

pub fn word(s: &str) -> Word {
    fga_core::parse::parse_word(s, 3).unwrap()
}

pub fn elem(s: &str) -> Element {
    fga_core::parse::parse_element(s, 3).unwrap()
}

/// Reduced word built letter by letter, never cancelling.
pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if letters.last().is_none_or(|&p| !p.cancels(l)) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let p = rng.gen_range(-4..=4);
        if p != 0 {
            return ratio(p, rng.gen_range(1..=3));
        }
    }
}

pub fn random_element(rng: &mut impl Rng, rank: usize, max_terms: usize, max_len: usize) -> Element {
    let mut u = Element::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        u.add_term(random_word(rng, rank, max_len), random_scalar(rng));
    }
    u
}

pub fn random_nonzero(rng: &mut impl Rng, rank: usize, max_terms: usize, max_len: usize) -> Element {
    loop {
        let u = random_element(rng, rank, max_terms, max_len);
        if !u.is_zero() {
            return u;
        }
    }
}
