//! Seeded generators for randomized test suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Alphabet, Dfa, Word};

/// Deterministic generator; the same seed always yields the same stream.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random complete automaton with between 1 and `max_states` states,
/// returned minimized (so it may end up smaller).
pub fn random_dfa(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let k = alphabet.len();
    let delta: Vec<usize> = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), n, 0, finals, delta)
        .expect("generated automaton is well formed")
        .minimize()
}

/// A random word of length at most `max_len`.
pub fn random_word(rng: &mut impl Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..alphabet.len())).collect()
}
