#![allow(dead_code)]

use regsep::algebra::common_morphism;
use regsep::transfer::SfAlphabet;
use regsep::{Alphabet, Dfa, Limits, RecognizedFamily, Word};

pub fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

/// Names the languages `L0, L1, …` and builds their common morphism.
pub fn family(langs: &[&Dfa], limits: &Limits) -> RecognizedFamily {
    let named: Vec<(String, Dfa)> = langs
        .iter()
        .enumerate()
        .map(|(i, d)| (format!("L{i}"), (*d).clone()))
        .collect();
    common_morphism(&named, limits).unwrap()
}

/// The first `limit` stably-formed words over `S_η` of length at most
/// `max_len`, in length-lex order.
pub fn stably_formed_words(sf: &SfAlphabet, max_len: usize, limit: usize) -> Vec<Word> {
    let k = sf.alphabet().len();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            if w.last().is_some_and(|&x| !sf.stable().contains(sf.ev(x))) {
                continue;
            }
            for x in 0..k {
                if out.len() + next.len() >= limit {
                    out.extend(next);
                    return out;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
