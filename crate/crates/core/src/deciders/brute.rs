//! Exhaustive oracles for the finite strata `SU_k` and `MOD_d`.
//!
//! These work directly on the definitions (explicit suffix sets, residues
//! computed on the automaton times `Z/d`) and share no code with the exact
//! deciders beyond the automata layer.

use std::collections::BTreeSet;

use serde_json::json;

use super::modular::residue_language;
use super::verdict::{Certificate, Class, Outcome, Problem, Verdict, Witness};
use crate::automata::Nfa;
use crate::enrichment::su_canonical;
use crate::{Dfa, Error, Limits, Result, Word};

/// A finite stratum of SU or MOD.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    /// Boolean combinations of `A*v` with `|v| ≤ k`.
    Su(usize),
    /// Boolean combinations of length conditions modulo `d`.
    Mod(usize),
}

impl Stratum {
    /// Parses `su:k` or `mod:d`.
    pub fn parse(text: &str) -> Option<Stratum> {
        let (kind, n) = text.split_once(':')?;
        let n: usize = n.parse().ok()?;
        match kind {
            "su" => Some(Stratum::Su(n)),
            "mod" if n >= 1 => Some(Stratum::Mod(n)),
            _ => None,
        }
    }

    pub fn related(self, u: &Word, v: &Word) -> bool {
        match self {
            Stratum::Su(k) => su_canonical(k, u) == su_canonical(k, v),
            Stratum::Mod(d) => u.len() % d == v.len() % d,
        }
    }

    fn relation(self) -> String {
        match self {
            Stratum::Su(k) => format!("same suffix of length {k}"),
            Stratum::Mod(d) => format!("same length modulo {d}"),
        }
    }
}

/// `{|w| mod d : w ∈ L}` by exploring the product of the automaton with `Z/d`.
pub fn residues_by_product(lang: &Dfa, d: usize) -> Vec<usize> {
    let n = lang.state_count();
    let mut seen = vec![false; n * d];
    let mut stack = vec![(lang.initial(), 0)];
    seen[lang.initial() * d] = true;
    let mut out = BTreeSet::new();
    while let Some((q, r)) = stack.pop() {
        if lang.is_final(q) {
            out.insert(r);
        }
        for a in 0..lang.alphabet().len() {
            let (q2, r2) = (lang.step(q, a), (r + 1) % d);
            if !seen[q2 * d + r2] {
                seen[q2 * d + r2] = true;
                stack.push((q2, r2));
            }
        }
    }
    out.into_iter().collect()
}

/// The set of length-`k` suffixes of words of `lang`, listed explicitly.
pub fn suffix_set(lang: &Dfa, k: usize, limits: &Limits) -> Result<BTreeSet<Word>> {
    let live = lang.coreachable_states();
    let reachable = lang.reachable_states();
    let start: Vec<usize> = (0..lang.state_count())
        .filter(|&q| reachable[q] && live[q])
        .collect();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), start)];
    while let Some((word, states)) = stack.pop() {
        if word.len() == k {
            if states.iter().any(|&q| lang.is_final(q)) {
                out.insert(Word::new(word));
                if out.len() > limits.max_enum_words {
                    return Err(Error::CapExceeded {
                        what: "suffix set",
                        cap: limits.max_enum_words,
                    });
                }
            }
            continue;
        }
        for a in (0..lang.alphabet().len()).rev() {
            let mut next: Vec<usize> = states
                .iter()
                .map(|&q| lang.step(q, a))
                .filter(|&q| live[q])
                .collect();
            next.sort_unstable();
            next.dedup();
            if !next.is_empty() {
                let mut w = word.clone();
                w.push(a);
                stack.push((w, next));
            }
        }
    }
    Ok(out)
}

/// The least `SU_k` language containing `lang`, assembled from its explicit
/// short words and suffix set.
pub fn su_hull_by_enumeration(lang: &Dfa, k: usize, limits: &Limits) -> Result<Dfa> {
    let alphabet = lang.alphabet();
    let mut nfa = Nfa::new(alphabet.clone());
    let short = if k == 0 {
        Vec::new()
    } else {
        lang.enumerate_with(k - 1, limits)?
    };
    let add_word = |nfa: &mut Nfa, from: usize, w: &Word| {
        let mut q = from;
        for &a in w.iter() {
            let next = nfa.add_state();
            nfa.add_edge(q, a, next);
            q = next;
        }
        nfa.set_final(q);
    };
    let start = nfa.add_state();
    nfa.add_initial(start);
    for w in &short {
        add_word(&mut nfa, start, w);
    }
    let anywhere = nfa.add_state();
    nfa.add_initial(anywhere);
    for a in 0..alphabet.len() {
        nfa.add_edge(anywhere, a, anywhere);
    }
    for v in suffix_set(lang, k, limits)? {
        add_word(&mut nfa, anywhere, &v);
    }
    nfa.determinize(limits)
}

/// Searches the stratum for a separator, returning a verified certificate.
pub fn brute_force_separator(
    stratum: Stratum,
    l1: &Dfa,
    l2: &Dfa,
    limits: &Limits,
) -> Result<Option<Certificate>> {
    l1.alphabet()
        .ensure_same(l2.alphabet(), "brute-force separator")?;
    match stratum {
        Stratum::Mod(d) => {
            let residues = residues_by_product(l1, d);
            let candidate = residue_language(l1.alphabet(), d, &residues);
            Ok(candidate
                .is_disjoint_from(l2)?
                .then_some(Certificate::Mod { d, residues }))
        }
        Stratum::Su(k) => {
            let candidate = su_hull_by_enumeration(l1, k, limits)?;
            if !l1.is_subset_of(&candidate)? {
                return Err(Error::Internal("suffix hull misses the language".into()));
            }
            Ok(candidate.is_disjoint_from(l2)?.then_some(Certificate::Su {
                k,
                separator: Some(candidate),
            }))
        }
    }
}

/// Looks for `u ∈ L1`, `v ∈ L2` of length at most `max_len` that the
/// stratum cannot tell apart; finding one refutes separability in it.
pub fn brute_force_refuter(
    l1: &Dfa,
    l2: &Dfa,
    stratum: Stratum,
    max_len: usize,
    limits: &Limits,
) -> Result<Option<Witness>> {
    let left = l1.enumerate_with(max_len, limits)?;
    let right = l2.enumerate_with(max_len, limits)?;
    for u in &left {
        if let Some(v) = right.iter().find(|v| stratum.related(u, v)) {
            return Ok(Some(Witness::RelatedPair {
                words: [u.clone(), v.clone()],
                relation: stratum.relation(),
            }));
        }
    }
    Ok(None)
}

/// MOD restricted to moduli `1..=max_d`, by trying each modulus.
fn mod_bounded(problem: Problem, target: &Dfa, cuts: &[&Dfa], max_d: usize) -> Result<Verdict> {
    for cut in cuts {
        target
            .alphabet()
            .ensure_same(cut.alphabet(), "bounded MOD search")?;
    }
    let mut certificate = None;
    for d in 1..=max_d {
        let residues = residues_by_product(target, d);
        let cut_residues: Vec<Vec<usize>> =
            cuts.iter().map(|c| residues_by_product(c, d)).collect();
        if residues
            .iter()
            .all(|r| cut_residues.iter().any(|rs| !rs.contains(r)))
        {
            certificate = Some(Certificate::Mod { d, residues });
            break;
        }
    }
    Ok(Verdict {
        problem,
        class: Class::ModBrute,
        outcome: Outcome::of(problem, certificate.is_some()),
        certificate,
        witness: None,
        trace: json!({ "max_d": max_d }),
        alphabet: target.alphabet().clone(),
    })
}

pub fn separate_mod_bounded(l1: &Dfa, l2: &Dfa, max_d: usize) -> Result<Verdict> {
    mod_bounded(Problem::Separation, l1, &[l2], max_d)
}

pub fn cover_mod_bounded(target: &Dfa, cuts: &[Dfa], max_d: usize) -> Result<Verdict> {
    let cuts: Vec<&Dfa> = cuts.iter().collect();
    mod_bounded(Problem::Covering, target, &cuts, max_d)
}
