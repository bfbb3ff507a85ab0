//! Separation and covering by length-modulo languages.
//!
//! A MOD language only sees `|w| mod d`, so everything is decided on the
//! length sets. Each length set is ultimately periodic: a finite part below
//! a threshold `T` followed by residues of a period `p`. For a modulus `d`
//! with `gcd(p, d) = g` and `d ≥ T + g`, a progression with period `p`
//! covers exactly one coset of `g` modulo `d` and the lengths below `T` keep
//! distinct residues, so whether `d` works depends only on `g`. Scanning the
//! divisors of `p` is therefore exhaustive.

use serde_json::json;

use super::verdict::{Certificate, Class, Outcome, Problem, Verdict, Witness};
use crate::{Dfa, Error, Result};

/// Ultimately periodic length set: `n ≥ tail` is accepted iff
/// `tail + (n - tail) mod cycle` is.
#[derive(Clone, Debug)]
pub struct LengthProfile {
    tail: usize,
    cycle: usize,
    accepted: Vec<bool>,
    unary: Dfa,
}

impl LengthProfile {
    pub fn new(lang: &Dfa) -> Result<Self> {
        let unary = lang.length_projection()?;
        let mut first_visit = vec![usize::MAX; unary.state_count()];
        let mut accepted = Vec::new();
        let mut q = unary.initial();
        let mut n = 0;
        while first_visit[q] == usize::MAX {
            first_visit[q] = n;
            accepted.push(unary.is_final(q));
            q = unary.step(q, 0);
            n += 1;
        }
        let tail = first_visit[q];
        Ok(LengthProfile {
            tail,
            cycle: n - tail,
            accepted,
            unary,
        })
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn cycle(&self) -> usize {
        self.cycle
    }

    pub fn accepts(&self, n: usize) -> bool {
        if n < self.accepted.len() {
            self.accepted[n]
        } else {
            self.accepted[self.tail + (n - self.tail) % self.cycle]
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.accepted.iter().any(|&b| b)
    }

    /// `{|w| mod d : w ∈ L}`.
    pub fn residues(&self, d: usize) -> Vec<usize> {
        let mut seen = vec![false; d];
        for n in 0..self.tail + lcm(self.cycle, d) {
            if self.accepts(n) {
                seen[n % d] = true;
            }
        }
        (0..d).filter(|&r| seen[r]).collect()
    }

    /// Whether every length `n + period·j` is accepted, checked on the
    /// length automaton.
    fn is_periodic_at(&self, n: usize, period: usize) -> bool {
        let q = self.unary.run_from(self.unary.initial(), &vec![0; n]);
        self.unary.is_final(q) && self.unary.run_from(q, &vec![0; period]) == q
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Whether modulus `d` yields a separating cover: every residue class
/// meeting the target misses some cut.
fn modulus_works(target: &LengthProfile, cuts: &[LengthProfile], d: usize) -> bool {
    let cut_residues: Vec<Vec<usize>> = cuts.iter().map(|c| c.residues(d)).collect();
    target
        .residues(d)
        .iter()
        .all(|r| cut_residues.iter().any(|rs| !rs.contains(r)))
}

struct Normalized<'a> {
    profiles: Vec<&'a LengthProfile>,
    threshold: usize,
    period: usize,
}

impl Normalized<'_> {
    fn finite(&self, i: usize, n: usize) -> bool {
        n < self.threshold && self.profiles[i].accepts(n)
    }

    /// Whether language `i` has a progression in the coset `class` mod `g`.
    fn periodic_in(&self, i: usize, g: usize, class: usize) -> bool {
        (self.threshold..self.threshold + self.period)
            .any(|n| n % g == class && self.profiles[i].accepts(n))
    }

    /// Index 0 is the target. Returns the failing anchor length, if any.
    fn obstruction(&self, g: usize) -> Option<usize> {
        let cuts = 1..self.profiles.len();
        for class in 0..g {
            if self.periodic_in(0, g, class) && cuts.clone().all(|c| self.periodic_in(c, g, class))
            {
                let anchor = (self.threshold..).find(|n| n % g == class).unwrap();
                return Some(anchor);
            }
        }
        (0..self.threshold).find(|&y| {
            (self.finite(0, y) || self.periodic_in(0, g, y % g))
                && cuts
                    .clone()
                    .all(|c| self.finite(c, y) || self.periodic_in(c, g, y % g))
        })
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|&g| n.is_multiple_of(g)).collect()
}

/// Exact MOD covering analysis: `Ok(d)` is the least working modulus, `Err`
/// carries a tuple of words refuting every modulus.
fn analyze(
    langs: &[&Dfa],
    profiles: &[LengthProfile],
) -> Result<std::result::Result<usize, Witness>> {
    let norm = Normalized {
        profiles: profiles.iter().collect(),
        threshold: profiles.iter().map(LengthProfile::tail).max().unwrap_or(0),
        period: profiles.iter().map(LengthProfile::cycle).fold(1, lcm),
    };
    let (t, p) = (norm.threshold, norm.period);
    for g in divisors(p) {
        if norm.obstruction(g).is_some() {
            continue;
        }
        let step = p / g;
        let mut m = 1;
        while g * m < t + g {
            m += step;
        }
        let bound = g * m;
        let d = (1..=bound)
            .find(|&d| modulus_works(&profiles[0], &profiles[1..], d))
            .ok_or_else(|| {
                Error::Internal(format!("synthesized modulus {bound} does not separate"))
            })?;
        return Ok(Ok(d));
    }
    let anchor = norm.obstruction(p).ok_or_else(|| {
        Error::Internal("no divisor works yet no obstruction at the full period".into())
    })?;
    let mut words = Vec::with_capacity(langs.len());
    for (lang, prof) in langs.iter().zip(profiles) {
        let len = if prof.accepts(anchor) {
            anchor
        } else {
            let start = anchor + (t.saturating_sub(anchor)).div_ceil(p) * p;
            (start..)
                .step_by(p)
                .take(2)
                .find(|&n| prof.accepts(n))
                .expect("periodic part hit")
        };
        words.push(lang.word_of_length(len).expect("length is accepted"));
    }
    Ok(Err(Witness::CongruentLengths { words, modulus: p }))
}

fn verify_witness(langs: &[&Dfa], profiles: &[LengthProfile], witness: &Witness) -> Result<()> {
    let Witness::CongruentLengths { words, modulus } = witness else {
        return Err(Error::Internal("unexpected witness kind".into()));
    };
    let anchor = words.iter().map(|w| w.len()).min().unwrap_or(0);
    let ok = words
        .iter()
        .zip(langs)
        .zip(profiles)
        .all(|((w, lang), prof)| {
            lang.accepts(w)
                && w.len() % modulus == anchor % modulus
                && (w.len() == anchor || prof.is_periodic_at(w.len(), *modulus))
        });
    if ok {
        Ok(())
    } else {
        Err(Error::Internal("MOD witness failed verification".into()))
    }
}

/// The automaton of `{w : |w| mod d ∈ residues}`.
pub fn residue_language(alphabet: &crate::Alphabet, d: usize, residues: &[usize]) -> Dfa {
    let mut delta = Vec::with_capacity(d * alphabet.len());
    for q in 0..d {
        delta.extend(std::iter::repeat_n((q + 1) % d, alphabet.len()));
    }
    Dfa::new(alphabet.clone(), d, 0, residues.iter().copied(), delta)
        .expect("well-formed residue automaton")
        .minimize()
}

/// Checks that the residue classes of `residues` cover the target and that
/// each one misses some cut; for a single cut this says that their union
/// separates.
pub fn verify_mod_cover(target: &Dfa, cuts: &[&Dfa], d: usize, residues: &[usize]) -> Result<bool> {
    let alphabet = target.alphabet();
    if !target.is_subset_of(&residue_language(alphabet, d, residues))? {
        return Ok(false);
    }
    for &r in residues {
        let class = residue_language(alphabet, d, &[r]);
        let mut missed = false;
        for cut in cuts {
            if class.is_disjoint_from(cut)? {
                missed = true;
                break;
            }
        }
        if !missed {
            return Ok(false);
        }
    }
    Ok(true)
}

fn decide(problem: Problem, target: &Dfa, cuts: &[&Dfa]) -> Result<Verdict> {
    for cut in cuts {
        target
            .alphabet()
            .ensure_same(cut.alphabet(), "MOD decider")?;
    }
    let langs: Vec<&Dfa> = std::iter::once(target)
        .chain(cuts.iter().copied())
        .collect();
    let profiles = langs
        .iter()
        .map(|l| LengthProfile::new(l))
        .collect::<Result<Vec<_>>>()?;
    let trace = json!({
        "threshold": profiles.iter().map(LengthProfile::tail).max(),
        "period": profiles.iter().map(LengthProfile::cycle).fold(1, lcm),
    });
    let (certificate, witness) = match analyze(&langs, &profiles)? {
        Ok(d) => {
            let residues = profiles[0].residues(d);
            if !verify_mod_cover(target, cuts, d, &residues)? {
                return Err(Error::Internal(format!(
                    "MOD certificate d={d} failed verification"
                )));
            }
            (Some(Certificate::Mod { d, residues }), None)
        }
        Err(witness) => {
            verify_witness(&langs, &profiles, &witness)?;
            (None, Some(witness))
        }
    };
    Ok(Verdict {
        problem,
        class: Class::Mod,
        outcome: Outcome::of(problem, certificate.is_some()),
        certificate,
        witness,
        trace,
        alphabet: target.alphabet().clone(),
    })
}

/// Decides whether some MOD language contains `l1` and avoids `l2`.
pub fn separate_mod(l1: &Dfa, l2: &Dfa) -> Result<Verdict> {
    decide(Problem::Separation, l1, &[l2])
}

/// Decides whether `target` has a finite MOD cover none of whose members
/// meets every cut.
pub fn cover_mod(target: &Dfa, cuts: &[Dfa]) -> Result<Verdict> {
    let cuts: Vec<&Dfa> = cuts.iter().collect();
    decide(Problem::Covering, target, &cuts)
}
