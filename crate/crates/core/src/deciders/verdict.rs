use serde_json::{json, Value};

use crate::{Alphabet, Dfa, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    Separation,
    Covering,
}

impl Problem {
    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Separation => "separation",
            Problem::Covering => "covering",
        }
    }
}

/// The class of candidate separators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Mod,
    /// MOD restricted to moduli up to a bound, decided by exhaustive search.
    ModBrute,
    Su,
    Fo,
    FoMod,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Mod => "mod",
            Class::ModBrute => "mod-brute",
            Class::Su => "su",
            Class::Fo => "fo",
            Class::FoMod => "fo-mod",
        }
    }

    pub fn parse(text: &str) -> Option<Class> {
        [
            Class::Mod,
            Class::ModBrute,
            Class::Su,
            Class::Fo,
            Class::FoMod,
        ]
        .into_iter()
        .find(|c| c.as_str() == text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Separable,
    NotSeparable,
    Coverable,
    NotCoverable,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Separable => "separable",
            Outcome::NotSeparable => "not-separable",
            Outcome::Coverable => "coverable",
            Outcome::NotCoverable => "not-coverable",
        }
    }

    /// Separable or coverable.
    pub fn is_positive(self) -> bool {
        matches!(self, Outcome::Separable | Outcome::Coverable)
    }

    pub(crate) fn of(problem: Problem, positive: bool) -> Outcome {
        match (problem, positive) {
            (Problem::Separation, true) => Outcome::Separable,
            (Problem::Separation, false) => Outcome::NotSeparable,
            (Problem::Covering, true) => Outcome::Coverable,
            (Problem::Covering, false) => Outcome::NotCoverable,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Length residues modulo `d`: the separator (or, for covering, each
    /// cover member) is a union of the listed classes.
    Mod { d: usize, residues: Vec<usize> },
    /// Suffix stratum `k`; separation also carries the separator itself.
    Su { k: usize, separator: Option<Dfa> },
    /// Existence only.
    Fo,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// One word lying in every input language.
    CommonWord { word: Word },
    /// One word per input language (target first), all lengths congruent
    /// modulo `modulus`; a word longer than the shortest one has a length
    /// whose whole progression `|w| + modulus·N` lies in its language.
    CongruentLengths { words: Vec<Word>, modulus: usize },
    /// For every `n`, `heads[i] · pump^n · tail` lies in input language `i`.
    PumpedSuffix {
        heads: Vec<Word>,
        pump: Word,
        tail: Word,
    },
    /// A pointlike set meeting every accepting set; `hits[i]` is the
    /// element shared with language `i`.
    Pointlike {
        set: Vec<usize>,
        hits: Vec<usize>,
        set_labels: Vec<String>,
        hit_labels: Vec<String>,
    },
    /// Two words related in the named way, one from each language.
    RelatedPair { words: [Word; 2], relation: String },
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Mod { d, residues } => json!({ "d": d, "residues": residues }),
            Certificate::Su { k, separator } => {
                json!({ "k": k, "separator": separator.as_ref().map(Dfa::to_aut_value) })
            }
            Certificate::Fo => json!({ "exists": true }),
        }
    }
}

impl Witness {
    /// JSON form, with words rendered over `alphabet`.
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let render = |w: &Word| alphabet.render(w);
        match self {
            Witness::CommonWord { word } => json!({ "kind": "common-word", "word": render(word) }),
            Witness::CongruentLengths { words, modulus } => json!({
                "kind": "congruent-lengths",
                "modulus": modulus,
                "words": words.iter().map(render).collect::<Vec<_>>(),
            }),
            Witness::PumpedSuffix { heads, pump, tail } => json!({
                "kind": "pumped-suffix",
                "heads": heads.iter().map(render).collect::<Vec<_>>(),
                "pump": render(pump),
                "tail": render(tail),
            }),
            Witness::Pointlike {
                set_labels,
                hit_labels,
                ..
            } => json!({
                "kind": "pointlike",
                "set": set_labels,
                "hits": hit_labels,
            }),
            Witness::RelatedPair { words, relation } => json!({
                "kind": "related-pair",
                "relation": relation,
                "words": words.iter().map(render).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Outcome of a separation or covering question with its evidence.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub problem: Problem,
    pub class: Class,
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
    pub trace: Value,
    /// Alphabet of the input languages, used to render words.
    pub alphabet: Alphabet,
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        self.outcome.is_positive()
    }

    pub fn to_json(&self) -> Value {
        let certificate = self.certificate.as_ref().map(Certificate::to_json);
        let witness = self.witness.as_ref().map(|w| w.to_json(&self.alphabet));
        json!({
            "problem": self.problem.as_str(),
            "class": self.class.as_str(),
            "outcome": self.outcome.as_str(),
            "certificate": certificate,
            "witness": witness,
            "trace": self.trace,
        })
    }
}
