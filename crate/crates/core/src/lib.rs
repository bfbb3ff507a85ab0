//! Separation and covering toolkit for regular languages.
//!
//! Languages enter and leave as canonical [`Dfa`]s over explicit alphabets.
//! On top of the automata layer sit finite monoids and recognizing
//! morphisms ([`algebra`]), prefix taggings by congruence partitions
//! ([`enrichment`]), the block encoding `μ_d` ([`blocks`]), the
//! stably-formed reduction that strips modular predicates away
//! ([`transfer`]), and exact deciders for the classes MOD, SU, FO(<) and
//! FO(<,MOD) ([`deciders`]).

pub mod algebra;
pub mod automata;
pub mod blocks;
pub mod deciders;
pub mod enrichment;
mod error;
pub mod random;
pub mod transfer;

pub use algebra::{ElementSet, FiniteMonoid, MonoidMorphism, RecognizedFamily};
pub use automata::{Alphabet, BoolOp, Dfa, Symbol, Word};
pub use error::{Error, Result};

/// Resource caps shared by every operation that can blow up.
///
/// Exceeding a cap is a hard error rather than a silent slowdown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest monoid built by transition-monoid closure.
    pub max_monoid: usize,
    /// Largest monoid the pointlike saturation accepts.
    pub max_pointlike_monoid: usize,
    /// Largest automaton built by subset or product constructions.
    pub max_states: usize,
    /// Longest word length accepted by enumeration.
    pub max_enum_len: usize,
    /// Most words a single enumeration may return.
    pub max_enum_words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_monoid: 4096,
            max_pointlike_monoid: 256,
            max_states: 1 << 20,
            max_enum_len: 24,
            max_enum_words: 1 << 21,
        }
    }
}
