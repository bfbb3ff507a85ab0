//! Alphabets, words and canonical deterministic automata.

mod alphabet;
mod dfa;
pub mod format;
mod nfa;
mod pattern;

pub use alphabet::{Alphabet, Symbol, Word};
pub(crate) use dfa::refine_partition;
pub use dfa::{BoolOp, Dfa};
pub(crate) use nfa::Nfa;
pub use pattern::parse_pattern;
