use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::{Error, Result};

/// A letter name. Composite letters such as `(ab)` or `(P0,b)` are single symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::InvalidSymbol(name));
        }
        Ok(Symbol(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug)]
struct AlphabetInner {
    symbols: Vec<Symbol>,
    index: HashMap<String, usize>,
}

/// An ordered, non-empty, duplicate-free set of symbols.
///
/// The order is the canonical iteration order everywhere: symbol `i` of the
/// alphabet is the letter with index `i` in every [`Word`] over it.
#[derive(Clone, Debug)]
pub struct Alphabet {
    inner: Arc<AlphabetInner>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols = Vec::new();
        let mut index = HashMap::new();
        for name in names {
            let sym = Symbol::new(name)?;
            if index.insert(sym.0.clone(), symbols.len()).is_some() {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate symbol `{}`",
                    sym
                )));
            }
            symbols.push(sym);
        }
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        Ok(Alphabet {
            inner: Arc::new(AlphabetInner { symbols, index }),
        })
    }

    /// One symbol per character of `chars`, e.g. `Alphabet::from_chars("ab")`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    /// The unary alphabet `{#}` used for length projections.
    pub fn unary() -> Self {
        Alphabet::new(["#"]).expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.inner.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.inner.symbols
    }

    pub fn name(&self, letter: usize) -> &str {
        self.inner.symbols[letter].name()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Parses a word. `""` and `"_"` denote the empty word; whitespace
    /// separates symbols when present, otherwise symbols are matched
    /// greedily by longest name.
    pub fn word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "_" {
            return Ok(Word::empty());
        }
        if text.contains(char::is_whitespace) {
            return text.split_whitespace().map(|t| self.letter(t)).collect();
        }
        let mut letters = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols()
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.name()))
                .max_by_key(|(_, s)| s.name().len());
            match best {
                Some((i, s)) => {
                    letters.push(i);
                    rest = &rest[s.name().len()..];
                }
                None => {
                    let c = rest.chars().next().unwrap_or_default();
                    return Err(Error::UnknownSymbol(c.to_string()));
                }
            }
        }
        Ok(Word(letters))
    }

    /// Concatenated symbol names; the empty word renders as `""`.
    pub fn render(&self, word: &Word) -> String {
        word.iter().map(|&a| self.name(a)).collect()
    }

    pub fn ensure_same(&self, other: &Alphabet, context: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{context}: {{{}}} vs {{{}}}",
                self.names().join(","),
                other.names().join(",")
            )))
        }
    }

    pub fn names(&self) -> Vec<&str> {
        self.symbols().iter().map(Symbol::name).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.symbols == other.inner.symbols
    }
}

impl Eq for Alphabet {}

/// A finite sequence of letter indices over some [`Alphabet`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Length-lexicographic comparison (shorter first, then lexicographic).
    pub fn length_lex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}
