//! Block encoding: words over `A` read as words over the alphabet `A_d` of
//! non-empty words of length at most `d`.
//!
//! `μ_d` cuts a word into blocks of length `d` followed by one shorter tail
//! block when the length is not a multiple of `d`.

use crate::{Alphabet, Dfa, Error, Limits, Result, Word};

/// The alphabet `A_d`, with symbols `(w)` in length-lexicographic order of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAlphabet {
    base: Alphabet,
    d: usize,
    blocks: Alphabet,
    /// `offsets[c]` is the index of the first block of length `c + 1`.
    offsets: Vec<usize>,
}

impl BlockAlphabet {
    pub fn new(base: &Alphabet, d: usize) -> Result<Self> {
        Self::with_limits(base, d, &Limits::default())
    }

    pub fn with_limits(base: &Alphabet, d: usize, limits: &Limits) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "block size must be at least 1".into(),
            ));
        }
        let k = base.len();
        let mut offsets = Vec::with_capacity(d);
        let mut total = 0usize;
        let mut layer = 1usize;
        for _ in 0..d {
            offsets.push(total);
            layer = layer.saturating_mul(k);
            total = total.saturating_add(layer);
            if total > limits.max_states {
                return Err(Error::CapExceeded {
                    what: "block alphabet",
                    cap: limits.max_states,
                });
            }
        }
        let mut names = Vec::with_capacity(total);
        let mut words: Vec<String> = vec![String::new()];
        for _ in 0..d {
            words = words
                .iter()
                .flat_map(|w| base.symbols().iter().map(move |a| format!("{w}{a}")))
                .collect();
            names.extend(words.iter().map(|w| format!("({w})")));
        }
        Ok(BlockAlphabet {
            base: base.clone(),
            d,
            blocks: Alphabet::new(names)?,
            offsets,
        })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn block_size(&self) -> usize {
        self.d
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.blocks
    }

    /// Symbol index of the block `(w)`, for `1 ≤ |w| ≤ d`.
    pub fn symbol_of(&self, block: &[usize]) -> usize {
        debug_assert!(!block.is_empty() && block.len() <= self.d);
        let k = self.base.len();
        self.offsets[block.len() - 1] + block.iter().fold(0, |acc, &a| acc * k + a)
    }

    pub fn block_of(&self, symbol: usize) -> Word {
        let c = self.offsets.partition_point(|&o| o <= symbol);
        let k = self.base.len();
        let mut rank = symbol - self.offsets[c - 1];
        let mut letters = vec![0; c];
        for slot in letters.iter_mut().rev() {
            *slot = rank % k;
            rank /= k;
        }
        Word::new(letters)
    }

    /// `μ_d(w)`.
    pub fn encode(&self, word: &Word) -> Word {
        word.chunks(self.d)
            .map(|block| self.symbol_of(block))
            .collect()
    }

    /// Inverse of [`encode`](Self::encode) on its image.
    pub fn decode(&self, word: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for (i, &sym) in word.iter().enumerate() {
            if sym >= self.blocks.len() {
                return Err(Error::AlphabetMismatch(format!(
                    "letter {sym} outside A_{}",
                    self.d
                )));
            }
            let block = self.block_of(sym);
            if block.len() < self.d && i + 1 < word.len() {
                return Err(Error::NotInImage(self.blocks.render(word)));
            }
            out.extend_from_slice(&block);
        }
        Ok(Word::new(out))
    }
}

/// The unique factorization `w = uv` with `|u|` a multiple of `d` and `|v| < d`.
pub fn d_cut(d: usize, word: &Word) -> (Word, Word) {
    assert!(d >= 1, "block size must be at least 1");
    let split = word.len() - word.len() % d;
    (
        Word::new(word[..split].to_vec()),
        Word::new(word[split..].to_vec()),
    )
}

/// `μ_d⁻¹(K)` as an automaton over the base alphabet.
pub fn block_preimage(blocks: &BlockAlphabet, k: &Dfa, limits: &Limits) -> Result<Dfa> {
    blocks
        .alphabet()
        .ensure_same(k.alphabet(), "block preimage")?;
    let d = blocks.block_size();
    Dfa::explore(
        blocks.base().clone(),
        (k.initial(), Vec::<usize>::new()),
        |(q, buf)| {
            if buf.is_empty() {
                k.is_final(*q)
            } else {
                k.is_final(k.step(*q, blocks.symbol_of(buf)))
            }
        },
        |(q, buf), a| {
            let mut next = buf.clone();
            next.push(a);
            if next.len() == d {
                (k.step(*q, blocks.symbol_of(&next)), Vec::new())
            } else {
                (*q, next)
            }
        },
        limits,
        "block preimage",
    )
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ImageState {
    Reading(usize),
    Ended,
    Sink,
}

/// `μ_d(L)` as an automaton over `A_d`.
pub fn block_image(blocks: &BlockAlphabet, lang: &Dfa, limits: &Limits) -> Result<Dfa> {
    blocks.base().ensure_same(lang.alphabet(), "block image")?;
    let d = blocks.block_size();
    Dfa::explore(
        blocks.alphabet().clone(),
        ImageState::Reading(lang.initial()),
        |s| match s {
            ImageState::Reading(q) => lang.is_final(*q),
            ImageState::Ended => true,
            ImageState::Sink => false,
        },
        |s, sym| match s {
            ImageState::Reading(q) => {
                let block = blocks.block_of(sym);
                let r = lang.run_from(*q, &block);
                if block.len() == d {
                    ImageState::Reading(r)
                } else if lang.is_final(r) {
                    ImageState::Ended
                } else {
                    ImageState::Sink
                }
            }
            _ => ImageState::Sink,
        },
        limits,
        "block image",
    )
}
