//! Stably-formed words and the reduction that removes modular predicates.
//!
//! For `η: A* → M` with stability index `s`, the alphabet `S_η` has one
//! letter per element of `η(A^+)`. A word over `S_η` is stably formed when
//! every letter but the last lies in the stable semigroup `η(A^s)`, and
//! `sfl(L)` collects the stably-formed words whose evaluation lies in
//! `η(L)`. Separation and covering questions for `L` are answered on the
//! `sfl` images instead.

use std::collections::HashMap;

use crate::algebra::{ElementSet, MonoidMorphism, RecognizedFamily};
use crate::{Alphabet, Dfa, Error, Limits, Result, Word};

/// The alphabet `S_η = η(A^+)` with its evaluation map.
///
/// Letters are ordered by the length-lex order of their shortest non-empty
/// witnesses and rendered as `<witness>`.
#[derive(Clone, Debug)]
pub struct SfAlphabet {
    morphism: MonoidMorphism,
    s: usize,
    stable: ElementSet,
    alphabet: Alphabet,
    ev: Vec<usize>,
    symbol_of: Vec<Option<usize>>,
}

impl SfAlphabet {
    pub fn new(morphism: &MonoidMorphism) -> Result<Self> {
        let (s, stable) = morphism.stability_index();
        let mut ev: Vec<usize> = morphism.image_of_nonempty().to_vec();
        ev.sort_by(|&x, &y| {
            let wx = morphism.nonempty_witness(x).expect("element of the image");
            let wy = morphism.nonempty_witness(y).expect("element of the image");
            wx.length_lex_cmp(wy)
        });
        let names: Vec<String> = ev
            .iter()
            .map(|&x| {
                format!(
                    "<{}>",
                    morphism
                        .alphabet()
                        .render(morphism.nonempty_witness(x).unwrap())
                )
            })
            .collect();
        let mut symbol_of = vec![None; morphism.monoid().size()];
        for (i, &x) in ev.iter().enumerate() {
            symbol_of[x] = Some(i);
        }
        Ok(SfAlphabet {
            morphism: morphism.clone(),
            s,
            stable,
            alphabet: Alphabet::new(names)?,
            ev,
            symbol_of,
        })
    }

    pub fn morphism(&self) -> &MonoidMorphism {
        &self.morphism
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The stability index `s`.
    pub fn stability_index(&self) -> usize {
        self.s
    }

    /// `η(A^s)`.
    pub fn stable(&self) -> &ElementSet {
        &self.stable
    }

    pub fn ev(&self, symbol: usize) -> usize {
        self.ev[symbol]
    }

    /// The letter naming `x`, if `x ∈ η(A^+)`.
    pub fn symbol_for(&self, x: usize) -> Option<usize> {
        self.symbol_of[x]
    }

    /// Product of the evaluations of the letters of `w`.
    pub fn evaluate(&self, word: &Word) -> usize {
        let m = self.morphism.monoid();
        word.iter()
            .fold(m.identity(), |acc, &sym| m.mul(acc, self.ev[sym]))
    }

    pub fn is_stably_formed(&self, word: &Word) -> bool {
        word.len() < 2
            || word[..word.len() - 1]
                .iter()
                .all(|&sym| self.stable.contains(self.ev[sym]))
    }
}

/// The language of stably-formed words over `S_η`.
pub fn stably_formed(sf: &SfAlphabet) -> Dfa {
    // 0: only stable letters so far, 1: one unstable letter read last, 2: sink.
    Dfa::from_fn(
        sf.alphabet().clone(),
        3,
        0,
        |q| q < 2,
        |q, sym| match q {
            0 if sf.stable.contains(sf.ev(sym)) => 0,
            0 => 1,
            _ => 2,
        },
    )
    .minimize()
}

/// `sfl` for the accepting set `F = η(L)`.
pub fn sfl(sf: &SfAlphabet, accepting: &ElementSet) -> Result<Dfa> {
    let m = sf.morphism().monoid();
    Dfa::explore(
        sf.alphabet().clone(),
        Some((false, m.identity())),
        |state| state.is_some_and(|(_, x)| accepting.contains(x)),
        |state, sym| match *state {
            Some((false, x)) => Some((!sf.stable.contains(sf.ev(sym)), m.mul(x, sf.ev(sym)))),
            _ => None,
        },
        &Limits::default(),
        "stably-formed language",
    )
}

/// `sfl(L)`; errors with [`Error::NotRecognized`] when `η` does not recognize `L`.
pub fn sfl_of_language(sf: &SfAlphabet, lang: &Dfa) -> Result<Dfa> {
    let accepting = sf.morphism().image_of_language(lang)?;
    sfl(sf, &accepting)
}

/// A covering instance moved onto stably-formed words.
#[derive(Clone, Debug)]
pub struct SfInstance {
    pub family: RecognizedFamily,
    pub sf: SfAlphabet,
    /// The target's image first, then one image per cut, in order.
    pub images: Vec<(String, Dfa)>,
}

impl SfInstance {
    pub fn stability_index(&self) -> usize {
        self.sf.stability_index()
    }

    pub fn stable(&self) -> &ElementSet {
        self.sf.stable()
    }

    pub fn target(&self) -> &Dfa {
        &self.images[0].1
    }

    pub fn cuts(&self) -> impl Iterator<Item = &Dfa> {
        self.images[1..].iter().map(|(_, d)| d)
    }
}

/// Replaces `(target, cuts)` by `(sfl(target), sfl(cuts))`.
pub fn reduce_instance(
    family: &RecognizedFamily,
    target: &str,
    cuts: &[String],
) -> Result<SfInstance> {
    let sf = SfAlphabet::new(&family.morphism)?;
    let all = stably_formed(&sf);
    let mut images = Vec::with_capacity(cuts.len() + 1);
    for name in std::iter::once(target).chain(cuts.iter().map(String::as_str)) {
        let image = sfl(&sf, family.get(name)?)?;
        if !image.is_subset_of(&all)? {
            return Err(Error::Internal(format!(
                "sfl image of {name} is not stably formed"
            )));
        }
        images.push((name.to_string(), image));
    }
    Ok(SfInstance {
        family: family.clone(),
        sf,
        images,
    })
}

/// The substitution `α` sending each letter of `S_η` to a word over `A`
/// with the same evaluation.
///
/// Unstable letters get their shortest non-empty witness; stable letters
/// get the lexicographically least preimage of length exactly `d·s`.
pub fn alpha_morphism(sf: &SfAlphabet, d: usize) -> Result<Vec<Word>> {
    if d == 0 {
        return Err(Error::InvalidArgument("α needs d ≥ 1".into()));
    }
    let eta = sf.morphism();
    let n = d * sf.stability_index();
    let images = (0..sf.alphabet().len())
        .map(|sym| {
            let x = sf.ev(sym);
            let w = if sf.stable().contains(x) {
                lex_least_of_length(eta, x, n)
            } else {
                eta.nonempty_witness(x).cloned()
            };
            let w = w.ok_or_else(|| {
                Error::Internal(format!(
                    "no preimage for letter {}",
                    sf.alphabet().name(sym)
                ))
            })?;
            if eta.image(&w) != x {
                return Err(Error::Internal("α does not preserve evaluation".into()));
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(images)
}

/// Lexicographically least `w ∈ A^n` with `η(w) = x`, by backward layers.
fn lex_least_of_length(eta: &MonoidMorphism, x: usize, n: usize) -> Option<Word> {
    let m = eta.monoid();
    let k = eta.alphabet().len();
    // layers[j]: elements y with y·η(v) = x for some v of length j.
    let mut layers = vec![ElementSet::singleton(m.size(), x)];
    for j in 0..n {
        let prev = &layers[j];
        let next = ElementSet::from_elements(
            m.size(),
            (0..m.size()).filter(|&y| (0..k).any(|a| prev.contains(m.mul(y, eta.letter_image(a))))),
        );
        layers.push(next);
    }
    if !layers[n].contains(m.identity()) {
        return None;
    }
    let mut current = m.identity();
    let mut out = Vec::with_capacity(n);
    for pos in 0..n {
        let rest = &layers[n - pos - 1];
        let a = (0..k).find(|&a| rest.contains(m.mul(current, eta.letter_image(a))))?;
        out.push(a);
        current = m.mul(current, eta.letter_image(a));
    }
    Some(Word::new(out))
}

/// Applies a letter-to-word substitution.
pub fn expand(images: &[Word], word: &Word) -> Word {
    word.iter()
        .flat_map(|&sym| images[sym].iter().copied())
        .collect()
}

/// `ρ(w)`: cut `w` into blocks of length `s` and name each block by its image.
pub fn rho(sf: &SfAlphabet, word: &Word) -> Word {
    word.chunks(sf.stability_index())
        .map(|block| {
            sf.symbol_for(sf.morphism().image(block))
                .expect("non-empty blocks evaluate into η(A^+)")
        })
        .collect()
}

/// `ρ⁻¹(K)` as an automaton over `A`.
///
/// Equal to the block preimage of `σ⁻¹(K)` for the block size `s`; the
/// pending block is tracked by its image in `M` rather than letter by letter.
pub fn pull_back(sf: &SfAlphabet, k: &Dfa, limits: &Limits) -> Result<Dfa> {
    sf.alphabet().ensure_same(k.alphabet(), "pull back")?;
    let eta = sf.morphism();
    let m = eta.monoid();
    let s = sf.stability_index();
    let close = |q: usize, x: usize| k.step(q, sf.symbol_for(x).expect("non-empty block"));
    Dfa::explore(
        eta.alphabet().clone(),
        (k.initial(), m.identity(), 0usize),
        |&(q, x, len)| {
            if len == 0 {
                k.is_final(q)
            } else {
                k.is_final(close(q, x))
            }
        },
        |&(q, x, len), a| {
            let y = m.mul(x, eta.letter_image(a));
            if len + 1 == s {
                (close(q, y), m.identity(), 0)
            } else {
                (q, y, len + 1)
            }
        },
        limits,
        "pull back",
    )
}

/// `ρ⁻¹` applied to every language of a cover over `S_η`.
pub fn pull_back_cover(sf: &SfAlphabet, cover: &[Dfa], limits: &Limits) -> Result<Vec<Dfa>> {
    cover.iter().map(|k| pull_back(sf, k, limits)).collect()
}

/// Names of the elements of `set`: `S_η` symbols in alphabet order, then
/// any element outside `S_η` (only the identity can be) by its label.
pub fn element_names(sf: &SfAlphabet, set: &ElementSet) -> Vec<String> {
    let mut names: Vec<String> = (0..sf.alphabet().len())
        .filter(|&sym| set.contains(sf.ev(sym)))
        .map(|sym| sf.alphabet().name(sym).to_string())
        .collect();
    names.extend(
        set.iter()
            .filter(|&x| sf.symbol_for(x).is_none())
            .map(|x| sf.morphism().label(x)),
    );
    names
}

/// Maps each letter of the block alphabet `A_s` to the `S_η` letter of its image.
pub fn sigma_images(sf: &SfAlphabet, blocks: &crate::blocks::BlockAlphabet) -> Vec<Word> {
    let mut cache: HashMap<usize, usize> = HashMap::new();
    (0..blocks.alphabet().len())
        .map(|sym| {
            let x = sf.morphism().image(&blocks.block_of(sym));
            let letter = *cache
                .entry(x)
                .or_insert_with(|| sf.symbol_for(x).expect("non-empty block"));
            Word::new(vec![letter])
        })
        .collect()
}
