use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde_json::json;

use super::{ElementSet, FiniteMonoid};
use crate::automata::refine_partition;
use crate::{Alphabet, Dfa, Error, Limits, Result, Word};

/// A morphism `η: A* → M` given by the images of the letters.
///
/// Every element carries its length-lex least witness word (when it has a
/// preimage at all) so that certificates can name elements readably.
#[derive(Clone, Debug)]
pub struct MonoidMorphism {
    alphabet: Alphabet,
    monoid: Arc<FiniteMonoid>,
    letter_image: Vec<usize>,
    witness: Vec<Option<Word>>,
    nonempty_witness: Vec<Option<Word>>,
}

impl MonoidMorphism {
    pub fn new(
        alphabet: Alphabet,
        monoid: impl Into<Arc<FiniteMonoid>>,
        letter_image: Vec<usize>,
    ) -> Result<Self> {
        let monoid = monoid.into();
        if letter_image.len() != alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "{} letter images for {} letters",
                letter_image.len(),
                alphabet.len()
            )));
        }
        if let Some(&bad) = letter_image.iter().find(|&&x| x >= monoid.size()) {
            return Err(Error::InvalidArgument(format!(
                "letter image {bad} outside the monoid"
            )));
        }
        let witness = bfs_witnesses(&monoid, &letter_image, true);
        let nonempty_witness = bfs_witnesses(&monoid, &letter_image, false);
        Ok(MonoidMorphism {
            alphabet,
            monoid,
            letter_image,
            witness,
            nonempty_witness,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn letter_image(&self, letter: usize) -> usize {
        self.letter_image[letter]
    }

    pub fn image(&self, word: &[usize]) -> usize {
        word.iter().fold(self.monoid.identity(), |acc, &a| {
            self.monoid.mul(acc, self.letter_image[a])
        })
    }

    /// Length-lex least `w` with `η(w) = x`.
    pub fn witness(&self, x: usize) -> Option<&Word> {
        self.witness[x].as_ref()
    }

    /// Length-lex least non-empty `w` with `η(w) = x`.
    pub fn nonempty_witness(&self, x: usize) -> Option<&Word> {
        self.nonempty_witness[x].as_ref()
    }

    /// Human-readable element name: its witness word, `ε` for the empty word.
    pub fn label(&self, x: usize) -> String {
        match self.witness(x) {
            Some(w) if w.is_empty() => "ε".to_string(),
            Some(w) => self.alphabet.render(w),
            None => format!("#{x}"),
        }
    }

    /// `η(A*)`.
    pub fn reachable(&self) -> ElementSet {
        ElementSet::from_elements(
            self.monoid.size(),
            (0..self.monoid.size()).filter(|&x| self.witness[x].is_some()),
        )
    }

    /// `η(A)`.
    pub fn letter_images(&self) -> ElementSet {
        ElementSet::from_elements(self.monoid.size(), self.letter_image.iter().copied())
    }

    /// `η(A^+)`: elements reachable from letter images by right multiplication by letters.
    pub fn image_of_nonempty(&self) -> ElementSet {
        let s = ElementSet::from_elements(
            self.monoid.size(),
            (0..self.monoid.size()).filter(|&x| self.nonempty_witness[x].is_some()),
        );
        debug_assert!(self.monoid.is_closed(&s));
        s
    }

    /// Least `s ≥ 1` with `η(A^s) = η(A^{2s})`, together with `η(A^s)`.
    ///
    /// Computed in the powerset monoid as the least `s` with `X^s`
    /// idempotent, `X = η(A)`.
    pub fn stability_index(&self) -> (usize, ElementSet) {
        let x = self.letter_images();
        super::idempotent_power(&x, |a, b| self.monoid.product_sets(a, b))
    }

    /// `η(A^s)` for the stability index `s`; always a subsemigroup.
    pub fn stable_semigroup(&self) -> ElementSet {
        let (_, stable) = self.stability_index();
        assert!(
            self.monoid.is_closed(&stable),
            "stable semigroup must be product-closed"
        );
        stable
    }

    /// The automaton `η⁻¹(F)` over the morphism's alphabet.
    pub fn preimage_dfa(&self, accepting: &ElementSet) -> Dfa {
        let states = self.monoid.size();
        let id = self.monoid.identity();
        Dfa::from_fn(
            self.alphabet.clone(),
            states,
            id,
            |x| accepting.contains(x),
            |x, a| self.monoid.mul(x, self.letter_image[a]),
        )
        .minimize()
    }

    /// `η(L)` for a language recognized by `η`; errors if `η` does not recognize `L`.
    pub fn image_of_language(&self, dfa: &Dfa) -> Result<ElementSet> {
        self.alphabet
            .ensure_same(dfa.alphabet(), "image of language")?;
        let accepting = ElementSet::from_elements(
            self.monoid.size(),
            (0..self.monoid.size())
                .filter(|&x| self.witness[x].as_ref().is_some_and(|w| dfa.accepts(w))),
        );
        if self.preimage_dfa(&accepting) != dfa.minimize() {
            return Err(Error::NotRecognized);
        }
        Ok(accepting)
    }

    /// The `.mon` dump: size, identity, table, letter images and witnesses.
    pub fn to_mon_value(&self) -> serde_json::Value {
        let letter_image: serde_json::Map<String, serde_json::Value> = (0..self.alphabet.len())
            .map(|a| {
                (
                    self.alphabet.name(a).to_string(),
                    json!(self.letter_image[a]),
                )
            })
            .collect();
        let witness: Vec<Option<String>> = self
            .witness
            .iter()
            .map(|w| w.as_ref().map(|w| self.alphabet.render(w)))
            .collect();
        json!({
            "size": self.monoid.size(),
            "identity": self.monoid.identity(),
            "table": self.monoid.table_rows(),
            "letter_image": letter_image,
            "witness": witness,
        })
    }
}

fn bfs_witnesses(
    monoid: &FiniteMonoid,
    letter_image: &[usize],
    allow_empty: bool,
) -> Vec<Option<Word>> {
    let mut witness: Vec<Option<Word>> = vec![None; monoid.size()];
    let mut queue = VecDeque::new();
    if allow_empty {
        witness[monoid.identity()] = Some(Word::empty());
        queue.push_back(monoid.identity());
    } else {
        for (a, &x) in letter_image.iter().enumerate() {
            if witness[x].is_none() {
                witness[x] = Some(Word::new(vec![a]));
                queue.push_back(x);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for (a, &img) in letter_image.iter().enumerate() {
            let y = monoid.mul(x, img);
            if witness[y].is_none() {
                let mut w = witness[x].clone().expect("queued elements have witnesses");
                w.push(a);
                witness[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    witness
}

/// One shared morphism with a named accepting subset per input language.
#[derive(Clone, Debug)]
pub struct RecognizedFamily {
    pub morphism: MonoidMorphism,
    pub accepting: Vec<(String, ElementSet)>,
}

impl RecognizedFamily {
    pub fn get(&self, name: &str) -> Result<&ElementSet> {
        self.accepting
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::NameNotFound(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.accepting.iter().map(|(n, _)| n.as_str())
    }

    /// The language `η⁻¹(F)` of a named entry.
    pub fn language(&self, name: &str) -> Result<Dfa> {
        Ok(self.morphism.preimage_dfa(self.get(name)?))
    }
}

/// Transformation monoid of a complete automaton: elements are the distinct
/// state maps induced by words, discovered breadth-first so element `i` has
/// the `i`-th smallest witness in length-lex order. Returns the morphism and
/// the transformations themselves.
fn transformation_monoid(
    alphabet: &Alphabet,
    states: usize,
    step: impl Fn(usize, usize) -> usize,
    limits: &Limits,
) -> Result<(MonoidMorphism, Vec<Vec<usize>>)> {
    let k = alphabet.len();
    let letters: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..states).map(|q| step(q, a)).collect())
        .collect();
    let identity: Vec<usize> = (0..states).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    index.insert(identity, 0);
    let mut right: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (a, letter) in letters.iter().enumerate() {
            let next: Vec<usize> = elements[i].iter().map(|&q| letter[q]).collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= limits.max_monoid {
                        return Err(Error::MonoidTooLarge {
                            what: "transition monoid",
                            cap: limits.max_monoid,
                        });
                    }
                    index.insert(next.clone(), id);
                    elements.push(next);
                    parent.push(Some((i, a)));
                    id
                }
            };
            right.push(id);
        }
        i += 1;
    }
    let m = elements.len();
    // x·y = (x·parent(y))·letter, filled in discovery order of y.
    let mut table = vec![0usize; m * m];
    for x in 0..m {
        table[x * m] = x;
    }
    for y in 1..m {
        let (py, a) = parent[y].expect("non-identity elements have parents");
        for x in 0..m {
            table[x * m + y] = right[table[x * m + py] * k + a];
        }
    }
    let monoid = FiniteMonoid::from_flat_table(m, table, 0);
    let letter_image = (0..k).map(|a| right[a]).collect();
    let morphism = MonoidMorphism::new(alphabet.clone(), monoid, letter_image)?;
    Ok((morphism, elements))
}

/// Transition monoid of `dfa` with the accepting subset `F` such that `L = η⁻¹(F)`.
///
/// On a minimal automaton this is the syntactic monoid.
pub fn transition_monoid(dfa: &Dfa, limits: &Limits) -> Result<(MonoidMorphism, ElementSet)> {
    let (morphism, maps) = transformation_monoid(
        dfa.alphabet(),
        dfa.state_count(),
        |q, a| dfa.step(q, a),
        limits,
    )?;
    let accepting = ElementSet::from_elements(
        maps.len(),
        (0..maps.len()).filter(|&x| dfa.is_final(maps[x][dfa.initial()])),
    );
    Ok((morphism, accepting))
}

/// One morphism recognizing every input: the transition monoid of the
/// product automaton, reduced by the joint acceptance vector.
pub fn common_morphism(dfas: &[(String, Dfa)], limits: &Limits) -> Result<RecognizedFamily> {
    let Some((_, first)) = dfas.first() else {
        return Err(Error::InvalidArgument(
            "common morphism of an empty family".into(),
        ));
    };
    let alphabet = first.alphabet().clone();
    for (name, d) in dfas {
        alphabet.ensure_same(d.alphabet(), name)?;
    }
    let k = alphabet.len();
    // Reachable part of the product.
    let start: Vec<usize> = dfas.iter().map(|(_, d)| d.initial()).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut tuples = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        for a in 0..k {
            let next: Vec<usize> = tuples[i]
                .iter()
                .zip(dfas)
                .map(|(&q, (_, d))| d.step(q, a))
                .collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = tuples.len();
                    if id >= limits.max_states {
                        return Err(Error::CapExceeded {
                            what: "product automaton",
                            cap: limits.max_states,
                        });
                    }
                    index.insert(next.clone(), id);
                    tuples.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let acceptance = |t: &[usize]| -> Vec<bool> {
        t.iter()
            .zip(dfas)
            .map(|(&q, (_, d))| d.is_final(q))
            .collect()
    };
    let mut color_ids: HashMap<Vec<bool>, usize> = HashMap::new();
    let colors: Vec<usize> = tuples
        .iter()
        .map(|t| {
            let n = color_ids.len();
            *color_ids.entry(acceptance(t)).or_insert(n)
        })
        .collect();
    let class = refine_partition(tuples.len(), k, &delta, &colors);
    let classes = class.iter().copied().max().map_or(0, |c| c + 1);
    let mut rep = vec![usize::MAX; classes];
    for (q, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let (morphism, maps) = transformation_monoid(
        &alphabet,
        classes,
        |c, a| class[delta[rep[c] * k + a]],
        limits,
    )?;
    let init = class[0];
    let accepting = dfas
        .iter()
        .enumerate()
        .map(|(j, (name, _))| {
            let f = ElementSet::from_elements(
                maps.len(),
                (0..maps.len()).filter(|&x| acceptance(&tuples[rep[maps[x][init]]])[j]),
            );
            (name.clone(), f)
        })
        .collect();
    Ok(RecognizedFamily {
        morphism,
        accepting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_pattern;

    fn unary() -> Alphabet {
        Alphabet::from_chars("a").unwrap()
    }

    fn parity() -> (MonoidMorphism, ElementSet) {
        let d = parse_pattern("(aa)*", &unary()).unwrap();
        transition_monoid(&d, &Limits::default()).unwrap()
    }

    #[test]
    fn parity_transition_monoid() {
        let (eta, f) = parity();
        assert_eq!(eta.monoid().size(), 2);
        assert_eq!(eta.monoid().identity(), 0);
        assert_eq!(eta.letter_image(0), 1);
        assert_eq!(f.to_vec(), vec![0]);
        // enumerate transformations of all words ≤ 4: two distinct ones.
        let words = Dfa::universal(unary()).enumerate(4).unwrap();
        let images: std::collections::BTreeSet<usize> =
            words.iter().map(|w| eta.image(w)).collect();
        assert_eq!(images.len(), 2);
    }

    #[test]
    fn trivial_monoid() {
        let (eta, f) = transition_monoid(&Dfa::universal(unary()), &Limits::default()).unwrap();
        assert_eq!(eta.monoid().size(), 1);
        assert_eq!(f.to_vec(), vec![0]);
        assert_eq!(eta.stability_index().0, 1);
    }

    #[test]
    fn stability_examples() {
        let (eta, _) = parity();
        let (s, stable) = eta.stability_index();
        assert_eq!(s, 2);
        assert_eq!(stable.to_vec(), vec![0]);
        assert_eq!(eta.stable_semigroup(), stable);
        assert_eq!(eta.image_of_nonempty().to_vec(), vec![0, 1]);

        // η(a) = 1, η(b) = 0 onto U1 = {1, 0}: X = {1, 0} is idempotent.
        let u1 = FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        let eta = MonoidMorphism::new(Alphabet::from_chars("ab").unwrap(), u1, vec![0, 1]).unwrap();
        assert_eq!(eta.stability_index().0, 1);
    }

    #[test]
    fn witnesses_are_length_lex_least() {
        let (eta, _) = parity();
        assert_eq!(eta.label(0), "ε");
        assert_eq!(eta.label(1), "a");
        assert_eq!(unary().render(eta.nonempty_witness(0).unwrap()), "aa");
    }

    #[test]
    fn common_morphism_of_parity_pair() {
        let a = unary();
        let even = parse_pattern("(aa)*", &a).unwrap();
        let odd = parse_pattern("a(aa)*", &a).unwrap();
        let fam = common_morphism(
            &[("even".into(), even.clone()), ("odd".into(), odd)],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(fam.morphism.monoid().size(), 2);
        assert_eq!(fam.get("even").unwrap().to_vec(), vec![0]);
        assert_eq!(fam.get("odd").unwrap().to_vec(), vec![1]);
        assert!(matches!(fam.get("none"), Err(Error::NameNotFound(_))));
        assert_eq!(fam.language("even").unwrap(), even);
    }

    #[test]
    fn image_of_language_detects_non_recognition() {
        let (eta, f) = parity();
        let even = parse_pattern("(aa)*", &unary()).unwrap();
        assert_eq!(eta.image_of_language(&even).unwrap(), f);
        let triple = parse_pattern("(aaa)*", &unary()).unwrap();
        assert_eq!(eta.image_of_language(&triple), Err(Error::NotRecognized));
    }

    #[test]
    fn monoid_cap() {
        let a = Alphabet::from_chars("ab").unwrap();
        let d = parse_pattern("(a|b)*a(a|b)(a|b)", &a).unwrap();
        let limits = Limits {
            max_monoid: 4,
            ..Limits::default()
        };
        assert!(matches!(
            transition_monoid(&d, &limits),
            Err(Error::MonoidTooLarge { .. })
        ));
    }
}
