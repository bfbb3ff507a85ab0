//! Prefix taggings by congruence partitions.
//!
//! A partition of `A*` is always presented by a surjective morphism
//! `μ: A* → P`; its classes are the preimages of the elements of `P`, and
//! `[u]•[v] = [uv]` is the monoid product. The tagging `τ_P` relabels
//! position `i` of a word with the pair (class of the strict prefix before
//! `i`, letter at `i`).

use std::collections::BTreeMap;

use crate::algebra::{common_morphism, FiniteMonoid, MonoidMorphism};
use crate::{Alphabet, Dfa, Error, Limits, Result, Word};

/// A finite-index congruence on `A*` with named classes.
#[derive(Clone, Debug)]
pub struct CongruencePartition {
    morphism: MonoidMorphism,
    class_names: Vec<String>,
    tagged: Alphabet,
}

impl CongruencePartition {
    pub fn new(morphism: MonoidMorphism, class_names: Vec<String>) -> Result<Self> {
        let size = morphism.monoid().size();
        if class_names.len() != size {
            return Err(Error::InvalidArgument(format!(
                "{} class names for {size} classes",
                class_names.len()
            )));
        }
        if let Some(x) = (0..size).find(|&x| morphism.witness(x).is_none()) {
            return Err(Error::NotSurjective(x));
        }
        let base = morphism.alphabet();
        let tagged = Alphabet::new(
            class_names
                .iter()
                .flat_map(|q| base.symbols().iter().map(move |a| format!("({q},{a})"))),
        )?;
        Ok(CongruencePartition {
            morphism,
            class_names,
            tagged,
        })
    }

    pub fn with_class_names(self, class_names: Vec<String>) -> Result<Self> {
        CongruencePartition::new(self.morphism, class_names)
    }

    pub fn morphism(&self) -> &MonoidMorphism {
        &self.morphism
    }

    pub fn base_alphabet(&self) -> &Alphabet {
        self.morphism.alphabet()
    }

    /// The extended alphabet `P × A`, class-major.
    pub fn tagged_alphabet(&self) -> &Alphabet {
        &self.tagged
    }

    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_name(&self, class: usize) -> &str {
        &self.class_names[class]
    }

    pub fn class_of(&self, word: &[usize]) -> usize {
        self.morphism.image(word)
    }

    /// `[u]•[v]`.
    pub fn combine(&self, p: usize, q: usize) -> usize {
        self.morphism.monoid().mul(p, q)
    }

    pub fn tagged_symbol(&self, class: usize, letter: usize) -> usize {
        class * self.base_alphabet().len() + letter
    }

    pub fn untag_symbol(&self, symbol: usize) -> (usize, usize) {
        let k = self.base_alphabet().len();
        (symbol / k, symbol % k)
    }
}

/// The length-modulo-`d` partition `M0, …, M{d-1}`: every letter maps to `1` in `Z/d`.
pub fn mod_partition(alphabet: &Alphabet, d: usize) -> Result<CongruencePartition> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    let group = FiniteMonoid::cyclic(d)?;
    let morphism = MonoidMorphism::new(alphabet.clone(), group, vec![1 % d; alphabet.len()])?;
    CongruencePartition::new(morphism, (0..d).map(|i| format!("M{i}")).collect())
}

/// A congruence such that every input language is a union of its classes.
pub fn refine_to_congruence(langs: &[Dfa], limits: &Limits) -> Result<CongruencePartition> {
    let named: Vec<(String, Dfa)> = langs
        .iter()
        .enumerate()
        .map(|(i, d)| (format!("L{i}"), d.clone()))
        .collect();
    let family = common_morphism(&named, limits)?;
    let size = family.morphism.monoid().size();
    CongruencePartition::new(
        family.morphism,
        (0..size).map(|i| format!("C{i}")).collect(),
    )
}

/// `τ_P(w)`.
pub fn tag_word(part: &CongruencePartition, word: &Word) -> Word {
    let monoid = part.morphism().monoid();
    let mut class = monoid.identity();
    let mut out = Vec::with_capacity(word.len());
    for &a in word.iter() {
        out.push(part.tagged_symbol(class, a));
        class = monoid.mul(class, part.morphism().letter_image(a));
    }
    Word::new(out)
}

/// `λ_P`: replaces every tagged letter `(Q, a)` by `(P•Q, a)`.
pub fn shift(part: &CongruencePartition, class: usize, word: &Word) -> Word {
    word.iter()
        .map(|&sym| {
            let (q, a) = part.untag_symbol(sym);
            part.tagged_symbol(part.combine(class, q), a)
        })
        .collect()
}

/// `τ_P⁻¹(K)`.
pub fn untag_preimage(part: &CongruencePartition, tagged: &Dfa) -> Result<Dfa> {
    part.tagged_alphabet()
        .ensure_same(tagged.alphabet(), "untag preimage")?;
    let monoid = part.morphism().monoid();
    Dfa::explore(
        part.base_alphabet().clone(),
        (tagged.initial(), monoid.identity()),
        |&(q, _)| tagged.is_final(q),
        |&(q, p), a| {
            let next = tagged.step(q, part.tagged_symbol(p, a));
            (next, monoid.mul(p, part.morphism().letter_image(a)))
        },
        &Limits::default(),
        "untag preimage",
    )
}

/// `⋃_Q (τ_P⁻¹(K_Q) ∩ Q)`; classes absent from `per_class` contribute nothing.
pub fn lift(part: &CongruencePartition, per_class: &BTreeMap<usize, Dfa>) -> Result<Dfa> {
    let mut result = Dfa::empty(part.base_alphabet().clone());
    for (&class, tagged) in per_class {
        if class >= part.class_count() {
            return Err(Error::InvalidArgument(format!(
                "class {class} out of range"
            )));
        }
        let lifted = untag_preimage(part, tagged)?;
        let class_dfa = part
            .morphism()
            .preimage_dfa(&crate::ElementSet::singleton(part.class_count(), class));
        result = result.union(&lifted.intersect(&class_dfa)?)?;
    }
    Ok(result)
}

/// Canonical representative of the `≡SU_k`-class of `w`: `w` itself when
/// shorter than `k`, otherwise its length-`k` suffix.
pub fn su_canonical(k: usize, word: &Word) -> Word {
    if word.len() < k {
        word.clone()
    } else {
        Word::new(word[word.len() - k..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_pattern;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn mod_partition_classes() {
        let a = ab();
        let p1 = mod_partition(&a, 1).unwrap();
        assert_eq!(p1.class_count(), 1);
        let p3 = mod_partition(&a, 3).unwrap();
        assert_eq!(p3.class_of(&a.word("babbbaaa").unwrap()), 2);
        assert_eq!(p3.tagged_alphabet().len(), 6);
        let p2 = mod_partition(&a, 2).unwrap();
        assert_eq!(p2.class_of(&a.word("ab").unwrap()), 0);
        assert_eq!(p2.class_of(&a.word("aba").unwrap()), 1);
        assert!(mod_partition(&a, 0).is_err());
    }

    #[test]
    fn mod2_tagging() {
        let a = ab();
        let p2 = mod_partition(&a, 2).unwrap();
        let t = tag_word(&p2, &a.word("ab").unwrap());
        assert_eq!(p2.tagged_alphabet().render(&t), "(M0,a)(M1,b)");
        assert!(tag_word(&p2, &Word::empty()).is_empty());
    }

    #[test]
    fn shift_examples() {
        let a = ab();
        let p2 = mod_partition(&a, 2).unwrap();
        let t = p2.tagged_alphabet().word("(M0,a)(M1,b)").unwrap();
        assert_eq!(shift(&p2, 0, &t), t);
        assert_eq!(
            p2.tagged_alphabet().render(&shift(&p2, 1, &t)),
            "(M1,a)(M0,b)"
        );
    }

    #[test]
    fn untag_preimage_examples() {
        let a = ab();
        let p2 = mod_partition(&a, 2).unwrap();
        let tagged = p2.tagged_alphabet().clone();
        assert_eq!(
            untag_preimage(&p2, &Dfa::universal(tagged.clone())).unwrap(),
            Dfa::universal(a.clone())
        );
        assert_eq!(
            untag_preimage(&p2, &Dfa::empty(tagged.clone())).unwrap(),
            Dfa::empty(a.clone())
        );
        let k = parse_pattern("\"(M0,a)\".*", &tagged).unwrap();
        let expected = parse_pattern("a.*", &a).unwrap();
        assert_eq!(untag_preimage(&p2, &k).unwrap(), expected);
        assert!(untag_preimage(&p2, &Dfa::universal(a)).is_err());
    }

    #[test]
    fn lift_examples() {
        let a = ab();
        let p2 = mod_partition(&a, 2).unwrap();
        let full = Dfa::universal(p2.tagged_alphabet().clone());
        let all: BTreeMap<usize, Dfa> = [(0, full.clone()), (1, full)].into();
        assert_eq!(lift(&p2, &all).unwrap(), Dfa::universal(a.clone()));
        assert!(lift(&p2, &BTreeMap::new()).unwrap().is_empty());
        let bad: BTreeMap<usize, Dfa> = [(7, Dfa::universal(p2.tagged_alphabet().clone()))].into();
        assert!(lift(&p2, &bad).is_err());
    }

    #[test]
    fn refine_parity() {
        let a = Alphabet::from_chars("a").unwrap();
        let even = parse_pattern("(aa)*", &a).unwrap();
        let part = refine_to_congruence(&[even], &Limits::default()).unwrap();
        assert_eq!(part.class_count(), 2);
        let trivial = refine_to_congruence(&[Dfa::universal(a)], &Limits::default()).unwrap();
        assert_eq!(trivial.class_count(), 1);
    }

    #[test]
    fn su_canonical_examples() {
        let a = ab();
        assert_eq!(a.render(&su_canonical(2, &a.word("babb").unwrap())), "bb");
        assert_eq!(a.render(&su_canonical(5, &a.word("ab").unwrap())), "ab");
    }

    #[test]
    fn rejects_non_surjective_presentations() {
        let a = Alphabet::from_chars("a").unwrap();
        // a ↦ 0 in Z/2 never reaches 1.
        let m = MonoidMorphism::new(a, FiniteMonoid::cyclic(2).unwrap(), vec![0]).unwrap();
        assert_eq!(
            CongruencePartition::new(m, vec!["x".into(), "y".into()]).unwrap_err(),
            Error::NotSurjective(1)
        );
    }
}
