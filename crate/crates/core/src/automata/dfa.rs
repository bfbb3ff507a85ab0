use std::collections::{HashMap, VecDeque};

use super::nfa::Nfa;
use super::{Alphabet, Word};
use crate::{Error, Limits, Result};

/// Boolean combination used by [`Dfa::product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Intersect,
    Union,
    Difference,
}

impl BoolOp {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::Intersect => x && y,
            BoolOp::Union => x || y,
            BoolOp::Difference => x && !y,
        }
    }
}

/// Complete deterministic automaton over an explicit alphabet.
///
/// `delta[q * |A| + a]` is the successor of state `q` on letter `a`. Values
/// returned by [`Dfa::minimize`] are canonical: states are numbered in
/// breadth-first discovery order from the initial state, letters taken in
/// alphabet order, so equal languages give identical values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    states: usize,
    initial: usize,
    finals: Vec<bool>,
    delta: Vec<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        delta: Vec<usize>,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::InvalidAutomaton(
                "an automaton needs at least one state".into(),
            ));
        }
        if initial >= states {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range"
            )));
        }
        if delta.len() != states * alphabet.len() {
            return Err(Error::InvalidAutomaton(
                "transition table is not total".into(),
            ));
        }
        if let Some(&bad) = delta.iter().find(|&&t| t >= states) {
            return Err(Error::InvalidAutomaton(format!(
                "transition target {bad} out of range"
            )));
        }
        let mut flags = vec![false; states];
        for f in finals {
            if f >= states {
                return Err(Error::InvalidAutomaton(format!(
                    "final state {f} out of range"
                )));
            }
            flags[f] = true;
        }
        Ok(Dfa {
            alphabet,
            states,
            initial,
            finals: flags,
            delta,
        })
    }

    /// Builds an automaton from closures; `step` must stay in range.
    pub(crate) fn from_fn(
        alphabet: Alphabet,
        states: usize,
        initial: usize,
        is_final: impl Fn(usize) -> bool,
        mut step: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(states * k);
        for q in 0..states {
            for a in 0..k {
                let t = step(q, a);
                debug_assert!(t < states);
                delta.push(t);
            }
        }
        let finals = (0..states).map(is_final).collect();
        Dfa {
            alphabet,
            states,
            initial,
            finals,
            delta,
        }
    }

    /// Explores the automaton reachable from `start` through `step`, numbering
    /// discovered keys in BFS order.
    pub(crate) fn explore<K, F, S>(
        alphabet: Alphabet,
        start: K,
        is_final: F,
        mut step: S,
        limits: &Limits,
        what: &'static str,
    ) -> Result<Dfa>
    where
        K: Clone + Eq + std::hash::Hash,
        F: Fn(&K) -> bool,
        S: FnMut(&K, usize) -> K,
    {
        let k = alphabet.len();
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut keys = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta = Vec::new();
        let mut next = 0;
        while next < keys.len() {
            let key = keys[next].clone();
            for a in 0..k {
                let succ = step(&key, a);
                let id = match ids.get(&succ) {
                    Some(&i) => i,
                    None => {
                        let i = keys.len();
                        if i >= limits.max_states {
                            return Err(Error::CapExceeded {
                                what,
                                cap: limits.max_states,
                            });
                        }
                        ids.insert(succ.clone(), i);
                        keys.push(succ);
                        i
                    }
                };
                delta.push(id);
            }
            next += 1;
        }
        let finals = keys.iter().map(&is_final).collect();
        Ok(Dfa {
            alphabet,
            states: keys.len(),
            initial: 0,
            finals,
            delta,
        }
        .minimize())
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa {
            alphabet,
            states: 1,
            initial: 0,
            finals: vec![false],
            delta: vec![0; k],
        }
    }

    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa {
            alphabet,
            states: 1,
            initial: 0,
            finals: vec![true],
            delta: vec![0; k],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(q, _)| q)
    }

    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q * self.alphabet.len() + letter]
    }

    pub fn run_from(&self, q: usize, letters: &[usize]) -> usize {
        letters.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }

    /// The same automaton with the accepting set replaced.
    pub(crate) fn with_finals(&self, is_final: impl Fn(usize) -> bool) -> Dfa {
        Dfa {
            finals: (0..self.states).map(is_final).collect(),
            ..self.clone()
        }
    }

    pub fn complement(&self) -> Dfa {
        self.with_finals(|q| !self.finals[q]).minimize()
    }

    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.product_with(other, &Limits::default(), |x, y| op.apply(x, y))
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::Intersect)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::Union)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::Difference)
    }

    pub(crate) fn product_with(
        &self,
        other: &Dfa,
        limits: &Limits,
        accept: impl Fn(bool, bool) -> bool,
    ) -> Result<Dfa> {
        self.alphabet.ensure_same(&other.alphabet, "product")?;
        Dfa::explore(
            self.alphabet.clone(),
            (self.initial, other.initial),
            |&(p, q)| accept(self.finals[p], other.finals[q]),
            |&(p, q), a| (self.step(p, a), other.step(q, a)),
            limits,
            "product automaton",
        )
    }

    /// Canonical minimal automaton of the same language.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let colors: Vec<usize> = self.finals.iter().map(|&f| f as usize).collect();
        let class = refine_partition(self.states, k, &self.delta, &colors);
        // BFS over classes from the initial class gives the canonical numbering.
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut reps = vec![self.initial];
        number.insert(class[self.initial], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < reps.len() {
            let q = reps[i];
            for a in 0..k {
                let t = self.step(q, a);
                let n = number.len();
                let id = *number.entry(class[t]).or_insert_with(|| {
                    reps.push(t);
                    n
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = reps.iter().map(|&q| self.finals[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            states: reps.len(),
            initial: 0,
            finals,
            delta,
        }
    }

    /// Minimal automaton of the mirror language.
    pub fn reverse(&self) -> Result<Dfa> {
        self.reverse_with(&Limits::default())
    }

    pub fn reverse_with(&self, limits: &Limits) -> Result<Dfa> {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for _ in 0..self.states {
            nfa.add_state();
        }
        for q in self.finals() {
            nfa.add_initial(q);
        }
        nfa.set_final(self.initial);
        for q in 0..self.states {
            for a in 0..self.alphabet.len() {
                nfa.add_edge(self.step(q, a), a, q);
            }
        }
        nfa.determinize(limits)
    }

    /// Unary automaton over `{#}` accepting `#^n` iff some word of length `n` is accepted.
    pub fn length_projection(&self) -> Result<Dfa> {
        let mut nfa = Nfa::new(Alphabet::unary());
        for _ in 0..self.states {
            nfa.add_state();
        }
        nfa.add_initial(self.initial);
        for q in 0..self.states {
            if self.finals[q] {
                nfa.set_final(q);
            }
            let mut targets: Vec<usize> =
                (0..self.alphabet.len()).map(|a| self.step(q, a)).collect();
            targets.sort_unstable();
            targets.dedup();
            for t in targets {
                nfa.add_edge(q, 0, t);
            }
        }
        nfa.determinize(&Limits::default())
    }

    /// Automaton over `source` accepting `{w : h(w) ∈ L}` for the morphism
    /// `h` sending letter `b` of `source` to `images[b]`.
    pub fn inverse_morphism(&self, source: &Alphabet, images: &[Word]) -> Result<Dfa> {
        if images.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "morphism has {} images for {} letters",
                images.len(),
                source.len()
            )));
        }
        if let Some(bad) = images
            .iter()
            .flat_map(|w| w.iter())
            .find(|&&a| a >= self.alphabet.len())
        {
            return Err(Error::AlphabetMismatch(format!(
                "image letter {bad} outside target alphabet"
            )));
        }
        Ok(Dfa::from_fn(
            source.clone(),
            self.states,
            self.initial,
            |q| self.finals[q],
            |q, b| self.run_from(q, &images[b]),
        )
        .minimize())
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Length-lexicographically least accepted word.
    pub fn shortest_word(&self) -> Option<Word> {
        self.shortest_from(self.initial, |q| self.finals[q])
    }

    /// Length-lex least word leading from `start` to a state satisfying `target`.
    pub(crate) fn shortest_from(
        &self,
        start: usize,
        target: impl Fn(usize) -> bool,
    ) -> Option<Word> {
        let k = self.alphabet.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.states];
        let mut seen = vec![false; self.states];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(q) = queue.pop_front() {
            if target(q) {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    letters.push(a);
                    cur = p;
                }
                letters.reverse();
                return Some(Word::new(letters));
            }
            for a in 0..k {
                let t = self.step(q, a);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Some accepted word of length exactly `n` (lexicographically least).
    pub fn word_of_length(&self, n: usize) -> Option<Word> {
        let alive = self.alive_table(n);
        if !alive[n][self.initial] {
            return None;
        }
        let mut q = self.initial;
        let mut letters = Vec::with_capacity(n);
        for remaining in (1..=n).rev() {
            let a = (0..self.alphabet.len()).find(|&a| alive[remaining - 1][self.step(q, a)])?;
            letters.push(a);
            q = self.step(q, a);
        }
        Some(Word::new(letters))
    }

    /// `alive[j][q]`: some word of length exactly `j` leads from `q` to a final state.
    fn alive_table(&self, max_len: usize) -> Vec<Vec<bool>> {
        let mut alive = vec![self.finals.clone()];
        for j in 1..=max_len {
            let prev = &alive[j - 1];
            let row = (0..self.states)
                .map(|q| (0..self.alphabet.len()).any(|a| prev[self.step(q, a)]))
                .collect();
            alive.push(row);
        }
        alive
    }

    /// All accepted words of length at most `max_len`, in length-lex order.
    pub fn enumerate(&self, max_len: usize) -> Result<Vec<Word>> {
        self.enumerate_with(max_len, &Limits::default())
    }

    pub fn enumerate_with(&self, max_len: usize, limits: &Limits) -> Result<Vec<Word>> {
        if max_len > limits.max_enum_len {
            return Err(Error::CapExceeded {
                what: "enumeration length",
                cap: limits.max_enum_len,
            });
        }
        let alive = self.alive_table(max_len);
        let mut out = Vec::new();
        for len in 0..=max_len {
            let mut prefix = Vec::with_capacity(len);
            self.enumerate_len(self.initial, len, &alive, &mut prefix, &mut out, limits)?;
        }
        Ok(out)
    }

    fn enumerate_len(
        &self,
        q: usize,
        remaining: usize,
        alive: &[Vec<bool>],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Word>,
        limits: &Limits,
    ) -> Result<()> {
        if !alive[remaining][q] {
            return Ok(());
        }
        if remaining == 0 {
            if out.len() >= limits.max_enum_words {
                return Err(Error::CapExceeded {
                    what: "enumerated word count",
                    cap: limits.max_enum_words,
                });
            }
            out.push(Word::new(prefix.clone()));
            return Ok(());
        }
        for a in 0..self.alphabet.len() {
            prefix.push(a);
            self.enumerate_len(self.step(q, a), remaining - 1, alive, prefix, out, limits)?;
            prefix.pop();
        }
        Ok(())
    }

    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint_from(&self, other: &Dfa) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.alphabet.ensure_same(&other.alphabet, "equivalence")?;
        Ok(self.minimize() == other.minimize())
    }

    /// States reachable from the initial state.
    pub fn reachable_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for a in 0..self.alphabet.len() {
                let t = self.step(q, a);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coreachable_states(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.states];
        for q in 0..self.states {
            for a in 0..k {
                preds[self.step(q, a)].push(q);
            }
        }
        let mut live = self.finals.clone();
        let mut stack: Vec<usize> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }
}

/// Moore partition refinement; returns the class index of every state.
///
/// Only states reachable from anywhere matter to callers, so unreachable
/// states are refined like the rest and simply never discovered afterwards.
pub(crate) fn refine_partition(
    states: usize,
    k: usize,
    delta: &[usize],
    colors: &[usize],
) -> Vec<usize> {
    let mut class = normalize(colors);
    let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(states);
        for q in 0..states {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend((0..k).map(|a| class[delta[q * k + a]]));
            let n = ids.len();
            next.push(*ids.entry(sig).or_insert(n));
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

fn normalize(colors: &[usize]) -> Vec<usize> {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    colors
        .iter()
        .map(|&c| {
            let n = ids.len();
            *ids.entry(c).or_insert(n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn validates_construction() {
        let a = Alphabet::from_chars("a").unwrap();
        assert!(Dfa::new(a.clone(), 0, 0, [], vec![]).is_err());
        assert!(Dfa::new(a.clone(), 1, 1, [], vec![0]).is_err());
        assert!(Dfa::new(a.clone(), 1, 0, [3], vec![0]).is_err());
        assert!(Dfa::new(a.clone(), 2, 0, [], vec![0]).is_err());
        assert!(Dfa::new(a, 1, 0, [], vec![5]).is_err());
    }

    #[test]
    fn minimizes_chain_to_parity() {
        // 3-state chain for a(aa)*: 0 -a-> 1 -a-> 2 -a-> 1, finals {1}.
        let a = Alphabet::from_chars("a").unwrap();
        let d = Dfa::new(a, 3, 0, [1], vec![1, 2, 1]).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 2);
        // Brzozowski double reversal agrees.
        let b = d.reverse().unwrap().reverse().unwrap();
        assert_eq!(m, b);
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let a = Alphabet::from_chars("a").unwrap();
        let d = Dfa::new(a, 3, 0, [0, 2], vec![0, 2, 2]).unwrap();
        assert_eq!(d.minimize().state_count(), 1);
    }

    #[test]
    fn shortest_word_is_length_lex_least() {
        let a = ab();
        // A*b: accepted words b, ab, bb, ...
        let d = Dfa::new(a.clone(), 2, 0, [1], vec![0, 1, 0, 1]).unwrap();
        assert_eq!(a.render(&d.shortest_word().unwrap()), "b");
        assert!(Dfa::empty(a.clone()).is_empty());
        assert_eq!(Dfa::universal(a).shortest_word(), Some(Word::empty()));
    }

    #[test]
    fn enumerate_cap() {
        let d = Dfa::universal(ab());
        assert!(matches!(d.enumerate(1000), Err(Error::CapExceeded { .. })));
        let words = d.enumerate(1).unwrap();
        assert_eq!(words.len(), 3);
    }

    #[test]
    fn word_of_length() {
        let a = ab();
        let d = Dfa::new(a.clone(), 2, 0, [1], vec![0, 1, 0, 1]).unwrap();
        assert_eq!(a.render(&d.word_of_length(3).unwrap()), "aab");
        assert!(d.word_of_length(0).is_none());
    }

    #[test]
    fn product_rejects_mismatched_alphabets() {
        let d1 = Dfa::universal(ab());
        let d2 = Dfa::universal(Alphabet::from_chars("ac").unwrap());
        assert!(matches!(d1.intersect(&d2), Err(Error::AlphabetMismatch(_))));
    }
}
