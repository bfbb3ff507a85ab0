use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Dfa};
use crate::{Error, Limits, Result};

/// Nondeterministic automaton with ε-moves; only ever an intermediate.
#[derive(Clone, Debug)]
pub(crate) struct Nfa {
    alphabet: Alphabet,
    initial: Vec<usize>,
    finals: Vec<bool>,
    eps: Vec<Vec<usize>>,
    trans: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    pub(crate) fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            initial: Vec::new(),
            finals: Vec::new(),
            eps: Vec::new(),
            trans: Vec::new(),
        }
    }

    pub(crate) fn add_state(&mut self) -> usize {
        self.finals.push(false);
        self.eps.push(Vec::new());
        self.trans.push(Vec::new());
        self.finals.len() - 1
    }

    pub(crate) fn add_initial(&mut self, q: usize) {
        self.initial.push(q);
    }

    pub(crate) fn set_final(&mut self, q: usize) {
        self.finals[q] = true;
    }

    pub(crate) fn add_edge(&mut self, from: usize, letter: usize, to: usize) {
        self.trans[from].push((letter, to));
    }

    pub(crate) fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen = vec![false; self.finals.len()];
        let mut stack: Vec<usize> = Vec::new();
        for q in seeds {
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
        let mut out = Vec::new();
        while let Some(q) = stack.pop() {
            out.push(q);
            for &r in &self.eps[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subset construction followed by minimization.
    pub(crate) fn determinize(&self, limits: &Limits) -> Result<Dfa> {
        let k = self.alphabet.len();
        let start = self.closure(self.initial.iter().copied());
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let current = subsets[id].clone();
            for a in 0..k {
                let targets = current.iter().flat_map(|&q| {
                    self.trans[q]
                        .iter()
                        .filter(move |(l, _)| *l == a)
                        .map(|&(_, r)| r)
                });
                let next = self.closure(targets);
                let next_id = match ids.get(&next) {
                    Some(&i) => i,
                    None => {
                        let i = subsets.len();
                        if i >= limits.max_states {
                            return Err(Error::CapExceeded {
                                what: "subset construction",
                                cap: limits.max_states,
                            });
                        }
                        ids.insert(next.clone(), i);
                        subsets.push(next);
                        queue.push_back(i);
                        i
                    }
                };
                if delta.len() <= id * k + a {
                    delta.resize(id * k + a + 1, 0);
                }
                delta[id * k + a] = next_id;
            }
        }
        delta.resize(subsets.len() * k, 0);
        let finals: Vec<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|&q| self.finals[q]))
            .map(|(i, _)| i)
            .collect();
        Ok(Dfa::new(self.alphabet.clone(), subsets.len(), 0, finals, delta)?.minimize())
    }
}
