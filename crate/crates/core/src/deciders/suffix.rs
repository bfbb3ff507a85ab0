//! Separation and covering by suffix languages.
//!
//! Two words are `≡SU_k`-equivalent when they are equal or share their
//! length-`k` suffix. Reading the inputs backwards turns common suffixes
//! into common prefixes, so the question becomes whether the product of the
//! reversed automata, restricted to tuples from which every component can
//! still accept, has arbitrarily long paths.

use std::collections::HashMap;

use serde_json::json;

use super::verdict::{Certificate, Class, Outcome, Problem, Verdict, Witness};
use crate::{Dfa, Error, Limits, Result, Word};

enum Analysis {
    Common(Word),
    Pumped {
        heads: Vec<Word>,
        pump: Word,
        tail: Word,
    },
    Bounded {
        k: usize,
    },
}

/// Live part of the product of the reversed automata.
struct LiveGraph {
    reversed: Vec<Dfa>,
    live: Vec<Vec<bool>>,
    tuples: Vec<Vec<usize>>,
    /// `edges[t]` lists `(letter, successor)` for live successors.
    edges: Vec<Vec<(usize, usize)>>,
}

impl LiveGraph {
    fn build(langs: &[&Dfa], limits: &Limits) -> Result<Option<LiveGraph>> {
        let reversed = langs
            .iter()
            .map(|l| l.reverse_with(limits))
            .collect::<Result<Vec<_>>>()?;
        let live: Vec<Vec<bool>> = reversed.iter().map(Dfa::coreachable_states).collect();
        let is_live = |t: &[usize]| t.iter().zip(&live).all(|(&q, l)| l[q]);
        let start: Vec<usize> = reversed.iter().map(Dfa::initial).collect();
        if !is_live(&start) {
            return Ok(None);
        }
        let k = langs[0].alphabet().len();
        let mut index = HashMap::from([(start.clone(), 0)]);
        let mut tuples = vec![start];
        let mut edges = Vec::new();
        let mut i = 0;
        while i < tuples.len() {
            let mut out = Vec::new();
            for a in 0..k {
                let next: Vec<usize> = tuples[i]
                    .iter()
                    .zip(&reversed)
                    .map(|(&q, b)| b.step(q, a))
                    .collect();
                if !is_live(&next) {
                    continue;
                }
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = tuples.len();
                        if id >= limits.max_states {
                            return Err(Error::CapExceeded {
                                what: "reversed product",
                                cap: limits.max_states,
                            });
                        }
                        index.insert(next.clone(), id);
                        tuples.push(next);
                        id
                    }
                };
                out.push((a, id));
            }
            edges.push(out);
            i += 1;
        }
        Ok(Some(LiveGraph {
            reversed,
            live,
            tuples,
            edges,
        }))
    }

    /// A path `prefix` from the root to a node on a cycle labelled `cycle`.
    fn find_cycle(&self) -> Option<(Vec<usize>, Vec<usize>, usize)> {
        let n = self.tuples.len();
        let mut color = vec![0u8; n];
        let mut on_path: Vec<usize> = vec![usize::MAX; n];
        // (node, next edge index); `letters[i]` leads from stack[i] to stack[i + 1].
        let mut stack = vec![(0usize, 0usize)];
        let mut letters: Vec<usize> = Vec::new();
        color[0] = 1;
        on_path[0] = 0;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&(a, w)) = self.edges[v].get(*next) {
                *next += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        on_path[w] = stack.len();
                        stack.push((w, 0));
                        letters.push(a);
                    }
                    1 => {
                        let at = on_path[w];
                        let prefix = letters[..at].to_vec();
                        let mut cycle = letters[at..].to_vec();
                        cycle.push(a);
                        return Some((prefix, cycle, w));
                    }
                    _ => {}
                }
            } else {
                color[v] = 2;
                on_path[v] = usize::MAX;
                stack.pop();
                letters.pop();
            }
        }
        None
    }

    /// Number of edges on the longest path from the root; the graph is acyclic.
    fn longest_path(&self) -> usize {
        let n = self.tuples.len();
        let mut depth: Vec<Option<usize>> = vec![None; n];
        let mut stack = vec![(0usize, false)];
        while let Some((v, expanded)) = stack.pop() {
            if depth[v].is_some() {
                continue;
            }
            if expanded {
                let d = self.edges[v]
                    .iter()
                    .map(|&(_, w)| depth[w].expect("children first") + 1)
                    .max();
                depth[v] = Some(d.unwrap_or(0));
            } else {
                stack.push((v, true));
                stack.extend(
                    self.edges[v]
                        .iter()
                        .filter(|&&(_, w)| depth[w].is_none())
                        .map(|&(_, w)| (w, false)),
                );
            }
        }
        depth[0].unwrap()
    }

    /// Whether some live tuple sits at depth exactly `k`.
    fn reaches_depth(&self, k: usize) -> bool {
        let mut frontier = vec![0usize];
        for _ in 0..k {
            let mut next: Vec<usize> = frontier
                .iter()
                .flat_map(|&v| self.edges[v].iter().map(|&(_, w)| w))
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                return false;
            }
            frontier = next;
        }
        !frontier.is_empty()
    }
}

fn common_word(langs: &[&Dfa]) -> Result<Option<Word>> {
    let mut inter = langs[0].clone();
    for l in &langs[1..] {
        inter = inter.intersect(l)?;
    }
    Ok(inter.shortest_word())
}

fn analyze(langs: &[&Dfa], limits: &Limits) -> Result<Analysis> {
    if let Some(w) = common_word(langs)? {
        return Ok(Analysis::Common(w));
    }
    let Some(graph) = LiveGraph::build(langs, limits)? else {
        return Ok(Analysis::Bounded { k: 0 });
    };
    if let Some((prefix, cycle, node)) = graph.find_cycle() {
        let heads = graph
            .reversed
            .iter()
            .zip(&graph.tuples[node])
            .map(|(b, &q)| {
                b.shortest_from(q, |f| b.is_final(f))
                    .expect("live state")
                    .reversed()
            })
            .collect();
        debug_assert!(graph.tuples[node]
            .iter()
            .zip(&graph.live)
            .all(|(&q, l)| l[q]));
        return Ok(Analysis::Pumped {
            heads,
            pump: Word::new(cycle).reversed(),
            tail: Word::new(prefix).reversed(),
        });
    }
    let k = graph.longest_path() + 1;
    if graph.reaches_depth(k) || !graph.reaches_depth(k - 1) {
        return Err(Error::Internal(format!("suffix bound {k} is not tight")));
    }
    Ok(Analysis::Bounded { k })
}

/// `head · pump^n · tail ∈ L` for every `n`, checked on the orbit of states.
fn pumps_into(lang: &Dfa, head: &Word, pump: &Word, tail: &Word) -> bool {
    let mut q = lang.run_from(lang.initial(), head);
    let mut seen = vec![false; lang.state_count()];
    while !seen[q] {
        seen[q] = true;
        if !lang.is_final(lang.run_from(q, tail)) {
            return false;
        }
        q = lang.run_from(q, pump);
    }
    true
}

/// The least `SU_k` language containing `lang`: its words shorter than `k`
/// together with every word ending in a length-`k` suffix of `lang`.
pub fn su_closure(lang: &Dfa, k: usize, limits: &Limits) -> Result<Dfa> {
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Key {
        Counting(usize, usize),
        Full,
        Dead,
    }
    let rev = lang.reverse_with(limits)?;
    let live = rev.coreachable_states();
    let enter = |q: usize, j: usize| {
        if !live[q] {
            Key::Dead
        } else if j == k {
            Key::Full
        } else {
            Key::Counting(q, j)
        }
    };
    let reversed_closure = Dfa::explore(
        lang.alphabet().clone(),
        enter(rev.initial(), 0),
        |key| match key {
            Key::Counting(q, _) => rev.is_final(*q),
            Key::Full => true,
            Key::Dead => false,
        },
        |key, a| match key {
            Key::Counting(q, j) => enter(rev.step(*q, a), j + 1),
            other => other.clone(),
        },
        limits,
        "suffix closure",
    )?;
    reversed_closure.reverse_with(limits)
}

fn decide(problem: Problem, target: &Dfa, cuts: &[&Dfa], limits: &Limits) -> Result<Verdict> {
    for cut in cuts {
        target
            .alphabet()
            .ensure_same(cut.alphabet(), "SU decider")?;
    }
    let alphabet = target.alphabet().clone();
    let verdict = |certificate: Option<Certificate>, witness: Option<Witness>, trace| Verdict {
        problem,
        class: Class::Su,
        outcome: Outcome::of(problem, certificate.is_some()),
        certificate,
        witness,
        trace,
        alphabet: alphabet.clone(),
    };
    if cuts.is_empty() {
        // No cut can be avoided, so only the empty cover of an empty target works.
        return Ok(match target.shortest_word() {
            None => verdict(
                Some(Certificate::Su {
                    k: 0,
                    separator: None,
                }),
                None,
                json!({}),
            ),
            Some(word) => verdict(None, Some(Witness::CommonWord { word }), json!({})),
        });
    }
    let langs: Vec<&Dfa> = std::iter::once(target)
        .chain(cuts.iter().copied())
        .collect();
    match analyze(&langs, limits)? {
        Analysis::Common(word) => {
            if !langs.iter().all(|l| l.accepts(&word)) {
                return Err(Error::Internal(
                    "common word witness failed verification".into(),
                ));
            }
            Ok(verdict(
                None,
                Some(Witness::CommonWord { word }),
                json!({ "reason": "common word" }),
            ))
        }
        Analysis::Pumped { heads, pump, tail } => {
            if pump.is_empty()
                || !langs
                    .iter()
                    .zip(&heads)
                    .all(|(l, h)| pumps_into(l, h, &pump, &tail))
            {
                return Err(Error::Internal(
                    "pumped suffix witness failed verification".into(),
                ));
            }
            Ok(verdict(
                None,
                Some(Witness::PumpedSuffix { heads, pump, tail }),
                json!({ "reason": "unbounded common suffixes" }),
            ))
        }
        Analysis::Bounded { k } => {
            let separator = if cuts.len() == 1 {
                let sep = su_closure(target, k, limits)?;
                if !target.is_subset_of(&sep)? || !sep.is_disjoint_from(cuts[0])? {
                    return Err(Error::Internal(format!(
                        "SU separator for k={k} failed verification"
                    )));
                }
                Some(sep)
            } else {
                None
            };
            Ok(verdict(
                Some(Certificate::Su { k, separator }),
                None,
                json!({ "k": k }),
            ))
        }
    }
}

/// Decides whether some SU language contains `l1` and avoids `l2`; a
/// positive answer carries the least `k` and the coarsest `SU_k` separator.
pub fn separate_su(l1: &Dfa, l2: &Dfa, limits: &Limits) -> Result<Verdict> {
    decide(Problem::Separation, l1, &[l2], limits)
}

/// Covering version of [`separate_su`]: the cover is the set of
/// `≡SU_k`-classes meeting the target.
pub fn cover_su(target: &Dfa, cuts: &[Dfa], limits: &Limits) -> Result<Verdict> {
    let cuts: Vec<&Dfa> = cuts.iter().collect();
    decide(Problem::Covering, target, &cuts, limits)
}
