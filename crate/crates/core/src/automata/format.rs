//! The `.aut` automaton file format (UTF-8 JSON).
//!
//! ```json
//! {"alphabet":["a","b"],"states":2,"initial":0,"finals":[0],
//!  "delta":[[0,"a",1],[0,"b",0],[1,"a",0],[1,"b",1]]}
//! ```

use serde::{Deserialize, Serialize};

use super::{Alphabet, Dfa};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutFile {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub delta: Vec<(usize, String, usize)>,
}

impl AutFile {
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let alphabet = dfa.alphabet();
        let mut delta = Vec::with_capacity(dfa.state_count() * alphabet.len());
        for q in 0..dfa.state_count() {
            for a in 0..alphabet.len() {
                delta.push((q, alphabet.name(a).to_string(), dfa.step(q, a)));
            }
        }
        AutFile {
            alphabet: alphabet.names().into_iter().map(String::from).collect(),
            states: dfa.state_count(),
            initial: dfa.initial(),
            finals: dfa.finals().collect(),
            delta,
        }
    }

    pub fn to_dfa(&self) -> Result<Dfa> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let k = alphabet.len();
        let mut table: Vec<Option<usize>> = vec![None; self.states * k];
        for (q, name, t) in &self.delta {
            let a = alphabet.letter(name)?;
            if *q >= self.states {
                return Err(Error::InvalidAutomaton(format!(
                    "transition source {q} out of range"
                )));
            }
            let slot = &mut table[q * k + a];
            if slot.is_some_and(|old| old != *t) {
                return Err(Error::InvalidAutomaton(format!(
                    "state {q} has two transitions on `{name}`"
                )));
            }
            *slot = Some(*t);
        }
        let delta = table
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| {
                    Error::InvalidAutomaton(format!(
                        "transition table is not total: state {} lacks `{}`",
                        i / k,
                        alphabet.name(i % k)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(
            alphabet,
            self.states,
            self.initial,
            self.finals.iter().copied(),
            delta,
        )
    }
}

impl Dfa {
    pub fn to_aut_json(&self) -> String {
        serde_json::to_string(&AutFile::from_dfa(self)).expect("serializable")
    }

    pub fn to_aut_value(&self) -> serde_json::Value {
        serde_json::to_value(AutFile::from_dfa(self)).expect("serializable")
    }

    pub fn from_aut_json(text: &str) -> Result<Dfa> {
        let file: AutFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidAutomaton(format!("bad .aut json: {e}")))?;
        file.to_dfa()
    }
}
