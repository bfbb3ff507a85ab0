//! Small pattern language for writing research instances.
//!
//! ```text
//! alt     := concat ('|' concat)*
//! concat  := postfix+
//! postfix := atom ('*' | '+' | '?')*
//! atom    := letter | '"' name '"' | '_' | '.' | '(' alt ')'
//! ```
//!
//! A bare letter is one character; quoted names denote composite symbols.
//! `_` is the empty word and `.` any single symbol. Whitespace is ignored.

use super::nfa::Nfa;
use super::{Alphabet, Dfa};
use crate::{Error, Limits, Result};

/// Parses `text` into the canonical minimal automaton over `alphabet`.
pub fn parse_pattern(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
        nfa: Nfa::new(alphabet.clone()),
    };
    let frag = parser.alt()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!("unexpected `{}`", parser.chars[parser.pos])));
    }
    let Parser { mut nfa, .. } = parser;
    nfa.add_initial(frag.start);
    nfa.set_final(frag.end);
    nfa.determinize(&Limits::default())
}

#[derive(Clone, Copy)]
struct Fragment {
    start: usize,
    end: usize,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
    nfa: Nfa,
}

const SPECIAL: &[char] = &['|', '*', '+', '?', '(', ')', '_', '.', '"'];

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Fragment> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        if branches.len() == 1 {
            return Ok(branches[0]);
        }
        let start = self.nfa.add_state();
        let end = self.nfa.add_state();
        for b in branches {
            self.nfa.add_eps(start, b.start);
            self.nfa.add_eps(b.end, end);
        }
        Ok(Fragment { start, end })
    }

    fn concat(&mut self) -> Result<Fragment> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        let Some(first) = parts.first().copied() else {
            return Err(self.error("expected an expression"));
        };
        let mut end = first.end;
        for p in &parts[1..] {
            self.nfa.add_eps(end, p.start);
            end = p.end;
        }
        Ok(Fragment {
            start: first.start,
            end,
        })
    }

    fn postfix(&mut self) -> Result<Fragment> {
        let mut frag = self.atom()?;
        while let Some(op @ ('*' | '+' | '?')) = self.peek() {
            self.pos += 1;
            let start = self.nfa.add_state();
            let end = self.nfa.add_state();
            self.nfa.add_eps(start, frag.start);
            self.nfa.add_eps(frag.end, end);
            if op != '+' {
                self.nfa.add_eps(start, end);
            }
            if op != '?' {
                self.nfa.add_eps(frag.end, frag.start);
            }
            frag = Fragment { start, end };
        }
        Ok(frag)
    }

    fn letters(&mut self, letters: &[usize]) -> Fragment {
        let start = self.nfa.add_state();
        let end = self.nfa.add_state();
        for &a in letters {
            self.nfa.add_edge(start, a, end);
        }
        Fragment { start, end }
    }

    fn atom(&mut self) -> Result<Fragment> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of pattern"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '_' => {
                self.pos += 1;
                let start = self.nfa.add_state();
                let end = self.nfa.add_state();
                self.nfa.add_eps(start, end);
                Ok(Fragment { start, end })
            }
            '.' => {
                self.pos += 1;
                let all: Vec<usize> = (0..self.alphabet.len()).collect();
                Ok(self.letters(&all))
            }
            '"' => {
                let open = self.pos;
                self.pos += 1;
                let close = self.chars[self.pos..]
                    .iter()
                    .position(|&c| c == '"')
                    .ok_or_else(|| Error::Syntax {
                        pos: open,
                        message: "unterminated quoted symbol".into(),
                    })?;
                let name: String = self.chars[self.pos..self.pos + close].iter().collect();
                self.pos += close + 1;
                let a = self.alphabet.letter(&name)?;
                Ok(self.letters(&[a]))
            }
            c if SPECIAL.contains(&c) => Err(self.error(format!("unexpected `{c}`"))),
            c => {
                self.pos += 1;
                let a = self.alphabet.letter(&c.to_string())?;
                Ok(self.letters(&[a]))
            }
        }
    }
}
