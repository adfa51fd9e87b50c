//! Expression-to-automaton translations.
//!
//! Finite expressions go through the position (Glushkov) automaton, which is
//! ε-free by construction: one initial state plus one state per symbol
//! occurrence. ω-expressions are assembled from those pieces.

use std::collections::BTreeSet;

use crate::automata::{trim, Alphabet, Nba, Nfa, NfaTransition, StateId, Symbol, Transition};
use crate::expr::{ExprError, OmegaRegex, Regex};

use super::OracleError;

struct Positions {
    symbols: Vec<Symbol>,
    follow: Vec<BTreeSet<usize>>,
}

struct Summary {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
}

impl Positions {
    fn walk(&mut self, r: &Regex) -> Summary {
        match r {
            Regex::Empty => Summary {
                nullable: false,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Regex::Epsilon => Summary {
                nullable: true,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Regex::Sym(s) => {
                let p = self.symbols.len() + 1;
                self.symbols.push(*s);
                self.follow.push(BTreeSet::new());
                Summary {
                    nullable: false,
                    first: [p].into(),
                    last: [p].into(),
                }
            }
            Regex::Union(a, b) => {
                let (a, b) = (self.walk(a), self.walk(b));
                Summary {
                    nullable: a.nullable || b.nullable,
                    first: &a.first | &b.first,
                    last: &a.last | &b.last,
                }
            }
            Regex::Concat(a, b) => {
                let (a, b) = (self.walk(a), self.walk(b));
                for &p in &a.last {
                    self.follow[p - 1].extend(&b.first);
                }
                Summary {
                    nullable: a.nullable && b.nullable,
                    first: if a.nullable { &a.first | &b.first } else { a.first },
                    last: if b.nullable { &a.last | &b.last } else { b.last },
                }
            }
            Regex::Star { body, .. } => {
                let s = self.walk(body);
                for &p in &s.last {
                    self.follow[p - 1].extend(&s.first);
                }
                Summary {
                    nullable: true,
                    first: s.first,
                    last: s.last,
                }
            }
        }
    }
}

/// ε-free automaton for `r`; state 0 is the only initial state.
pub fn regex_to_nfa(r: &Regex, alphabet: &Alphabet) -> Result<Nfa, OracleError> {
    let mut pos = Positions {
        symbols: Vec::new(),
        follow: Vec::new(),
    };
    let s = pos.walk(r);
    let mut transitions = Vec::new();
    for &q in &s.first {
        transitions.push(NfaTransition {
            src: 0,
            sym: pos.symbols[q - 1],
            dst: q,
        });
    }
    for (p, follow) in pos.follow.iter().enumerate() {
        for &q in follow {
            transitions.push(NfaTransition {
                src: p + 1,
                sym: pos.symbols[q - 1],
                dst: q,
            });
        }
    }
    let mut accepting = s.last;
    if s.nullable {
        accepting.insert(0);
    }
    Ok(Nfa::new(
        pos.symbols.len() + 1,
        alphabet.clone(),
        transitions,
        [0].into(),
        accepting,
    )?)
}

struct Builder<'a> {
    alphabet: &'a Alphabet,
    states: usize,
    transitions: Vec<Transition>,
}

impl Builder<'_> {
    fn embed(&mut self, r: &Regex) -> Result<(Nfa, StateId), OracleError> {
        let nfa = regex_to_nfa(r, self.alphabet)?;
        let offset = self.states;
        self.states += nfa.num_states();
        Ok((nfa, offset))
    }

    /// Adds the automaton of `e`, returning its initial states.
    fn omega(&mut self, e: &OmegaRegex) -> Result<Vec<StateId>, OracleError> {
        match e {
            OmegaRegex::Empty => Ok(Vec::new()),
            OmegaRegex::Omega(body) => {
                if body.nullable() {
                    return Err(ExprError::NullableOmegaBody.into());
                }
                let (nfa, off) = self.embed(body)?;
                let init = off;
                for t in nfa.transitions() {
                    self.transitions
                        .push(Transition::new(off + t.src, t.sym, off + t.dst, false));
                    // Completing one traversal of the body closes the loop,
                    // and only loop-closing edges are accepting.
                    if nfa.accepting().contains(&t.dst) {
                        self.transitions
                            .push(Transition::new(off + t.src, t.sym, init, true));
                    }
                }
                Ok(vec![init])
            }
            OmegaRegex::ConcatFin(prefix, rest) => {
                let next = self.omega(rest)?;
                let (nfa, off) = self.embed(prefix)?;
                for t in nfa.transitions() {
                    self.transitions
                        .push(Transition::new(off + t.src, t.sym, off + t.dst, false));
                    if nfa.accepting().contains(&t.dst) {
                        for &n in &next {
                            self.transitions
                                .push(Transition::new(off + t.src, t.sym, n, false));
                        }
                    }
                }
                let mut initial = vec![off];
                if prefix.nullable() {
                    initial.extend(next);
                }
                Ok(initial)
            }
            OmegaRegex::Union(a, b) => {
                let mut initial = self.omega(a)?;
                initial.extend(self.omega(b)?);
                Ok(initial)
            }
        }
    }
}

/// Transition-based automaton for `e`, trimmed.
pub fn omega_regex_to_nba(e: &OmegaRegex, alphabet: &Alphabet) -> Result<Nba, OracleError> {
    let mut b = Builder {
        alphabet,
        states: 0,
        transitions: Vec::new(),
    };
    let initial = b.omega(e)?;
    let nba = Nba::transition_based(b.states, alphabet.clone(), b.transitions, initial)?;
    Ok(trim(&nba))
}
