//! Automaton data model: alphabets, Büchi automata with transition- or
//! state-based acceptance, and finite automata.
//!
//! Automata are immutable once built. [`Nba::new`] and [`Nfa::new`] validate
//! every structural invariant, so any value of these types is well formed.

mod convert;
mod hoa;
mod json;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use convert::{accepting_source_states, degeneralize, lift_state_based, trim};
pub use hoa::{emit_hoa, emit_nfa_hoa, parse_hoa, HoaError};
pub use json::{emit_json, emit_nfa_json, parse_json, JsonError};

/// Dense state index, `0..num_states`.
pub type StateId = usize;

/// Index of a letter in an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered table of symbol display labels. Labels are unique.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
    lookup: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from labels, rejecting duplicates.
    pub fn from_labels<I, S>(labels: I) -> Result<Self, AutomatonError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Self::new();
        for label in labels {
            let label = label.into();
            if alphabet.lookup(&label).is_some() {
                return Err(AutomatonError::DuplicateLabel(label));
            }
            alphabet.intern(&label);
        }
        Ok(alphabet)
    }

    /// One symbol per character, e.g. `"abcd"`.
    pub fn from_letters(letters: &str) -> Self {
        let mut alphabet = Self::new();
        for c in letters.chars() {
            alphabet.intern(&c.to_string());
        }
        alphabet
    }

    /// Returns the symbol for `label`, adding it if absent.
    pub fn intern(&mut self, label: &str) -> Symbol {
        if let Some(sym) = self.lookup(label) {
            return sym;
        }
        let sym = Symbol(self.labels.len() as u32);
        self.labels.push(label.to_owned());
        self.lookup.insert(label.to_owned(), sym);
        sym
    }

    pub fn lookup(&self, label: &str) -> Option<Symbol> {
        self.lookup.get(label).copied()
    }

    pub fn label(&self, sym: Symbol) -> Option<&str> {
        self.labels.get(sym.index()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        sym.index() < self.labels.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.labels.len() as u32).map(Symbol)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Parses a word written as concatenated single-character labels.
    pub fn word(&self, text: &str) -> Result<Vec<Symbol>, AutomatonError> {
        text.chars()
            .map(|c| {
                let label = c.to_string();
                self.lookup(&label).ok_or(AutomatonError::UnknownLabel(label))
            })
            .collect()
    }

    /// Renders a word; multi-character labels are bracketed.
    pub fn render_word(&self, word: &[Symbol]) -> String {
        let mut out = String::new();
        for &sym in word {
            match self.label(sym) {
                Some(l) if l.chars().count() == 1 => out.push_str(l),
                Some(l) => {
                    out.push('[');
                    out.push_str(l);
                    out.push(']');
                }
                None => out.push('?'),
            }
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("state {state} out of range (automaton has {num_states} states)")]
    StateOutOfRange { state: StateId, num_states: usize },
    #[error("symbol {0} is not in the alphabet")]
    UnknownSymbol(u32),
    #[error("label {0:?} is not in the alphabet")]
    UnknownLabel(String),
    #[error("duplicate alphabet label {0:?}")]
    DuplicateLabel(String),
    #[error("state-based automaton has an accepting transition ({src} -> {dst})")]
    AcceptingEdgeInStateBased { src: StateId, dst: StateId },
    #[error("transition-based automaton lists accepting states")]
    AcceptingStatesInTransitionBased,
    #[error("operation requires {expected} acceptance")]
    WrongAcceptance { expected: AcceptanceKind },
}

/// Where the Büchi condition is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AcceptanceKind {
    TransitionBased,
    StateBased,
}

impl fmt::Display for AcceptanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcceptanceKind::TransitionBased => f.write_str("transition-based"),
            AcceptanceKind::StateBased => f.write_str("state-based"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: StateId,
    pub sym: Symbol,
    pub dst: StateId,
    pub accepting: bool,
}

impl Transition {
    pub fn new(src: StateId, sym: Symbol, dst: StateId, accepting: bool) -> Self {
        Self {
            src,
            sym,
            dst,
            accepting,
        }
    }
}

/// Nondeterministic Büchi automaton.
///
/// A transition-based automaton accepts an ω-word when some run crosses an
/// accepting transition infinitely often; a state-based one when some run
/// visits an accepting state infinitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nba {
    num_states: usize,
    alphabet: Alphabet,
    transitions: Vec<Transition>,
    initial: BTreeSet<StateId>,
    acceptance: AcceptanceKind,
    accepting_states: BTreeSet<StateId>,
}

impl Nba {
    pub fn new(
        num_states: usize,
        alphabet: Alphabet,
        transitions: Vec<Transition>,
        initial: BTreeSet<StateId>,
        acceptance: AcceptanceKind,
        accepting_states: BTreeSet<StateId>,
    ) -> Result<Self, AutomatonError> {
        let check = |state: StateId| {
            if state < num_states {
                Ok(())
            } else {
                Err(AutomatonError::StateOutOfRange { state, num_states })
            }
        };
        for t in &transitions {
            check(t.src)?;
            check(t.dst)?;
            if !alphabet.contains(t.sym) {
                return Err(AutomatonError::UnknownSymbol(t.sym.0));
            }
            if acceptance == AcceptanceKind::StateBased && t.accepting {
                return Err(AutomatonError::AcceptingEdgeInStateBased {
                    src: t.src,
                    dst: t.dst,
                });
            }
        }
        for &q in initial.iter().chain(&accepting_states) {
            check(q)?;
        }
        if acceptance == AcceptanceKind::TransitionBased && !accepting_states.is_empty() {
            return Err(AutomatonError::AcceptingStatesInTransitionBased);
        }
        Ok(Self {
            num_states,
            alphabet,
            transitions,
            initial,
            acceptance,
            accepting_states,
        })
    }

    /// Transition-based automaton.
    pub fn transition_based(
        num_states: usize,
        alphabet: Alphabet,
        transitions: Vec<Transition>,
        initial: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, AutomatonError> {
        Self::new(
            num_states,
            alphabet,
            transitions,
            initial.into_iter().collect(),
            AcceptanceKind::TransitionBased,
            BTreeSet::new(),
        )
    }

    /// State-based automaton.
    pub fn state_based(
        num_states: usize,
        alphabet: Alphabet,
        transitions: Vec<Transition>,
        initial: impl IntoIterator<Item = StateId>,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, AutomatonError> {
        Self::new(
            num_states,
            alphabet,
            transitions,
            initial.into_iter().collect(),
            AcceptanceKind::StateBased,
            accepting.into_iter().collect(),
        )
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn acceptance(&self) -> AcceptanceKind {
        self.acceptance
    }

    pub fn accepting_states(&self) -> &BTreeSet<StateId> {
        &self.accepting_states
    }

    pub fn is_transition_based(&self) -> bool {
        self.acceptance == AcceptanceKind::TransitionBased
    }

    pub fn out_degree(&self, state: StateId) -> usize {
        self.transitions.iter().filter(|t| t.src == state).count()
    }

    pub(crate) fn require(&self, kind: AcceptanceKind) -> Result<(), AutomatonError> {
        if self.acceptance == kind {
            Ok(())
        } else {
            Err(AutomatonError::WrongAcceptance { expected: kind })
        }
    }

    /// Whether a transition counts towards acceptance, with state-based
    /// acceptance read as "leaves an accepting state".
    pub fn is_accepting_edge(&self, t: &Transition) -> bool {
        match self.acceptance {
            AcceptanceKind::TransitionBased => t.accepting,
            AcceptanceKind::StateBased => self.accepting_states.contains(&t.src),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NfaTransition {
    pub src: StateId,
    pub sym: Symbol,
    pub dst: StateId,
}

/// Nondeterministic finite automaton over finite words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    num_states: usize,
    alphabet: Alphabet,
    transitions: Vec<NfaTransition>,
    initial: BTreeSet<StateId>,
    accepting: BTreeSet<StateId>,
}

impl Nfa {
    pub fn new(
        num_states: usize,
        alphabet: Alphabet,
        transitions: Vec<NfaTransition>,
        initial: BTreeSet<StateId>,
        accepting: BTreeSet<StateId>,
    ) -> Result<Self, AutomatonError> {
        let check = |state: StateId| {
            if state < num_states {
                Ok(())
            } else {
                Err(AutomatonError::StateOutOfRange { state, num_states })
            }
        };
        for t in &transitions {
            check(t.src)?;
            check(t.dst)?;
            if !alphabet.contains(t.sym) {
                return Err(AutomatonError::UnknownSymbol(t.sym.0));
            }
        }
        for &q in initial.iter().chain(&accepting) {
            check(q)?;
        }
        Ok(Self {
            num_states,
            alphabet,
            transitions,
            initial,
            accepting,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[NfaTransition] {
        &self.transitions
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    /// Subset simulation: true iff some run on `word` ends in an accepting
    /// state.
    pub fn accepts(&self, word: &[Symbol]) -> Result<bool, AutomatonError> {
        if let Some(bad) = word.iter().find(|s| !self.alphabet.contains(**s)) {
            return Err(AutomatonError::UnknownSymbol(bad.0));
        }
        let mut current = vec![false; self.num_states];
        for &q in &self.initial {
            current[q] = true;
        }
        let mut next = vec![false; self.num_states];
        for &sym in word {
            next.iter_mut().for_each(|b| *b = false);
            for t in &self.transitions {
                if t.sym == sym && current[t.src] {
                    next[t.dst] = true;
                }
            }
            std::mem::swap(&mut current, &mut next);
        }
        Ok(self.accepting.iter().any(|&q| current[q]))
    }
}

/// Free-function form of [`Nfa::accepts`].
pub fn membership(nfa: &Nfa, word: &[Symbol]) -> Result<bool, AutomatonError> {
    nfa.accepts(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b1() -> Nba {
        let ab = Alphabet::from_letters("abcd");
        let s = |c: &str| ab.lookup(c).unwrap();
        let ts = vec![
            Transition::new(0, s("a"), 1, false),
            Transition::new(0, s("b"), 2, false),
            Transition::new(1, s("c"), 1, false),
            Transition::new(1, s("d"), 2, true),
            Transition::new(2, s("a"), 2, false),
            Transition::new(2, s("b"), 1, true),
        ];
        Nba::transition_based(3, ab, ts, [0]).unwrap()
    }

    #[test]
    fn rejects_out_of_range_transition() {
        let ab = Alphabet::from_letters("a");
        let err =
            Nba::transition_based(1, ab, vec![Transition::new(0, Symbol(0), 3, false)], [0]).unwrap_err();
        assert_eq!(
            err,
            AutomatonError::StateOutOfRange {
                state: 3,
                num_states: 1
            }
        );
    }

    #[test]
    fn rejects_unknown_symbol_and_bad_initial() {
        let ab = Alphabet::from_letters("a");
        let err = Nba::transition_based(1, ab.clone(), vec![Transition::new(0, Symbol(1), 0, false)], [0])
            .unwrap_err();
        assert_eq!(err, AutomatonError::UnknownSymbol(1));
        let err = Nba::transition_based(1, ab, vec![], [2]).unwrap_err();
        assert!(matches!(err, AutomatonError::StateOutOfRange { state: 2, .. }));
    }

    #[test]
    fn state_based_forbids_accepting_edges() {
        let ab = Alphabet::from_letters("a");
        let err =
            Nba::state_based(1, ab, vec![Transition::new(0, Symbol(0), 0, true)], [0], [0]).unwrap_err();
        assert!(matches!(err, AutomatonError::AcceptingEdgeInStateBased { .. }));
    }

    #[test]
    fn transition_based_forbids_accepting_states() {
        let ab = Alphabet::from_letters("a");
        let err = Nba::new(
            1,
            ab,
            vec![],
            [0].into(),
            AcceptanceKind::TransitionBased,
            [0].into(),
        )
        .unwrap_err();
        assert_eq!(err, AutomatonError::AcceptingStatesInTransitionBased);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            Alphabet::from_labels(["a", "b", "a"]).unwrap_err(),
            AutomatonError::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn alphabet_words() {
        let ab = Alphabet::from_letters("ab");
        assert_eq!(ab.word("ba").unwrap(), vec![Symbol(1), Symbol(0)]);
        assert!(matches!(ab.word("bz"), Err(AutomatonError::UnknownLabel(_))));
        assert_eq!(ab.render_word(&[Symbol(0), Symbol(1)]), "ab");
    }

    #[test]
    fn nfa_membership_and_unknown_symbol() {
        let ab = Alphabet::from_letters("ab");
        let nfa = Nfa::new(
            2,
            ab.clone(),
            vec![
                NfaTransition {
                    src: 0,
                    sym: Symbol(0),
                    dst: 1,
                },
                NfaTransition {
                    src: 1,
                    sym: Symbol(1),
                    dst: 1,
                },
            ],
            [0].into(),
            [1].into(),
        )
        .unwrap();
        assert!(nfa.accepts(&ab.word("abb").unwrap()).unwrap());
        assert!(!nfa.accepts(&[]).unwrap());
        assert!(!nfa.accepts(&ab.word("ba").unwrap()).unwrap());
        assert_eq!(nfa.accepts(&[Symbol(7)]), Err(AutomatonError::UnknownSymbol(7)));
    }

    #[test]
    fn accepting_edge_reading() {
        let b = b1();
        assert_eq!(
            b.transitions().iter().filter(|t| b.is_accepting_edge(t)).count(),
            2
        );
        assert_eq!(b.out_degree(1), 2);
    }
}
