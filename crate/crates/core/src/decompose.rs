//! Finite automata for the three run languages between a pair of states of a
//! transition-based Büchi automaton.
//!
//! For states `i` and `j`, every transition into `j` is redirected to a fresh
//! copy `j′` that has no outgoing transitions, with `i` initial and `j′` the
//! only accepting state. The resulting automaton accepts the nonempty words
//! with a run from `i` that ends on its first arrival at `j`. The `Rej` and
//! `Acc` variants additionally drop the accepting (respectively rejecting)
//! transitions leaving `i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::automata::{AcceptanceKind, AutomatonError, Nba, Nfa, NfaTransition, StateId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TripletKind {
    All,
    Rej,
    Acc,
}

impl TripletKind {
    pub const ALL: [TripletKind; 3] = [TripletKind::All, TripletKind::Rej, TripletKind::Acc];
}

impl fmt::Display for TripletKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripletKind::All => "all",
            TripletKind::Rej => "rej",
            TripletKind::Acc => "acc",
        })
    }
}

impl FromStr for TripletKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(TripletKind::All),
            "rej" => Ok(TripletKind::Rej),
            "acc" => Ok(TripletKind::Acc),
            other => Err(format!(
                "unknown triplet kind `{other}` (expected all, rej or acc)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("state {state} out of range (automaton has {num_states} states)")]
    InvalidState { state: StateId, num_states: usize },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// One of the three automata built for a state pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triplet {
    pub i: StateId,
    pub j: StateId,
    pub kind: TripletKind,
    pub nfa: Nfa,
    /// The copy `j′`; always the last state, `num_states(B)`.
    pub copy_state: StateId,
}

/// Builds the automaton of `kind` for the pair `(i, j)`. Transitions keep the
/// order of `nba`.
pub fn build_nfa(nba: &Nba, i: StateId, j: StateId, kind: TripletKind) -> Result<Triplet, DecomposeError> {
    nba.require(AcceptanceKind::TransitionBased)?;
    let n = nba.num_states();
    for state in [i, j] {
        if state >= n {
            return Err(DecomposeError::InvalidState { state, num_states: n });
        }
    }
    let copy = n;
    let transitions = nba
        .transitions()
        .iter()
        .filter(|t| match kind {
            TripletKind::All => true,
            TripletKind::Rej => !(t.src == i && t.accepting),
            TripletKind::Acc => !(t.src == i && !t.accepting),
        })
        .map(|t| NfaTransition {
            src: t.src,
            sym: t.sym,
            dst: if t.dst == j { copy } else { t.dst },
        })
        .collect();
    let nfa = Nfa::new(
        n + 1,
        nba.alphabet().clone(),
        transitions,
        [i].into(),
        [copy].into(),
    )?;
    Ok(Triplet {
        i,
        j,
        kind,
        nfa,
        copy_state: copy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_hoa, Alphabet, Symbol, Transition};

    const B1: &str = include_str!("../../../fixtures/b1.hoa");

    fn accepts(t: &Triplet, w: &str) -> bool {
        let word = t.nfa.alphabet().word(w).unwrap();
        t.nfa.accepts(&word).unwrap()
    }

    #[test]
    fn b1_triplets_match_figure_languages() {
        let b = parse_hoa(B1).unwrap();
        let all01 = build_nfa(&b, 0, 1, TripletKind::All).unwrap();
        for w in ["a", "bb", "bab", "baab"] {
            assert!(accepts(&all01, w), "{w}");
        }
        for w in ["acdab", "", "b", "ab", "ac"] {
            assert!(!accepts(&all01, w), "{w}");
        }
        let rej11 = build_nfa(&b, 1, 1, TripletKind::Rej).unwrap();
        assert!(accepts(&rej11, "c"));
        assert!(!accepts(&rej11, "cc"));
        assert!(!accepts(&rej11, "d"));
        assert!(!accepts(&rej11, "db"));
        let acc11 = build_nfa(&b, 1, 1, TripletKind::Acc).unwrap();
        assert!(accepts(&acc11, "db"));
        assert!(accepts(&acc11, "daab"));
        assert!(!accepts(&acc11, "cb"));
        assert!(!accepts(&acc11, "c"));
    }

    #[test]
    fn structure() {
        let b = parse_hoa(B1).unwrap();
        let t = build_nfa(&b, 0, 1, TripletKind::All).unwrap();
        assert_eq!(t.nfa.num_states(), 4);
        assert_eq!(t.copy_state, 3);
        assert_eq!(t.nfa.initial(), &[0].into());
        assert_eq!(t.nfa.accepting(), &[3].into());
        assert!(t.nfa.transitions().iter().all(|e| e.src != t.copy_state));
        let rej = build_nfa(&b, 1, 1, TripletKind::Rej).unwrap();
        let out_of_1: Vec<_> = rej.nfa.transitions().iter().filter(|e| e.src == 1).collect();
        assert_eq!(out_of_1.len(), 1);
        assert_eq!(out_of_1[0].dst, 3);
    }

    #[test]
    fn diagonal_never_accepts_empty_word() {
        let b = parse_hoa(B1).unwrap();
        for q in 0..3 {
            for kind in TripletKind::ALL {
                assert!(!accepts(&build_nfa(&b, q, q, kind).unwrap(), ""));
            }
        }
    }

    #[test]
    fn accepting_edge_into_j_is_filtered_after_redirection() {
        let ab = Alphabet::from_letters("a");
        let b = Nba::transition_based(1, ab, vec![Transition::new(0, Symbol(0), 0, true)], [0]).unwrap();
        let rej = build_nfa(&b, 0, 0, TripletKind::Rej).unwrap();
        assert!(rej.nfa.transitions().is_empty());
        let acc = build_nfa(&b, 0, 0, TripletKind::Acc).unwrap();
        assert_eq!(acc.nfa.transitions().len(), 1);
        assert_eq!(acc.nfa.transitions()[0].dst, 1);
    }

    #[test]
    fn errors() {
        let b = parse_hoa(B1).unwrap();
        assert_eq!(
            build_nfa(&b, 9, 0, TripletKind::All).unwrap_err(),
            DecomposeError::InvalidState {
                state: 9,
                num_states: 3
            }
        );
        let sb = crate::automata::degeneralize(&b).unwrap();
        assert!(matches!(
            build_nfa(&sb, 0, 0, TripletKind::All).unwrap_err(),
            DecomposeError::Automaton(AutomatonError::WrongAcceptance { .. })
        ));
        assert_eq!("acc".parse::<TripletKind>(), Ok(TripletKind::Acc));
        assert!("x".parse::<TripletKind>().is_err());
    }
}
