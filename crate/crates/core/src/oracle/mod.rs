//! Independent checking machinery: lasso acceptance, expression-to-automaton
//! translation, bounded equivalence and random instances.
//!
//! Nothing here shares code with the synthesis pipeline beyond the automaton
//! and expression types, so agreement between the two is evidence rather
//! than tautology.

mod equiv;
mod glushkov;
mod lasso;
mod paths;
mod random;

use thiserror::Error;

use crate::automata::{AutomatonError, Symbol};
use crate::expr::ExprError;

pub use equiv::{bounded_equiv, bounded_equiv_with, lasso_count, EquivConfig, Equivalence};
pub use glushkov::{omega_regex_to_nba, regex_to_nfa};
pub use lasso::{nba_accepts_lasso, LassoChecker};
pub use paths::{first_arrival_words, regex_matches};
pub use random::{
    all_words, complete_two_state_corpus, random_nba, random_omega_regex, random_regex,
    random_state_based_nba,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("automata have different alphabets")]
    AlphabetMismatch,
    #[error("loop of a lasso must be nonempty")]
    EmptyLoop,
    #[error("maximum loop length must be at least 1")]
    ZeroLoopBound,
    #[error("equivalence check timed out")]
    Timeout,
}

/// The ultimately periodic word `prefix · loop^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<Symbol>,
    pub cycle: Vec<Symbol>,
}

impl Lasso {
    pub fn new(prefix: Vec<Symbol>, cycle: Vec<Symbol>) -> Result<Self, OracleError> {
        if cycle.is_empty() {
            return Err(OracleError::EmptyLoop);
        }
        Ok(Self { prefix, cycle })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivBounds {
    pub max_prefix: usize,
    pub max_loop: usize,
}

impl EquivBounds {
    pub fn new(max_prefix: usize, max_loop: usize) -> Result<Self, OracleError> {
        if max_loop == 0 {
            return Err(OracleError::ZeroLoopBound);
        }
        Ok(Self { max_prefix, max_loop })
    }
}
