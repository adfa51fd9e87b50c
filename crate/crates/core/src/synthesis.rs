//! ω-regular expressions from Büchi automata.
//!
//! [`synthesize_transition`] works directly on transition-based acceptance:
//! for every initial state `q₀` and every state `q` with an accepting
//! outgoing transition it emits
//!
//! ```text
//! R_all(q₀,q) · ( R_rej(q,q)* · R_acc(q,q) )^ω
//! ```
//!
//! where each `R` is the state-elimination regex of the matching triplet
//! automaton, and the prefix is omitted when `q = q₀`. The state-based
//! baseline [`synthesize_state_based`] emits `R_all(q₀,q) · R_all(q,q)^ω` for
//! accepting states `q`; the copy-state construction already excludes ε from
//! the loop language.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::automata::{
    accepting_source_states, degeneralize, lift_state_based, trim, AcceptanceKind, Alphabet, AutomatonError,
    Nba, StateId,
};
use crate::decompose::{build_nfa, DecomposeError, TripletKind};
use crate::elimination::{nfa_to_regex_until, DeadlineExceeded, EliminationOrder};
use crate::exec::{self, Execution};
use crate::expr::{simplify, Measure, Metrics, OmegaRegex, Regex, RuleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SynthesisMethod {
    TransitionDirect,
    StateBased,
    AutoSelect,
}

impl fmt::Display for SynthesisMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SynthesisMethod::TransitionDirect => "transition",
            SynthesisMethod::StateBased => "state",
            SynthesisMethod::AutoSelect => "auto",
        })
    }
}

impl FromStr for SynthesisMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "transition" => Ok(SynthesisMethod::TransitionDirect),
            "state" => Ok(SynthesisMethod::StateBased),
            "auto" => Ok(SynthesisMethod::AutoSelect),
            other => Err(format!(
                "unknown method `{other}` (expected transition, state or auto)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("synthesis timed out")]
    Timeout,
}

impl From<DeadlineExceeded> for SynthesisError {
    fn from(_: DeadlineExceeded) -> Self {
        SynthesisError::Timeout
    }
}

impl From<DecomposeError> for SynthesisError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::Automaton(e) => SynthesisError::Automaton(e),
            // Pairs are drawn from the automaton's own states.
            DecomposeError::InvalidState { .. } => unreachable!("{e}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SynthesisOptions {
    pub order: EliminationOrder,
    /// Rules to apply after synthesis; `None` skips simplification.
    pub simplify: Option<RuleSet>,
    pub execution: Execution,
    /// Budget for the synthesis phase and, separately, for simplification.
    pub phase_timeout: Option<Duration>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PhaseTimings {
    pub preprocess: Duration,
    pub synthesis: Duration,
    pub simplify: Duration,
    pub metrics: Duration,
}

#[derive(Clone, Debug)]
pub struct SynthesisReport {
    pub requested: SynthesisMethod,
    /// The equation that actually ran; never `AutoSelect`.
    pub method: SynthesisMethod,
    /// The state-based route ran on our own degeneralization of the input.
    pub degeneralized: bool,
    pub alphabet: Alphabet,
    /// States of the automaton the equation ran on (after trimming).
    pub states: usize,
    /// `|F̃|` for the transition route, `|F|` for the state route.
    pub accepting_sources: usize,
    /// `|Q₀| · accepting_sources`, counted before empty terms are dropped.
    pub pair_count: usize,
    pub unsimplified: OmegaRegex,
    pub metrics: Metrics,
    pub simplified: Option<OmegaRegex>,
    pub simplified_metrics: Option<Metrics>,
    /// Simplification stopped at the iteration cap rather than a fixed point.
    pub simplify_capped: bool,
    pub elapsed: Duration,
    pub timings: PhaseTimings,
}

impl SynthesisReport {
    /// The simplified expression when simplification ran, else the raw one.
    pub fn expression(&self) -> &OmegaRegex {
        self.simplified.as_ref().unwrap_or(&self.unsimplified)
    }

    pub fn final_metrics(&self) -> Metrics {
        self.simplified_metrics.unwrap_or(self.metrics)
    }
}

fn regex_for(
    b: &Nba,
    i: StateId,
    j: StateId,
    kind: TripletKind,
    order: EliminationOrder,
    deadline: Option<Instant>,
) -> Result<Regex, SynthesisError> {
    let t = build_nfa(b, i, j, kind)?;
    Ok(nfa_to_regex_until(&t.nfa, order, deadline)?)
}

/// Joins `loops[q]` with prefixes `R_all(q₀,q)` in (q₀, q) order.
fn compose(
    b: &Nba,
    targets: &[StateId],
    loops: Vec<OmegaRegex>,
    order: EliminationOrder,
    execution: Execution,
    deadline: Option<Instant>,
) -> Result<OmegaRegex, SynthesisError> {
    let pairs: Vec<(StateId, usize)> = b
        .initial()
        .iter()
        .flat_map(|&q0| (0..targets.len()).map(move |k| (q0, k)))
        .collect();
    let terms = exec::map(execution, &pairs, |&(q0, k)| {
        let q = targets[k];
        if loops[k].is_empty() {
            return Ok(OmegaRegex::Empty);
        }
        if q == q0 {
            return Ok(loops[k].clone());
        }
        let prefix = regex_for(b, q0, q, TripletKind::All, order, deadline)?;
        Ok(OmegaRegex::concat_fin(prefix, loops[k].clone()))
    });
    let terms: Vec<OmegaRegex> = terms.into_iter().collect::<Result<_, SynthesisError>>()?;
    Ok(OmegaRegex::union_all(terms))
}

fn transition_direct(
    b: &Nba,
    order: EliminationOrder,
    execution: Execution,
    deadline: Option<Instant>,
) -> Result<OmegaRegex, SynthesisError> {
    b.require(AcceptanceKind::TransitionBased)?;
    let b = trim(b);
    let targets: Vec<StateId> = accepting_source_states(&b)?.into_iter().collect();
    let loops = exec::map(execution, &targets, |&q| {
        let rej = regex_for(&b, q, q, TripletKind::Rej, order, deadline)?;
        let acc = regex_for(&b, q, q, TripletKind::Acc, order, deadline)?;
        let body = Regex::concat(Regex::star_grouped(rej), acc);
        Ok(OmegaRegex::omega(body).expect("acc loop words are nonempty"))
    });
    let loops = loops.into_iter().collect::<Result<Vec<_>, SynthesisError>>()?;
    compose(&b, &targets, loops, order, execution, deadline)
}

fn state_based(
    b: &Nba,
    order: EliminationOrder,
    execution: Execution,
    deadline: Option<Instant>,
) -> Result<OmegaRegex, SynthesisError> {
    b.require(AcceptanceKind::StateBased)?;
    let b = trim(b);
    let targets: Vec<StateId> = b.accepting_states().iter().copied().collect();
    // Triplets only look at the transition structure, so the lifted copy
    // yields the plain A_ij automata.
    let lifted = lift_state_based(&b)?;
    let loops = exec::map(execution, &targets, |&q| {
        let body = regex_for(&lifted, q, q, TripletKind::All, order, deadline)?;
        Ok(OmegaRegex::omega(body).expect("copy-state loops exclude ε"))
    });
    let loops = loops.into_iter().collect::<Result<Vec<_>, SynthesisError>>()?;
    compose(&lifted, &targets, loops, order, execution, deadline)
}

/// Direct synthesis from transition-based acceptance.
pub fn synthesize_transition(b: &Nba, order: EliminationOrder) -> Result<OmegaRegex, SynthesisError> {
    transition_direct(b, order, Execution::default(), None)
}

/// The classical construction over accepting states.
pub fn synthesize_state_based(b: &Nba, order: EliminationOrder) -> Result<OmegaRegex, SynthesisError> {
    state_based(b, order, Execution::default(), None)
}

/// Picks the route with fewer loop targets: the transition route when
/// `|F̃(B)|` is strictly smaller than the accepting-state count of the
/// degeneralization, otherwise the state route on the degeneralization.
pub fn auto_select(b: &Nba) -> Result<SynthesisReport, SynthesisError> {
    synthesize(b, SynthesisMethod::AutoSelect, &SynthesisOptions::default())
}

/// Runs `method` on `b` and measures the result.
///
/// `StateBased` accepts either acceptance kind: transition-based input is
/// degeneralized first. `TransitionDirect` and `AutoSelect` need
/// transition-based input.
pub fn synthesize(
    b: &Nba,
    method: SynthesisMethod,
    options: &SynthesisOptions,
) -> Result<SynthesisReport, SynthesisError> {
    let start = Instant::now();
    let mut timings = PhaseTimings::default();

    let deadline = |from: Instant| options.phase_timeout.map(|t| from + t);
    let trimmed = trim(b);
    let (resolved, source, degeneralized) = match method {
        SynthesisMethod::TransitionDirect => {
            trimmed.require(AcceptanceKind::TransitionBased)?;
            (SynthesisMethod::TransitionDirect, trimmed, false)
        }
        SynthesisMethod::StateBased => {
            if trimmed.is_transition_based() {
                (SynthesisMethod::StateBased, trim(&degeneralize(&trimmed)?), true)
            } else {
                (SynthesisMethod::StateBased, trimmed, false)
            }
        }
        SynthesisMethod::AutoSelect => {
            trimmed.require(AcceptanceKind::TransitionBased)?;
            let sources = accepting_source_states(&trimmed)?.len();
            let degen = trim(&degeneralize(&trimmed)?);
            log::debug!(
                "auto-select: |F~| = {sources}, |F| after degeneralization = {}",
                degen.accepting_states().len()
            );
            if sources < degen.accepting_states().len() {
                (SynthesisMethod::TransitionDirect, trimmed, false)
            } else {
                (SynthesisMethod::StateBased, degen, true)
            }
        }
    };
    timings.preprocess = start.elapsed();

    let accepting_sources = match resolved {
        SynthesisMethod::TransitionDirect => accepting_source_states(&source)?.len(),
        _ => source.accepting_states().len(),
    };
    let pair_count = source.initial().len() * accepting_sources;

    let phase = Instant::now();
    let unsimplified = match resolved {
        SynthesisMethod::TransitionDirect => {
            transition_direct(&source, options.order, options.execution, deadline(phase))?
        }
        _ => state_based(&source, options.order, options.execution, deadline(phase))?,
    };
    timings.synthesis = phase.elapsed();

    let phase = Instant::now();
    let (simplified, simplify_capped) = match &options.simplify {
        Some(rules) => {
            let s = simplify(&unsimplified, rules);
            if deadline(phase).is_some_and(|d| Instant::now() > d) {
                return Err(SynthesisError::Timeout);
            }
            (Some(s.expr), s.capped)
        }
        None => (None, false),
    };
    timings.simplify = phase.elapsed();

    let phase = Instant::now();
    let metrics = unsimplified.metrics();
    let simplified_metrics = simplified.as_ref().map(Measure::metrics);
    timings.metrics = phase.elapsed();

    Ok(SynthesisReport {
        requested: method,
        method: resolved,
        degeneralized,
        alphabet: b.alphabet().clone(),
        states: source.num_states(),
        accepting_sources,
        pair_count,
        unsimplified,
        metrics,
        simplified,
        simplified_metrics,
        simplify_capped,
        elapsed: start.elapsed(),
        timings,
    })
}
