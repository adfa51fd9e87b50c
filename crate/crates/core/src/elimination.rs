//! Regular expressions from finite automata by state elimination.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::automata::{Nfa, StateId};
use crate::expr::Regex;

/// Order in which inner states are ripped out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EliminationOrder {
    /// Ascending state id.
    #[default]
    LowestIndexFirst,
    /// The state with the fewest `in × out` bypass paths, ties by lowest id.
    FewestPathsFirst,
}

impl fmt::Display for EliminationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EliminationOrder::LowestIndexFirst => "lowest",
            EliminationOrder::FewestPathsFirst => "fewest",
        })
    }
}

impl FromStr for EliminationOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lowest" => Ok(EliminationOrder::LowestIndexFirst),
            "fewest" => Ok(EliminationOrder::FewestPathsFirst),
            other => Err(format!(
                "unknown elimination order `{other}` (expected lowest or fewest)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("deadline exceeded during state elimination")]
pub struct DeadlineExceeded;

/// Generalized automaton with regex-labelled edges, a fresh start state with
/// no incoming edges and a fresh sink with no outgoing edges. An absent edge
/// stands for ∅.
struct Gnfa {
    size: usize,
    edges: Vec<Option<Regex>>,
    start: usize,
    sink: usize,
}

impl Gnfa {
    fn new(inner: usize) -> Self {
        let size = inner + 2;
        Self {
            size,
            edges: vec![None; size * size],
            start: inner,
            sink: inner + 1,
        }
    }

    fn get(&self, p: usize, q: usize) -> Option<&Regex> {
        self.edges[p * self.size + q].as_ref()
    }

    /// Parallel edges are merged by union, existing label first.
    fn add(&mut self, p: usize, q: usize, r: Regex) {
        let slot = &mut self.edges[p * self.size + q];
        let merged = match slot.take() {
            Some(old) => Regex::union(old, r),
            None => r,
        };
        *slot = (!merged.is_empty()).then_some(merged);
    }

    fn take(&mut self, p: usize, q: usize) -> Option<Regex> {
        self.edges[p * self.size + q].take()
    }

    fn rip(&mut self, q: usize, alive: &[bool]) {
        let loop_label = self.take(q, q).map_or(Regex::Epsilon, Regex::star);
        let (start, sink) = (self.start, self.sink);
        let sources: Vec<(usize, Regex)> = (0..self.size)
            .filter(|&p| p != q && (p == start || alive[p]))
            .filter_map(|p| self.take(p, q).map(|r| (p, r)))
            .collect();
        let targets: Vec<(usize, Regex)> = (0..self.size)
            .filter(|&r| r != q && (r == sink || alive[r]))
            .filter_map(|r| self.take(q, r).map(|l| (r, l)))
            .collect();
        for (p, into) in &sources {
            let through = Regex::concat(into.clone(), loop_label.clone());
            for (r, out) in &targets {
                self.add(*p, *r, Regex::concat(through.clone(), out.clone()));
            }
        }
    }

    fn degree_product(&self, q: usize, alive: &[bool]) -> usize {
        let ins = (0..self.size)
            .filter(|&p| p != q && (p == self.start || alive[p]) && self.get(p, q).is_some())
            .count();
        let outs = (0..self.size)
            .filter(|&r| r != q && (r == self.sink || alive[r]) && self.get(q, r).is_some())
            .count();
        ins * outs
    }
}

/// States reachable from an initial state and co-reachable to an accepting
/// state.
fn useful_states(nfa: &Nfa) -> Vec<bool> {
    let n = nfa.num_states();
    let mut fwd: Vec<Vec<StateId>> = vec![Vec::new(); n];
    let mut bwd: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for t in nfa.transitions() {
        fwd[t.src].push(t.dst);
        bwd[t.dst].push(t.src);
    }
    let sweep = |adj: &[Vec<StateId>], seeds: &mut dyn Iterator<Item = StateId>| {
        let mut seen = vec![false; n];
        let mut stack: Vec<StateId> = Vec::new();
        for s in seeds {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(q) = stack.pop() {
            for &r in &adj[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    };
    let reach = sweep(&fwd, &mut nfa.initial().iter().copied());
    let coreach = sweep(&bwd, &mut nfa.accepting().iter().copied());
    reach.iter().zip(&coreach).map(|(a, b)| *a && *b).collect()
}

/// Regular expression for the language of `nfa`.
pub fn nfa_to_regex(nfa: &Nfa, order: EliminationOrder) -> Regex {
    nfa_to_regex_until(nfa, order, None).expect("no deadline")
}

/// As [`nfa_to_regex`], giving up once `deadline` has passed.
pub fn nfa_to_regex_until(
    nfa: &Nfa,
    order: EliminationOrder,
    deadline: Option<Instant>,
) -> Result<Regex, DeadlineExceeded> {
    let useful = useful_states(nfa);
    let kept: Vec<StateId> = (0..nfa.num_states()).filter(|&q| useful[q]).collect();
    if kept.is_empty() {
        return Ok(Regex::Empty);
    }
    let mut index = vec![usize::MAX; nfa.num_states()];
    for (k, &q) in kept.iter().enumerate() {
        index[q] = k;
    }
    let mut g = Gnfa::new(kept.len());
    for &q in nfa.initial() {
        if useful[q] {
            g.add(g.start, index[q], Regex::Epsilon);
        }
    }
    for t in nfa.transitions() {
        if useful[t.src] && useful[t.dst] {
            g.add(index[t.src], index[t.dst], Regex::sym(t.sym));
        }
    }
    for &q in nfa.accepting() {
        if useful[q] {
            g.add(index[q], g.sink, Regex::Epsilon);
        }
    }

    let mut alive = vec![true; g.size];
    alive[g.start] = false;
    alive[g.sink] = false;
    for _ in 0..kept.len() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(DeadlineExceeded);
        }
        let next = match order {
            EliminationOrder::LowestIndexFirst => (0..kept.len()).find(|&q| alive[q]),
            EliminationOrder::FewestPathsFirst => (0..kept.len())
                .filter(|&q| alive[q])
                .min_by_key(|&q| (g.degree_product(q, &alive), q)),
        }
        .expect("a live state remains");
        alive[next] = false;
        g.rip(next, &alive);
    }
    Ok(g.take(g.start, g.sink).unwrap_or(Regex::Empty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_hoa, Alphabet, NfaTransition, Symbol};
    use crate::decompose::{build_nfa, TripletKind};

    const B1: &str = include_str!("../../../fixtures/b1.hoa");

    fn triplet_text(i: usize, j: usize, kind: TripletKind, order: EliminationOrder) -> String {
        let b = parse_hoa(B1).unwrap();
        let t = build_nfa(&b, i, j, kind).unwrap();
        nfa_to_regex(&t.nfa, order).to_text(b.alphabet())
    }

    #[test]
    fn b1_triplet_expressions() {
        let lowest = EliminationOrder::LowestIndexFirst;
        assert_eq!(triplet_text(0, 1, TripletKind::All, lowest), "a+ba*b");
        assert_eq!(triplet_text(1, 1, TripletKind::Rej, lowest), "c");
        assert_eq!(triplet_text(1, 1, TripletKind::Acc, lowest), "da*b");
        assert_eq!(triplet_text(0, 2, TripletKind::All, lowest), "b+ac*d");
        assert_eq!(triplet_text(2, 2, TripletKind::Rej, lowest), "a");
        assert_eq!(triplet_text(2, 2, TripletKind::Acc, lowest), "bc*d");
    }

    #[test]
    fn fewest_paths_agrees_on_b1() {
        let fewest = EliminationOrder::FewestPathsFirst;
        assert_eq!(triplet_text(1, 1, TripletKind::Acc, fewest), "da*b");
        assert_eq!(triplet_text(1, 1, TripletKind::Rej, fewest), "c");
    }

    #[test]
    fn no_transitions_gives_empty() {
        let nfa = Nfa::new(2, Alphabet::from_letters("a"), vec![], [0].into(), [1].into()).unwrap();
        assert_eq!(nfa_to_regex(&nfa, EliminationOrder::default()), Regex::Empty);
    }

    #[test]
    fn initial_accepting_state_gives_epsilon_branch() {
        let ab = Alphabet::from_letters("a");
        let nfa = Nfa::new(
            1,
            ab.clone(),
            vec![NfaTransition {
                src: 0,
                sym: Symbol(0),
                dst: 0,
            }],
            [0].into(),
            [0].into(),
        )
        .unwrap();
        assert_eq!(nfa_to_regex(&nfa, EliminationOrder::default()).to_text(&ab), "a*");
    }

    #[test]
    fn deadline_in_the_past_times_out() {
        let b = parse_hoa(B1).unwrap();
        let t = build_nfa(&b, 0, 1, TripletKind::All).unwrap();
        let past = Instant::now() - std::time::Duration::from_secs(1);
        assert_eq!(
            nfa_to_regex_until(&t.nfa, EliminationOrder::default(), Some(past)),
            Err(DeadlineExceeded)
        );
    }

    #[test]
    fn order_parsing() {
        assert_eq!("fewest".parse(), Ok(EliminationOrder::FewestPathsFirst));
        assert!("random".parse::<EliminationOrder>().is_err());
    }
}
