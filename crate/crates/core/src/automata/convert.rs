use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{AcceptanceKind, AutomatonError, Nba, StateId, Transition};

/// States with at least one outgoing accepting transition.
pub fn accepting_source_states(nba: &Nba) -> Result<BTreeSet<StateId>, AutomatonError> {
    nba.require(AcceptanceKind::TransitionBased)?;
    Ok(nba
        .transitions()
        .iter()
        .filter(|t| t.accepting)
        .map(|t| t.src)
        .collect())
}

/// Reads a state-based automaton as transition-based: a transition is
/// accepting iff its source state is accepting.
pub fn lift_state_based(nba: &Nba) -> Result<Nba, AutomatonError> {
    nba.require(AcceptanceKind::StateBased)?;
    let transitions = nba
        .transitions()
        .iter()
        .map(|t| Transition {
            accepting: nba.accepting_states().contains(&t.src),
            ..*t
        })
        .collect();
    Nba::transition_based(
        nba.num_states(),
        nba.alphabet().clone(),
        transitions,
        nba.initial().iter().copied(),
    )
}

/// Two-copy conversion to state-based acceptance.
///
/// State `(q, 1)` is entered exactly by accepting transitions, and the
/// accepting states are the reachable copies `(q, 1)`. States are numbered in
/// breadth-first discovery order from the initial states.
pub fn degeneralize(nba: &Nba) -> Result<Nba, AutomatonError> {
    nba.require(AcceptanceKind::TransitionBased)?;
    let mut outgoing: Vec<Vec<&Transition>> = vec![Vec::new(); nba.num_states()];
    for t in nba.transitions() {
        outgoing[t.src].push(t);
    }

    let mut ids: HashMap<(StateId, bool), StateId> = HashMap::new();
    let mut order: Vec<(StateId, bool)> = Vec::new();
    let mut queue = VecDeque::new();
    for &q in nba.initial() {
        ids.insert((q, false), order.len());
        order.push((q, false));
        queue.push_back((q, false));
    }
    let mut transitions = Vec::new();
    while let Some(node) = queue.pop_front() {
        let src = ids[&node];
        for t in &outgoing[node.0] {
            let target = (t.dst, t.accepting);
            let dst = *ids.entry(target).or_insert_with(|| {
                order.push(target);
                queue.push_back(target);
                order.len() - 1
            });
            transitions.push(Transition::new(src, t.sym, dst, false));
        }
    }
    let accepting: BTreeSet<StateId> = order
        .iter()
        .enumerate()
        .filter(|(_, (_, copy))| *copy)
        .map(|(id, _)| id)
        .collect();
    let initial: Vec<StateId> = (0..nba.initial().len()).collect();
    Nba::state_based(
        order.len(),
        nba.alphabet().clone(),
        transitions,
        initial,
        accepting,
    )
}

/// Removes states unreachable from the initial states. Surviving states keep
/// their relative order.
pub fn trim(nba: &Nba) -> Nba {
    let n = nba.num_states();
    let mut reachable = vec![false; n];
    let mut stack: Vec<StateId> = nba.initial().iter().copied().collect();
    for &q in &stack {
        reachable[q] = true;
    }
    let mut outgoing: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for t in nba.transitions() {
        outgoing[t.src].push(t.dst);
    }
    while let Some(q) = stack.pop() {
        for &r in &outgoing[q] {
            if !reachable[r] {
                reachable[r] = true;
                stack.push(r);
            }
        }
    }
    if reachable.iter().all(|&r| r) {
        return nba.clone();
    }
    let mut remap = vec![usize::MAX; n];
    let mut next = 0;
    for q in 0..n {
        if reachable[q] {
            remap[q] = next;
            next += 1;
        }
    }
    let transitions = nba
        .transitions()
        .iter()
        .filter(|t| reachable[t.src])
        .map(|t| Transition {
            src: remap[t.src],
            dst: remap[t.dst],
            ..*t
        })
        .collect();
    Nba::new(
        next,
        nba.alphabet().clone(),
        transitions,
        nba.initial().iter().map(|&q| remap[q]).collect(),
        nba.acceptance(),
        nba.accepting_states()
            .iter()
            .filter(|&&q| reachable[q])
            .map(|&q| remap[q])
            .collect(),
    )
    .expect("trimming preserves validity")
}
