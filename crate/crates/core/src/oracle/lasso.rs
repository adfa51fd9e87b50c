//! Acceptance of ultimately periodic words.
//!
//! A lasso `u·v^ω` is accepted iff the product of the automaton with the
//! lasso's position cycle (positions `0..|u|+|v|`, wrapping from the last
//! back to `|u|`) has a reachable strongly connected component containing an
//! accepting edge.

use crate::automata::{Nba, StateId, Symbol};

use super::{Lasso, OracleError};

/// Per-automaton successor table, reusable across lassos.
#[derive(Clone, Debug)]
pub struct LassoChecker {
    states: usize,
    symbols: usize,
    initial: Vec<StateId>,
    succ: Vec<Vec<(StateId, bool)>>,
}

impl LassoChecker {
    pub fn new(nba: &Nba) -> Self {
        let symbols = nba.alphabet().len();
        let mut succ = vec![Vec::new(); nba.num_states() * symbols];
        for t in nba.transitions() {
            succ[t.src * symbols + t.sym.index()].push((t.dst, nba.is_accepting_edge(t)));
        }
        Self {
            states: nba.num_states(),
            symbols,
            initial: nba.initial().iter().copied().collect(),
            succ,
        }
    }

    fn validate(&self, lasso: &Lasso) -> Result<(), OracleError> {
        if lasso.cycle.is_empty() {
            return Err(OracleError::EmptyLoop);
        }
        match lasso
            .prefix
            .iter()
            .chain(&lasso.cycle)
            .find(|s| s.index() >= self.symbols)
        {
            Some(s) => Err(crate::automata::AutomatonError::UnknownSymbol(s.0).into()),
            None => Ok(()),
        }
    }

    pub fn accepts(&self, lasso: &Lasso) -> Result<bool, OracleError> {
        self.validate(lasso)?;
        Ok(self.accepts_unchecked(&lasso.prefix, &lasso.cycle))
    }

    /// As [`accepts`](Self::accepts) for a lasso already known to be valid.
    pub fn accepts_unchecked(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        let len = u.len() + v.len();
        let letter = |pos: usize| if pos < u.len() { u[pos] } else { v[pos - u.len()] };
        let next = |pos: usize| if pos + 1 < len { pos + 1 } else { u.len() };
        let node = |q: StateId, pos: usize| q * len + pos;
        let total = self.states * len;

        // Forward reachability from (q₀, 0).
        let mut reached = vec![false; total];
        let mut stack: Vec<usize> = Vec::new();
        for &q in &self.initial {
            if !reached[node(q, 0)] {
                reached[node(q, 0)] = true;
                stack.push(node(q, 0));
            }
        }
        while let Some(x) = stack.pop() {
            let (q, pos) = (x / len, x % len);
            for &(r, _) in &self.succ[q * self.symbols + letter(pos).index()] {
                let y = node(r, next(pos));
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }

        let edges = |x: usize| {
            let (q, pos) = (x / len, x % len);
            self.succ[q * self.symbols + letter(pos).index()]
                .iter()
                .map(move |&(r, acc)| (node(r, next(pos)), acc))
        };
        let comp = tarjan(total, &reached, &edges);
        (0..total)
            .filter(|&x| reached[x])
            .any(|x| edges(x).any(|(y, acc)| acc && comp[x] == comp[y]))
    }
}

/// Strongly connected components of the nodes marked in `active`;
/// inactive nodes get `usize::MAX`.
fn tarjan<E, I>(n: usize, active: &[bool], edges: &E) -> Vec<usize>
where
    E: Fn(usize) -> I,
    I: Iterator<Item = (usize, bool)>,
{
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut scc_stack: Vec<usize> = Vec::new();
    let mut counter = 0;
    let mut comps = 0;

    for root in 0..n {
        if !active[root] || index[root] != NONE {
            continue;
        }
        // Explicit call stack of (node, successors still to visit).
        let mut call: Vec<(usize, Vec<usize>)> = Vec::new();
        let visit = |v: usize,
                     index: &mut Vec<usize>,
                     low: &mut Vec<usize>,
                     on_stack: &mut Vec<bool>,
                     scc_stack: &mut Vec<usize>,
                     counter: &mut usize| {
            index[v] = *counter;
            low[v] = *counter;
            *counter += 1;
            scc_stack.push(v);
            on_stack[v] = true;
            let mut succ: Vec<usize> = edges(v).map(|(w, _)| w).collect();
            succ.reverse();
            (v, succ)
        };
        call.push(visit(
            root,
            &mut index,
            &mut low,
            &mut on_stack,
            &mut scc_stack,
            &mut counter,
        ));
        while let Some((v, succ)) = call.last_mut() {
            let v = *v;
            if let Some(w) = succ.pop() {
                if index[w] == NONE {
                    let frame = visit(
                        w,
                        &mut index,
                        &mut low,
                        &mut on_stack,
                        &mut scc_stack,
                        &mut counter,
                    );
                    call.push(frame);
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, _)) = call.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = scc_stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}

/// Whether `nba` accepts `lasso.prefix · lasso.cycle^ω`. State-based
/// acceptance counts every edge leaving an accepting state as accepting.
pub fn nba_accepts_lasso(nba: &Nba, lasso: &Lasso) -> Result<bool, OracleError> {
    LassoChecker::new(nba).accepts(lasso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{degeneralize, parse_hoa, Alphabet, AutomatonError, Transition};

    const B1: &str = include_str!("../../../../fixtures/b1.hoa");

    fn lasso(ab: &Alphabet, u: &str, v: &str) -> Lasso {
        Lasso::new(ab.word(u).unwrap(), ab.word(v).unwrap()).unwrap()
    }

    #[test]
    fn b1_examples() {
        let b = parse_hoa(B1).unwrap();
        let ab = b.alphabet();
        assert!(nba_accepts_lasso(&b, &lasso(ab, "a", "db")).unwrap());
        assert!(!nba_accepts_lasso(&b, &lasso(ab, "a", "c")).unwrap());
        assert!(nba_accepts_lasso(&b, &lasso(ab, "b", "bd")).unwrap());
        assert!(!nba_accepts_lasso(&b, &lasso(ab, "", "c")).unwrap());
        assert!(nba_accepts_lasso(&b, &lasso(ab, "ac", "db")).unwrap());
    }

    #[test]
    fn state_based_agrees_with_degeneralized_source() {
        let b = parse_hoa(B1).unwrap();
        let sb = degeneralize(&b).unwrap();
        let ab = b.alphabet();
        for (u, v) in [("a", "db"), ("a", "c"), ("", "a"), ("b", "ab"), ("bb", "cd")] {
            let l = lasso(ab, u, v);
            assert_eq!(
                nba_accepts_lasso(&b, &l).unwrap(),
                nba_accepts_lasso(&sb, &l).unwrap(),
                "{u} ({v})^w"
            );
        }
    }

    #[test]
    fn no_accepting_edges_rejects() {
        let ab = Alphabet::from_letters("a");
        let b =
            Nba::transition_based(1, ab.clone(), vec![Transition::new(0, Symbol(0), 0, false)], [0]).unwrap();
        assert!(!nba_accepts_lasso(&b, &lasso(&ab, "", "a")).unwrap());
    }

    #[test]
    fn accepting_edge_off_the_cycle_is_not_enough() {
        // 0 -a!-> 1 -a-> 1: the accepting edge is crossed once.
        let ab = Alphabet::from_letters("a");
        let b = Nba::transition_based(
            2,
            ab.clone(),
            vec![
                Transition::new(0, Symbol(0), 1, true),
                Transition::new(1, Symbol(0), 1, false),
            ],
            [0],
        )
        .unwrap();
        assert!(!nba_accepts_lasso(&b, &lasso(&ab, "", "a")).unwrap());
    }

    #[test]
    fn errors() {
        let b = parse_hoa(B1).unwrap();
        let bad = Lasso {
            prefix: vec![],
            cycle: vec![Symbol(7)],
        };
        assert_eq!(
            nba_accepts_lasso(&b, &bad),
            Err(OracleError::Automaton(AutomatonError::UnknownSymbol(7)))
        );
        let empty = Lasso {
            prefix: vec![Symbol(0)],
            cycle: vec![],
        };
        assert_eq!(nba_accepts_lasso(&b, &empty), Err(OracleError::EmptyLoop));
        assert_eq!(Lasso::new(vec![], vec![]), Err(OracleError::EmptyLoop));
    }
}
