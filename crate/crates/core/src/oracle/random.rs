//! Seeded test corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{trim, Alphabet, Nba, Symbol, Transition};
use crate::expr::{OmegaRegex, Regex};

fn letters(k: usize) -> Alphabet {
    Alphabet::from_labels((0..k).map(|i| {
        if i < 26 {
            char::from(b'a' + i as u8).to_string()
        } else {
            format!("s{i}")
        }
    }))
    .expect("generated labels are distinct")
}

/// Transition-based automaton with state 0 initial. Each of the
/// `n·k·n` possible transitions is present with probability `edge_density`
/// and, when present, accepting with probability `acc_prob`. The result is
/// trimmed to the part reachable from state 0.
pub fn random_nba(
    seed: u64,
    num_states: usize,
    alphabet_size: usize,
    edge_density: f64,
    acc_prob: f64,
) -> Nba {
    let n = num_states.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (density, acc_prob) = (edge_density.clamp(0.0, 1.0), acc_prob.clamp(0.0, 1.0));
    let mut transitions = Vec::new();
    for p in 0..n {
        for s in 0..alphabet_size {
            for q in 0..n {
                if rng.gen_bool(density) {
                    let acc = rng.gen_bool(acc_prob);
                    transitions.push(Transition::new(p, Symbol(s as u32), q, acc));
                }
            }
        }
    }
    let nba = Nba::transition_based(n, letters(alphabet_size), transitions, [0])
        .expect("generated automaton is well formed");
    trim(&nba)
}

/// State-based counterpart of [`random_nba`]: each state is accepting with
/// probability `acc_prob`.
pub fn random_state_based_nba(
    seed: u64,
    num_states: usize,
    alphabet_size: usize,
    edge_density: f64,
    acc_prob: f64,
) -> Nba {
    let n = num_states.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (density, acc_prob) = (edge_density.clamp(0.0, 1.0), acc_prob.clamp(0.0, 1.0));
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(acc_prob)).collect();
    let mut transitions = Vec::new();
    for p in 0..n {
        for s in 0..alphabet_size {
            for q in 0..n {
                if rng.gen_bool(density) {
                    transitions.push(Transition::new(p, Symbol(s as u32), q, false));
                }
            }
        }
    }
    let nba = Nba::state_based(n, letters(alphabet_size), transitions, [0], accepting)
        .expect("generated automaton is well formed");
    trim(&nba)
}

/// All `2^8` flag assignments over the complete two-state, two-symbol
/// transition relation, with state 0 initial.
pub fn complete_two_state_corpus() -> Vec<Nba> {
    let mut edges = Vec::new();
    for p in 0..2 {
        for s in 0..2u32 {
            for q in 0..2 {
                edges.push((p, Symbol(s), q));
            }
        }
    }
    (0u32..1 << edges.len())
        .map(|mask| {
            let ts = edges
                .iter()
                .enumerate()
                .map(|(bit, &(p, s, q))| Transition::new(p, s, q, mask >> bit & 1 == 1))
                .collect();
            Nba::transition_based(2, letters(2), ts, [0]).expect("complete corpus is well formed")
        })
        .collect()
}

/// Random expression over `k` symbols with at most `depth` operator levels.
pub fn random_regex<R: Rng>(rng: &mut R, depth: u32, k: usize) -> Regex {
    let leaf = |rng: &mut R| match rng.gen_range(0..10) {
        0 => Regex::Epsilon,
        1 if k == 0 => Regex::Empty,
        1 => Regex::Empty,
        _ if k == 0 => Regex::Epsilon,
        _ => Regex::sym(Symbol(rng.gen_range(0..k) as u32)),
    };
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => Regex::union(random_regex(rng, depth - 1, k), random_regex(rng, depth - 1, k)),
        1 => Regex::concat(random_regex(rng, depth - 1, k), random_regex(rng, depth - 1, k)),
        _ => Regex::star(random_regex(rng, depth - 1, k)),
    }
}

/// Random ω-expression over `k ≥ 1` symbols with at most `depth` levels.
/// Nullable loop bodies are made non-nullable by appending a symbol.
pub fn random_omega_regex<R: Rng>(rng: &mut R, depth: u32, k: usize) -> OmegaRegex {
    assert!(k >= 1, "ω-expressions need a nonempty alphabet");
    let body = |rng: &mut R, d: u32| {
        let r = random_regex(rng, d, k);
        if r.nullable() {
            Regex::concat(r, Regex::sym(Symbol(rng.gen_range(0..k) as u32)))
        } else {
            r
        }
    };
    let d = depth.saturating_sub(1);
    if depth <= 1 || rng.gen_bool(0.3) {
        return OmegaRegex::omega(body(rng, d)).expect("body is not nullable");
    }
    match rng.gen_range(0..3) {
        0 => OmegaRegex::union(random_omega_regex(rng, d, k), random_omega_regex(rng, d, k)),
        1 => OmegaRegex::concat_fin(random_regex(rng, d, k), random_omega_regex(rng, d, k)),
        _ => OmegaRegex::omega(body(rng, d)).expect("body is not nullable"),
    }
}

/// All words of length `len` over `k` symbols in lexicographic order.
pub fn all_words(k: usize, len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k as u32).map(move |s| {
                    let mut w = w.clone();
                    w.push(Symbol(s));
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(random_nba(7, 4, 3, 0.4, 0.3), random_nba(7, 4, 3, 0.4, 0.3));
        assert_eq!(
            random_state_based_nba(7, 4, 3, 0.4, 0.3),
            random_state_based_nba(7, 4, 3, 0.4, 0.3)
        );
    }

    #[test]
    fn no_acceptance() {
        let b = random_nba(1, 4, 2, 0.5, 0.0);
        assert!(b.transitions().iter().all(|t| !t.accepting));
        assert_eq!(b.initial().len(), 1);
    }

    #[test]
    fn complete_all_accepting() {
        let b = random_nba(3, 2, 1, 1.0, 1.0);
        assert_eq!(b.num_states(), 2);
        assert_eq!(b.transitions().len(), 4);
        assert!(b.transitions().iter().all(|t| t.accepting));
    }

    #[test]
    fn corpus_size() {
        let c = complete_two_state_corpus();
        assert_eq!(c.len(), 256);
        assert!(c.iter().all(|b| b.transitions().len() == 8));
    }

    #[test]
    fn words() {
        assert_eq!(all_words(2, 0), vec![Vec::<Symbol>::new()]);
        assert_eq!(all_words(3, 2).len(), 9);
        assert_eq!(all_words(2, 2)[1], vec![Symbol(0), Symbol(1)]);
    }

    #[test]
    fn omega_bodies_are_never_nullable() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let e = random_omega_regex(&mut rng, 5, 2);
            let mut stack = vec![e];
            while let Some(e) = stack.pop() {
                match e {
                    OmegaRegex::Omega(b) => assert!(!b.nullable()),
                    OmegaRegex::ConcatFin(_, r) => stack.push((*r).clone()),
                    OmegaRegex::Union(a, b) => {
                        stack.push((*a).clone());
                        stack.push((*b).clone());
                    }
                    OmegaRegex::Empty => {}
                }
            }
        }
    }
}
