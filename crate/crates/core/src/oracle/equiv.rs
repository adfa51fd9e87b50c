//! Bounded language equivalence over lassos.
//!
//! Lassos are enumerated in a fixed canonical order: by prefix length, then
//! prefix (lexicographic in symbol order), then loop length, then loop. Every
//! lasso has a dense index in that order, so the search can be split across
//! workers and still report the first disagreement.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use crate::automata::{Nba, Symbol};
use crate::exec::{self, Execution};

use super::lasso::LassoChecker;
use super::{EquivBounds, Lasso, OracleError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// The first lasso, in canonical order, on which the automata disagree.
    Counterexample {
        lasso: Lasso,
        left_accepts: bool,
    },
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EquivConfig {
    pub execution: Execution,
    /// Lasso counts above this log a warning before the search starts.
    pub budget: u64,
    pub deadline: Option<Instant>,
}

impl Default for EquivConfig {
    fn default() -> Self {
        Self {
            execution: Execution::default(),
            budget: 10_000_000,
            deadline: None,
        }
    }
}

fn words_of_len(k: usize, len: usize) -> u64 {
    (k as u64).saturating_pow(len as u32)
}

/// Number of lassos within `bounds` over `k` symbols (saturating).
pub fn lasso_count(k: usize, bounds: EquivBounds) -> u64 {
    let prefixes: u64 = (0..=bounds.max_prefix).fold(0, |acc, l| acc.saturating_add(words_of_len(k, l)));
    let loops: u64 = (1..=bounds.max_loop).fold(0, |acc, l| acc.saturating_add(words_of_len(k, l)));
    prefixes.saturating_mul(loops)
}

/// Word number `idx` among those of length `len`, most significant first.
fn decode_word(k: usize, len: usize, mut idx: u64) -> Vec<Symbol> {
    let mut w = vec![Symbol(0); len];
    for slot in w.iter_mut().rev() {
        *slot = Symbol((idx % k as u64) as u32);
        idx /= k as u64;
    }
    w
}

fn decode(k: usize, bounds: EquivBounds, loops_total: u64, mut idx: u64) -> Lasso {
    let mut plen = 0;
    loop {
        let block = words_of_len(k, plen) * loops_total;
        if idx < block {
            break;
        }
        idx -= block;
        plen += 1;
    }
    let prefix = decode_word(k, plen, idx / loops_total);
    let mut rest = idx % loops_total;
    let mut clen = 1;
    while rest >= words_of_len(k, clen) {
        rest -= words_of_len(k, clen);
        clen += 1;
    }
    debug_assert!(clen <= bounds.max_loop);
    Lasso {
        prefix,
        cycle: decode_word(k, clen, rest),
    }
}

/// Compares `x` and `y` on every lasso within `bounds`.
pub fn bounded_equiv(x: &Nba, y: &Nba, bounds: EquivBounds) -> Result<Equivalence, OracleError> {
    bounded_equiv_with(x, y, bounds, &EquivConfig::default())
}

pub fn bounded_equiv_with(
    x: &Nba,
    y: &Nba,
    bounds: EquivBounds,
    config: &EquivConfig,
) -> Result<Equivalence, OracleError> {
    if x.alphabet() != y.alphabet() {
        return Err(OracleError::AlphabetMismatch);
    }
    if bounds.max_loop == 0 {
        return Err(OracleError::ZeroLoopBound);
    }
    let k = x.alphabet().len();
    if k == 0 {
        return Ok(Equivalence::Equal);
    }
    let total = lasso_count(k, bounds);
    if total > config.budget {
        log::warn!(
            "bounded equivalence will check {total} lassos (budget {})",
            config.budget
        );
    }
    let total = usize::try_from(total).map_err(|_| OracleError::Timeout)?;
    let loops_total: u64 = (1..=bounds.max_loop).map(|l| words_of_len(k, l)).sum();

    let (cx, cy) = (LassoChecker::new(x), LassoChecker::new(y));
    let timed_out = AtomicBool::new(false);
    let hit = exec::find_first(config.execution, 0..total, |i| {
        if i % 4096 == 0 && config.deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out.store(true, Ordering::Relaxed);
        }
        if timed_out.load(Ordering::Relaxed) {
            // Stop the search; the flag is reported below.
            return true;
        }
        let l = decode(k, bounds, loops_total, i as u64);
        cx.accepts_unchecked(&l.prefix, &l.cycle) != cy.accepts_unchecked(&l.prefix, &l.cycle)
    });
    if timed_out.load(Ordering::Relaxed) {
        return Err(OracleError::Timeout);
    }
    Ok(match hit {
        None => Equivalence::Equal,
        Some(i) => {
            let lasso = decode(k, bounds, loops_total, i as u64);
            let left_accepts = cx.accepts_unchecked(&lasso.prefix, &lasso.cycle);
            Equivalence::Counterexample { lasso, left_accepts }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_hoa, Alphabet, Transition};
    use crate::oracle::all_words;

    const B1: &str = include_str!("../../../../fixtures/b1.hoa");

    fn strip_acceptance(b: &Nba) -> Nba {
        let ts = b
            .transitions()
            .iter()
            .map(|t| Transition {
                accepting: false,
                ..*t
            })
            .collect();
        Nba::transition_based(
            b.num_states(),
            b.alphabet().clone(),
            ts,
            b.initial().iter().copied(),
        )
        .unwrap()
    }

    #[test]
    fn enumeration_order_is_canonical() {
        let bounds = EquivBounds::new(2, 2).unwrap();
        let k = 2;
        let loops_total = 2 + 4;
        let decoded: Vec<Lasso> = (0..lasso_count(k, bounds))
            .map(|i| decode(k, bounds, loops_total, i))
            .collect();
        let mut expected = Vec::new();
        for plen in 0..=2 {
            for u in all_words(k, plen) {
                for clen in 1..=2 {
                    for v in all_words(k, clen) {
                        expected.push(Lasso {
                            prefix: u.clone(),
                            cycle: v,
                        });
                    }
                }
            }
        }
        assert_eq!(decoded, expected);
    }

    #[test]
    fn reflexive() {
        let b = parse_hoa(B1).unwrap();
        assert_eq!(
            bounded_equiv(&b, &b, EquivBounds::new(3, 3).unwrap()).unwrap(),
            Equivalence::Equal
        );
    }

    #[test]
    fn stripped_acceptance_counterexample() {
        let b = parse_hoa(B1).unwrap();
        let stripped = strip_acceptance(&b);
        // With loops of length one nothing is accepted by B₁ either.
        assert_eq!(
            bounded_equiv(&b, &stripped, EquivBounds::new(1, 1).unwrap()).unwrap(),
            Equivalence::Equal
        );
        let ab = b.alphabet();
        let r = bounded_equiv(&b, &stripped, EquivBounds::new(1, 2).unwrap()).unwrap();
        assert_eq!(
            r,
            Equivalence::Counterexample {
                lasso: Lasso {
                    prefix: ab.word("a").unwrap(),
                    cycle: ab.word("db").unwrap()
                },
                left_accepts: true
            }
        );
    }

    #[test]
    fn strategies_agree() {
        let b = parse_hoa(B1).unwrap();
        let stripped = strip_acceptance(&b);
        let bounds = EquivBounds::new(2, 3).unwrap();
        let run = |execution| {
            bounded_equiv_with(
                &b,
                &stripped,
                bounds,
                &EquivConfig {
                    execution,
                    ..EquivConfig::default()
                },
            )
            .unwrap()
        };
        assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
    }

    #[test]
    fn errors() {
        let b = parse_hoa(B1).unwrap();
        let other = Nba::transition_based(1, Alphabet::from_letters("xy"), vec![], [0]).unwrap();
        assert_eq!(
            bounded_equiv(&b, &other, EquivBounds::new(1, 1).unwrap()),
            Err(OracleError::AlphabetMismatch)
        );
        assert_eq!(EquivBounds::new(1, 0), Err(OracleError::ZeroLoopBound));
        let past = Instant::now() - std::time::Duration::from_secs(1);
        let cfg = EquivConfig {
            deadline: Some(past),
            ..EquivConfig::default()
        };
        assert_eq!(
            bounded_equiv_with(&b, &b, EquivBounds::new(2, 2).unwrap(), &cfg),
            Err(OracleError::Timeout)
        );
    }

    #[test]
    fn counts() {
        assert_eq!(lasso_count(2, EquivBounds::new(0, 1).unwrap()), 2);
        assert_eq!(lasso_count(3, EquivBounds::new(4, 4).unwrap()), 121 * 120);
    }
}
