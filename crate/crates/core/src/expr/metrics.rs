//! Compactness metrics: syntax-tree size (`rpn`), longest star-once path
//! (`tllen`) and Kleene-star nesting depth (`star_height`).
//!
//! Shared subtrees are measured once per call, so measuring an expression
//! costs time proportional to its DAG size even when the tree is exponential.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{OmegaRegex, Regex};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub rpn: u64,
    pub tllen: u64,
    pub star_height: u32,
}

/// Anything the three metrics are defined for.
pub trait Measure {
    fn metrics(&self) -> Metrics;

    fn rpn(&self) -> u64 {
        self.metrics().rpn
    }

    fn tllen(&self) -> u64 {
        self.metrics().tllen
    }

    fn star_height(&self) -> u32 {
        self.metrics().star_height
    }
}

#[derive(Default)]
struct Cache {
    regex: HashMap<*const Regex, Metrics>,
    omega: HashMap<*const OmegaRegex, Metrics>,
}

impl Cache {
    fn shared(&mut self, r: &Arc<Regex>) -> Metrics {
        let key = Arc::as_ptr(r);
        if let Some(m) = self.regex.get(&key) {
            return *m;
        }
        let m = self.regex_node(r);
        self.regex.insert(key, m);
        m
    }

    fn shared_omega(&mut self, e: &Arc<OmegaRegex>) -> Metrics {
        let key = Arc::as_ptr(e);
        if let Some(m) = self.omega.get(&key) {
            return *m;
        }
        let m = self.omega_node(e);
        self.omega.insert(key, m);
        m
    }

    fn regex_node(&mut self, r: &Regex) -> Metrics {
        match r {
            Regex::Empty | Regex::Epsilon => Metrics {
                rpn: 1,
                tllen: 0,
                star_height: 0,
            },
            Regex::Sym(_) => Metrics {
                rpn: 1,
                tllen: 1,
                star_height: 0,
            },
            Regex::Union(a, b) => {
                let (a, b) = (self.shared(a), self.shared(b));
                Metrics {
                    rpn: 1 + a.rpn + b.rpn,
                    tllen: a.tllen.max(b.tllen),
                    star_height: a.star_height.max(b.star_height),
                }
            }
            Regex::Concat(a, b) => {
                let (a, b) = (self.shared(a), self.shared(b));
                Metrics {
                    rpn: 1 + a.rpn + b.rpn,
                    tllen: a.tllen + b.tllen,
                    star_height: a.star_height.max(b.star_height),
                }
            }
            Regex::Star { body, .. } => {
                let b = self.shared(body);
                Metrics {
                    rpn: 1 + b.rpn,
                    tllen: b.tllen,
                    star_height: 1 + b.star_height,
                }
            }
        }
    }

    fn omega_node(&mut self, e: &OmegaRegex) -> Metrics {
        match e {
            OmegaRegex::Empty => Metrics {
                rpn: 1,
                tllen: 0,
                star_height: 0,
            },
            // ω is not a Kleene star.
            OmegaRegex::Omega(body) => {
                let b = self.shared(body);
                Metrics { rpn: 1 + b.rpn, ..b }
            }
            OmegaRegex::ConcatFin(p, rest) => {
                let (p, r) = (self.shared(p), self.shared_omega(rest));
                Metrics {
                    rpn: 1 + p.rpn + r.rpn,
                    tllen: p.tllen + r.tllen,
                    star_height: p.star_height.max(r.star_height),
                }
            }
            OmegaRegex::Union(a, b) => {
                let (a, b) = (self.shared_omega(a), self.shared_omega(b));
                Metrics {
                    rpn: 1 + a.rpn + b.rpn,
                    tllen: a.tllen.max(b.tllen),
                    star_height: a.star_height.max(b.star_height),
                }
            }
        }
    }
}

impl Measure for Regex {
    fn metrics(&self) -> Metrics {
        Cache::default().regex_node(self)
    }
}

impl Measure for OmegaRegex {
    fn metrics(&self) -> Metrics {
        Cache::default().omega_node(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::expr::{parse, parse_omega};

    #[test]
    fn examples() {
        let mut ab = Alphabet::from_letters("abcd");
        let m = parse("a", &mut ab).unwrap().metrics();
        assert_eq!((m.rpn, m.tllen, m.star_height), (1, 1, 0));
        let m = parse("a+ba*b", &mut ab).unwrap().metrics();
        assert_eq!((m.rpn, m.tllen), (8, 3));
        assert_eq!(parse_omega("(a)^w", &mut ab).unwrap().rpn(), 2);
        assert_eq!(parse_omega("(a+ba*b)((c)*da*b)^w", &mut ab).unwrap().tllen(), 7);
        assert_eq!(parse("a*", &mut ab).unwrap().star_height(), 1);
        assert_eq!(parse("(a*)*", &mut ab).unwrap().star_height(), 2);
        assert_eq!(parse_omega("((c)*da*b)^w", &mut ab).unwrap().star_height(), 1);
    }

    #[test]
    fn shared_subtrees_counted_per_occurrence() {
        let mut ab = Alphabet::from_letters("ab");
        let x = parse("ab*", &mut ab).unwrap();
        let both = Regex::union(x.clone(), x);
        assert_eq!(both.rpn(), 9);
    }
}
