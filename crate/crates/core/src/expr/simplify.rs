//! Rewrite-based simplification.
//!
//! Every rule is a language identity whose right-hand side has fewer syntax
//! nodes than its left-hand side, so a pass never increases `rpn` and the
//! fixed-point loop terminates. Rules are applied bottom-up; union and
//! concatenation chains are handled as flat operand lists so that a pattern is
//! found wherever it sits in a chain.

use std::collections::BTreeSet;

use super::{OmegaRegex, Regex};

pub const DEFAULT_ITERATION_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `x + x ⇒ x`, for regular and ω alternatives.
    UnionIdempotent,
    /// `x + xy* ⇒ xy*` and `xy* + x ⇒ xy*`.
    UnionStarAbsorb,
    /// `ε + x* ⇒ x*` and `x* + ε ⇒ x*`.
    EpsilonStar,
    /// `(x*)* ⇒ x*`.
    StarStar,
    /// `x*x* ⇒ x*`.
    StarConcatStar,
    /// `xyy^ω ⇒ xy^ω`.
    OmegaPrefixAbsorb,
    /// `(xx*)^ω ⇒ x^ω` and `(x*x)^ω ⇒ x^ω`.
    OmegaPlus,
    /// `(xx)^ω ⇒ x^ω`.
    OmegaSquare,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::UnionIdempotent,
        Rule::UnionStarAbsorb,
        Rule::EpsilonStar,
        Rule::StarStar,
        Rule::StarConcatStar,
        Rule::OmegaPrefixAbsorb,
        Rule::OmegaPlus,
        Rule::OmegaSquare,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    rules: BTreeSet<Rule>,
    pub iteration_cap: usize,
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::of(Rule::ALL)
    }
}

impl RuleSet {
    pub fn empty() -> Self {
        Self::of([])
    }

    pub fn of<I: IntoIterator<Item = Rule>>(rules: I) -> Self {
        Self {
            rules: rules.into_iter().collect(),
            iteration_cap: DEFAULT_ITERATION_CAP,
        }
    }

    pub fn contains(&self, rule: Rule) -> bool {
        self.rules.contains(&rule)
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.rules.iter().copied()
    }
}

/// Result of [`simplify`]. `capped` is set when the iteration cap was hit
/// before a fixed point; `expr` is then the last (still equivalent) tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified<T> {
    pub expr: T,
    pub passes: usize,
    pub capped: bool,
}

/// Simplifies an ω-regular expression to a fixed point of `rules`.
pub fn simplify(expr: &OmegaRegex, rules: &RuleSet) -> Simplified<OmegaRegex> {
    fixed_point(expr, rules, |e| pass_omega(e, rules))
}

/// Simplifies a regular expression to a fixed point of `rules`.
pub fn simplify_regex(expr: &Regex, rules: &RuleSet) -> Simplified<Regex> {
    fixed_point(expr, rules, |e| pass_regex(e, rules))
}

fn fixed_point<T: Clone + PartialEq>(expr: &T, rules: &RuleSet, pass: impl Fn(&T) -> T) -> Simplified<T> {
    let mut current = expr.clone();
    if rules.is_empty() {
        return Simplified {
            expr: current,
            passes: 0,
            capped: false,
        };
    }
    for passes in 1..=rules.iteration_cap {
        let next = pass(&current);
        if next == current {
            return Simplified {
                expr: next,
                passes,
                capped: false,
            };
        }
        current = next;
    }
    log::warn!(
        "simplification stopped after {} passes without reaching a fixed point",
        rules.iteration_cap
    );
    Simplified {
        expr: current,
        passes: rules.iteration_cap,
        capped: true,
    }
}

fn pass_regex(r: &Regex, rules: &RuleSet) -> Regex {
    match r {
        Regex::Empty | Regex::Epsilon | Regex::Sym(_) => r.clone(),
        Regex::Union(..) => {
            let alts: Vec<Regex> = r.alternatives().iter().map(|a| pass_regex(a, rules)).collect();
            Regex::union_all(reduce_alternatives(alts, rules))
        }
        Regex::Concat(..) => {
            let factors: Vec<Regex> = r.factors().iter().map(|f| pass_regex(f, rules)).collect();
            Regex::concat_all(reduce_factors(factors, rules))
        }
        Regex::Star { body, grouped } => {
            let body = pass_regex(body, rules);
            if rules.contains(Rule::StarStar) && matches!(body, Regex::Star { .. }) {
                body
            } else {
                Regex::star_with(body, *grouped)
            }
        }
    }
}

fn reduce_alternatives(mut alts: Vec<Regex>, rules: &RuleSet) -> Vec<Regex> {
    if rules.contains(Rule::UnionIdempotent) {
        let mut kept: Vec<Regex> = Vec::with_capacity(alts.len());
        for a in alts {
            if !kept.contains(&a) {
                kept.push(a);
            }
        }
        alts = kept;
    }
    if rules.contains(Rule::EpsilonStar) && alts.iter().any(|a| matches!(a, Regex::Star { .. })) {
        alts.retain(|a| !matches!(a, Regex::Epsilon));
    }
    if rules.contains(Rule::UnionStarAbsorb) {
        // Drop x when some other alternative is x·y*.
        let absorbed: Vec<bool> = alts
            .iter()
            .map(|x| {
                alts.iter().any(|other| match other {
                    Regex::Concat(l, r) => matches!(**r, Regex::Star { .. }) && **l == *x,
                    _ => false,
                })
            })
            .collect();
        alts = alts
            .into_iter()
            .zip(absorbed)
            .filter(|(_, gone)| !gone)
            .map(|(a, _)| a)
            .collect();
    }
    alts
}

fn reduce_factors(factors: Vec<Regex>, rules: &RuleSet) -> Vec<Regex> {
    if !rules.contains(Rule::StarConcatStar) {
        return factors;
    }
    let mut out: Vec<Regex> = Vec::with_capacity(factors.len());
    for f in factors {
        if let (Some(Regex::Star { body: prev, .. }), Regex::Star { body, .. }) = (out.last(), &f) {
            if prev == body {
                continue;
            }
        }
        out.push(f);
    }
    out
}

fn pass_omega(e: &OmegaRegex, rules: &RuleSet) -> OmegaRegex {
    match e {
        OmegaRegex::Empty => OmegaRegex::Empty,
        OmegaRegex::Omega(body) => {
            let body = pass_regex(body, rules);
            let body = reduce_omega_body(body, rules);
            OmegaRegex::omega(body).expect("rewrites keep ω bodies non-nullable")
        }
        OmegaRegex::ConcatFin(prefix, rest) => {
            let prefix = pass_regex(prefix, rules);
            let rest = pass_omega(rest, rules);
            if rules.contains(Rule::OmegaPrefixAbsorb) {
                if let OmegaRegex::Omega(body) = &rest {
                    let loop_factors = body.factors();
                    let mut prefix_factors = prefix.factors();
                    while !loop_factors.is_empty() && prefix_factors.ends_with(&loop_factors) {
                        prefix_factors.truncate(prefix_factors.len() - loop_factors.len());
                    }
                    return OmegaRegex::concat_fin(Regex::concat_all(prefix_factors), rest);
                }
            }
            OmegaRegex::concat_fin(prefix, rest)
        }
        OmegaRegex::Union(..) => {
            let mut alts: Vec<OmegaRegex> = e.alternatives().iter().map(|a| pass_omega(a, rules)).collect();
            if rules.contains(Rule::UnionIdempotent) {
                let mut kept: Vec<OmegaRegex> = Vec::with_capacity(alts.len());
                for a in alts {
                    if !kept.contains(&a) {
                        kept.push(a);
                    }
                }
                alts = kept;
            }
            OmegaRegex::union_all(alts)
        }
    }
}

fn reduce_omega_body(body: Regex, rules: &RuleSet) -> Regex {
    let factors = body.factors();
    if rules.contains(Rule::OmegaPlus) && factors.len() >= 2 {
        // x·x* with x spanning all factors but the last.
        if let Regex::Star { body: s, .. } = &factors[factors.len() - 1] {
            let head = &factors[..factors.len() - 1];
            if s.factors() == head {
                return Regex::concat_all(head.iter().cloned());
            }
        }
        // x*·x with x spanning all factors but the first.
        if let Regex::Star { body: s, .. } = &factors[0] {
            let tail = &factors[1..];
            if s.factors() == tail {
                return Regex::concat_all(tail.iter().cloned());
            }
        }
    }
    if rules.contains(Rule::OmegaSquare) && factors.len() >= 2 && factors.len().is_multiple_of(2) {
        let (a, b) = factors.split_at(factors.len() / 2);
        if a == b {
            return Regex::concat_all(a.iter().cloned());
        }
    }
    body
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::expr::{parse, parse_omega, Measure};

    fn ab() -> Alphabet {
        Alphabet::from_letters("abcd")
    }

    fn simp(text: &str) -> String {
        let mut a = ab();
        let r = parse(text, &mut a).unwrap();
        simplify_regex(&r, &RuleSet::default()).expr.to_text(&a)
    }

    fn simp_omega(text: &str) -> String {
        let mut a = ab();
        let e = parse_omega(text, &mut a).unwrap();
        simplify(&e, &RuleSet::default()).expr.to_text(&a)
    }

    #[test]
    fn union_star_absorption() {
        let mut a = ab();
        let out = simplify_regex(&parse("a+a(b)*", &mut a).unwrap(), &RuleSet::default());
        assert_eq!(out.expr, parse("a(b)*", &mut a).unwrap());
        assert_eq!(simp("ab*+a"), "ab*");
        assert_eq!(simp("c+ab+abd*"), "c+abd*");
    }

    #[test]
    fn omega_prefix_absorption() {
        let mut a = ab();
        let out = simplify(&parse_omega("ab(b)^w", &mut a).unwrap(), &RuleSet::default());
        assert_eq!(out.expr, parse_omega("a(b)^w", &mut a).unwrap());
        assert_eq!(simp_omega("abcbc(bc)^w"), "a(bc)^w");
        assert_eq!(simp_omega("bb(b)^w"), "(b)^w");
    }

    #[test]
    fn remaining_rules() {
        assert_eq!(simp("a+b+a"), "a+b");
        assert_eq!(simp("%e+a*"), "a*");
        assert_eq!(simp("a*+%e"), "a*");
        assert_eq!(simp("(a*)*"), "a*");
        assert_eq!(simp("ca*a*b"), "ca*b");
        assert_eq!(simp_omega("(ab(ab)*)^w"), "(ab)^w");
        assert_eq!(simp_omega("((ab)*ab)^w"), "(ab)^w");
        assert_eq!(simp_omega("(abab)^w"), "(ab)^w");
        assert_eq!(simp_omega("(a)^w+(b)^w+(a)^w"), "(a)^w+(b)^w");
    }

    #[test]
    fn empty_rule_set_is_identity() {
        let mut a = ab();
        let e = parse_omega("(a+a(b)*)(aa)^w+(a)^w+(a)^w", &mut a).unwrap();
        let out = simplify(&e, &RuleSet::empty());
        assert_eq!(out.expr, e);
        assert_eq!(out.passes, 0);
    }

    #[test]
    fn single_rule_sets() {
        let mut a = ab();
        let e = parse("a+a+a(b)*", &mut a).unwrap();
        let only_idem = simplify_regex(&e, &RuleSet::of([Rule::UnionIdempotent])).expr;
        assert_eq!(only_idem.to_text(&a), "a+a(b)*");
        let only_absorb = simplify_regex(&e, &RuleSet::of([Rule::UnionStarAbsorb])).expr;
        assert_eq!(only_absorb.to_text(&a), "a(b)*");
    }

    #[test]
    fn iteration_cap_reports_best_so_far() {
        let mut a = ab();
        let e = parse("((a*)*)*", &mut a).unwrap();
        let rules = RuleSet {
            iteration_cap: 1,
            ..RuleSet::default()
        };
        let out = simplify_regex(&e, &rules);
        assert!(out.capped);
        assert!(out.expr.rpn() <= e.rpn());
    }
}
