//! Regular and ω-regular expression trees.
//!
//! Trees are built through smart constructors that always apply the
//! ∅/ε absorption laws and keep union and concatenation chains
//! left-associated, so two expressions built from the same operands in the
//! same order have the same shape. Subtrees are reference counted and shared.

mod metrics;
mod parse;
mod print;
mod simplify;

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::automata::Symbol;

pub use metrics::{Measure, Metrics};
pub use parse::{parse, parse_omega};
pub use print::{DisplayOmega, DisplayRegex};
pub use simplify::{simplify, simplify_regex, Rule, RuleSet, Simplified, DEFAULT_ITERATION_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("ω-iteration of an expression that accepts the empty word")]
    NullableOmegaBody,
}

/// Regular expression over alphabet symbols.
///
/// `Star::grouped` only records whether the operand is printed inside
/// parentheses; it takes no part in equality or hashing.
#[derive(Clone, Debug)]
pub enum Regex {
    Empty,
    Epsilon,
    Sym(Symbol),
    Union(Arc<Regex>, Arc<Regex>),
    Concat(Arc<Regex>, Arc<Regex>),
    Star { body: Arc<Regex>, grouped: bool },
}

impl PartialEq for Regex {
    fn eq(&self, other: &Self) -> bool {
        use Regex::*;
        match (self, other) {
            (Empty, Empty) | (Epsilon, Epsilon) => true,
            (Sym(a), Sym(b)) => a == b,
            (Union(a, b), Union(c, d)) | (Concat(a, b), Concat(c, d)) => {
                (Arc::ptr_eq(a, c) || a == c) && (Arc::ptr_eq(b, d) || b == d)
            }
            (Star { body: a, .. }, Star { body: b, .. }) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Regex {}

impl Hash for Regex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Sym(s) => s.hash(state),
            Regex::Union(a, b) | Regex::Concat(a, b) => {
                a.hash(state);
                b.hash(state);
            }
            Regex::Star { body, .. } => body.hash(state),
        }
    }
}

impl Regex {
    pub fn sym(s: Symbol) -> Self {
        Regex::Sym(s)
    }

    /// `a + b` with ∅ absorbed; a right operand chain is re-associated to the
    /// left.
    pub fn union(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, x) | (x, Regex::Empty) => x,
            (a, Regex::Union(l, r)) => Regex::Union(Arc::new(Regex::union(a, (*l).clone())), r),
            (a, b) => Regex::Union(Arc::new(a), Arc::new(b)),
        }
    }

    /// `a · b` with ∅ and ε absorbed; left-associated.
    pub fn concat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Epsilon, x) | (x, Regex::Epsilon) => x,
            (a, Regex::Concat(l, r)) => Regex::Concat(Arc::new(Regex::concat(a, (*l).clone())), r),
            (a, b) => Regex::Concat(Arc::new(a), Arc::new(b)),
        }
    }

    /// `a*`, with `∅* = ε* = ε`.
    pub fn star(a: Regex) -> Regex {
        Self::star_with(a, false)
    }

    /// `(a)*`: same language as [`Regex::star`], printed with the operand in
    /// parentheses.
    pub fn star_grouped(a: Regex) -> Regex {
        Self::star_with(a, true)
    }

    pub(crate) fn star_with(a: Regex, grouped: bool) -> Regex {
        match a {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            a => Regex::Star {
                body: Arc::new(a),
                grouped,
            },
        }
    }

    /// Folds a sequence with [`Regex::concat`]; the empty sequence is ε.
    pub fn concat_all<I: IntoIterator<Item = Regex>>(parts: I) -> Regex {
        parts.into_iter().fold(Regex::Epsilon, Regex::concat)
    }

    /// Folds a sequence with [`Regex::union`]; the empty sequence is ∅.
    pub fn union_all<I: IntoIterator<Item = Regex>>(parts: I) -> Regex {
        parts.into_iter().fold(Regex::Empty, Regex::union)
    }

    /// Whether the language contains the empty word.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Sym(_) => false,
            Regex::Epsilon | Regex::Star { .. } => true,
            Regex::Union(a, b) => a.nullable() || b.nullable(),
            Regex::Concat(a, b) => a.nullable() && b.nullable(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Regex::Empty)
    }

    /// Rebuilds the tree bottom-up through the smart constructors.
    pub fn renormalize(&self) -> Regex {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Sym(_) => self.clone(),
            Regex::Union(a, b) => Regex::union(a.renormalize(), b.renormalize()),
            Regex::Concat(a, b) => Regex::concat(a.renormalize(), b.renormalize()),
            Regex::Star { body, grouped } => Regex::star_with(body.renormalize(), *grouped),
        }
    }

    /// Operands of a left-associated concatenation chain, in order.
    pub(crate) fn factors(&self) -> Vec<Regex> {
        let mut out = Vec::new();
        let mut node = self;
        while let Regex::Concat(l, r) = node {
            out.push((**r).clone());
            node = l;
        }
        if !matches!(node, Regex::Epsilon) {
            out.push(node.clone());
        }
        out.reverse();
        out
    }

    /// Alternatives of a left-associated union chain, in order.
    pub(crate) fn alternatives(&self) -> Vec<Regex> {
        let mut out = Vec::new();
        let mut node = self;
        while let Regex::Union(l, r) = node {
            out.push((**r).clone());
            node = l;
        }
        if !matches!(node, Regex::Empty) {
            out.push(node.clone());
        }
        out.reverse();
        out
    }
}

/// ω-regular expression: `r^ω`, `r · L` and `L₁ + L₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaRegex {
    Empty,
    Omega(Arc<Regex>),
    ConcatFin(Arc<Regex>, Arc<OmegaRegex>),
    Union(Arc<OmegaRegex>, Arc<OmegaRegex>),
}

impl OmegaRegex {
    /// `body^ω`; `∅^ω` is the empty ω-language. Fails when `body` accepts ε.
    pub fn omega(body: Regex) -> Result<OmegaRegex, ExprError> {
        if body.is_empty() {
            return Ok(OmegaRegex::Empty);
        }
        if body.nullable() {
            return Err(ExprError::NullableOmegaBody);
        }
        Ok(OmegaRegex::Omega(Arc::new(body)))
    }

    /// `prefix · rest`. An ∅ operand gives the empty ω-language, an ε prefix
    /// gives `rest`, and nested prefixes are merged into one concatenation.
    pub fn concat_fin(prefix: Regex, rest: OmegaRegex) -> OmegaRegex {
        match (prefix, rest) {
            (Regex::Empty, _) | (_, OmegaRegex::Empty) => OmegaRegex::Empty,
            (Regex::Epsilon, rest) => rest,
            (p, OmegaRegex::ConcatFin(q, rest)) => {
                OmegaRegex::ConcatFin(Arc::new(Regex::concat(p, (*q).clone())), rest)
            }
            (p, rest) => OmegaRegex::ConcatFin(Arc::new(p), Arc::new(rest)),
        }
    }

    /// `a + b` with the empty language absorbed; left-associated.
    pub fn union(a: OmegaRegex, b: OmegaRegex) -> OmegaRegex {
        match (a, b) {
            (OmegaRegex::Empty, x) | (x, OmegaRegex::Empty) => x,
            (a, OmegaRegex::Union(l, r)) => {
                OmegaRegex::Union(Arc::new(OmegaRegex::union(a, (*l).clone())), r)
            }
            (a, b) => OmegaRegex::Union(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn union_all<I: IntoIterator<Item = OmegaRegex>>(parts: I) -> OmegaRegex {
        parts.into_iter().fold(OmegaRegex::Empty, OmegaRegex::union)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, OmegaRegex::Empty)
    }

    pub fn renormalize(&self) -> Result<OmegaRegex, ExprError> {
        Ok(match self {
            OmegaRegex::Empty => OmegaRegex::Empty,
            OmegaRegex::Omega(body) => OmegaRegex::omega(body.renormalize())?,
            OmegaRegex::ConcatFin(p, rest) => OmegaRegex::concat_fin(p.renormalize(), rest.renormalize()?),
            OmegaRegex::Union(a, b) => OmegaRegex::union(a.renormalize()?, b.renormalize()?),
        })
    }

    pub(crate) fn alternatives(&self) -> Vec<OmegaRegex> {
        let mut out = Vec::new();
        let mut node = self;
        while let OmegaRegex::Union(l, r) = node {
            out.push((**r).clone());
            node = l;
        }
        if !node.is_empty() {
            out.push(node.clone());
        }
        out.reverse();
        out
    }
}
