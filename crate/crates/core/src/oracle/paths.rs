//! Brute-force reference semantics: explicit path enumeration for the
//! triplet languages and a direct matcher for regular expressions.

use std::collections::BTreeSet;

use crate::automata::{Nba, StateId, Symbol};
use crate::decompose::TripletKind;
use crate::expr::Regex;

/// All words of length `1..=max_len` labelling a path of `nba` from `i` that
/// ends on its first arrival at `j`.
///
/// For `Rej` (`Acc`) every transition the path takes out of `i` must be
/// rejecting (accepting). Acceptance flags are read as stored, so this is
/// meant for transition-based automata.
pub fn first_arrival_words(
    nba: &Nba,
    i: StateId,
    j: StateId,
    kind: TripletKind,
    max_len: usize,
) -> BTreeSet<Vec<Symbol>> {
    let mut out = BTreeSet::new();
    let mut word = Vec::new();
    extend(nba, i, j, kind, i, max_len, &mut word, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    nba: &Nba,
    i: StateId,
    j: StateId,
    kind: TripletKind,
    at: StateId,
    max_len: usize,
    word: &mut Vec<Symbol>,
    out: &mut BTreeSet<Vec<Symbol>>,
) {
    if word.len() == max_len {
        return;
    }
    for t in nba.transitions().iter().filter(|t| t.src == at) {
        let allowed = at != i
            || match kind {
                TripletKind::All => true,
                TripletKind::Rej => !t.accepting,
                TripletKind::Acc => t.accepting,
            };
        if !allowed {
            continue;
        }
        word.push(t.sym);
        if t.dst == j {
            out.insert(word.clone());
        } else {
            extend(nba, i, j, kind, t.dst, max_len, word, out);
        }
        word.pop();
    }
}

/// End positions reachable by matching `r` against `w` from `start`.
fn ends(r: &Regex, w: &[Symbol], start: usize) -> BTreeSet<usize> {
    match r {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => [start].into(),
        Regex::Sym(s) => {
            if w.get(start) == Some(s) {
                [start + 1].into()
            } else {
                BTreeSet::new()
            }
        }
        Regex::Union(a, b) => &ends(a, w, start) | &ends(b, w, start),
        Regex::Concat(a, b) => ends(a, w, start)
            .into_iter()
            .flat_map(|m| ends(b, w, m))
            .collect(),
        Regex::Star { body, .. } => {
            let mut seen: BTreeSet<usize> = [start].into();
            let mut frontier = vec![start];
            while let Some(p) = frontier.pop() {
                for q in ends(body, w, p) {
                    if seen.insert(q) {
                        frontier.push(q);
                    }
                }
            }
            seen
        }
    }
}

/// Whether `r` matches the whole of `w`, by direct recursion on `r`.
pub fn regex_matches(r: &Regex, w: &[Symbol]) -> bool {
    ends(r, w, 0).contains(&w.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_hoa, Alphabet};
    use crate::expr::parse;

    #[test]
    fn b1_first_arrivals() {
        let b = parse_hoa(include_str!("../../../../fixtures/b1.hoa")).unwrap();
        let ab = b.alphabet();
        let render =
            |set: BTreeSet<Vec<Symbol>>| -> Vec<String> { set.iter().map(|w| ab.render_word(w)).collect() };
        assert_eq!(render(first_arrival_words(&b, 1, 1, TripletKind::Rej, 4)), ["c"]);
        assert_eq!(
            render(first_arrival_words(&b, 1, 1, TripletKind::Acc, 4)),
            ["daab", "dab", "db"]
        );
        assert_eq!(
            render(first_arrival_words(&b, 0, 1, TripletKind::All, 3)),
            ["a", "bab", "bb"]
        );
    }

    #[test]
    fn matcher() {
        let mut ab = Alphabet::from_letters("ab");
        let r = parse("(a+ba*b)*", &mut ab).unwrap();
        for w in ["", "a", "bb", "bba", "baab"] {
            assert!(regex_matches(&r, &ab.word(w).unwrap()), "{w}");
        }
        for w in ["b", "ab", "ba", "bbb"] {
            assert!(!regex_matches(&r, &ab.word(w).unwrap()), "{w}");
        }
        assert!(!regex_matches(&Regex::Empty, &[]));
        assert!(regex_matches(&Regex::Epsilon, &[]));
    }
}
