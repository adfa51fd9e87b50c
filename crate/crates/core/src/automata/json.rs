//! Native JSON fixture format.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AcceptanceKind, Alphabet, Nba, Nfa, StateId, Symbol, Transition};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("schema violation at `{field}`: {reason}")]
    Schema { field: String, reason: String },
}

fn schema<T>(field: impl Into<String>, reason: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Schema {
        field: field.into(),
        reason: reason.into(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindDoc {
    Transition,
    State,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionDoc {
    src: usize,
    sym: usize,
    dst: usize,
    acc: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NbaDoc {
    num_states: usize,
    alphabet: Vec<String>,
    initial: Vec<usize>,
    acceptance_kind: KindDoc,
    #[serde(default)]
    accepting_states: Vec<usize>,
    transitions: Vec<TransitionDoc>,
}

#[derive(Debug, Serialize)]
struct NfaTransitionDoc {
    src: usize,
    sym: usize,
    dst: usize,
}

#[derive(Debug, Serialize)]
struct NfaDoc {
    num_states: usize,
    alphabet: Vec<String>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
    transitions: Vec<NfaTransitionDoc>,
}

/// Parses and validates a JSON automaton document.
pub fn parse_json(text: &str) -> Result<Nba, JsonError> {
    let doc: NbaDoc = serde_json::from_str(text)?;
    let n = doc.num_states;
    let alphabet = match Alphabet::from_labels(doc.alphabet.iter().cloned()) {
        Ok(a) => a,
        Err(e) => return schema("alphabet", e.to_string()),
    };
    let in_range = |field: String, q: usize| {
        if q < n {
            Ok(q)
        } else {
            schema(field, format!("state {q} >= num_states {n}"))
        }
    };
    let mut transitions = Vec::with_capacity(doc.transitions.len());
    for (k, t) in doc.transitions.iter().enumerate() {
        let src = in_range(format!("transitions[{k}].src"), t.src)?;
        let dst = in_range(format!("transitions[{k}].dst"), t.dst)?;
        if t.sym >= alphabet.len() {
            return schema(
                format!("transitions[{k}].sym"),
                format!("symbol {} >= alphabet size {}", t.sym, alphabet.len()),
            );
        }
        if t.acc && matches!(doc.acceptance_kind, KindDoc::State) {
            return schema(
                format!("transitions[{k}].acc"),
                "accepting transition in a state-based automaton",
            );
        }
        transitions.push(Transition::new(src, Symbol(t.sym as u32), dst, t.acc));
    }
    let mut initial = std::collections::BTreeSet::new();
    for (k, &q) in doc.initial.iter().enumerate() {
        initial.insert(in_range(format!("initial[{k}]"), q)?);
    }
    let mut accepting = std::collections::BTreeSet::new();
    for (k, &q) in doc.accepting_states.iter().enumerate() {
        accepting.insert(in_range(format!("accepting_states[{k}]"), q)?);
    }
    let kind = match doc.acceptance_kind {
        KindDoc::Transition => {
            if !accepting.is_empty() {
                return schema(
                    "accepting_states",
                    "must be empty for transition-based acceptance",
                );
            }
            AcceptanceKind::TransitionBased
        }
        KindDoc::State => AcceptanceKind::StateBased,
    };
    Nba::new(n, alphabet, transitions, initial, kind, accepting)
        .or_else(|e| schema("document", e.to_string()))
}

/// Serializes an automaton; `parse_json(&emit_json(b))` reproduces `b`.
pub fn emit_json(nba: &Nba) -> String {
    let doc = NbaDoc {
        num_states: nba.num_states(),
        alphabet: nba.alphabet().labels().to_vec(),
        initial: nba.initial().iter().copied().collect(),
        acceptance_kind: match nba.acceptance() {
            AcceptanceKind::TransitionBased => KindDoc::Transition,
            AcceptanceKind::StateBased => KindDoc::State,
        },
        accepting_states: nba.accepting_states().iter().copied().collect(),
        transitions: nba
            .transitions()
            .iter()
            .map(|t| TransitionDoc {
                src: t.src,
                sym: t.sym.index(),
                dst: t.dst,
                acc: t.accepting,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Debug dump of a finite automaton in the same layout.
pub fn emit_nfa_json(nfa: &Nfa) -> String {
    let doc = NfaDoc {
        num_states: nfa.num_states(),
        alphabet: nfa.alphabet().labels().to_vec(),
        initial: nfa.initial().iter().copied().collect(),
        accepting: nfa.accepting().iter().copied().collect::<Vec<StateId>>(),
        transitions: nfa
            .transitions()
            .iter()
            .map(|t| NfaTransitionDoc {
                src: t.src,
                sym: t.sym.index(),
                dst: t.dst,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    const B1: &str = r#"{
  "num_states": 3,
  "alphabet": ["a", "b", "c", "d"],
  "initial": [0],
  "acceptance_kind": "transition",
  "accepting_states": [],
  "transitions": [
    {"src": 0, "sym": 0, "dst": 1, "acc": false},
    {"src": 0, "sym": 1, "dst": 2, "acc": false},
    {"src": 1, "sym": 2, "dst": 1, "acc": false},
    {"src": 1, "sym": 3, "dst": 2, "acc": true},
    {"src": 2, "sym": 0, "dst": 2, "acc": false},
    {"src": 2, "sym": 1, "dst": 1, "acc": true}
  ]
}"#;

    #[test]
    fn round_trip_b1() {
        let b = parse_json(B1).unwrap();
        assert_eq!(b.transitions().len(), 6);
        let emitted = emit_json(&b);
        let normalized = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap();
        assert_eq!(normalized(&emitted), normalized(B1));
        assert_eq!(parse_json(&emitted).unwrap(), b);
    }

    #[test]
    fn dst_out_of_range() {
        let bad = B1.replace(
            r#"{"src": 2, "sym": 1, "dst": 1, "acc": true}"#,
            r#"{"src": 2, "sym": 1, "dst": 3, "acc": true}"#,
        );
        match parse_json(&bad).unwrap_err() {
            JsonError::Schema { field, .. } => assert_eq!(field, "transitions[5].dst"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn accepting_edge_in_state_based() {
        let bad = B1.replace("\"transition\"", "\"state\"");
        match parse_json(&bad).unwrap_err() {
            JsonError::Schema { field, .. } => assert_eq!(field, "transitions[3].acc"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn other_schema_errors() {
        let bad = B1.replace("\"accepting_states\": []", "\"accepting_states\": [1]");
        assert!(
            matches!(parse_json(&bad), Err(JsonError::Schema { field, .. }) if field == "accepting_states")
        );
        let bad = B1.replace("\"sym\": 3", "\"sym\": 4");
        assert!(
            matches!(parse_json(&bad), Err(JsonError::Schema { field, .. }) if field == "transitions[3].sym")
        );
        let bad = B1.replace("\"initial\": [0]", "\"initial\": [7]");
        assert!(matches!(parse_json(&bad), Err(JsonError::Schema { field, .. }) if field == "initial[0]"));
        let bad = B1.replace("[\"a\", \"b\"", "[\"a\", \"a\"");
        assert!(matches!(parse_json(&bad), Err(JsonError::Schema { field, .. }) if field == "alphabet"));
        assert!(matches!(
            parse_json("{\"num_states\": 1}"),
            Err(JsonError::Malformed(_))
        ));
        let bad = B1.replace("\"num_states\"", "\"extra\": 1, \"num_states\"");
        assert!(matches!(parse_json(&bad), Err(JsonError::Malformed(_))));
    }
}
