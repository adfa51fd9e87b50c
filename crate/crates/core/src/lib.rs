//! Synthesis of ω-regular expressions from nondeterministic Büchi automata.
//!
//! The pipeline is: split an automaton into per-pair finite automata
//! ([`decompose`]), turn each into a regular expression ([`elimination`]),
//! and compose those into an ω-regular expression ([`synthesis`]).
//! [`expr`] holds the expression trees, their concrete syntax, metrics and
//! simplifier; [`oracle`] checks results independently on bounded lassos.
//!
//! ```
//! use omega_synth::automata::parse_hoa;
//! use omega_synth::elimination::EliminationOrder;
//! use omega_synth::synthesis::synthesize_transition;
//!
//! let hoa = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nAcceptance: 1 Inf(0)\n\
//!            --BODY--\nState: 0\n[0] 0 {0}\n--END--\n";
//! let b = parse_hoa(hoa).unwrap();
//! let e = synthesize_transition(&b, EliminationOrder::default()).unwrap();
//! assert_eq!(e.to_text(b.alphabet()), "(a)^w");
//! ```

pub mod automata;
pub mod decompose;
pub mod elimination;
pub mod exec;
pub mod expr;
pub mod oracle;
pub mod synthesis;

pub use automata::{Alphabet, Nba, Nfa, Symbol};
pub use exec::Execution;
pub use expr::{Metrics, OmegaRegex, Regex};
pub use synthesis::{synthesize, SynthesisMethod, SynthesisOptions, SynthesisReport};
