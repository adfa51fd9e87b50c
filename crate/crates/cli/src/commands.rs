use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use omega_synth::automata::{emit_hoa, emit_nfa_hoa, emit_nfa_json, AutomatonError, Nba, StateId};
use omega_synth::decompose::{build_nfa, DecomposeError, TripletKind};
use omega_synth::elimination::EliminationOrder;
use omega_synth::expr::{parse_omega, Metrics, OmegaRegex, RuleSet};
use omega_synth::oracle::{
    bounded_equiv_with, lasso_count, omega_regex_to_nba, random_nba, random_state_based_nba, EquivBounds,
    EquivConfig, Equivalence, OracleError,
};
use omega_synth::synthesis::{
    synthesize, SynthesisError, SynthesisMethod, SynthesisOptions, SynthesisReport,
};
use omega_synth::Execution;

use crate::input::load_automaton;
use crate::{io_err, CliError, EXIT_OK, EXIT_VERIFY_FAILED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Transition route for transition-based input, state route otherwise.
pub fn default_method(b: &Nba) -> SynthesisMethod {
    if b.is_transition_based() {
        SynthesisMethod::TransitionDirect
    } else {
        SynthesisMethod::StateBased
    }
}

pub(crate) fn run_synthesis(
    b: &Nba,
    method: SynthesisMethod,
    options: &SynthesisOptions,
) -> Result<SynthesisReport, CliError> {
    synthesize(b, method, options).map_err(|e| match e {
        SynthesisError::Timeout => CliError::Timeout {
            phase: "synthesis",
            budget: options.phase_timeout.unwrap_or_default(),
        },
        SynthesisError::Automaton(AutomatonError::WrongAcceptance { expected }) => {
            CliError::Invalid(format!(
                "method `{method}` needs {expected} acceptance, but the input is {}",
                b.acceptance()
            ))
        }
        SynthesisError::Automaton(e) => CliError::Invalid(e.to_string()),
    })
}

pub struct SynthArgs {
    pub input: PathBuf,
    pub method: Option<SynthesisMethod>,
    pub order: EliminationOrder,
    pub simplify: bool,
    pub timeout: Duration,
    pub format: OutputFormat,
    pub execution: Execution,
}

/// Machine-readable `synth` result. `expression` is in the concrete syntax
/// over `alphabet`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthOutput {
    pub file: String,
    pub requested_method: String,
    pub method: String,
    pub degeneralized: bool,
    pub alphabet: Vec<String>,
    pub expression: String,
    pub empty: bool,
    pub states: usize,
    pub accepting_sources: usize,
    pub pair_count: usize,
    pub metrics: Metrics,
    pub unsimplified_metrics: Option<Metrics>,
    pub simplify_capped: bool,
    pub elapsed_ms: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

pub fn synth(args: &SynthArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let b = load_automaton(&args.input)?;
    let method = args.method.unwrap_or_else(|| default_method(&b));
    let options = SynthesisOptions {
        order: args.order,
        simplify: args.simplify.then(RuleSet::default),
        execution: args.execution,
        phase_timeout: Some(args.timeout),
    };
    let report = run_synthesis(&b, method, &options)?;
    let expr = report.expression();
    let text = expr.to_text(&report.alphabet);
    let w = |e: std::io::Error| CliError::Invalid(format!("writing output: {e}"));
    match args.format {
        OutputFormat::Json => {
            let doc = SynthOutput {
                file: args.input.display().to_string(),
                requested_method: report.requested.to_string(),
                method: report.method.to_string(),
                degeneralized: report.degeneralized,
                alphabet: report.alphabet.labels().to_vec(),
                expression: text,
                empty: expr.is_empty(),
                states: report.states,
                accepting_sources: report.accepting_sources,
                pair_count: report.pair_count,
                metrics: report.final_metrics(),
                unsimplified_metrics: report.simplified.as_ref().map(|_| report.metrics),
                simplify_capped: report.simplify_capped,
                elapsed_ms: ms(report.elapsed),
            };
            let json = serde_json::to_string_pretty(&doc).expect("serializable");
            writeln!(out, "{json}").map_err(w)?;
        }
        OutputFormat::Text => {
            writeln!(out, "{text}").map_err(w)?;
            if expr.is_empty() {
                writeln!(out, "empty language").map_err(w)?;
            }
            let m = report.final_metrics();
            let route = if report.degeneralized {
                format!("{} (on degeneralization)", report.method)
            } else {
                report.method.to_string()
            };
            writeln!(
                out,
                "method: {route}  states: {}  acc_sources: {}  pairs: {}",
                report.states, report.accepting_sources, report.pair_count
            )
            .map_err(w)?;
            writeln!(out, "rpn: {}  tllen: {}  h: {}", m.rpn, m.tllen, m.star_height).map_err(w)?;
            if report.simplified.is_some() {
                let u = report.metrics;
                writeln!(
                    out,
                    "unsimplified rpn: {}  tllen: {}  h: {}{}",
                    u.rpn,
                    u.tllen,
                    u.star_height,
                    if report.simplify_capped {
                        "  (simplifier hit its iteration cap)"
                    } else {
                        ""
                    }
                )
                .map_err(w)?;
            }
            writeln!(out, "elapsed: {:.3} ms", ms(report.elapsed)).map_err(w)?;
        }
    }
    Ok(EXIT_OK)
}

pub struct VerifyArgs {
    pub input: PathBuf,
    pub bounds: EquivBounds,
    pub method: Option<SynthesisMethod>,
    pub order: EliminationOrder,
    pub simplify: bool,
    /// An ω-expression, or a path to an automaton, to compare against
    /// instead of the synthesized expression.
    pub against: Option<String>,
    pub timeout: Duration,
    pub execution: Execution,
}

fn target_from(args: &VerifyArgs, b: &Nba) -> Result<(Nba, String), CliError> {
    let to_nba =
        |e: &OmegaRegex| omega_regex_to_nba(e, b.alphabet()).map_err(|e| CliError::Invalid(e.to_string()));
    match &args.against {
        Some(spec) if Path::new(spec).is_file() => {
            Ok((load_automaton(Path::new(spec))?, format!("automaton {spec}")))
        }
        Some(spec) => {
            let mut ab = b.alphabet().clone();
            let e = parse_omega(spec, &mut ab).map_err(|e| CliError::Invalid(format!("--against: {e}")))?;
            if ab.len() != b.alphabet().len() {
                return Err(CliError::Invalid(format!(
                    "--against uses symbols outside the input alphabet {:?}",
                    b.alphabet().labels()
                )));
            }
            Ok((to_nba(&e)?, "the given expression".to_string()))
        }
        None => {
            let method = args.method.unwrap_or_else(|| default_method(b));
            let options = SynthesisOptions {
                order: args.order,
                simplify: args.simplify.then(RuleSet::default),
                execution: args.execution,
                phase_timeout: Some(args.timeout),
            };
            let report = run_synthesis(b, method, &options)?;
            let what = format!(
                "synthesized expression {}",
                report.expression().to_text(&report.alphabet)
            );
            Ok((to_nba(report.expression())?, what))
        }
    }
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let b = load_automaton(&args.input)?;
    let (target, what) = target_from(args, &b)?;
    let config = EquivConfig {
        execution: args.execution,
        deadline: Some(Instant::now() + args.timeout),
        ..EquivConfig::default()
    };
    let verdict = bounded_equiv_with(&b, &target, args.bounds, &config).map_err(|e| match e {
        OracleError::Timeout => CliError::Timeout {
            phase: "verification",
            budget: args.timeout,
        },
        other => CliError::Invalid(other.to_string()),
    })?;
    let w = |e: std::io::Error| CliError::Invalid(format!("writing output: {e}"));
    let ab = b.alphabet();
    match verdict {
        Equivalence::Equal => {
            writeln!(
                out,
                "equal: {} lassos with |u| <= {}, 1 <= |v| <= {} agree with {what}",
                lasso_count(ab.len(), args.bounds),
                args.bounds.max_prefix,
                args.bounds.max_loop
            )
            .map_err(w)?;
            Ok(EXIT_OK)
        }
        Equivalence::Counterexample { lasso, left_accepts } => {
            writeln!(
                out,
                "counterexample: u=\"{}\" v=\"{}\"",
                ab.render_word(&lasso.prefix),
                ab.render_word(&lasso.cycle)
            )
            .map_err(w)?;
            let (yes, no) = if left_accepts {
                ("the input", what.as_str())
            } else {
                (what.as_str(), "the input")
            };
            writeln!(out, "accepted by {yes}, rejected by {no}").map_err(w)?;
            Ok(EXIT_VERIFY_FAILED)
        }
    }
}

pub struct TripletArgs {
    pub input: PathBuf,
    pub i: StateId,
    pub j: StateId,
    pub kind: TripletKind,
    pub json: bool,
}

pub fn triplet(args: &TripletArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let b = load_automaton(&args.input)?;
    let t = build_nfa(&b, args.i, args.j, args.kind).map_err(|e| match e {
        DecomposeError::InvalidState { .. } => CliError::Invalid(e.to_string()),
        DecomposeError::Automaton(e) => {
            CliError::Invalid(format!("{e}; triplets need transition-based input"))
        }
    })?;
    let text = if args.json {
        emit_nfa_json(&t.nfa)
    } else {
        emit_nfa_hoa(&t.nfa)
    };
    write!(out, "{}", text.trim_end())
        .and_then(|_| writeln!(out))
        .map_err(|e| CliError::Invalid(format!("writing output: {e}")))?;
    Ok(EXIT_OK)
}

pub struct GenArgs {
    pub dir: PathBuf,
    pub count: usize,
    pub seed: u64,
    pub max_states: usize,
    pub symbols: usize,
    pub density: f64,
    pub acc_prob: f64,
    pub state_based: bool,
}

/// Writes `count` seeded random automata as `rand_NNN.hoa`; returns their
/// paths.
pub fn gen_corpus(args: &GenArgs) -> Result<Vec<PathBuf>, CliError> {
    if args.max_states == 0 || args.symbols == 0 {
        return Err(CliError::Usage(
            "--max-states and --symbols must be positive".into(),
        ));
    }
    fs::create_dir_all(&args.dir).map_err(io_err(&args.dir))?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut written = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let seed = rng.gen();
        let n = rng.gen_range(1..=args.max_states);
        let b = if args.state_based {
            random_state_based_nba(seed, n, args.symbols, args.density, args.acc_prob)
        } else {
            random_nba(seed, n, args.symbols, args.density, args.acc_prob)
        };
        let path = args.dir.join(format!("rand_{i:03}.hoa"));
        fs::write(&path, emit_hoa(&b)).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}
