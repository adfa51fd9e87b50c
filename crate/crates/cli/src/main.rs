use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use omega_synth::decompose::TripletKind;
use omega_synth::elimination::EliminationOrder;
use omega_synth::oracle::EquivBounds;
use omega_synth::synthesis::SynthesisMethod;
use omega_synth::Execution;
use omega_synth_cli::bench::{self, BenchArgs, SimplifyMode};
use omega_synth_cli::commands::{self, GenArgs, OutputFormat, SynthArgs, TripletArgs, VerifyArgs};
use omega_synth_cli::{resolve_timeout, CliError, EXIT_OK, EXIT_USAGE};

/// ω-regular expressions from Büchi automata.
#[derive(Parser)]
#[command(name = "omega-synth", version)]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Transition,
    State,
    Auto,
}

impl From<Method> for SynthesisMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Transition => SynthesisMethod::TransitionDirect,
            Method::State => SynthesisMethod::StateBased,
            Method::Auto => SynthesisMethod::AutoSelect,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lowest,
    Fewest,
}

impl From<Order> for EliminationOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Lowest => EliminationOrder::LowestIndexFirst,
            Order::Fewest => EliminationOrder::FewestPathsFirst,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpFormat {
    Hoa,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    All,
    Rej,
    Acc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Simplify {
    No,
    Yes,
    Both,
}

fn parse_bounds(s: &str) -> Result<EquivBounds, String> {
    let (p, c) = s
        .split_once(',')
        .ok_or_else(|| format!("expected PREFIX,LOOP, got `{s}`"))?;
    let p = p.trim().parse().map_err(|_| format!("bad prefix bound `{p}`"))?;
    let c = c.trim().parse().map_err(|_| format!("bad loop bound `{c}`"))?;
    EquivBounds::new(p, c).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize an ω-regular expression from an automaton (HOA or JSON).
    Synth {
        input: PathBuf,
        /// Defaults to `transition` for transition-based input, `state` otherwise.
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, value_enum, default_value = "lowest")]
        elim_order: Order,
        #[arg(long)]
        simplify: bool,
        /// Per-phase budget in seconds [env: OMEGA_SYNTH_TIMEOUT_SECS, default 120].
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check an automaton against its synthesized expression on bounded lassos.
    Verify {
        input: PathBuf,
        /// Maximum prefix and loop length.
        #[arg(long, default_value = "4,4", value_parser = parse_bounds)]
        bounds: EquivBounds,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, value_enum, default_value = "lowest")]
        elim_order: Order,
        /// Verify the simplified expression instead.
        #[arg(long)]
        simplify: bool,
        /// Compare against this ω-expression or automaton file instead.
        #[arg(long, value_name = "EXPR|FILE")]
        against: Option<String>,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Run both routes over a directory of automata and write a CSV.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "transition,state")]
        methods: Vec<Method>,
        #[arg(long, value_enum, default_value = "both")]
        simplify: Simplify,
        #[arg(long, value_enum, default_value = "lowest")]
        elim_order: Order,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Dump the finite automaton for a state pair.
    Triplet {
        input: PathBuf,
        i: usize,
        j: usize,
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value = "hoa")]
        format: DumpFormat,
    },
    /// Write a seeded corpus of random automata as HOA files.
    GenCorpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        symbols: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 0.3)]
        acc_prob: f64,
        /// Accepting states instead of accepting transitions.
        #[arg(long)]
        state_based: bool,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Synth {
            input,
            method,
            elim_order,
            simplify,
            timeout,
            format,
        } => commands::synth(
            &SynthArgs {
                input,
                method: method.map(Into::into),
                order: elim_order.into(),
                simplify,
                timeout: resolve_timeout(timeout)?,
                format: match format {
                    Format::Text => OutputFormat::Text,
                    Format::Json => OutputFormat::Json,
                },
                execution,
            },
            &mut out,
        ),
        Command::Verify {
            input,
            bounds,
            method,
            elim_order,
            simplify,
            against,
            timeout,
        } => commands::verify(
            &VerifyArgs {
                input,
                bounds,
                method: method.map(Into::into),
                order: elim_order.into(),
                simplify,
                against,
                timeout: resolve_timeout(timeout)?,
                execution,
            },
            &mut out,
        ),
        Command::Bench {
            dir,
            methods,
            simplify,
            elim_order,
            out: csv_path,
            timeout,
        } => {
            let args = BenchArgs {
                dir,
                methods: methods.into_iter().map(Into::into).collect(),
                simplify: match simplify {
                    Simplify::No => SimplifyMode::No,
                    Simplify::Yes => SimplifyMode::Yes,
                    Simplify::Both => SimplifyMode::Both,
                },
                order: elim_order.into(),
                timeout: resolve_timeout(timeout)?,
                execution,
            };
            let result = bench::run(&args)?;
            for r in &result.records {
                if let Some(msg) = &r.message {
                    log::warn!("{} ({}): {msg}", r.file, r.method);
                }
            }
            let csv = bench::to_csv(&result.records);
            let summary = bench::render_summary(&bench::summarize(&result.records), &result.sources);
            let w = |e: io::Error| CliError::Invalid(format!("writing output: {e}"));
            match csv_path {
                Some(path) => {
                    fs::write(&path, csv).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    writeln!(out, "wrote {} rows to {}", result.records.len(), path.display()).map_err(w)?;
                }
                None => write!(out, "{csv}").map_err(w)?,
            }
            write!(out, "{summary}").map_err(w)?;
            Ok(EXIT_OK)
        }
        Command::Triplet {
            input,
            i,
            j,
            kind,
            format,
        } => commands::triplet(
            &TripletArgs {
                input,
                i,
                j,
                kind: match kind {
                    Kind::All => TripletKind::All,
                    Kind::Rej => TripletKind::Rej,
                    Kind::Acc => TripletKind::Acc,
                },
                json: matches!(format, DumpFormat::Json),
            },
            &mut out,
        ),
        Command::GenCorpus {
            dir,
            count,
            seed,
            max_states,
            symbols,
            density,
            acc_prob,
            state_based,
        } => {
            let written = commands::gen_corpus(&GenArgs {
                dir,
                count,
                seed,
                max_states,
                symbols,
                density,
                acc_prob,
                state_based,
            })?;
            writeln!(out, "wrote {} automata", written.len())
                .map_err(|e| CliError::Invalid(format!("writing output: {e}")))?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
