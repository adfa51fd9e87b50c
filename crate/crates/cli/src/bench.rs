//! Corpus benchmark: one row per (automaton, method, simplified) and a
//! summary comparing the transition route against the state route.
//!
//! CSV columns, in order:
//!
//! | column        | meaning                                                   |
//! |---------------|-----------------------------------------------------------|
//! | `file`        | corpus entry (pair stem for `x.tba.hoa`/`x.sba.hoa`)      |
//! | `method`      | `transition`, `state` or `auto`                           |
//! | `simplified`  | `true` when the simplifier ran                            |
//! | `status`      | `ok`, `timeout` or `error`                                |
//! | `states`      | states of the automaton the equation ran on               |
//! | `acc_sources` | `\|F̃\|` (transition route) or `\|F\|` (state route)       |
//! | `pairs`       | `(q₀, q)` pairs, before empty terms are dropped           |
//! | `rpn`, `tllen`, `h` | metrics of the reported expression                  |
//! | `elapsed_ms`  | wall time for the row                                     |
//!
//! Metric columns are empty unless `status` is `ok`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use omega_synth::automata::{degeneralize, Nba};
use omega_synth::elimination::EliminationOrder;
use omega_synth::exec;
use omega_synth::expr::RuleSet;
use omega_synth::synthesis::{SynthesisMethod, SynthesisOptions};
use omega_synth::Execution;

use crate::commands::run_synthesis;
use crate::input::parse_automaton;
use crate::{io_err, CliError};

pub const CSV_HEADER: &str = "file,method,simplified,status,states,acc_sources,pairs,rpn,tllen,h,elapsed_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimplifyMode {
    No,
    Yes,
    Both,
}

impl SimplifyMode {
    fn flags(self) -> &'static [bool] {
        match self {
            SimplifyMode::No => &[false],
            SimplifyMode::Yes => &[true],
            SimplifyMode::Both => &[false, true],
        }
    }
}

/// Where the state-based automaton of a corpus entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateSource {
    Degeneralized,
    Paired,
    /// The entry itself is state-based.
    Input,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub file: String,
    pub method: String,
    pub simplified: bool,
    pub status: Status,
    pub states: Option<usize>,
    pub acc_sources: Option<usize>,
    pub pairs: Option<usize>,
    pub rpn: Option<u64>,
    pub tllen: Option<u64>,
    pub h: Option<u32>,
    pub elapsed_ms: f64,
    #[serde(skip)]
    pub message: Option<String>,
}

struct Entry {
    name: String,
    /// Transition-based (or lone state-based) automaton.
    primary: Result<Nba, String>,
    paired_state: Option<Result<Nba, String>>,
}

fn read(path: &Path) -> Result<Nba, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    parse_automaton(path, &text).map_err(|e| e.to_string())
}

/// Automaton files in `dir` (`.hoa`, `.json`), sorted by name, with
/// `x.tba.*`/`x.sba.*` pairs merged into one entry named `x`.
fn collect(dir: &Path) -> Result<Vec<Entry>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && matches!(p.extension().and_then(|e| e.to_str()), Some("hoa" | "json")))
        .collect();
    files.sort();

    let mut pairs: BTreeMap<String, (Option<PathBuf>, Option<PathBuf>)> = BTreeMap::new();
    let mut singles = Vec::new();
    for f in files {
        let stem = f
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        if let Some(base) = stem.strip_suffix(".tba") {
            pairs.entry(base.to_string()).or_default().0 = Some(f);
        } else if let Some(base) = stem.strip_suffix(".sba") {
            pairs.entry(base.to_string()).or_default().1 = Some(f);
        } else {
            singles.push(f);
        }
    }

    let mut entries: Vec<Entry> = singles
        .into_iter()
        .map(|f| Entry {
            name: f.file_name().unwrap_or_default().to_string_lossy().into_owned(),
            primary: read(&f),
            paired_state: None,
        })
        .collect();
    for (base, (tba, sba)) in pairs {
        let entry = match (tba, sba) {
            (Some(t), Some(s)) => Entry {
                name: base,
                primary: read(&t),
                paired_state: Some(read(&s)),
            },
            (Some(f), None) | (None, Some(f)) => Entry {
                name: f.file_name().unwrap_or_default().to_string_lossy().into_owned(),
                primary: read(&f),
                paired_state: None,
            },
            (None, None) => unreachable!(),
        };
        entries.push(entry);
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(entries)
}

pub struct BenchArgs {
    pub dir: PathBuf,
    pub methods: Vec<SynthesisMethod>,
    pub simplify: SimplifyMode,
    pub order: EliminationOrder,
    pub timeout: Duration,
    pub execution: Execution,
}

pub struct BenchRun {
    pub records: Vec<BenchRecord>,
    pub sources: Vec<(String, StateSource)>,
}

fn row(
    entry: &Entry,
    method: SynthesisMethod,
    simplified: bool,
    args: &BenchArgs,
) -> (BenchRecord, Option<StateSource>) {
    let start = Instant::now();
    let mut rec = BenchRecord {
        file: entry.name.clone(),
        method: method.to_string(),
        simplified,
        status: Status::Error,
        states: None,
        acc_sources: None,
        pairs: None,
        rpn: None,
        tllen: None,
        h: None,
        elapsed_ms: 0.0,
        message: None,
    };
    let finish = |mut rec: BenchRecord, status, message| {
        rec.status = status;
        rec.message = message;
        rec.elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
        rec
    };
    let primary = match &entry.primary {
        Ok(b) => b,
        Err(e) => return (finish(rec, Status::Error, Some(e.clone())), None),
    };
    // The state route uses the paired file when there is one.
    let (input, source) = match (method, &entry.paired_state) {
        (SynthesisMethod::StateBased, Some(Ok(s))) => (s.clone(), Some(StateSource::Paired)),
        (SynthesisMethod::StateBased, Some(Err(e))) => {
            return (finish(rec, Status::Error, Some(e.clone())), None)
        }
        (SynthesisMethod::StateBased, None) if !primary.is_transition_based() => {
            (primary.clone(), Some(StateSource::Input))
        }
        (SynthesisMethod::StateBased, None) => match degeneralize(primary) {
            Ok(d) => (d, Some(StateSource::Degeneralized)),
            Err(e) => return (finish(rec, Status::Error, Some(e.to_string())), None),
        },
        _ => (primary.clone(), None),
    };
    let options = SynthesisOptions {
        order: args.order,
        simplify: simplified.then(RuleSet::default),
        execution: Execution::Sequential,
        phase_timeout: Some(args.timeout),
    };
    match run_synthesis(&input, method, &options) {
        Ok(report) => {
            let m = report.final_metrics();
            rec.states = Some(report.states);
            rec.acc_sources = Some(report.accepting_sources);
            rec.pairs = Some(report.pair_count);
            rec.rpn = Some(m.rpn);
            rec.tllen = Some(m.tllen);
            rec.h = Some(m.star_height);
            (finish(rec, Status::Ok, None), source)
        }
        Err(CliError::Timeout { .. }) => (finish(rec, Status::Timeout, None), source),
        Err(e) => (finish(rec, Status::Error, Some(e.to_string())), source),
    }
}

/// Runs every combination. Entries are processed in parallel when
/// `args.execution` allows; rows come back in corpus order.
pub fn run(args: &BenchArgs) -> Result<BenchRun, CliError> {
    if args.methods.is_empty() {
        return Err(CliError::Usage("--methods must name at least one method".into()));
    }
    let entries = collect(&args.dir)?;
    let per_entry = exec::map(args.execution, &entries, |entry| {
        let mut rows = Vec::new();
        let mut source = None;
        for &method in &args.methods {
            for &simplified in args.simplify.flags() {
                let (rec, s) = row(entry, method, simplified, args);
                source = source.or(s);
                rows.push(rec);
            }
        }
        (rows, source.map(|s| (entry.name.clone(), s)))
    });
    let mut records = Vec::new();
    let mut sources = Vec::new();
    for (rows, source) in per_entry {
        records.extend(rows);
        sources.extend(source);
    }
    Ok(BenchRun { records, sources })
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("records serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

pub fn from_csv(text: &str) -> Result<Vec<BenchRecord>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

/// Direction counts and mean relative decrease of one metric, state route
/// to transition route.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MetricSummary {
    /// Mean of `(state − transition) / state × 100` over rows with a
    /// nonzero state value.
    pub mean_decrease: Option<f64>,
    pub down: usize,
    pub same: usize,
    pub up: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Summary {
    pub simplified: bool,
    /// Entries where both routes finished.
    pub compared: usize,
    /// Entries where at least one route timed out; excluded from the stats.
    pub timed_out: usize,
    pub errors: usize,
    pub rpn: MetricSummary,
    pub tllen: MetricSummary,
    pub h: MetricSummary,
    pub mean_rpn_transition: Option<f64>,
    pub mean_rpn_state: Option<f64>,
}

fn tally(pairs: &[(u64, u64)]) -> MetricSummary {
    let mut s = MetricSummary::default();
    let mut decreases = Vec::new();
    for &(state, trans) in pairs {
        match trans.cmp(&state) {
            std::cmp::Ordering::Less => s.down += 1,
            std::cmp::Ordering::Equal => s.same += 1,
            std::cmp::Ordering::Greater => s.up += 1,
        }
        if state > 0 {
            decreases.push((state as f64 - trans as f64) / state as f64 * 100.0);
        } else if trans == 0 {
            decreases.push(0.0);
        }
    }
    if !decreases.is_empty() {
        s.mean_decrease = Some(decreases.iter().sum::<f64>() / decreases.len() as f64);
    }
    s
}

fn mean(xs: &[u64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<u64>() as f64 / xs.len() as f64)
}

/// Per simplification mode, compares `transition` rows with `state` rows of
/// the same entry.
pub fn summarize(records: &[BenchRecord]) -> Vec<Summary> {
    let mut out = Vec::new();
    for simplified in [false, true] {
        let find = |file: &str, method: &str| {
            records
                .iter()
                .find(|r| r.file == file && r.method == method && r.simplified == simplified)
        };
        let mut files: Vec<&str> = records
            .iter()
            .filter(|r| r.simplified == simplified)
            .map(|r| r.file.as_str())
            .collect();
        files.dedup();
        let mut s = Summary {
            simplified,
            ..Summary::default()
        };
        let (mut rpn, mut tllen, mut h) = (Vec::new(), Vec::new(), Vec::new());
        for file in files {
            let (Some(t), Some(st)) = (find(file, "transition"), find(file, "state")) else {
                continue;
            };
            match (t.status, st.status) {
                (Status::Ok, Status::Ok) => {
                    s.compared += 1;
                    rpn.push((st.rpn.unwrap(), t.rpn.unwrap()));
                    tllen.push((st.tllen.unwrap(), t.tllen.unwrap()));
                    h.push((u64::from(st.h.unwrap()), u64::from(t.h.unwrap())));
                }
                (Status::Timeout, _) | (_, Status::Timeout) => s.timed_out += 1,
                _ => s.errors += 1,
            }
        }
        if s.compared + s.timed_out + s.errors == 0 {
            continue;
        }
        s.rpn = tally(&rpn);
        s.tllen = tally(&tllen);
        s.h = tally(&h);
        s.mean_rpn_state = mean(&rpn.iter().map(|p| p.0).collect::<Vec<_>>());
        s.mean_rpn_transition = mean(&rpn.iter().map(|p| p.1).collect::<Vec<_>>());
        out.push(s);
    }
    out
}

/// Table-style rendering of [`summarize`]; ↓ counts entries where the
/// transition route is smaller.
pub fn render_summary(summaries: &[Summary], sources: &[(String, StateSource)]) -> String {
    let mut out = String::new();
    let degen = sources
        .iter()
        .filter(|s| s.1 == StateSource::Degeneralized)
        .count();
    let paired = sources.iter().filter(|s| s.1 == StateSource::Paired).count();
    let native = sources.iter().filter(|s| s.1 == StateSource::Input).count();
    let _ = writeln!(
        out,
        "state-based source: {degen} degeneralized, {paired} paired, {native} state-based inputs"
    );
    let fmt_pct = |m: Option<f64>| m.map_or("n/a".to_string(), |v| format!("{v:.1}%"));
    for s in summaries {
        let _ = writeln!(
            out,
            "\n[{}] {} compared, {} timed out (excluded), {} errors",
            if s.simplified {
                "simplified"
            } else {
                "unsimplified"
            },
            s.compared,
            s.timed_out,
            s.errors
        );
        let _ = writeln!(
            out,
            "{:<8}{:>14}{:>6}{:>6}{:>6}",
            "metric", "mean decrease", "↓", "=", "↑"
        );
        for (name, m) in [("rpn", s.rpn), ("tllen", s.tllen), ("h", s.h)] {
            let _ = writeln!(
                out,
                "{:<8}{:>14}{:>6}{:>6}{:>6}",
                name,
                fmt_pct(m.mean_decrease),
                m.down,
                m.same,
                m.up
            );
        }
        let f = |m: Option<f64>| m.map_or("n/a".to_string(), |v| format!("{v:.2}"));
        let _ = writeln!(
            out,
            "mean rpn: transition {}, state {}",
            f(s.mean_rpn_transition),
            f(s.mean_rpn_state)
        );
    }
    out
}
