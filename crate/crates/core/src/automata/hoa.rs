//! Reader and writer for the explicit-label Büchi subset of the HOA v1 format.
//!
//! Edge labels are treated as opaque letters: every syntactically distinct
//! label formula becomes one alphabet symbol, with atomic-proposition indices
//! replaced by their names. When every label is a single proposition index the
//! alphabet is the `AP:` list itself, in declaration order; this is what
//! [`emit_hoa`] produces, so emitted files read back with identical symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use super::{AcceptanceKind, Alphabet, AutomatonError, Nba, Nfa, StateId, Transition};

/// Upper bound on declared or referenced state ids.
const MAX_STATES: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct HoaError {
    pub line: usize,
    pub kind: HoaErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HoaErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unsupported acceptance condition `{0}` (expected `1 Inf(0)`)")]
    UnsupportedAcceptance(String),
    #[error("acceptance marks appear on both states and edges")]
    MixedAcceptanceMarks,
    #[error("unsupported feature: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Invalid(#[from] AutomatonError),
}

fn err<T>(line: usize, kind: HoaErrorKind) -> Result<T, HoaError> {
    Err(HoaError { line, kind })
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, HoaError> {
    err(line, HoaErrorKind::Syntax(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Header(String),
    Ident(String),
    Int(u64),
    Str(String),
    Label(String),
    AccSet(Vec<u64>),
    Body,
    End,
    Punct(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, HoaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '/' if chars.get(i + 1) == Some(&'*') => {
                let start = line;
                i += 2;
                loop {
                    match chars.get(i) {
                        None => return syntax(start, "unterminated comment"),
                        Some('*') if chars.get(i + 1) == Some(&'/') => {
                            i += 2;
                            break;
                        }
                        Some('\n') => {
                            line += 1;
                            i += 1;
                        }
                        Some(_) => i += 1,
                    }
                }
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return syntax(start, "unterminated string"),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => match chars.get(i + 1) {
                            Some(&e) => {
                                s.push(e);
                                i += 2;
                            }
                            None => return syntax(start, "unterminated string"),
                        },
                        Some(&ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Token {
                    tok: Tok::Str(s),
                    line: start,
                });
            }
            '[' => {
                let start = line;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return syntax(start, "unterminated label"),
                        Some(']') => {
                            i += 1;
                            break;
                        }
                        Some('[') => return syntax(line, "nested `[` in label"),
                        Some(&ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Token {
                    tok: Tok::Label(s),
                    line: start,
                });
            }
            '{' => {
                let start = line;
                let mut sets = Vec::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return syntax(start, "unterminated acceptance set"),
                        Some('}') => {
                            i += 1;
                            break;
                        }
                        Some(ch) if ch.is_whitespace() => {
                            if *ch == '\n' {
                                line += 1;
                            }
                            i += 1;
                        }
                        Some(ch) if ch.is_ascii_digit() => {
                            let begin = i;
                            while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                                i += 1;
                            }
                            let digits: String = chars[begin..i].iter().collect();
                            match digits.parse::<u64>() {
                                Ok(v) => sets.push(v),
                                Err(_) => return syntax(line, "acceptance set index too large"),
                            }
                        }
                        Some(ch) => return syntax(line, format!("unexpected `{ch}` in acceptance set")),
                    }
                }
                out.push(Token {
                    tok: Tok::AccSet(sets),
                    line: start,
                });
            }
            '-' if chars[i..].starts_with(&['-', '-', 'B', 'O', 'D', 'Y', '-', '-']) => {
                out.push(Token { tok: Tok::Body, line });
                i += 8;
            }
            '-' if chars[i..].starts_with(&['-', '-', 'E', 'N', 'D', '-', '-']) => {
                out.push(Token { tok: Tok::End, line });
                i += 7;
            }
            '-' if chars[i..].starts_with(&['-', '-', 'A', 'B', 'O', 'R', 'T', '-', '-']) => {
                return err(line, HoaErrorKind::Unsupported("--ABORT--".into()));
            }
            c if c.is_ascii_digit() => {
                let begin = i;
                while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                let digits: String = chars[begin..i].iter().collect();
                match digits.parse::<u64>() {
                    Ok(v) => out.push(Token {
                        tok: Tok::Int(v),
                        line,
                    }),
                    Err(_) => return syntax(line, "integer too large"),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' || c == '@' => {
                let begin = i;
                i += 1;
                while chars
                    .get(i)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '-')
                {
                    i += 1;
                }
                let word: String = chars[begin..i].iter().collect();
                if chars.get(i) == Some(&':') {
                    i += 1;
                    out.push(Token {
                        tok: Tok::Header(word),
                        line,
                    });
                } else {
                    out.push(Token {
                        tok: Tok::Ident(word),
                        line,
                    });
                }
            }
            '&' | '|' | '!' | '(' | ')' => {
                out.push(Token {
                    tok: Tok::Punct(c),
                    line,
                });
                i += 1;
            }
            other => return syntax(line, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

#[derive(Default)]
struct Header {
    states: Option<u64>,
    start: Vec<(u64, usize)>,
    aps: Vec<String>,
    state_acc_property: bool,
    seen_acceptance: bool,
}

fn parse_header(tokens: &[Token]) -> Result<(Header, usize), HoaError> {
    let mut header = Header::default();
    match tokens.first() {
        Some(Token {
            tok: Tok::Header(h),
            line,
        }) if h == "HOA" => match tokens.get(1) {
            Some(Token {
                tok: Tok::Ident(v), ..
            }) if v == "v1" => {}
            _ => return syntax(*line, "expected `HOA: v1`"),
        },
        Some(t) => return syntax(t.line, "file must start with `HOA: v1`"),
        None => return syntax(1, "empty input"),
    }
    let mut pos = 2;
    loop {
        let Some(token) = tokens.get(pos) else {
            return syntax(tokens.last().map_or(1, |t| t.line), "missing `--BODY--`");
        };
        let line = token.line;
        let name = match &token.tok {
            Tok::Body => {
                pos += 1;
                break;
            }
            Tok::Header(name) => name.clone(),
            other => return syntax(line, format!("expected header item, found {other:?}")),
        };
        pos += 1;
        let begin = pos;
        while pos < tokens.len() && !matches!(tokens[pos].tok, Tok::Header(_) | Tok::Body) {
            pos += 1;
        }
        let args: Vec<&Tok> = tokens[begin..pos].iter().map(|t| &t.tok).collect();
        match name.as_str() {
            "HOA" => return syntax(line, "duplicate `HOA:` header"),
            "States" => match args.as_slice() {
                [Tok::Int(n)] if *n <= MAX_STATES => {
                    if header.states.replace(*n).is_some() {
                        return syntax(line, "duplicate `States:` header");
                    }
                }
                [Tok::Int(_)] => return syntax(line, "too many states"),
                _ => return syntax(line, "expected `States: <int>`"),
            },
            "Start" => match args.as_slice() {
                [Tok::Int(q)] => header.start.push((*q, line)),
                [Tok::Int(_), ..] => {
                    return err(line, HoaErrorKind::Unsupported("conjunctive start states".into()))
                }
                _ => return syntax(line, "expected `Start: <int>`"),
            },
            "AP" => {
                let Some(Tok::Int(count)) = args.first() else {
                    return syntax(line, "expected `AP: <count> <names>`");
                };
                let names: Vec<String> = args[1..]
                    .iter()
                    .map(|t| match t {
                        Tok::Str(s) => Ok(s.clone()),
                        _ => syntax(line, "AP names must be strings"),
                    })
                    .collect::<Result<_, _>>()?;
                if names.len() as u64 != *count {
                    return syntax(
                        line,
                        format!("AP declares {count} names but lists {}", names.len()),
                    );
                }
                if !header.aps.is_empty() {
                    return syntax(line, "duplicate `AP:` header");
                }
                header.aps = names;
            }
            "Acceptance" => {
                let ok = matches!(
                    args.as_slice(),
                    [Tok::Int(1), Tok::Ident(inf), Tok::Punct('('), Tok::Int(0), Tok::Punct(')')]
                        if inf == "Inf"
                );
                if !ok {
                    let rendered = tokens[begin..pos]
                        .iter()
                        .map(render_tok)
                        .collect::<Vec<_>>()
                        .join(" ");
                    return err(line, HoaErrorKind::UnsupportedAcceptance(rendered));
                }
                header.seen_acceptance = true;
            }
            "Alias" => return err(line, HoaErrorKind::Unsupported("aliases".into())),
            "properties" => {
                for arg in &args {
                    match arg {
                        Tok::Ident(p) if p == "state-acc" => header.state_acc_property = true,
                        Tok::Ident(p) if p == "implicit-labels" => {
                            return err(line, HoaErrorKind::Unsupported("implicit labels".into()))
                        }
                        _ => {}
                    }
                }
            }
            // acc-name, name, tool and unknown headers carry nothing we use.
            _ => {}
        }
    }
    if !header.seen_acceptance {
        return syntax(tokens[pos - 1].line, "missing `Acceptance:` header");
    }
    Ok((header, pos))
}

fn render_tok(t: &Token) -> String {
    match &t.tok {
        Tok::Header(h) => format!("{h}:"),
        Tok::Ident(s) => s.clone(),
        Tok::Int(v) => v.to_string(),
        Tok::Str(s) => format!("{s:?}"),
        Tok::Label(s) => format!("[{s}]"),
        Tok::AccSet(v) => format!("{v:?}"),
        Tok::Body => "--BODY--".into(),
        Tok::End => "--END--".into(),
        Tok::Punct(c) => c.to_string(),
    }
}

/// Canonical label text: whitespace removed, proposition indices replaced by
/// proposition names. Returns `(rendered, plain_index)`.
fn normalize_label(raw: &str, aps: &[String], line: usize) -> Result<(String, Option<usize>), HoaError> {
    let compact: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return syntax(line, "empty label");
    }
    let chars: Vec<char> = compact.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '0'..='9' => {
                let begin = i;
                while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                let digits: String = chars[begin..i].iter().collect();
                let idx: usize = match digits.parse() {
                    Ok(v) => v,
                    Err(_) => return syntax(line, "proposition index too large"),
                };
                match aps.get(idx) {
                    Some(name) => out.push_str(name),
                    None => return syntax(line, format!("proposition {idx} not declared in `AP:`")),
                }
            }
            't' | 'f' | '&' | '|' | '!' | '(' | ')' => {
                out.push(c);
                i += 1;
            }
            '@' => return err(line, HoaErrorKind::Unsupported("aliases".into())),
            other => return syntax(line, format!("unexpected `{other}` in label")),
        }
    }
    let plain = if compact.chars().all(|c| c.is_ascii_digit()) {
        compact.parse::<usize>().ok()
    } else {
        None
    };
    Ok((out, plain))
}

struct RawEdge {
    src: u64,
    label: (String, Option<usize>),
    dst: u64,
    marked: bool,
    line: usize,
}

fn acc_mark(sets: &[u64], line: usize) -> Result<bool, HoaError> {
    match sets {
        [] => Ok(false),
        [0] => Ok(true),
        _ => syntax(
            line,
            format!("acceptance set {sets:?} not declared (only set 0 exists)"),
        ),
    }
}

/// Parses HOA text into a Büchi automaton. State numbering is preserved.
pub fn parse_hoa(text: &str) -> Result<Nba, HoaError> {
    let tokens = lex(text)?;
    let (header, mut pos) = parse_header(&tokens)?;

    let mut edges: Vec<RawEdge> = Vec::new();
    let mut marked_states: BTreeSet<u64> = BTreeSet::new();
    let mut seen_states: BTreeMap<u64, usize> = BTreeMap::new();
    let mut any_state_mark = false;
    let mut any_edge_mark = false;
    let mut ended = false;

    while pos < tokens.len() {
        let token = &tokens[pos];
        let line = token.line;
        match &token.tok {
            Tok::End => {
                ended = true;
                pos += 1;
                break;
            }
            Tok::Header(h) if h == "State" => pos += 1,
            other => {
                return syntax(
                    line,
                    format!(
                        "expected `State:` or `--END--`, found {}",
                        render_tok(&Token {
                            tok: other.clone(),
                            line
                        })
                    ),
                )
            }
        }
        let mut state_label = None;
        if let Some(Token {
            tok: Tok::Label(raw),
            line,
        }) = tokens.get(pos)
        {
            state_label = Some(normalize_label(raw, &header.aps, *line)?);
            pos += 1;
        }
        let state = match tokens.get(pos) {
            Some(Token { tok: Tok::Int(q), .. }) if *q < MAX_STATES => *q,
            Some(Token {
                tok: Tok::Int(_),
                line,
            }) => return syntax(*line, "state id too large"),
            _ => return syntax(line, "expected state id after `State:`"),
        };
        pos += 1;
        if seen_states.insert(state, line).is_some() {
            return syntax(line, format!("state {state} defined twice"));
        }
        if let Some(Token { tok: Tok::Str(_), .. }) = tokens.get(pos) {
            pos += 1;
        }
        if let Some(Token {
            tok: Tok::AccSet(sets),
            line,
        }) = tokens.get(pos)
        {
            if acc_mark(sets, *line)? {
                marked_states.insert(state);
                any_state_mark = true;
            }
            pos += 1;
        }
        // Edges until the next `State:` or `--END--`.
        while let Some(token) = tokens.get(pos) {
            let line = token.line;
            let label = match &token.tok {
                Tok::Label(raw) => {
                    if state_label.is_some() {
                        return syntax(line, "edge label on a state that already has a label");
                    }
                    pos += 1;
                    normalize_label(raw, &header.aps, line)?
                }
                Tok::Int(_) => match &state_label {
                    Some(l) => l.clone(),
                    None => return err(line, HoaErrorKind::Unsupported("implicit labels".into())),
                },
                Tok::Header(_) | Tok::End => break,
                other => {
                    return syntax(
                        line,
                        format!(
                            "unexpected {} in edge",
                            render_tok(&Token {
                                tok: other.clone(),
                                line
                            })
                        ),
                    )
                }
            };
            let dst = match tokens.get(pos) {
                Some(Token { tok: Tok::Int(q), .. }) if *q < MAX_STATES => *q,
                Some(Token {
                    tok: Tok::Int(_),
                    line,
                }) => return syntax(*line, "state id too large"),
                _ => return syntax(line, "expected destination state"),
            };
            pos += 1;
            if let Some(Token {
                tok: Tok::Punct('&'),
                line,
            }) = tokens.get(pos)
            {
                return err(*line, HoaErrorKind::Unsupported("universal branching".into()));
            }
            let mut marked = false;
            if let Some(Token {
                tok: Tok::AccSet(sets),
                line,
            }) = tokens.get(pos)
            {
                marked = acc_mark(sets, *line)?;
                any_edge_mark |= marked;
                pos += 1;
            }
            edges.push(RawEdge {
                src: state,
                label,
                dst,
                marked,
                line,
            });
        }
    }
    let last_line = tokens.last().map_or(1, |t| t.line);
    if !ended {
        return syntax(last_line, "missing `--END--`");
    }
    if let Some(t) = tokens.get(pos) {
        return syntax(t.line, "content after `--END--`");
    }
    if any_state_mark && any_edge_mark {
        return err(last_line, HoaErrorKind::MixedAcceptanceMarks);
    }

    let max_id = seen_states
        .keys()
        .copied()
        .chain(edges.iter().map(|e| e.dst))
        .chain(header.start.iter().map(|(q, _)| *q))
        .max();
    let num_states = match header.states {
        Some(n) => {
            for (&q, &line) in &seen_states {
                if q >= n {
                    return syntax(line, format!("state {q} out of range (States: {n})"));
                }
            }
            for e in &edges {
                if e.dst >= n {
                    return syntax(
                        e.line,
                        format!("destination {} out of range (States: {n})", e.dst),
                    );
                }
            }
            for &(q, line) in &header.start {
                if q >= n {
                    return syntax(line, format!("start state {q} out of range (States: {n})"));
                }
            }
            n as usize
        }
        None => max_id.map_or(0, |m| m as usize + 1),
    };

    let plain = edges.iter().all(|e| e.label.1.is_some());
    let alphabet = if plain {
        Alphabet::from_labels(header.aps.iter().cloned()).map_err(|e| HoaError {
            line: 1,
            kind: e.into(),
        })?
    } else {
        let mut ab = Alphabet::new();
        for e in &edges {
            ab.intern(&e.label.0);
        }
        ab
    };
    let state_based = any_state_mark || (!any_edge_mark && header.state_acc_property);
    let transitions = edges
        .iter()
        .map(|e| {
            let sym = match e.label.1 {
                Some(idx) if plain => super::Symbol(idx as u32),
                _ => alphabet.lookup(&e.label.0).expect("interned above"),
            };
            Transition::new(e.src as StateId, sym, e.dst as StateId, e.marked && !state_based)
        })
        .collect();
    let initial = header.start.iter().map(|(q, _)| *q as StateId).collect();
    let (kind, accepting) = if state_based {
        (
            AcceptanceKind::StateBased,
            marked_states.iter().map(|&q| q as StateId).collect(),
        )
    } else {
        (AcceptanceKind::TransitionBased, BTreeSet::new())
    };
    Nba::new(num_states, alphabet, transitions, initial, kind, accepting).map_err(|e| HoaError {
        line: last_line,
        kind: e.into(),
    })
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Writes an automaton as HOA. Each alphabet symbol becomes one atomic
/// proposition and each edge is labelled with its proposition index.
pub fn emit_hoa(nba: &Nba) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "HOA: v1");
    let _ = writeln!(out, "States: {}", nba.num_states());
    for q in nba.initial() {
        let _ = writeln!(out, "Start: {q}");
    }
    let mut ap = format!("AP: {}", nba.alphabet().len());
    for label in nba.alphabet().labels() {
        ap.push(' ');
        ap.push_str(&quote(label));
    }
    let _ = writeln!(out, "{ap}");
    let _ = writeln!(out, "acc-name: Buchi");
    let _ = writeln!(out, "Acceptance: 1 Inf(0)");
    let acc = match nba.acceptance() {
        AcceptanceKind::TransitionBased => "trans-acc",
        AcceptanceKind::StateBased => "state-acc",
    };
    let _ = writeln!(out, "properties: trans-labels explicit-labels {acc}");
    let _ = writeln!(out, "--BODY--");
    let mut outgoing: Vec<Vec<&Transition>> = vec![Vec::new(); nba.num_states()];
    for t in nba.transitions() {
        outgoing[t.src].push(t);
    }
    for (q, edges) in outgoing.iter().enumerate() {
        if nba.accepting_states().contains(&q) {
            let _ = writeln!(out, "State: {q} {{0}}");
        } else {
            let _ = writeln!(out, "State: {q}");
        }
        for t in edges {
            if t.accepting {
                let _ = writeln!(out, "[{}] {} {{0}}", t.sym.0, t.dst);
            } else {
                let _ = writeln!(out, "[{}] {}", t.sym.0, t.dst);
            }
        }
    }
    let _ = writeln!(out, "--END--");
    out
}

/// Debug dump of a finite automaton. HOA has no finite-word acceptance, so
/// final states carry the Büchi mark and a comment says how to read it.
pub fn emit_nfa_hoa(nfa: &Nfa) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "HOA: v1");
    let _ = writeln!(out, "/* finite-word automaton: marked states are final */");
    let _ = writeln!(out, "States: {}", nfa.num_states());
    for q in nfa.initial() {
        let _ = writeln!(out, "Start: {q}");
    }
    let mut ap = format!("AP: {}", nfa.alphabet().len());
    for label in nfa.alphabet().labels() {
        ap.push(' ');
        ap.push_str(&quote(label));
    }
    let _ = writeln!(out, "{ap}");
    let _ = writeln!(out, "acc-name: Buchi");
    let _ = writeln!(out, "Acceptance: 1 Inf(0)");
    let _ = writeln!(out, "properties: trans-labels explicit-labels state-acc");
    let _ = writeln!(out, "--BODY--");
    for q in 0..nfa.num_states() {
        if nfa.accepting().contains(&q) {
            let _ = writeln!(out, "State: {q} {{0}}");
        } else {
            let _ = writeln!(out, "State: {q}");
        }
        for t in nfa.transitions().iter().filter(|t| t.src == q) {
            let _ = writeln!(out, "[{}] {}", t.sym.0, t.dst);
        }
    }
    let _ = writeln!(out, "--END--");
    out
}
