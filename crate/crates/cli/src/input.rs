use std::fs;
use std::path::Path;

use omega_synth::automata::{parse_hoa, parse_json, Nba};

use crate::{io_err, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Hoa,
    Json,
}

/// By extension, falling back to the first non-blank character.
pub fn sniff(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        Some("hoa") => Format::Hoa,
        _ if text.trim_start().starts_with('{') => Format::Json,
        _ => Format::Hoa,
    }
}

pub fn parse_automaton(path: &Path, text: &str) -> Result<Nba, CliError> {
    let parsed = match sniff(path, text) {
        Format::Hoa => parse_hoa(text).map_err(|e| e.to_string()),
        Format::Json => parse_json(text).map_err(|e| e.to_string()),
    };
    parsed.map_err(|message| CliError::Input {
        path: path.to_path_buf(),
        message,
    })
}

pub fn load_automaton(path: &Path) -> Result<Nba, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_automaton(path, &text)
}
