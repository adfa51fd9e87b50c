//! Command implementations behind the `omega-synth` binary.
//!
//! Every command writes to a caller-supplied sink and returns an exit
//! status, so the binary is a thin argument parser over this crate.

pub mod bench;
pub mod commands;
pub mod input;

use std::io;
use std::path::PathBuf;
use std::time::Duration;

use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_TIMEOUT: u8 = 4;

/// Overrides the default per-phase budget, in seconds.
pub const TIMEOUT_ENV: &str = "OMEGA_SYNTH_TIMEOUT_SECS";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(120);

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{phase} exceeded the {}s budget", budget.as_secs_f64())]
    Timeout { phase: &'static str, budget: Duration },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Input { .. } | CliError::Invalid(_) => EXIT_INPUT,
            CliError::Timeout { .. } => EXIT_TIMEOUT,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

/// `--timeout` if given, else the environment override, else two minutes.
pub fn resolve_timeout(flag: Option<f64>) -> Result<Duration, CliError> {
    let secs = match flag {
        Some(s) => s,
        None => match std::env::var(TIMEOUT_ENV) {
            Ok(v) => v
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{TIMEOUT_ENV}: `{v}` is not a number")))?,
            Err(_) => return Ok(DEFAULT_TIMEOUT),
        },
    };
    if !secs.is_finite() || secs < 0.0 {
        return Err(CliError::Usage(format!(
            "timeout must be a non-negative number, got {secs}"
        )));
    }
    Ok(Duration::from_secs_f64(secs))
}

fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Invalid("x".into()).exit_code(), EXIT_INPUT);
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
        let t = CliError::Timeout {
            phase: "synthesis",
            budget: Duration::from_secs(1),
        };
        assert_eq!(t.exit_code(), EXIT_TIMEOUT);
        assert_eq!(t.to_string(), "synthesis exceeded the 1s budget");
    }

    #[test]
    fn explicit_timeout_wins() {
        assert_eq!(resolve_timeout(Some(2.5)).unwrap(), Duration::from_millis(2500));
        assert!(resolve_timeout(Some(-1.0)).is_err());
        assert!(resolve_timeout(Some(f64::NAN)).is_err());
    }
}
