use std::fmt;

use super::{OmegaRegex, Regex};
use crate::automata::{Alphabet, Symbol};

// Precedence levels: union < concatenation < postfix/atom.
const UNION: u8 = 0;
const CONCAT: u8 = 1;
const ATOM: u8 = 2;

pub struct DisplayRegex<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

pub struct DisplayOmega<'a> {
    expr: &'a OmegaRegex,
    alphabet: &'a Alphabet,
}

impl Regex {
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayRegex<'a> {
        DisplayRegex {
            regex: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

impl OmegaRegex {
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayOmega<'a> {
        DisplayOmega { expr: self, alphabet }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

impl fmt::Display for DisplayRegex<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_regex(f, self.regex, self.alphabet, UNION)
    }
}

impl fmt::Display for DisplayOmega<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_omega(f, self.expr, self.alphabet, UNION)
    }
}

/// Single ASCII letters and digits print bare; anything else is quoted.
pub(crate) fn write_symbol(f: &mut impl fmt::Write, sym: Symbol, alphabet: &Alphabet) -> fmt::Result {
    let label = alphabet
        .label(sym)
        .map_or_else(|| format!("#{}", sym.0), str::to_owned);
    let mut chars = label.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii_alphanumeric() => f.write_char(c),
        _ => {
            f.write_char('"')?;
            for c in label.chars() {
                if c == '"' || c == '\\' {
                    f.write_char('\\')?;
                }
                f.write_char(c)?;
            }
            f.write_char('"')
        }
    }
}

fn write_regex(f: &mut fmt::Formatter<'_>, r: &Regex, ab: &Alphabet, ctx: u8) -> fmt::Result {
    match r {
        Regex::Empty => f.write_str("%0"),
        Regex::Epsilon => f.write_str("%e"),
        Regex::Sym(s) => write_symbol(f, *s, ab),
        Regex::Union(a, b) => {
            let paren = ctx > UNION;
            if paren {
                f.write_str("(")?;
            }
            write_regex(f, a, ab, UNION)?;
            f.write_str("+")?;
            write_regex(f, b, ab, CONCAT)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        Regex::Concat(a, b) => {
            let paren = ctx > CONCAT;
            if paren {
                f.write_str("(")?;
            }
            write_regex(f, a, ab, CONCAT)?;
            write_regex(f, b, ab, ATOM)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        Regex::Star { body, grouped } => {
            let atomic = matches!(**body, Regex::Sym(_) | Regex::Epsilon | Regex::Empty);
            if *grouped || !atomic {
                f.write_str("(")?;
                write_regex(f, body, ab, UNION)?;
                f.write_str(")*")
            } else {
                write_regex(f, body, ab, ATOM)?;
                f.write_str("*")
            }
        }
    }
}

fn write_omega(f: &mut fmt::Formatter<'_>, e: &OmegaRegex, ab: &Alphabet, ctx: u8) -> fmt::Result {
    match e {
        OmegaRegex::Empty => f.write_str("%0^w"),
        OmegaRegex::Omega(body) => {
            f.write_str("(")?;
            write_regex(f, body, ab, UNION)?;
            f.write_str(")^w")
        }
        OmegaRegex::ConcatFin(prefix, rest) => {
            let paren = ctx > CONCAT;
            if paren {
                f.write_str("(")?;
            }
            write_regex(f, prefix, ab, CONCAT)?;
            write_omega(f, rest, ab, ATOM)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        OmegaRegex::Union(a, b) => {
            let paren = ctx > UNION;
            if paren {
                f.write_str("(")?;
            }
            write_omega(f, a, ab, UNION)?;
            f.write_str("+")?;
            write_omega(f, b, ab, CONCAT)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}
