//! Concrete syntax.
//!
//! ```text
//! expr    := concat ('+' concat)*
//! concat  := postfix+
//! postfix := atom ('*' | '^w')*
//! atom    := letter | digit | '"' label '"' | '%e' | '%0' | '(' expr ')'
//! ```
//!
//! `^w` binds like `*`. An ω-factor may only end a concatenation, and the
//! alternatives of a union must all be finite or all be ω.

use super::{ExprError, OmegaRegex, Regex};
use crate::automata::Alphabet;

enum Ast {
    Fin(Regex),
    Omega(OmegaRegex),
}

struct Parser<'a, 'b> {
    text: &'a [u8],
    src: &'a str,
    pos: usize,
    alphabet: &'b mut Alphabet,
}

fn fail<T>(pos: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError::Syntax {
        pos,
        message: message.into(),
    })
}

/// Parses a regular expression, interning unseen symbols into `alphabet`.
pub fn parse(text: &str, alphabet: &mut Alphabet) -> Result<Regex, ExprError> {
    match parse_any(text, alphabet)? {
        Ast::Fin(r) => Ok(r),
        Ast::Omega(_) => fail(0, "expected a regular expression, found an ω-expression"),
    }
}

/// Parses an ω-regular expression, interning unseen symbols into `alphabet`.
pub fn parse_omega(text: &str, alphabet: &mut Alphabet) -> Result<OmegaRegex, ExprError> {
    match parse_any(text, alphabet)? {
        Ast::Omega(e) => Ok(e),
        Ast::Fin(_) => fail(0, "expected an ω-expression, found a regular expression"),
    }
}

fn parse_any(text: &str, alphabet: &mut Alphabet) -> Result<Ast, ExprError> {
    let mut p = Parser {
        text: text.as_bytes(),
        src: text,
        pos: 0,
        alphabet,
    };
    let ast = p.union()?;
    p.skip_ws();
    if p.pos < p.text.len() {
        return fail(p.pos, format!("unexpected `{}`", p.peek_char()));
    }
    Ok(ast)
}

impl Parser<'_, '_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.src[self.pos..].chars().next().unwrap_or('?')
    }

    fn union(&mut self) -> Result<Ast, ExprError> {
        self.skip_ws();
        let first_pos = self.pos;
        let mut acc = self.concat()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            self.skip_ws();
            let alt_pos = self.pos;
            let next = self.concat()?;
            acc = match (acc, next) {
                (Ast::Fin(a), Ast::Fin(b)) => Ast::Fin(Regex::union(a, b)),
                (Ast::Omega(a), Ast::Omega(b)) => Ast::Omega(OmegaRegex::union(a, b)),
                (Ast::Fin(_), Ast::Omega(_)) => {
                    return fail(first_pos, "union mixes finite and ω alternatives")
                }
                (Ast::Omega(_), Ast::Fin(_)) => {
                    return fail(alt_pos, "union mixes finite and ω alternatives")
                }
            };
        }
        Ok(acc)
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            Some(c) => c.is_ascii_alphanumeric() || c == b'(' || c == b'%' || c == b'"',
            None => false,
        }
    }

    fn concat(&mut self) -> Result<Ast, ExprError> {
        if !self.starts_atom() {
            return match self.peek() {
                None => fail(self.pos, "expected expression, found end of input"),
                Some(_) => fail(
                    self.pos,
                    format!("expected expression, found `{}`", self.peek_char()),
                ),
            };
        }
        let mut prefix = Regex::Epsilon;
        while self.starts_atom() {
            match self.postfix()? {
                Ast::Fin(r) => prefix = Regex::concat(prefix, r),
                Ast::Omega(e) => {
                    if self.starts_atom() {
                        return fail(self.pos, "nothing may follow an ω-factor in a concatenation");
                    }
                    return Ok(Ast::Omega(OmegaRegex::concat_fin(prefix, e)));
                }
            }
        }
        Ok(Ast::Fin(prefix))
    }

    fn postfix(&mut self) -> Result<Ast, ExprError> {
        let start = self.pos;
        let (mut ast, mut grouped) = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    let at = self.pos;
                    self.pos += 1;
                    ast = match ast {
                        Ast::Fin(r) => Ast::Fin(Regex::star_with(r, grouped)),
                        Ast::Omega(_) => return fail(at, "`*` applied to an ω-expression"),
                    };
                }
                Some(b'^') => {
                    let at = self.pos;
                    if self.text.get(self.pos + 1) != Some(&b'w') {
                        return fail(at + 1, "expected `w` after `^`");
                    }
                    self.pos += 2;
                    ast = match ast {
                        Ast::Fin(r) => match OmegaRegex::omega(r) {
                            Ok(e) => Ast::Omega(e),
                            Err(_) => {
                                return fail(start, "ω-iteration of an expression accepting the empty word")
                            }
                        },
                        Ast::Omega(_) => return fail(at, "`^w` applied to an ω-expression"),
                    };
                }
                _ => return Ok(ast),
            }
            grouped = false;
        }
    }

    fn atom(&mut self) -> Result<(Ast, bool), ExprError> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.union()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok((inner, true))
                    }
                    None => fail(self.pos, "expected `)`, found end of input"),
                    Some(_) => fail(self.pos, format!("expected `)`, found `{}`", self.peek_char())),
                }
            }
            Some(b'%') => match self.text.get(self.pos + 1) {
                Some(b'e') => {
                    self.pos += 2;
                    Ok((Ast::Fin(Regex::Epsilon), false))
                }
                Some(b'0') => {
                    self.pos += 2;
                    Ok((Ast::Fin(Regex::Empty), false))
                }
                _ => fail(at + 1, "expected `e` or `0` after `%`"),
            },
            Some(b'"') => {
                self.pos += 1;
                let mut label = String::new();
                loop {
                    let Some(c) = self.src[self.pos..].chars().next() else {
                        return fail(at, "unterminated quoted symbol");
                    };
                    self.pos += c.len_utf8();
                    match c {
                        '"' => break,
                        '\\' => {
                            let Some(e) = self.src[self.pos..].chars().next() else {
                                return fail(at, "unterminated quoted symbol");
                            };
                            self.pos += e.len_utf8();
                            label.push(e);
                        }
                        c => label.push(c),
                    }
                }
                if label.is_empty() {
                    return fail(at, "empty quoted symbol");
                }
                Ok((Ast::Fin(Regex::Sym(self.alphabet.intern(&label))), false))
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                self.pos += 1;
                let label = (c as char).to_string();
                Ok((Ast::Fin(Regex::Sym(self.alphabet.intern(&label))), false))
            }
            None => fail(at, "expected expression, found end of input"),
            Some(_) => fail(self.pos, format!("unexpected `{}`", self.peek_char())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Symbol;

    fn ab() -> Alphabet {
        Alphabet::from_letters("abcd")
    }

    #[test]
    fn round_trips() {
        let mut a = ab();
        for text in [
            "a+ba*b", "a", "(a+b)*c", "%e+a", "(c)*da*b", "a(b)*", "((a)*)*", "\"p&q\"a",
        ] {
            let r = parse(text, &mut a).unwrap();
            assert_eq!(r.to_text(&a), text);
        }
        for text in [
            "(a+ba*b)((c)*da*b)^w+(b+ac*d)((a)*bc*d)^w",
            "(a)^w",
            "ab(b)^w",
            "a((b)^w+(c)^w)",
            "%0^w",
        ] {
            let e = parse_omega(text, &mut a).unwrap();
            assert_eq!(e.to_text(&a), text);
        }
    }

    #[test]
    fn precedence() {
        let mut a = ab();
        let r = parse("a+ba*b", &mut a).unwrap();
        let s = |c| Regex::Sym(Symbol(c));
        let expected = Regex::union(s(0), Regex::concat_all([s(1), Regex::star(s(0)), s(1)]));
        assert_eq!(r, expected);
        assert!(matches!(parse("(a+b)*", &mut a).unwrap(), Regex::Star { .. }));
    }

    #[test]
    fn whitespace_is_ignored() {
        let mut a = ab();
        assert_eq!(
            parse(" a + b a * ", &mut a).unwrap(),
            parse("a+ba*", &mut a).unwrap()
        );
    }

    #[test]
    fn syntax_errors() {
        let mut a = ab();
        assert_eq!(
            parse("(", &mut a),
            Err(ExprError::Syntax {
                pos: 1,
                message: "expected expression, found end of input".into()
            })
        );
        fn pos<T: std::fmt::Debug>(r: Result<T, ExprError>) -> usize {
            match r {
                Err(ExprError::Syntax { pos, .. }) => pos,
                other => panic!("expected syntax error, got {other:?}"),
            }
        }
        assert_eq!(pos(parse("a+", &mut a)), 2);
        assert_eq!(pos(parse("a)", &mut a)), 1);
        assert_eq!(pos(parse("", &mut a)), 0);
        assert_eq!(pos(parse("a^x", &mut a)), 2);
        assert_eq!(pos(parse("%x", &mut a)), 1);
        assert_eq!(pos(parse("(a)^w", &mut a)), 0);
        assert_eq!(pos(parse_omega("ab", &mut a)), 0);
        assert_eq!(pos(parse_omega("(a)^wb", &mut a)), 5);
        assert_eq!(pos(parse_omega("(a)^w*", &mut a)), 5);
        assert_eq!(pos(parse_omega("(a*)^w", &mut a)), 0);
        assert_eq!(pos(parse_omega("(a)^w+b", &mut a)), 6);
        assert_eq!(pos(parse_omega("\"ab", &mut a)), 0);
    }

    #[test]
    fn quoted_labels_intern() {
        let mut a = Alphabet::new();
        let r = parse("\"p&!q\"\"x\\\"y\"", &mut a).unwrap();
        assert_eq!(a.labels(), &["p&!q", "x\"y"]);
        assert_eq!(r.to_text(&a), "\"p&!q\"\"x\\\"y\"");
    }
}
