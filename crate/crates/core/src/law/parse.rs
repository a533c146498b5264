//! Surface syntax for words and equations.
//!
//! ```text
//! identity := side '=' side
//! side     := term | term term      (outermost parentheses optional)
//! term     := VAR | '(' term term ')'
//! VAR      := a single ASCII letter
//! ```
//!
//! Products are written by juxtaposition. Whitespace between tokens is
//! ignored, but two letters may not touch: `xy` is rejected as a multi-letter
//! variable name, write `x y` or `(x y)`.

use crate::error::{Error, Result};

use super::term::{Identity, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Var(char),
    Open,
    Close,
    Equals,
    End,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token and its byte offset, without consuming it.
    fn peek(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let at = self.pos;
        let Some(&b) = self.src.get(at) else {
            return Ok((Tok::End, at));
        };
        let tok = match b {
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'=' => Tok::Equals,
            c if c.is_ascii_alphabetic() => {
                if self.src.get(at + 1).is_some_and(u8::is_ascii_alphabetic) {
                    return err(at, "variable names must be a single letter");
                }
                Tok::Var(c as char)
            }
            _ => {
                let ch = std::str::from_utf8(&self.src[at..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('?');
                return err(at, format!("unexpected character {ch:?}"));
            }
        };
        Ok((tok, at))
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek()? {
            (Tok::Var(v), _) => {
                self.bump();
                Ok(Term::Var(v))
            }
            (Tok::Open, _) => {
                self.bump();
                let l = self.term()?;
                let r = self.term()?;
                match self.peek()? {
                    (Tok::Close, _) => {
                        self.bump();
                        Ok(Term::mul(l, r))
                    }
                    (_, at) => err(at, "expected ')' after two factors"),
                }
            }
            (Tok::End, at) => err(at, "unexpected end of input, expected a term"),
            (_, at) => err(at, "expected a variable or '('"),
        }
    }

    fn starts_term(&mut self) -> Result<bool> {
        Ok(matches!(self.peek()?.0, Tok::Var(_) | Tok::Open))
    }

    fn side(&mut self) -> Result<Term> {
        let first = self.term()?;
        if self.starts_term()? {
            let second = self.term()?;
            if self.starts_term()? {
                let (_, at) = self.peek()?;
                return err(at, "a side has at most two top-level factors; add parentheses");
            }
            Ok(Term::mul(first, second))
        } else {
            Ok(first)
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek()? {
            (Tok::End, _) => Ok(()),
            (_, at) => err(at, "trailing input"),
        }
    }
}

pub fn parse_identity(src: &str) -> Result<Identity> {
    let mut p = Parser::new(src);
    let lhs = p.side()?;
    match p.peek()? {
        (Tok::Equals, _) => p.bump(),
        (_, at) => return err(at, "expected '='"),
    }
    let rhs = p.side()?;
    p.expect_end()?;
    Ok(Identity::new(lhs, rhs))
}

/// Parses a single word, with the same optional outer parentheses as a side.
pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src);
    let t = p.side()?;
    p.expect_end()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_invertive_law() {
        let id = parse_identity("((x y) z) = ((z y) x)").unwrap();
        assert_eq!(id.variables(), ['x', 'y', 'z']);
        assert_eq!(id.to_string(), "((x y) z) = ((z y) x)");
    }

    #[test]
    fn idempotency_and_evans() {
        assert_eq!(parse_identity("x = (x x)").unwrap().variables(), ['x']);
        let evans = parse_identity("((x y)(y z)) = y").unwrap();
        assert_eq!(evans.variables(), ['x', 'y', 'z']);
    }

    #[test]
    fn outer_parentheses_optional() {
        let a = parse_identity("(x y) x = y").unwrap();
        let b = parse_identity("((x y) x) = y").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_identity("x=x x").unwrap(), parse_identity("x = (x x)").unwrap());
    }

    #[test]
    fn variables_in_first_occurrence_order() {
        let id = parse_identity("(c (b a)) = (a (b c))").unwrap();
        assert_eq!(id.variables(), ['c', 'b', 'a']);
    }

    #[test]
    fn errors_carry_offsets() {
        let cases = [
            ("xy = y", 0),
            ("(x y = y", 5),
            ("(x y) x", 7),
            ("x = ", 4),
            ("x = y)", 5),
            ("x + y = y", 2),
            ("(x y z) = x", 5),
            ("x y z = x", 4),
        ];
        for (src, offset) in cases {
            match parse_identity(src) {
                Err(Error::Parse { offset: got, .. }) => assert_eq!(got, offset, "{src}"),
                other => panic!("{src}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn multi_letter_variable_is_rejected() {
        let e = parse_identity("(ab c) = c").unwrap_err();
        assert!(e.to_string().contains("single letter"));
    }
}
