//! Arithmetic over hyperbolic literals.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | primary
//! primary := NUMBER ['h'] | FUNC '(' expr ')' | '(' expr ')'
//! FUNC    := exp | conj | mod
//! ```
//!
//! `h` only appears as a literal suffix: `2h`, `1.5h`, `1e-3h`.

use thiserror::Error;

use crate::number::{AlgebraError, HyperbolicNumber, DEFAULT_TOL};
use crate::polar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("result is not finite")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    HNum(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, EvalError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut k = i + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    i = k;
                }
            }
            let text = &src[start..i];
            let v: f64 = text.parse().map_err(|_| EvalError::Parse {
                pos: start,
                msg: format!("bad number {text:?}"),
            })?;
            if i < bytes.len() && bytes[i] == b'h' {
                i += 1;
                out.push((start, Tok::HNum(v)));
            } else {
                out.push((start, Tok::Num(v)));
            }
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else {
            let t = match c {
                '+' | '-' | '*' | '/' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(EvalError::Parse {
                        pos: start,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            };
            i += c.len_utf8();
            out.push((start, t));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, EvalError> {
        Err(EvalError::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<HyperbolicNumber, EvalError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<HyperbolicNumber, EvalError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                acc * rhs
            } else {
                acc.divide(rhs, DEFAULT_TOL)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<HyperbolicNumber, EvalError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), EvalError> {
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            self.err("expected ')'")
        }
    }

    fn primary(&mut self) -> Result<HyperbolicNumber, EvalError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(HyperbolicNumber::new(v, 0.0)?)
            }
            Tok::HNum(v) => {
                self.pos += 1;
                Ok(HyperbolicNumber::new(0.0, v)?)
            }
            Tok::LParen => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect_rparen()?;
                Ok(v)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if self.peek() != Some(&Tok::LParen) {
                    return self.err(format!("expected '(' after {name}"));
                }
                self.pos += 1;
                let arg = self.expr()?;
                self.expect_rparen()?;
                match name.as_str() {
                    "exp" => polar::exp(arg).map_err(|_| EvalError::Overflow),
                    "conj" => Ok(arg.conjugate()),
                    "mod" => Ok(HyperbolicNumber::raw(arg.modulus(), 0.0)),
                    _ => Err(EvalError::Parse {
                        pos: self.offset(),
                        msg: format!("unknown function {name:?}"),
                    }),
                }
            }
            Tok::Op(c) => self.err(format!("unexpected operator {c:?}")),
            Tok::RParen => self.err("unexpected ')'"),
        }
    }
}

pub fn evaluate(src: &str) -> Result<HyperbolicNumber, EvalError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    if !v.is_finite() {
        return Err(EvalError::Overflow);
    }
    Ok(v)
}
