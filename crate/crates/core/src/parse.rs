//! Polynomial parser.
//!
//! Grammar (explicit `*` required, `^` with non-negative integer exponents):
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := primary ('^' UINT)*
//! primary := INT | VAR | '(' expr ')'
//! ```
//!
//! Variables are resolved against the ambient space (`x0..`, `y0..`, ...).
//! The optional leading sign is the one extension over the bare grammar: the
//! canonical printer emits polynomials whose leading term is negative, and
//! parse/print must round-trip.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Num;

use crate::poly::{Budget, PolyError, Polynomial, RawPoly};
use crate::space::AmbientSpace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    Homogeneity(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => {
                write!(f, "syntax error at {}:{}: {}", self.line, self.col, msg)
            }
            ParseErrorKind::UnknownVariable(name) => write!(
                f,
                "unknown variable `{}` at {}:{}",
                name, self.line, self.col
            ),
            ParseErrorKind::Homogeneity(msg) => {
                write!(f, "not multihomogeneous ({})", msg)
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: u32,
    col: u32,
}

fn err(line: u32, col: u32, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

fn syntax(line: u32, col: u32, msg: impl Into<String>) -> ParseError {
    err(line, col, ParseErrorKind::Syntax(msg.into()))
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                chars.next();
                col += 1;
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(Token {
                    tok,
                    line: tl,
                    col: tc,
                });
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let value = BigInt::from_str_radix(&digits, 10)
                    .map_err(|_| syntax(tl, tc, "invalid integer literal"))?;
                out.push(Token {
                    tok: Tok::Int(value),
                    line: tl,
                    col: tc,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        name.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Ident(name),
                    line: tl,
                    col: tc,
                });
            }
            other => {
                return Err(syntax(
                    tl,
                    tc,
                    alloc::format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    space: &'a AmbientSpace,
    tokens: Vec<Token>,
    pos: usize,
    depth: u32,
    budget: Budget,
}

const MAX_DEPTH: u32 = 200;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (u32, u32) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn lift(&self, e: PolyError, line: u32, col: u32) -> ParseError {
        match e {
            PolyError::ResourceLimit {
                what,
                limit,
                reached,
            } => syntax(
                line,
                col,
                alloc::format!("expression too large: {what} reached {reached}, cap {limit}"),
            ),
            other => syntax(line, col, other.to_string()),
        }
    }

    fn expr(&mut self) -> Result<RawPoly, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let (l, c) = self.here();
            return Err(syntax(l, c, "expression nested too deeply"));
        }
        let mut negate_first = false;
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Minus) => {
                self.next();
                negate_first = true;
            }
            Some(Tok::Plus) => {
                self.next();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RawPoly, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek().map(|t| t.tok.clone()) {
            let (l, c) = self.here();
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f, &self.budget).map_err(|e| self.lift(e, l, c))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly, ParseError> {
        let mut base = self.primary()?;
        while let Some(Tok::Caret) = self.peek().map(|t| t.tok.clone()) {
            let (l, c) = self.here();
            self.next();
            let e = match self.next() {
                Some(Token {
                    tok: Tok::Int(n),
                    line,
                    col,
                }) => u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= u16::MAX as u32)
                    .ok_or_else(|| syntax(line, col, "exponent out of range"))?,
                Some(t) => {
                    return Err(syntax(
                        t.line,
                        t.col,
                        "expected a non-negative integer exponent after `^`",
                    ))
                }
                None => {
                    let (l2, c2) = self.here();
                    return Err(syntax(l2, c2, "expected an exponent after `^`"));
                }
            };
            base = base
                .pow(e, &self.budget)
                .map_err(|er| self.lift(er, l, c))?;
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RawPoly, ParseError> {
        let nvars = self.space.num_vars();
        match self.next() {
            Some(Token {
                tok: Tok::Int(n), ..
            }) => Ok(RawPoly::constant(nvars, n)),
            Some(Token {
                tok: Tok::Ident(name),
                line,
                col,
            }) => match self.space.resolve_var(&name) {
                Some(v) => Ok(RawPoly::variable(nvars, v)),
                None => Err(err(line, col, ParseErrorKind::UnknownVariable(name))),
            },
            Some(Token {
                tok: Tok::LParen,
                line,
                col,
            }) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token {
                        tok: Tok::RParen, ..
                    }) => Ok(inner),
                    Some(t) => Err(syntax(t.line, t.col, "expected `)`")),
                    None => Err(syntax(line, col, "unclosed `(`")),
                }
            }
            Some(t) => Err(syntax(
                t.line,
                t.col,
                alloc::format!("expected an integer, variable or `(`, found {:?}", t.tok),
            )),
            None => {
                let (l, c) = self.here();
                Err(syntax(l, c, "unexpected end of input"))
            }
        }
    }
}

/// Parse `input` as a multihomogeneous polynomial on `space`.
pub fn parse_polynomial(space: &AmbientSpace, input: &str) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(syntax(1, 1, "empty input"));
    }
    let mut p = Parser {
        space,
        tokens,
        pos: 0,
        depth: 0,
        budget: Budget::default(),
    };
    let raw = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(syntax(
            t.line,
            t.col,
            alloc::format!("unexpected trailing {:?}", t.tok),
        ));
    }
    Polynomial::from_raw(space.clone(), raw)
        .map_err(|e| err(1, 1, ParseErrorKind::Homogeneity(e.to_string())))
}
