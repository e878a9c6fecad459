//! Recursive-descent parser for field and algebra literals.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! The meaning of identifiers, products and quotients is supplied by a
//! [`LiteralContext`], so the same parser serves `FieldElement` literals
//! such as `(t^2+1)/(t-1)` and algebra literals such as `y*x^2 - x`.

use num::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset} in {input:?}: {message}")]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

pub trait LiteralContext {
    type Value: Clone;

    fn integer(&self, n: BigInt) -> Result<Self::Value, String>;
    fn symbol(&self, name: &str) -> Result<Self::Value, String>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value, String>;
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let err = |offset, message: &str| ParseError {
        input: input.to_string(),
        offset,
        message: message.to_string(),
    };
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(input[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(input[start..i].to_string())));
                continue;
            }
            _ => return Err(err(i, &format!("unexpected character {c:?}"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, C: LiteralContext> {
    input: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    ctx: &'a C,
}

impl<C: LiteralContext> Parser<'_, C> {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.input.len(), |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { input: self.input.to_string(), offset: self.offset(), message: message.into() }
    }

    fn lift<T>(&self, r: Result<T, String>) -> Result<T, ParseError> {
        r.map_err(|m| self.error(m))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<C::Value, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (Token::Plus | Token::Minus)) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            acc = match op {
                Token::Plus => self.lift(self.ctx.add(&acc, &rhs))?,
                _ => self.lift(self.ctx.sub(&acc, &rhs))?,
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<C::Value, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ (Token::Star | Token::Slash)) = self.peek().cloned() {
            self.bump();
            let start = self.pos;
            let rhs = self.unary()?;
            acc = match op {
                Token::Star => self.lift(self.ctx.mul(&acc, &rhs))?,
                _ => self.ctx.div(&acc, &rhs).map_err(|m| ParseError {
                    input: self.input.to_string(),
                    offset: self.tokens[start].0,
                    message: m,
                })?,
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<C::Value, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                let v = self.unary()?;
                self.lift(self.ctx.neg(&v))
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<C::Value, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let exp = match self.bump() {
            Some(Token::Int(n)) => n,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a nonnegative integer exponent"));
            }
        };
        let exp: u32 = exp
            .try_into()
            .map_err(|_| self.error("exponent too large"))?;
        let mut acc = self.lift(self.ctx.integer(BigInt::from(1)))?;
        for _ in 0..exp {
            acc = self.lift(self.ctx.mul(&acc, &base))?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<C::Value, ParseError> {
        match self.bump() {
            Some(Token::Int(n)) => self.lift(self.ctx.integer(n)),
            Some(Token::Ident(name)) => {
                self.pos -= 1;
                let v = self.lift(self.ctx.symbol(&name))?;
                self.pos += 1;
                Ok(v)
            }
            Some(Token::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(v),
                    _ => {
                        self.pos -= 1;
                        Err(self.error("expected ')'"))
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                Err(self.error("expected a number, identifier or '('"))
            }
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parse `input` with the semantics of `ctx`.
pub fn parse<C: LiteralContext>(ctx: &C, input: &str) -> Result<C::Value, ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { input, tokens, pos: 0, ctx };
    if parser.tokens.is_empty() {
        return Err(parser.error("empty literal"));
    }
    let v = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(v)
}
