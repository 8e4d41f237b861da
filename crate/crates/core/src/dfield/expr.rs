//! Expression grammar for field elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INTEGER)?
//! primary := INTEGER | SYMBOL | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Exponents are nonnegative integer literals;
//! chained powers such as `t^2^3` are rejected rather than guessing an
//! associativity.

use num_bigint::BigInt;

use super::poly;
use super::{ExtensionField, Field, RatFunc, Rational, RationalFunctions, Rationals};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Symbol { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { num: Box<Expr>, den: Box<Expr>, pos: usize },
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
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

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                out.push((Token::Int(digits.parse().expect("ascii digits")), pos));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(d);
                    chars.next();
                }
                out.push((Token::Ident(name), pos));
                continue;
            }
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        out.push((tok, pos));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.at += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    let pos = self.pos();
                    self.at += 1;
                    lhs = Expr::Div {
                        num: Box::new(lhs),
                        den: Box::new(self.unary()?),
                        pos,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let exp = match self.peek() {
            Some(Token::Int(n)) => match u32::try_from(n) {
                Ok(e) => e,
                Err(_) => return self.error("exponent too large"),
            },
            _ => return self.error("exponent must be a nonnegative integer literal"),
        };
        self.at += 1;
        if self.peek() == Some(&Token::Caret) {
            return self.error("chained exponents need parentheses");
        }
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Symbol { name, pos })
            }
            Some(Token::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(tok) => self.error(format!("unexpected token {tok:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser {
            tokens: tokenize(text)?,
            at: 0,
            end: text.len(),
        };
        let e = p.expr()?;
        if p.at != p.tokens.len() {
            return p.error("trailing input");
        }
        Ok(e)
    }

    /// Evaluates in a field whose symbols are resolved by [`Symbols`].
    pub fn eval<K: Symbols>(&self, k: &K) -> Result<K::Elem> {
        Ok(match self {
            Expr::Int(n) => k.from_rational(&Rational::from_integer(n.clone())),
            Expr::Symbol { name, pos } => k.symbol(name, *pos)?,
            Expr::Neg(a) => k.neg(&a.eval(k)?),
            Expr::Add(a, b) => k.add(&a.eval(k)?, &b.eval(k)?),
            Expr::Sub(a, b) => k.sub(&a.eval(k)?, &b.eval(k)?),
            Expr::Mul(a, b) => k.mul(&a.eval(k)?, &b.eval(k)?),
            Expr::Div { num, den, .. } => k.div(&num.eval(k)?, &den.eval(k)?)?,
            Expr::Pow(a, e) => k.pow(&a.eval(k)?, *e),
        })
    }

    /// Evaluates as a polynomial in `generator` with coefficients in `F`.
    /// Division is allowed only by nonzero elements of `F`.
    pub fn eval_polynomial(&self, generator: &str) -> Result<Vec<RatFunc>> {
        let f = RationalFunctions;
        Ok(match self {
            Expr::Int(n) => poly::trim(&f, vec![RatFunc::constant(Rational::from_integer(n.clone()))]),
            Expr::Symbol { name, .. } if name == generator => vec![RatFunc::zero(), RatFunc::one()],
            Expr::Symbol { name, pos } => vec![f.symbol(name, *pos)?],
            Expr::Neg(a) => poly::neg(&f, &a.eval_polynomial(generator)?),
            Expr::Add(a, b) => poly::add(&f, &a.eval_polynomial(generator)?, &b.eval_polynomial(generator)?),
            Expr::Sub(a, b) => poly::sub(&f, &a.eval_polynomial(generator)?, &b.eval_polynomial(generator)?),
            Expr::Mul(a, b) => poly::mul(&f, &a.eval_polynomial(generator)?, &b.eval_polynomial(generator)?),
            Expr::Div { num, den, pos } => {
                let d = den.eval_polynomial(generator)?;
                match d.as_slice() {
                    [] => return Err(Error::DivisionByZero),
                    [c] => poly::scale(&f, &num.eval_polynomial(generator)?, &c.recip()?),
                    _ => {
                        return Err(Error::Syntax {
                            pos: *pos,
                            msg: format!("cannot divide by a polynomial in `{generator}`"),
                        })
                    }
                }
            }
            Expr::Pow(a, e) => {
                let base = a.eval_polynomial(generator)?;
                (0..*e).fold(vec![RatFunc::one()], |acc, _| poly::mul(&f, &acc, &base))
            }
        })
    }
}

/// Symbol resolution for expression evaluation.
pub trait Symbols: Field {
    fn symbol(&self, name: &str, pos: usize) -> Result<Self::Elem>;
}

impl Symbols for Rationals {
    fn symbol(&self, name: &str, _pos: usize) -> Result<Rational> {
        Err(Error::GeneratorInBaseContext(name.to_string()))
    }
}

impl Symbols for RationalFunctions {
    fn symbol(&self, name: &str, _pos: usize) -> Result<RatFunc> {
        if name == "t" {
            Ok(RatFunc::t())
        } else {
            Err(Error::GeneratorInBaseContext(name.to_string()))
        }
    }
}

impl Symbols for ExtensionField {
    fn symbol(&self, name: &str, pos: usize) -> Result<Self::Elem> {
        if name == "t" {
            Ok(self.embed(&RatFunc::t()))
        } else if !self.generator_name().is_empty() && name == self.generator_name() {
            Ok(self.generator())
        } else {
            Err(Error::Syntax {
                pos,
                msg: format!("unknown symbol `{name}`"),
            })
        }
    }
}

/// Parses `text` into a canonical element of the field context `k`.
pub fn parse_element<K: Symbols>(k: &K, text: &str) -> Result<K::Elem> {
    Expr::parse(text)?.eval(k)
}
