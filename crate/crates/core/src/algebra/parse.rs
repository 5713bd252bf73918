//! Recursive-descent parser for the canonical string forms.
//!
//! Grammar (usual precedence, `*` and `/` left-associative):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] int | '(' ['-'] int ')'
//! atom   := int | 'q' | 'q_half' | 'U' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::scalar::ScalarQV;
use super::symbol::MellinSymbol;
use crate::error::{Error, Result};

const MAX_EXPONENT: i64 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
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

#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Var(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => return Err(Error::parse(i, format!("unexpected character `{other}`"))),
        };
        out.push((i, tok));
        i += 1;
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

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::parse(at, format!("expected {want:?}, found {t:?}"))),
            None => Err(Error::parse(at, format!("expected {want:?}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
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
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.bump();
        }
        let neg = self.peek() == Some(&Tok::Minus);
        if neg {
            self.bump();
        }
        let at = self.here();
        let e = match self.bump() {
            Some(Tok::Int(n)) => i64::try_from(n)
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or_else(|| Error::parse(at, "exponent too large"))?,
            _ => return Err(Error::parse(at, "expected integer exponent")),
        };
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(name)) => Ok(Expr::Var(name, at)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::parse(p.here(), "trailing input"));
    }
    Ok(e)
}

/// Arithmetic needed to evaluate a parsed expression.
trait Target: Sized + Clone {
    fn int(n: BigInt) -> Self;
    fn var(name: &str, at: usize) -> Result<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn pow(&self, k: i64) -> Result<Self>;
}

fn scalar_var(name: &str, at: usize) -> Result<ScalarQV> {
    match name {
        "q" => Ok(ScalarQV::q()),
        "q_half" => Ok(ScalarQV::v()),
        _ => Err(Error::parse(at, format!("unknown symbol `{name}`"))),
    }
}

impl Target for ScalarQV {
    fn int(n: BigInt) -> Self {
        ScalarQV::from_bigint(n)
    }
    fn var(name: &str, at: usize) -> Result<Self> {
        scalar_var(name, at)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, k: i64) -> Result<Self> {
        ScalarQV::pow(self, k)
    }
}

impl Target for MellinSymbol {
    fn int(n: BigInt) -> Self {
        MellinSymbol::constant(ScalarQV::from_bigint(n))
    }
    fn var(name: &str, at: usize) -> Result<Self> {
        if name == "U" {
            Ok(MellinSymbol::u_pow(1))
        } else {
            scalar_var(name, at).map(MellinSymbol::constant)
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, k: i64) -> Result<Self> {
        MellinSymbol::pow(self, k)
    }
}

fn eval<T: Target>(e: &Expr) -> Result<T> {
    Ok(match e {
        Expr::Int(n) => T::int(n.clone()),
        Expr::Var(name, at) => T::var(name, *at)?,
        Expr::Neg(a) => eval::<T>(a)?.neg(),
        Expr::Add(a, b) => eval::<T>(a)?.add(&eval::<T>(b)?),
        Expr::Sub(a, b) => eval::<T>(a)?.sub(&eval::<T>(b)?),
        Expr::Mul(a, b) => eval::<T>(a)?.mul(&eval::<T>(b)?),
        Expr::Div(a, b) => eval::<T>(a)?.div(&eval::<T>(b)?)?,
        Expr::Pow(a, k) => eval::<T>(a)?.pow(*k)?,
    })
}

pub fn parse_scalar(s: &str) -> Result<ScalarQV> {
    eval(&parse_expr(s)?)
}

pub fn parse_symbol(s: &str) -> Result<MellinSymbol> {
    eval(&parse_expr(s)?)
}
