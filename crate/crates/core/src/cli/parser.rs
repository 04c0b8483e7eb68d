//! Operator-expression DSL.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | IDENT | FUNC '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Identifiers: raw generators `x1 d1 R1`, scalars `i sqrt2 mu1`, and the
//! registry names (`J+`, `K-`, `E1`, `A+_1`, `D1`, `Q_susy`, ...). A `+` or
//! `-` directly after `A`, `At`, `B`, `J`, `K` or `F` belongs to the name, so
//! write binary operators with surrounding spaces. Functions: `comm`,
//! `acomm`, `adjoint`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::builders::{BuildError, OperatorName, Registry};
use crate::opalg::{OpError, OperatorElement};
use crate::scalars::{BaseNumber, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdent { pos: usize, name: String },
    #[error("`{name}` at {pos} needs dimension {needed}, have {dims}")]
    IndexOutOfRange {
        pos: usize,
        name: String,
        needed: usize,
        dims: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("negative power of a non-invertible operator")]
    NotInvertible,
    #[error("division by a non-invertible operator")]
    BadDivision,
}

impl From<OpError> for EvalError {
    fn from(e: OpError) -> Self {
        match e {
            OpError::NotInvertible => EvalError::NotInvertible,
            other => EvalError::Build(other.into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Comm,
    Acomm,
    Adjoint,
}

impl Func {
    fn name(&self) -> &'static str {
        match self {
            Func::Comm => "comm",
            Func::Acomm => "acomm",
            Func::Adjoint => "adjoint",
        }
    }

    fn arity(&self) -> usize {
        match self {
            Func::Comm | Func::Acomm => 2,
            Func::Adjoint => 1,
        }
    }
}

/// Leaves of the expression tree, resolved against a dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Int(BigInt),
    X(usize),
    D(usize),
    R(usize),
    Mu(usize),
    I,
    Sqrt2,
    Named(OperatorName),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Vec<Expr>),
}

impl Expr {
    /// Evaluates in the registry's dimension and parameter mode.
    pub fn eval(&self, reg: &Registry) -> Result<OperatorElement, EvalError> {
        Ok(match self {
            Expr::Atom(a) => match a {
                Atom::Int(n) => reg.c(Scalar::from_rational(reg.dims(), BigRational::from_integer(n.clone()))),
                Atom::X(i) => reg.x(*i),
                Atom::D(i) => reg.d(*i),
                Atom::R(i) => reg.r(*i),
                Atom::Mu(i) => reg.c(reg.mu(*i)),
                Atom::I => reg.c(reg.scalar(BaseNumber::i())),
                Atom::Sqrt2 => reg.c(reg.scalar(BaseNumber::sqrt2())),
                Atom::Named(n) => reg.build(*n)?,
            },
            Expr::Neg(e) => -e.eval(reg)?,
            Expr::Add(a, b) => a.eval(reg)?.try_add(&b.eval(reg)?)?,
            Expr::Sub(a, b) => a.eval(reg)?.try_sub(&b.eval(reg)?)?,
            Expr::Mul(a, b) => a.eval(reg)?.try_mul(&b.eval(reg)?)?,
            Expr::Div(a, b) => {
                let inv = b.eval(reg)?.inverse().map_err(|_| EvalError::BadDivision)?;
                a.eval(reg)?.try_mul(&inv)?
            }
            Expr::Pow(e, n) => {
                let base = e.eval(reg)?;
                if *n >= 0 {
                    base.pow(*n as u32)
                } else {
                    base.inverse()?.pow(n.unsigned_abs())
                }
            }
            Expr::Call(f, args) => {
                let vals = args.iter().map(|a| a.eval(reg)).collect::<Result<Vec<_>, _>>()?;
                match f {
                    Func::Comm => vals[0].commutator(&vals[1])?,
                    Func::Acomm => vals[0].anticommutator(&vals[1])?,
                    Func::Adjoint => vals[0].adjoint(),
                }
            }
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(n) => write!(f, "{n}"),
            Atom::X(i) => write!(f, "x{i}"),
            Atom::D(i) => write!(f, "d{i}"),
            Atom::R(i) => write!(f, "R{i}"),
            Atom::Mu(i) => write!(f, "mu{i}"),
            Atom::I => write!(f, "i"),
            Atom::Sqrt2 => write!(f, "sqrt2"),
            Atom::Named(n) => write!(f, "{}", n.ident()),
        }
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized rendering that reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(e, n) => write!(f, "({e})^{n}"),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
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
    Comma,
}

const SIGNED_BASES: &[&str] = &["A", "At", "B", "J", "K", "F"];

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        let start = k;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                k += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            ',' => out.push((start, Tok::Comma)),
            '0'..='9' => {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n: BigInt = input[start..k].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                    k += 1;
                }
                // A sign glued to a signed base (optionally followed by `_index`) is part of the name.
                if SIGNED_BASES.contains(&&input[start..k]) &&k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                    if k < bytes.len() && bytes[k] == b'_' {
                        k += 1;
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                    }
                }
                out.push((start, Tok::Ident(input[start..k].to_string())));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    k: usize,
    end: usize,
    dims: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.k += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.k += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.k += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.k += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.k += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.k += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.k += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.k += 1;
            true
        } else {
            false
        };
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        let Ok(n) = i32::try_from(n) else {
            return self.err("exponent too large");
        };
        self.k += 1;
        Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.k += 1;
                Ok(Expr::Atom(Atom::Int(n)))
            }
            Some(Tok::LParen) => {
                self.k += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.k += 1;
                let func = match name.as_str() {
                    "comm" => Some(Func::Comm),
                    "acomm" => Some(Func::Acomm),
                    "adjoint" => Some(Func::Adjoint),
                    _ => None,
                };
                if let Some(func) = func {
                    self.expect(Tok::LParen, "`(`")?;
                    let mut args = vec![self.expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.k += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    if args.len() != func.arity() {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: format!("{} takes {} argument(s)", func.name(), func.arity()),
                        });
                    }
                    return Ok(Expr::Call(func, args));
                }
                Ok(Expr::Atom(self.resolve(&name, pos)?))
            }
            Some(_) => self.err("expected an operand"),
            None => self.err("unexpected end of input"),
        }
    }

    fn resolve(&self, name: &str, pos: usize) -> Result<Atom, ParseError> {
        let indexed = |prefix: &str| -> Option<usize> {
            let rest = name.strip_prefix(prefix)?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
                return None;
            }
            rest.parse().ok()
        };
        let check = |needed: usize| -> Result<(), ParseError> {
            if needed > self.dims {
                Err(ParseError::IndexOutOfRange {
                    pos,
                    name: name.to_string(),
                    needed,
                    dims: self.dims,
                })
            } else {
                Ok(())
            }
        };
        let atom = match name {
            "i" => Atom::I,
            "sqrt2" => Atom::Sqrt2,
            _ => {
                if let Some(i) = indexed("x") {
                    Atom::X(i)
                } else if let Some(i) = indexed("d") {
                    Atom::D(i)
                } else if let Some(i) = indexed("R") {
                    Atom::R(i)
                } else if let Some(i) = indexed("mu") {
                    Atom::Mu(i)
                } else if let Some(n) = OperatorName::from_ident(name, self.dims) {
                    Atom::Named(n)
                } else {
                    return Err(ParseError::UnknownIdent {
                        pos,
                        name: name.to_string(),
                    });
                }
            }
        };
        match &atom {
            Atom::X(i) | Atom::D(i) | Atom::R(i) | Atom::Mu(i) => check(*i)?,
            Atom::Named(n) => check(n.max_var())?,
            _ => {}
        }
        Ok(atom)
    }
}

/// Parses an expression for the given dimension.
pub fn parse(input: &str, dims: usize) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        k: 0,
        end: input.len(),
        dims,
    };
    let e = p.expr()?;
    if p.k != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
