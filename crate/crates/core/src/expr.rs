//! Text syntax for series.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor (("*" | "/") factor)*
//! factor   := "-" factor | base ("^" nat)?
//! base     := rational | var | "(" expr ")" | "inv" "(" expr ")"
//! rational := int ("/" nat)?
//! var      := "x" nat | ident
//! ```
//!
//! `a / b` divides coefficients when `b` is built from literals only and
//! multiplies by the power-series reciprocal of `b` otherwise. An integer
//! directly after `/` is never widened into a fraction, so `x1/2/3` is
//! `x1/6`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::series::{Series, SeriesError};

/// Byte range of a subexpression plus its 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {span}: {message}")]
    Syntax { message: String, span: Span },
    #[error("unknown variable `{name}` at {span}")]
    UnknownVariable { name: String, span: Span },
    #[error("exponent at {span} must be a non-negative integer literal")]
    BadExponent { span: Span },
    #[error("empty expression")]
    Empty,
    #[error("division by zero at {span}")]
    DivisionByZero { span: Span },
    #[error("`{text}` at {span} has zero constant term and cannot be inverted")]
    NotInvertible { text: String, span: Span },
    #[error("invalid variable names: {0}")]
    BadNames(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, ExprError>;

/// Names of the variables in scope. `x1 .. xn` always work; declared names
/// are accepted alongside them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variables {
    names: Vec<String>,
}

impl Variables {
    pub fn standard(n: usize) -> Self {
        Variables {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn named(names: Vec<String>) -> Result<Self> {
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || name == "inv" {
                return Err(ExprError::BadNames(format!("`{name}` is not a valid name")));
            }
            if names[..i].contains(name) {
                return Err(ExprError::BadNames(format!("`{name}` declared twice")));
            }
            if let Some(k) = standard_index(name) {
                if k != i {
                    return Err(ExprError::BadNames(format!(
                        "`{name}` would shadow the standard name of another variable"
                    )));
                }
            }
        }
        Ok(Variables { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(i);
        }
        standard_index(name).filter(|&i| i < self.names.len())
    }
}

/// `x<k>` with `k >= 1` maps to zero-based `k - 1`.
fn standard_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse::<usize>().ok().map(|k| k - 1)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Rational(Rational),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Group(Box<Expr>),
    Inv(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
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

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
        }
    }
}

struct Lexed {
    tok: Tok,
    span: Span,
}

fn span_at(src: &str, start: usize, end: usize) -> Span {
    let before = &src[..start];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(start, |p| start - p - 1) + 1;
    Span {
        start,
        end,
        line,
        column,
    }
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if b.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(src[start..i].parse().expect("ascii digits"))
        } else if b.is_ascii_alphabetic() || b == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else {
            i += 1;
            match b {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                _ => {
                    let ch = src[start..].chars().next().expect("non-empty");
                    return Err(ExprError::Syntax {
                        message: format!("unexpected character `{ch}`"),
                        span: span_at(src, start, start + ch.len_utf8()),
                    });
                }
            }
        };
        out.push(Lexed {
            tok,
            span: span_at(src, start, i),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Lexed>,
    pos: usize,
    vars: &'a Variables,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|l| &l.tok)
    }

    fn next_span(&self) -> Span {
        match self.toks.get(self.pos) {
            Some(l) => l.span,
            None => span_at(self.src, self.src.len(), self.src.len()),
        }
    }

    fn bump(&mut self) -> Lexed {
        let l = &self.toks[self.pos];
        self.pos += 1;
        Lexed {
            tok: l.tok.clone(),
            span: l.span,
        }
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        };
        Err(ExprError::Syntax {
            message: format!("expected {expected}, found {found}"),
            span: self.next_span(),
        })
    }

    fn join(&self, a: Span, b: Span) -> Span {
        Span {
            end: b.end,
            ..a
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => ExprKind::Add,
                Some(Tok::Minus) => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = self.join(lhs.span, rhs.span);
            lhs = Expr {
                kind: op(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor(true)?;
        loop {
            let (op, widen): (fn(Box<Expr>, Box<Expr>) -> ExprKind, bool) = match self.peek() {
                Some(Tok::Star) => (ExprKind::Mul, true),
                Some(Tok::Slash) => (ExprKind::Div, false),
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor(widen)?;
            let span = self.join(lhs.span, rhs.span);
            lhs = Expr {
                kind: op(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    /// `widen` allows `int / nat` to be read as one rational literal.
    fn factor(&mut self, widen: bool) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            let start = self.bump().span;
            let inner = self.factor(widen)?;
            let span = self.join(start, inner.span);
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        let base = self.base(widen)?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let span = self.next_span();
            let exponent = match self.peek() {
                Some(Tok::Int(v)) => u32::try_from(v).map_err(|_| ExprError::BadExponent { span })?,
                _ => return Err(ExprError::BadExponent { span }),
            };
            self.bump();
            let span = self.join(base.span, span);
            return Ok(Expr {
                kind: ExprKind::Pow(Box::new(base), exponent),
                span,
            });
        }
        Ok(base)
    }

    fn base(&mut self, widen: bool) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(numer)) => {
                let first = self.bump().span;
                if widen && self.peek() == Some(&Tok::Slash) {
                    if let Some(Tok::Int(denom)) = self.peek_at(1).cloned() {
                        self.bump();
                        let last = self.bump().span;
                        let span = self.join(first, last);
                        if denom.is_zero() {
                            return Err(ExprError::DivisionByZero { span: last });
                        }
                        return Ok(Expr {
                            kind: ExprKind::Rational(Rational::new(numer, denom)),
                            span,
                        });
                    }
                }
                Ok(Expr {
                    kind: ExprKind::Rational(Rational::from_integer(numer)),
                    span: first,
                })
            }
            Some(Tok::Ident(name)) if name == "inv" && self.peek_at(1) == Some(&Tok::LParen) => {
                let start = self.bump().span;
                self.bump();
                let inner = self.expr()?;
                let end = self.close()?;
                Ok(Expr {
                    kind: ExprKind::Inv(Box::new(inner)),
                    span: self.join(start, end),
                })
            }
            Some(Tok::Ident(name)) => {
                let span = self.bump().span;
                match self.vars.lookup(&name) {
                    Some(var) => Ok(Expr {
                        kind: ExprKind::Var(var),
                        span,
                    }),
                    None => Err(ExprError::UnknownVariable { name, span }),
                }
            }
            Some(Tok::LParen) => {
                let start = self.bump().span;
                let inner = self.expr()?;
                let end = self.close()?;
                Ok(Expr {
                    kind: ExprKind::Group(Box::new(inner)),
                    span: self.join(start, end),
                })
            }
            _ => self.error("a number, a variable or `(`"),
        }
    }

    fn close(&mut self) -> Result<Span> {
        match self.peek() {
            Some(Tok::RParen) => Ok(self.bump().span),
            _ => self.error("`)`"),
        }
    }
}

/// Parses `src` against the variables in scope.
pub fn parse_expression(src: &str, vars: &Variables) -> Result<Expr> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut parser = Parser {
        src,
        toks,
        pos: 0,
        vars,
    };
    let expr = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return parser.error("an operator or end of input");
    }
    Ok(expr)
}

/// The value of `expr` if it is built from literals alone.
fn literal_value(expr: &Expr) -> Option<Rational> {
    match &expr.kind {
        ExprKind::Rational(r) => Some(r.clone()),
        ExprKind::Var(_) | ExprKind::Inv(_) => None,
        ExprKind::Neg(a) => literal_value(a).map(|v| -v),
        ExprKind::Group(a) => literal_value(a),
        ExprKind::Pow(a, e) => literal_value(a).map(|v| num_traits::pow(v, *e as usize)),
        ExprKind::Add(a, b) => Some(literal_value(a)? + literal_value(b)?),
        ExprKind::Sub(a, b) => Some(literal_value(a)? - literal_value(b)?),
        ExprKind::Mul(a, b) => Some(literal_value(a)? * literal_value(b)?),
        ExprKind::Div(a, b) => {
            let d = literal_value(b)?;
            if d.is_zero() {
                None
            } else {
                Some(literal_value(a)? / d)
            }
        }
    }
}

/// Evaluates `expr` as a series in `n` variables truncated at `order`.
///
/// At order 0 a variable is the zero series.
pub fn lower(expr: &Expr, src: &str, n: usize, order: u32) -> Result<Series> {
    let lowered = match &expr.kind {
        ExprKind::Rational(r) => Series::constant(r.clone(), n, order),
        ExprKind::Var(var) => {
            if *var >= n {
                return Err(SeriesError::IndexOutOfRange { index: *var, nvars: n }.into());
            }
            if order == 0 {
                Series::zero(n, 0)
            } else {
                Series::variable(*var, n, order)?
            }
        }
        ExprKind::Add(a, b) => lower(a, src, n, order)?.checked_add(&lower(b, src, n, order)?)?,
        ExprKind::Sub(a, b) => lower(a, src, n, order)?.checked_sub(&lower(b, src, n, order)?)?,
        ExprKind::Mul(a, b) => lower(a, src, n, order)?.checked_mul(&lower(b, src, n, order)?)?,
        ExprKind::Div(a, b) => {
            let numer = lower(a, src, n, order)?;
            match literal_value(b) {
                Some(d) if !d.is_zero() => numer.scale(&d.recip()),
                _ if is_literal(b) => return Err(ExprError::DivisionByZero { span: b.span }),
                _ => numer.checked_mul(&invert(b, src, n, order)?)?,
            }
        }
        ExprKind::Neg(a) => lower(a, src, n, order)?.neg(),
        ExprKind::Pow(a, e) => lower(a, src, n, order)?.pow(*e),
        ExprKind::Group(a) => lower(a, src, n, order)?,
        ExprKind::Inv(a) => invert(a, src, n, order)?,
    };
    Ok(lowered)
}

fn is_literal(expr: &Expr) -> bool {
    match &expr.kind {
        ExprKind::Rational(_) => true,
        ExprKind::Var(_) | ExprKind::Inv(_) => false,
        ExprKind::Neg(a) | ExprKind::Group(a) | ExprKind::Pow(a, _) => is_literal(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            is_literal(a) && is_literal(b)
        }
    }
}

fn invert(expr: &Expr, src: &str, n: usize, order: u32) -> Result<Series> {
    lower(expr, src, n, order)?
        .reciprocal()
        .map_err(|_| ExprError::NotInvertible {
            text: src[expr.span.start..expr.span.end].to_string(),
            span: expr.span,
        })
}

/// Parses and lowers in one go.
pub fn parse_series(src: &str, vars: &Variables, order: u32) -> Result<Series> {
    let expr = parse_expression(src, vars)?;
    lower(&expr, src, vars.len(), order)
}

/// Canonical text form: terms in graded-lexicographic order, `p/q`
/// coefficients, `*` between factors. Parses back to the same series.
pub fn format_series(series: &Series, vars: &Variables) -> String {
    let mut out = String::new();
    for (k, c) in series.terms() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if k.is_zero() || !magnitude.is_one() {
            factors.push(magnitude.to_string());
        }
        for (var, &e) in k.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars.name(var).to_string()),
                _ => factors.push(format!("{}^{e}", vars.name(var))),
            }
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
