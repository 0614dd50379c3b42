//! Edge-probability expressions: finite sums of monomials
//! `q · n^a · (log n)^b · (log log n)^c` with rational `q`, `a` and integer
//! `b`, `c`.
//!
//! Any two such expressions are comparable asymptotically by their dominant
//! monomials, which is all the regime classifier needs.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{CheckedAdd, CheckedMul, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownIdentifier(String),
    /// A construct outside the supported logarithmico-exponential fragment.
    Unsupported(String),
    Overflow,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier {s:?}"),
            ParseErrorKind::Unsupported(s) => write!(f, "outside supported L-fragment: {s}"),
            ParseErrorKind::Overflow => f.write_str("rational overflow"),
        }
    }
}

/// `coef · n^n_exp · (log n)^log_exp · (log log n)^loglog_exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coef: Rational,
    pub n_exp: Rational,
    pub log_exp: Rational,
    pub loglog_exp: Rational,
}

impl Monomial {
    pub fn constant(c: Rational) -> Self {
        Monomial { coef: c, n_exp: Rational::zero(), log_exp: Rational::zero(), loglog_exp: Rational::zero() }
    }

    /// Growth key; a larger key dominates.
    pub fn key(&self) -> (Rational, Rational, Rational) {
        (self.n_exp, self.log_exp, self.loglog_exp)
    }

    fn value_at(&self, n: f64) -> f64 {
        let ln = libm::log(n);
        to_f64(&self.coef)
            * libm::pow(n, to_f64(&self.n_exp))
            * libm::pow(ln, to_f64(&self.log_exp))
            * libm::pow(libm::log(ln), to_f64(&self.loglog_exp))
    }
}

pub(crate) fn to_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Asymptotic relation of `a` to `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsymptoticOrder {
    /// `a ≪ b`
    Less,
    /// `a ≫ b`
    Greater,
    /// `a ∼ c·b`
    Equivalent(Rational),
}

/// Limit of an expression as `n → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    PosInf,
    NegInf,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(q) => write!(f, "{q}"),
            Limit::PosInf => f.write_str("+inf"),
            Limit::NegInf => f.write_str("-inf"),
        }
    }
}

/// `A · (log n + l · log log n + c) / n^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowForm {
    pub a: Rational,
    pub l: Rational,
    pub c: Rational,
    pub d: Rational,
}

/// Numeric value of an expression at a finite `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub raw: f64,
    /// `raw` clamped into `[0, 1]`.
    pub value: f64,
    pub clamped: bool,
}

/// A normalized sum of monomials: sorted by decreasing growth, one monomial
/// per growth key, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EdgeProbExpr {
    terms: Vec<Monomial>,
}

type Fallible<T> = core::result::Result<T, ParseErrorKind>;

fn checked_mul(a: &Rational, b: &Rational) -> Fallible<Rational> {
    a.checked_mul(b).ok_or(ParseErrorKind::Overflow)
}

fn checked_add(a: &Rational, b: &Rational) -> Fallible<Rational> {
    a.checked_add(b).ok_or(ParseErrorKind::Overflow)
}

fn checked_pow(q: &Rational, e: i32) -> Fallible<Rational> {
    let base = if e < 0 {
        if q.is_zero() {
            return Err(ParseErrorKind::Unsupported("zero raised to a negative power".into()));
        }
        q.recip()
    } else {
        *q
    };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc = checked_mul(&acc, &base)?;
    }
    Ok(acc)
}

impl EdgeProbExpr {
    pub fn zero() -> Self {
        EdgeProbExpr { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms(alloc::vec![Monomial::constant(c)]).expect("single term cannot overflow")
    }

    pub fn monomial(coef: Rational, n_exp: Rational, log_exp: Rational, loglog_exp: Rational) -> Self {
        Self::from_terms(alloc::vec![Monomial { coef, n_exp, log_exp, loglog_exp }]).expect("single term cannot overflow")
    }

    pub fn n() -> Self {
        Self::monomial(Rational::one(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn log_n() -> Self {
        Self::monomial(Rational::one(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn loglog_n() -> Self {
        Self::monomial(Rational::one(), Rational::zero(), Rational::zero(), Rational::one())
    }

    fn from_terms(mut terms: Vec<Monomial>) -> Fallible<Self> {
        terms.sort_by(|a, b| b.key().cmp(&a.key()));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.key() == t.key() => last.coef = checked_add(&last.coef, &t.coef)?,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        Ok(EdgeProbExpr { terms: out })
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The asymptotically largest monomial.
    pub fn dominant(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    /// `Some(c)` when the expression is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.key() == (Rational::zero(), Rational::zero(), Rational::zero()) => Some(t.coef),
            _ => None,
        }
    }

    fn try_add(&self, other: &Self) -> Fallible<Self> {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    fn try_neg(&self) -> Self {
        EdgeProbExpr { terms: self.terms.iter().map(|t| Monomial { coef: -t.coef, ..t.clone() }).collect() }
    }

    fn try_mul(&self, other: &Self) -> Fallible<Self> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Monomial {
                    coef: checked_mul(&a.coef, &b.coef)?,
                    n_exp: checked_add(&a.n_exp, &b.n_exp)?,
                    log_exp: checked_add(&a.log_exp, &b.log_exp)?,
                    loglog_exp: checked_add(&a.loglog_exp, &b.loglog_exp)?,
                });
            }
        }
        Self::from_terms(terms)
    }

    fn try_div(&self, other: &Self) -> Fallible<Self> {
        match other.terms.as_slice() {
            [] => Err(ParseErrorKind::Unsupported("division by zero".into())),
            [m] => {
                let inv = Monomial {
                    coef: m.coef.recip(),
                    n_exp: -m.n_exp,
                    log_exp: -m.log_exp,
                    loglog_exp: -m.loglog_exp,
                };
                self.try_mul(&EdgeProbExpr { terms: alloc::vec![inv] })
            }
            _ => Err(ParseErrorKind::Unsupported("division by a sum".into())),
        }
    }

    fn try_pow(&self, e: &Self) -> Fallible<Self> {
        let q = e.as_constant().ok_or_else(|| ParseErrorKind::Unsupported("non-constant exponent".into()))?;
        match self.terms.as_slice() {
            [] if q.is_positive() => Ok(Self::zero()),
            [] => Err(ParseErrorKind::Unsupported("zero raised to a non-positive power".into())),
            [m] => {
                let coef = if q.is_integer() {
                    let k = i32::try_from(q.to_integer()).map_err(|_| ParseErrorKind::Overflow)?;
                    checked_pow(&m.coef, k)?
                } else if m.coef.is_one() {
                    Rational::one()
                } else {
                    return Err(ParseErrorKind::Unsupported("irrational coefficient from a fractional power".into()));
                };
                let mono = Monomial {
                    coef,
                    n_exp: checked_mul(&m.n_exp, &q)?,
                    log_exp: checked_mul(&m.log_exp, &q)?,
                    loglog_exp: checked_mul(&m.loglog_exp, &q)?,
                };
                Self::from_terms(alloc::vec![mono])
            }
            _ => {
                if !q.is_integer() || q.is_negative() || q > Rational::from_integer(16) {
                    return Err(ParseErrorKind::Unsupported("power of a sum other than 0..=16".into()));
                }
                let mut acc = Self::constant(Rational::one());
                for _ in 0..q.to_integer() {
                    acc = acc.try_mul(self)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other).map_err(arith)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.try_neg()).map_err(arith)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.try_mul(other).map_err(arith)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.try_div(other).map_err(arith)
    }

    pub fn scale(&self, q: Rational) -> Result<Self> {
        self.mul(&Self::constant(q))
    }

    /// The value as `n → ∞`.
    pub fn limit(&self) -> Limit {
        let Some(m) = self.dominant() else {
            return Limit::Finite(Rational::zero());
        };
        match m.key().cmp(&(Rational::zero(), Rational::zero(), Rational::zero())) {
            Ordering::Greater if m.coef.is_positive() => Limit::PosInf,
            Ordering::Greater => Limit::NegInf,
            Ordering::Equal => Limit::Finite(m.coef),
            Ordering::Less => Limit::Finite(Rational::zero()),
        }
    }

    /// Recognizes `A · (log n + l · log log n + c) / n^d`.
    pub fn window_form(&self) -> Option<WindowForm> {
        let d = -self.dominant()?.n_exp;
        let mut coef = [Rational::zero(); 3];
        for t in &self.terms {
            if t.n_exp != -d {
                return None;
            }
            let slot = match (t.log_exp.to_integer(), t.loglog_exp.to_integer()) {
                _ if !t.log_exp.is_integer() || !t.loglog_exp.is_integer() => return None,
                (1, 0) => 0,
                (0, 1) => 1,
                (0, 0) => 2,
                _ => return None,
            };
            coef[slot] = t.coef;
        }
        let a = coef[0];
        if a.is_zero() {
            return None;
        }
        Some(WindowForm { a, l: coef[1] / a, c: coef[2] / a, d })
    }

    /// Raw numeric value; `n` must be at least 3 so that `log log n > 0`.
    pub fn value_at(&self, n: f64) -> Result<f64> {
        if !(n >= 3.0) {
            return Err(Error::InvalidParameter(format!("expressions are evaluated at n >= 3, got {n}")));
        }
        Ok(self.terms.iter().map(|t| t.value_at(n)).sum())
    }

    pub fn eval(&self, n: f64) -> Result<Evaluation> {
        let raw = self.value_at(n)?;
        let value = raw.clamp(0.0, 1.0);
        Ok(Evaluation { raw, value, clamped: value != raw || raw.is_nan() })
    }
}

fn arith(kind: ParseErrorKind) -> Error {
    Error::Parse(ParseError { position: 0, kind })
}

/// `a` relative to `b` by dominant growth keys, then coefficient ratio.
pub fn compare(a: &EdgeProbExpr, b: &EdgeProbExpr) -> AsymptoticOrder {
    match (a.dominant(), b.dominant()) {
        (None, None) => AsymptoticOrder::Equivalent(Rational::one()),
        (None, Some(_)) => AsymptoticOrder::Less,
        (Some(_), None) => AsymptoticOrder::Greater,
        (Some(x), Some(y)) => match x.key().cmp(&y.key()) {
            Ordering::Less => AsymptoticOrder::Less,
            Ordering::Greater => AsymptoticOrder::Greater,
            Ordering::Equal => AsymptoticOrder::Equivalent(x.coef / y.coef),
        },
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, base: &str, e: &Rational) -> fmt::Result {
    f.write_str(base)?;
    if e.is_one() {
        Ok(())
    } else if e.is_integer() && e.is_positive() {
        write!(f, "^{}", e.numer())
    } else {
        f.write_str("^(")?;
        write_rational(f, e)?;
        f.write_str(")")
    }
}

impl fmt::Display for EdgeProbExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coef.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coef = t.coef.abs();
            let mut factors: Vec<(&str, Rational)> = Vec::new();
            if !t.n_exp.is_zero() {
                factors.push(("n", t.n_exp));
            }
            if !t.log_exp.is_zero() {
                factors.push(("log(n)", t.log_exp));
            }
            if !t.loglog_exp.is_zero() {
                factors.push(("loglog(n)", t.loglog_exp));
            }
            let mut first = true;
            if factors.is_empty() || !coef.is_one() {
                write_rational(f, &coef)?;
                first = false;
            }
            for (base, e) in factors {
                if !first {
                    f.write_str("*")?;
                }
                write_power(f, base, &e)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl core::str::FromStr for EdgeProbExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> core::result::Result<Self, ParseError> {
        parse(s)
    }
}

/// Parses an expression in `n`; the symbol `d` is rejected.
pub fn parse(text: &str) -> core::result::Result<EdgeProbExpr, ParseError> {
    Parser::new(text, None).run()
}

/// Parses an expression in which `d` stands for the given uniformity
/// parameter, so that e.g. `d!/2*log(n)/n^d` is accepted.
pub fn parse_with_d(text: &str, d: usize) -> core::result::Result<EdgeProbExpr, ParseError> {
    Parser::new(text, Some(d)).run()
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Ident(String),
    Sym(char),
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    d: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, d: Option<usize>) -> Self {
        Parser { src, tokens: Vec::new(), pos: 0, d }
    }

    fn run(mut self) -> core::result::Result<EdgeProbExpr, ParseError> {
        self.lex()?;
        let e = self.expr()?;
        if let Some((at, _)) = self.tokens.get(self.pos) {
            let c = self.src[*at..].chars().next().unwrap_or(' ');
            return Err(ParseError { position: *at, kind: ParseErrorKind::UnexpectedChar(c) });
        }
        Ok(e)
    }

    fn lex(&mut self) -> core::result::Result<(), ParseError> {
        let bytes = self.src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let q = decimal(&self.src[start..i]).ok_or(ParseError { position: start, kind: ParseErrorKind::Expected("a number") })?;
                self.tokens.push((start, Token::Num(q)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                self.tokens.push((start, Token::Ident(self.src[start..i].to_string())));
            } else if "+-*/^()!".contains(c) {
                self.tokens.push((i, Token::Sym(c)));
                i += 1;
            } else {
                let c = self.src[i..].chars().next().unwrap_or(c);
                return Err(ParseError { position: i, kind: ParseErrorKind::UnexpectedChar(c) });
            }
        }
        Ok(())
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.src.len(), |(p, _)| *p)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> core::result::Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(if self.peek().is_none() { ParseErrorKind::UnexpectedEnd } else { ParseErrorKind::Expected(what) }))
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.here(), kind }
    }

    fn at(&self, position: usize) -> impl Fn(ParseErrorKind) -> ParseError {
        move |kind| ParseError { position, kind }
    }

    fn expr(&mut self) -> core::result::Result<EdgeProbExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            let at = self.here();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = acc.try_add(&rhs).map_err(self.at(at))?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = acc.try_add(&rhs.try_neg()).map_err(self.at(at))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> core::result::Result<EdgeProbExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let at = self.here();
            if self.eat('*') {
                let rhs = self.factor()?;
                acc = acc.try_mul(&rhs).map_err(self.at(at))?;
            } else if self.eat('/') {
                let rhs = self.factor()?;
                acc = acc.try_div(&rhs).map_err(self.at(at))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> core::result::Result<EdgeProbExpr, ParseError> {
        if self.eat('-') {
            return Ok(self.factor()?.try_neg());
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.postfix()?;
        let at = self.here();
        if self.eat('^') {
            let e = self.factor()?;
            return base.try_pow(&e).map_err(self.at(at));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> core::result::Result<EdgeProbExpr, ParseError> {
        let mut e = self.atom()?;
        loop {
            let at = self.here();
            if !self.eat('!') {
                return Ok(e);
            }
            let k = e
                .as_constant()
                .filter(|q| q.is_integer() && !q.is_negative() && *q <= Rational::from_integer(33))
                .ok_or_else(|| ParseError {
                    position: at,
                    kind: ParseErrorKind::Unsupported("factorial of anything but an integer in 0..=33".into()),
                })?;
            let f = (1..=k.to_integer()).product::<i128>();
            e = EdgeProbExpr::constant(Rational::from_integer(f));
        }
    }

    fn atom(&mut self) -> core::result::Result<EdgeProbExpr, ParseError> {
        let at = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error(ParseErrorKind::UnexpectedEnd));
        };
        self.pos += 1;
        match tok {
            Token::Num(q) => Ok(EdgeProbExpr::constant(q)),
            Token::Sym('(') => {
                let e = self.expr()?;
                self.expect(')', "')'")?;
                Ok(e)
            }
            Token::Sym(c) => Err(ParseError { position: at, kind: ParseErrorKind::UnexpectedChar(c) }),
            Token::Ident(name) => match name.as_str() {
                "n" => Ok(EdgeProbExpr::n()),
                "d" => match self.d {
                    Some(d) => Ok(EdgeProbExpr::constant(Rational::from_integer(d as i128))),
                    None => Err(ParseError { position: at, kind: ParseErrorKind::UnknownIdentifier(name) }),
                },
                "log" | "ln" | "loglog" => {
                    self.expect('(', "'('")?;
                    let arg_at = self.here();
                    let arg = self.expr()?;
                    self.expect(')', "')'")?;
                    let of_n = arg == EdgeProbExpr::n();
                    let of_log = arg == EdgeProbExpr::log_n();
                    match (name.as_str(), of_n, of_log) {
                        ("loglog", true, _) => Ok(EdgeProbExpr::loglog_n()),
                        (_, true, _) if name != "loglog" => Ok(EdgeProbExpr::log_n()),
                        (_, _, true) if name != "loglog" => Ok(EdgeProbExpr::loglog_n()),
                        _ => Err(ParseError {
                            position: arg_at,
                            kind: ParseErrorKind::Unsupported(format!("{name} of an argument other than n or log(n)")),
                        }),
                    }
                }
                "exp" | "sqrt" | "pow" | "sin" | "cos" => {
                    Err(ParseError { position: at, kind: ParseErrorKind::Unsupported(format!("function {name}")) })
                }
                _ => Err(ParseError { position: at, kind: ParseErrorKind::UnknownIdentifier(name) }),
            },
        }
    }
}

/// Exact rational value of a decimal literal such as `0.4` or `2.5e-3`.
fn decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() || frac.contains('.') {
        return None;
    }
    let digits: String = [int, frac].concat();
    let value: i128 = digits.parse().ok()?;
    let shift = exp.checked_sub(i32::try_from(frac.len()).ok()?)?;
    let ten = Rational::from_integer(10);
    let scale = checked_pow(&ten, shift).ok()?;
    Rational::from_integer(value).checked_mul(&scale)
}

#[cfg(test)]
fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}
