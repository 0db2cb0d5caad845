use std::collections::BTreeMap;
use std::fmt;

use nalgebra::Complex;

use crate::error::MahlerError;

/// Variables `x, y, z, w` in order; more would outgrow torus quadrature.
pub const MAX_VARS: usize = 4;

const VAR_NAMES: [char; MAX_VARS] = ['x', 'y', 'z', 'w'];

/// Largest monomial exponent magnitude the parser accepts.
const MAX_EXPONENT: i64 = 10_000;

/// Largest power the parser expands for a parenthesized base.
const MAX_POLY_POWER: u64 = 64;

/// An integer Laurent polynomial in up to four variables: a finitely
/// supported map from exponent tuples in `Z^d` to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

impl LaurentPoly {
    /// Builds a polynomial from raw terms; zero coefficients are dropped.
    pub fn new(
        vars: usize,
        terms: BTreeMap<Vec<i32>, i64>,
    ) -> Result<Self, MahlerError> {
        if vars == 0 || vars > MAX_VARS {
            return Err(MahlerError::BadPoly(format!(
                "variable count {vars} outside 1..={MAX_VARS}"
            )));
        }
        if let Some(bad) = terms.keys().find(|e| e.len() != vars) {
            return Err(MahlerError::BadPoly(format!(
                "exponent tuple {bad:?} has {} entries for {vars} variables",
                bad.len()
            )));
        }
        let terms = terms.into_iter().filter(|&(_, c)| c != 0).collect();
        Ok(LaurentPoly { vars, terms })
    }

    /// The constant polynomial `c` in one variable.
    pub fn constant(c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0], c);
        }
        LaurentPoly { vars: 1, terms }
    }

    /// A single term `c * x1^e1 ... xd^ed`.
    pub fn monomial(exponents: &[i32], c: i64) -> Result<Self, MahlerError> {
        let mut terms = BTreeMap::new();
        terms.insert(exponents.to_vec(), c);
        LaurentPoly::new(exponents.len(), terms)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent-tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// The coefficient of an exponent tuple, zero when absent.
    pub fn coefficient(&self, exponents: &[i32]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MahlerError> {
        let vars = self.check_same_vars(other)?;
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert(0);
            *entry = entry.checked_add(c).ok_or_else(|| {
                MahlerError::Overflow(format!("adding coefficients at {e:?}"))
            })?;
        }
        LaurentPoly::new(vars, terms)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect();
        LaurentPoly { vars: self.vars, terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MahlerError> {
        self.add(&other.neg())
    }

    /// The product polynomial; coefficients are checked against overflow.
    pub fn mul(&self, other: &Self) -> Result<Self, MahlerError> {
        let vars = self.check_same_vars(other)?;
        let mut wide: BTreeMap<Vec<i32>, i128> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let mut e = Vec::with_capacity(vars);
                for (a, b) in ea.iter().zip(eb) {
                    e.push(a.checked_add(*b).ok_or_else(|| {
                        MahlerError::Overflow("exponent sum".into())
                    })?);
                }
                *wide.entry(e).or_insert(0) += ca as i128 * cb as i128;
            }
        }
        let mut terms = BTreeMap::new();
        for (e, c) in wide {
            if c != 0 {
                let c = i64::try_from(c).map_err(|_| {
                    MahlerError::Overflow(format!("coefficient at {e:?}"))
                })?;
                terms.insert(e, c);
            }
        }
        Ok(LaurentPoly { vars, terms })
    }

    /// `self^n` by repeated multiplication.
    pub fn pow(&self, n: u64) -> Result<Self, MahlerError> {
        if n > MAX_POLY_POWER {
            return Err(MahlerError::Overflow(format!(
                "power {n} exceeds {MAX_POLY_POWER}"
            )));
        }
        let mut out = LaurentPoly::monomial(&vec![0; self.vars], 1).expect("unit");
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `c * self` for an integer scalar.
    pub fn scale(&self, c: i64) -> Result<Self, MahlerError> {
        let mut scalar = BTreeMap::new();
        if c != 0 {
            scalar.insert(vec![0; self.vars], c);
        }
        self.mul(&LaurentPoly { vars: self.vars, terms: scalar })
    }

    /// Evaluates at the torus point `(e^{2πi θ_1}, ..., e^{2πi θ_d})`;
    /// `theta` is in full turns.
    pub fn eval_torus(&self, theta: &[f64]) -> Result<Complex<f64>, MahlerError> {
        if theta.len() != self.vars {
            return Err(MahlerError::BadPoly(format!(
                "point has {} coordinates for {} variables",
                theta.len(),
                self.vars
            )));
        }
        let mut total = Complex::new(0.0, 0.0);
        for (e, &c) in &self.terms {
            let mut phase = 0.0f64;
            for (exp, t) in e.iter().zip(theta) {
                phase += f64::from(*exp) * t;
            }
            let angle = std::f64::consts::TAU * (phase - phase.floor());
            total += Complex::new(c as f64 * angle.cos(), c as f64 * angle.sin());
        }
        Ok(total)
    }

    /// Dense coefficients `c_0..c_s` of the one-variable polynomial after
    /// clearing the monomial factor `x^min`; `c_0` and `c_s` are nonzero.
    pub(crate) fn univariate_coefficients(&self) -> Result<Vec<i64>, MahlerError> {
        if self.vars != 1 {
            return Err(MahlerError::NotUnivariate { vars: self.vars });
        }
        if self.terms.is_empty() {
            return Err(MahlerError::ZeroPolynomial);
        }
        let low = self.terms.keys().next().expect("nonempty")[0];
        let high = self.terms.keys().next_back().expect("nonempty")[0];
        let mut dense = vec![0i64; (high - low) as usize + 1];
        for (e, &c) in &self.terms {
            dense[(e[0] - low) as usize] = c;
        }
        Ok(dense)
    }

    fn check_same_vars(&self, other: &Self) -> Result<usize, MahlerError> {
        if self.vars != other.vars {
            return Err(MahlerError::BadPoly(format!(
                "variable counts differ: {} vs {}",
                self.vars, other.vars
            )));
        }
        Ok(self.vars)
    }

    /// Parses text like `x^2 - x - 1` or `1 + x + y`; variables `x,y,z,w`,
    /// integer coefficients, `^` with possibly negative exponents on
    /// variables, `*` optional between factors.
    pub fn parse(text: &str) -> Result<Self, MahlerError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, at: 0 };
        let poly = parser.expr()?;
        if parser.at != parser.tokens.len() {
            return Err(MahlerError::Parse {
                at: parser.tokens[parser.at].0,
                detail: "unexpected trailing input".into(),
            });
        }
        Ok(shrink_vars(poly))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (index, (e, &c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.unsigned_abs();
            if index == 0 {
                if c < 0 {
                    write!(out, "-")?;
                }
            } else if c < 0 {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let constant_term = e.iter().all(|&exp| exp == 0);
            if magnitude != 1 || constant_term {
                write!(out, "{magnitude}")?;
                if !constant_term {
                    write!(out, " ")?;
                }
            }
            let mut first = true;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !first {
                    write!(out, " ")?;
                }
                first = false;
                write!(out, "{}", VAR_NAMES[i])?;
                if exp != 1 {
                    write!(out, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parser internals work in the full four-variable ring; the public type
/// shrinks to the variables actually used.
fn shrink_vars(poly: LaurentPoly) -> LaurentPoly {
    let used = poly
        .terms
        .keys()
        .flat_map(|e| {
            e.iter().enumerate().filter(|(_, &exp)| exp != 0).map(|(i, _)| i + 1)
        })
        .max()
        .unwrap_or(1);
    let terms = poly
        .terms
        .into_iter()
        .map(|(e, c)| (e[..used].to_vec(), c))
        .collect();
    LaurentPoly { vars: used, terms }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token {
    Int(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, MahlerError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut at = 0;
    while at < bytes.len() {
        let b = bytes[at];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => at += 1,
            b'+' => {
                tokens.push((at, Token::Plus));
                at += 1;
            }
            b'-' => {
                tokens.push((at, Token::Minus));
                at += 1;
            }
            b'*' => {
                tokens.push((at, Token::Star));
                at += 1;
            }
            b'^' => {
                tokens.push((at, Token::Caret));
                at += 1;
            }
            b'(' => {
                tokens.push((at, Token::Open));
                at += 1;
            }
            b')' => {
                tokens.push((at, Token::Close));
                at += 1;
            }
            b'0'..=b'9' => {
                let start = at;
                let mut value: u64 = 0;
                while at < bytes.len() && bytes[at].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(bytes[at] - b'0')))
                        .ok_or_else(|| MahlerError::Parse {
                            at: start,
                            detail: "integer literal overflows".into(),
                        })?;
                    at += 1;
                }
                tokens.push((start, Token::Int(value)));
            }
            _ => {
                let var = VAR_NAMES
                    .iter()
                    .position(|&name| name as u8 == b)
                    .ok_or_else(|| MahlerError::Parse {
                        at,
                        detail: format!("unexpected character `{}`", b as char),
                    })?;
                tokens.push((at, Token::Var(var)));
                at += 1;
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.at).map(|&(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.at)
            .or_else(|| self.tokens.last())
            .map_or(0, |&(pos, _)| pos)
    }

    fn expr(&mut self) -> Result<LaurentPoly, MahlerError> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                self.at += 1;
                negate = true;
            }
            Some(Token::Plus) => self.at += 1,
            _ => {}
        }
        let mut total = self.term()?;
        if negate {
            total = total.neg();
        }
        while let Some(op @ (Token::Plus | Token::Minus)) = self.peek() {
            self.at += 1;
            let next = self.term()?;
            total = if op == Token::Plus {
                total.add(&next)?
            } else {
                total.sub(&next)?
            };
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<LaurentPoly, MahlerError> {
        let mut product = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.at += 1;
                    product = product.mul(&self.factor()?)?;
                }
                // Juxtaposition multiplies: `2 x^2 y`.
                Some(Token::Int(_) | Token::Var(_) | Token::Open) => {
                    product = product.mul(&self.factor()?)?;
                }
                _ => return Ok(product),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly, MahlerError> {
        let position = self.here();
        match self.peek() {
            Some(Token::Int(value)) => {
                self.at += 1;
                let base = i64::try_from(value).map_err(|_| MahlerError::Parse {
                    at: position,
                    detail: "coefficient overflows".into(),
                })?;
                match self.exponent()? {
                    None => Ok(constant4(base)),
                    Some(e) => {
                        let e = u64::try_from(e).map_err(|_| MahlerError::Parse {
                            at: position,
                            detail: "negative power of an integer".into(),
                        })?;
                        constant4(base).pow(e)
                    }
                }
            }
            Some(Token::Var(var)) => {
                self.at += 1;
                let exponent = self.exponent()?.unwrap_or(1);
                let mut exponents = [0i32; MAX_VARS];
                exponents[var] =
                    i32::try_from(exponent).map_err(|_| MahlerError::Parse {
                        at: position,
                        detail: "exponent out of range".into(),
                    })?;
                LaurentPoly::monomial(&exponents, 1)
            }
            Some(Token::Open) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(Token::Close) {
                    return Err(MahlerError::Parse {
                        at: self.here(),
                        detail: "expected `)`".into(),
                    });
                }
                self.at += 1;
                match self.exponent()? {
                    None => Ok(inner),
                    Some(e) => {
                        let e = u64::try_from(e).map_err(|_| MahlerError::Parse {
                            at: position,
                            detail: "negative power of a sum".into(),
                        })?;
                        inner.pow(e)
                    }
                }
            }
            _ => Err(MahlerError::Parse {
                at: self.here(),
                detail: "expected a number, variable, or `(`".into(),
            }),
        }
    }

    /// A `^` suffix: `^3`, `^-2`, or `^(-2)`; `None` when absent.
    fn exponent(&mut self) -> Result<Option<i64>, MahlerError> {
        if self.peek() != Some(Token::Caret) {
            return Ok(None);
        }
        self.at += 1;
        let parenthesized = self.peek() == Some(Token::Open);
        if parenthesized {
            self.at += 1;
        }
        let negative = match self.peek() {
            Some(Token::Minus) => {
                self.at += 1;
                true
            }
            Some(Token::Plus) => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let Some(Token::Int(value)) = self.peek() else {
            return Err(MahlerError::Parse {
                at: self.here(),
                detail: "expected an integer exponent".into(),
            });
        };
        self.at += 1;
        if parenthesized {
            if self.peek() != Some(Token::Close) {
                return Err(MahlerError::Parse {
                    at: self.here(),
                    detail: "expected `)` after exponent".into(),
                });
            }
            self.at += 1;
        }
        let magnitude = i64::try_from(value).unwrap_or(i64::MAX);
        if magnitude > MAX_EXPONENT {
            return Err(MahlerError::Parse {
                at: self.here(),
                detail: format!("exponent magnitude exceeds {MAX_EXPONENT}"),
            });
        }
        Ok(Some(if negative { -magnitude } else { magnitude }))
    }
}

/// A constant in the parser's four-variable working ring.
fn constant4(c: i64) -> LaurentPoly {
    let mut terms = BTreeMap::new();
    if c != 0 {
        terms.insert(vec![0; MAX_VARS], c);
    }
    LaurentPoly { vars: MAX_VARS, terms }
}
