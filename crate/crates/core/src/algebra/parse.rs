//! Text format for polynomials: integer coefficients, single-letter
//! variables, `^` powers, `+`/`-`/`*` and parentheses, e.g. `T^6+T^3+1` or
//! `(u+1)*T^2+u`. Juxtaposition (`2T`) is multiplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{FieldElement, FiniteField};
use super::int::IntPoly;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Exponents by variable name.
pub type Monomial = BTreeMap<char, u32>;

/// Sparse multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        MPoly { terms }
    }

    fn var(v: char) -> Self {
        let mut m = Monomial::new();
        m.insert(v, 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        MPoly { terms }
    }

    fn add(mut self, other: &MPoly, sign: i32) -> Self {
        for (m, c) in &other.terms {
            let entry = self.terms.entry(m.clone()).or_default();
            if sign < 0 {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, other: &MPoly) -> Self {
        let mut out = MPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(*v).or_insert(0) += e;
                }
                *out.terms.entry(m).or_default() += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(MPoly::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn variables(&self) -> Vec<char> {
        let mut vs: Vec<char> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().filter(|(_, &e)| e > 0).map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    allowed: &'a [char],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(
            self.input,
            format!("{} at position {}", msg.into(), self.pos),
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut sign = 1;
        match self.peek() {
            Some('+') => self.pos += 1,
            Some('-') => {
                self.pos += 1;
                sign = -1;
            }
            _ => {}
        }
        let mut acc = MPoly::default().add(&self.term()?, sign);
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, 1);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = match digits.parse() {
                Ok(e) if e <= 1 << 20 => e,
                _ => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                Ok(MPoly::constant(digits.parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                if !self.allowed.contains(&c) {
                    return self.err(format!("unexpected variable `{c}`"));
                }
                self.pos += 1;
                Ok(MPoly::var(c))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse an integer-coefficient expression over the given variables.
pub fn parse_mpoly(input: &str, allowed: &[char]) -> Result<MPoly> {
    let mut parser = Parser {
        input,
        chars: input.chars().collect(),
        pos: 0,
        allowed,
    };
    if parser.peek().is_none() {
        return Err(Error::parse(input, "empty expression"));
    }
    let e = parser.expr()?;
    if parser.peek().is_some() {
        return parser.err("trailing input");
    }
    Ok(e)
}

/// Map `sum c * u^a` into the field.
fn field_value(k: &FiniteField, u_exp: u32, c: &BigInt) -> FieldElement {
    let base = k.from_big(c);
    let u = k.generator();
    let mut pow = k.one();
    for _ in 0..u_exp {
        pow = k.mul(&pow, &u);
    }
    k.mul(&base, &pow)
}

/// Coefficients (dense, by degree in `main`) of an expression in `u` and the
/// main variables, reduced into `k`.
pub fn collect_by(input: &str, m: &MPoly, k: &FiniteField, main: char) -> Result<Vec<FieldElement>> {
    let mut out: Vec<FieldElement> = Vec::new();
    for (mono, c) in m.terms() {
        let mut deg = 0usize;
        let mut u_exp = 0u32;
        for (&v, &e) in mono {
            if v == 'u' {
                u_exp = e;
            } else if v == main {
                deg = e as usize;
            } else if e > 0 {
                return Err(Error::parse(input, format!("unexpected variable `{v}`")));
            }
        }
        if out.len() <= deg {
            out.resize(deg + 1, k.zero());
        }
        out[deg] = k.add(&out[deg], &field_value(k, u_exp, c));
    }
    Ok(out)
}

/// Polynomial in `T` (or `x`) over `F_q`, coefficients possibly in `u`.
pub fn parse_poly(input: &str, k: &FiniteField) -> Result<Poly> {
    let m = parse_mpoly(input, &['T', 'x', 'u'])?;
    let vars = m.variables();
    if vars.contains(&'T') && vars.contains(&'x') {
        return Err(Error::parse(input, "mixes variables `T` and `x`"));
    }
    let main = if vars.contains(&'x') { 'x' } else { 'T' };
    Ok(Poly::new(collect_by(input, &m, k, main)?))
}

/// Integer polynomial in `T` (for elements of `Z_p[[T]]` given exactly).
pub fn parse_int_poly(input: &str) -> Result<IntPoly> {
    let m = parse_mpoly(input, &['T', 'x'])?;
    let mut coeffs: Vec<BigInt> = Vec::new();
    for (mono, c) in m.terms() {
        let deg = mono.values().copied().sum::<u32>() as usize;
        if mono.len() > 1 {
            return Err(Error::parse(input, "expected a univariate polynomial"));
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::zero());
        }
        coeffs[deg] += c;
    }
    Ok(IntPoly::new(coeffs))
}

/// Bivariate polynomial in `x`, `y` over `F_q`: `((deg_x, deg_y), coeff)`.
pub fn parse_bivariate(input: &str, k: &FiniteField) -> Result<Vec<((u32, u32), FieldElement)>> {
    let m = parse_mpoly(input, &['x', 'y', 'u'])?;
    let mut out: BTreeMap<(u32, u32), FieldElement> = BTreeMap::new();
    for (mono, c) in m.terms() {
        let dx = mono.get(&'x').copied().unwrap_or(0);
        let dy = mono.get(&'y').copied().unwrap_or(0);
        let du = mono.get(&'u').copied().unwrap_or(0);
        let entry = out.entry((dx, dy)).or_insert_with(|| k.zero());
        *entry = k.add(entry, &field_value(k, du, c));
    }
    Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// Comma-separated list of integers.
pub fn parse_int_list(input: &str) -> Result<Vec<i64>> {
    input
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|e| Error::parse(input, format!("`{s}`: {e}"))))
        .collect()
}
