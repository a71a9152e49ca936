//! Integer Laurent polynomials in one variable `A`.
//!
//! Text form lists terms by increasing exponent, e.g. `-A^-5 + 2*A^-1 - A^3`;
//! the zero polynomial prints as `0` and a constant term prints bare.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Finitely supported map exponent -> coefficient. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: i64, exponent: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coefficient, exponent);
        p
    }

    /// `-A^2 - A^-2`, the value of an extra disjoint circle.
    pub fn loop_value() -> Self {
        Self::monomial(-1, 2) + Self::monomial(-1, -2)
    }

    pub fn add_term(&mut self, coefficient: i64, exponent: i32) {
        if coefficient == 0 {
            return;
        }
        let c = self.terms.entry(exponent).or_insert(0);
        *c += coefficient;
        if *c == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i32) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(c * factor, e);
        }
        out
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + shift, c)).collect(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Renders the polynomial in `t = A^-4`, the Jones normalization.
    /// Exponents that are not multiples of four print as reduced fractions.
    pub fn display_in_t(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // t^k = A^(-4k): print in increasing t-exponent, i.e. decreasing A-exponent
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().map(|(&e, &c)| (e, c)).enumerate() {
            let exponent = t_exponent(-e);
            let body = if exponent.is_empty() {
                c.abs().to_string()
            } else if c.abs() == 1 {
                format!("t^{exponent}")
            } else {
                format!("{}*t^{exponent}", c.abs())
            };
            push_term(&mut out, i == 0, c < 0, &body);
        }
        out
    }
}

fn t_exponent(numerator: i32) -> String {
    if numerator == 0 {
        return String::new();
    }
    let g = gcd(numerator.unsigned_abs(), 4) as i32;
    let (num, den) = (numerator / g, 4 / g);
    if den == 1 {
        num.to_string()
    } else {
        format!("({num}/{den})")
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn push_term(out: &mut String, first: bool, negative: bool, body: &str) {
    match (first, negative) {
        (true, false) => {}
        (true, true) => out.push('-'),
        (false, false) => out.push_str(" + "),
        (false, true) => out.push_str(" - "),
    }
    out.push_str(body);
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let body = match (e, c.abs()) {
                (0, a) => a.to_string(),
                (e, 1) => format!("A^{e}"),
                (e, a) => format!("{a}*A^{e}"),
            };
            push_term(&mut out, i == 0, c < 0, &body);
        }
        f.write_str(&out)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |message: &str| Error::Syntax {
            position: 0,
            message: format!("{message} in polynomial {s:?}"),
        };
        if compact.is_empty() {
            return Err(err("empty text"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        // split into signed chunks; a '-' directly after '^' belongs to the exponent
        let mut chunks = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                chunks.push(&compact[start..i]);
                start = i;
            }
        }
        chunks.push(&compact[start..]);

        let mut p = Self::zero();
        for chunk in chunks {
            let (negative, body) = match chunk.as_bytes()[0] {
                b'-' => (true, &chunk[1..]),
                b'+' => (false, &chunk[1..]),
                _ => (false, chunk),
            };
            let (coefficient, exponent) = if let Some(idx) = body.find('A') {
                let coeff = match &body[..idx] {
                    "" => 1,
                    c => c
                        .strip_suffix('*')
                        .ok_or_else(|| err("expected '*' before A"))?
                        .parse::<i64>()
                        .map_err(|_| err("bad coefficient"))?,
                };
                let exp = match &body[idx + 1..] {
                    "" => 1,
                    e => e
                        .strip_prefix('^')
                        .ok_or_else(|| err("expected '^' after A"))?
                        .parse::<i32>()
                        .map_err(|_| err("bad exponent"))?,
                };
                (coeff, exp)
            } else {
                (body.parse::<i64>().map_err(|_| err("bad constant"))?, 0)
            };
            p.add_term(if negative { -coefficient } else { coefficient }, exponent);
        }
        Ok(p)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
