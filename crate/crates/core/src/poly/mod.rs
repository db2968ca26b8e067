//! Dense univariate polynomials over Z and Q.
//!
//! Coefficients are stored low to high (`coeffs[i]` multiplies `x^i`); the
//! zero polynomial is the empty vector. Display goes high to low.

mod parse;
mod ratfunc;
mod ratpoly;

pub use ratfunc::RatFunc;
pub use ratpoly::RatPoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - a`
    pub fn linear(a: i64) -> Self {
        Self::from_i64s(&[-a, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for call sites that
    /// have already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of `p(x)` for rational `x`, evaluated with a common denominator
    /// so no rational normalisation happens in the loop.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let (n, d) = (x.numer(), x.denom());
        // d^deg p(n/d), homogenised Horner; d > 0 so the sign is preserved
        let mut h = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            h = h * n + c * &dpow;
            dpow *= d;
        }
        match h.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    /// `p(-x)`
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg p(1/x)`: the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `x^k p(x)`
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `p(q(x))`
    pub fn compose(&self, q: &IntPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * q) + &Self::constant(c.clone()))
    }

    /// Palindromic coefficient list, i.e. `x^deg p(1/x) = p(x)`.
    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Cauchy bound `1 + max |c_i / c_n|`, rounded up to an integer.
    pub fn cauchy_bound(&self) -> BigInt {
        if self.is_constant() {
            return BigInt::one();
        }
        let lc = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + m.div_ceil(&lc)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from(self)
    }

    /// Division with remainder over Q; `deg r < deg q`.
    pub fn divrem(&self, q: &IntPoly) -> Result<(RatPoly, RatPoly)> {
        self.to_rat().divrem(&q.to_rat())
    }

    /// Exact quotient over Z when `q` divides `self`, otherwise `None`.
    pub fn div_exact(&self, q: &IntPoly) -> Option<IntPoly> {
        if q.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (n, m) = (self.deg(), q.deg());
        if n < m {
            return None;
        }
        let lc = q.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let c = &rem[k + m];
            if c.is_zero() {
                continue;
            }
            let (d, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[k + j] -= &d * qc;
            }
            quot[k] = d;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Greatest common divisor, computed over Q and returned as a primitive
    /// integer polynomial with positive leading coefficient.
    pub fn gcd(&self, q: &IntPoly) -> IntPoly {
        self.to_rat().gcd(&q.to_rat()).to_primitive_int()
    }

    pub fn is_square_free(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// Square-free part, primitive with positive leading coefficient.
    pub fn square_free_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        self.to_rat()
            .divrem(&g.to_rat())
            .map(|(q, _)| q.to_primitive_int())
            .unwrap_or_else(|_| self.clone())
    }

    /// Parses either the symbolic form (`x^2 - 3x + 1`) or a JSON array of
    /// integer coefficients, low to high.
    pub fn parse(s: &str) -> Result<Self> {
        parse::parse_poly(s)
    }

    /// JSON array of coefficients, low to high.
    pub fn to_json_array(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

impl std::str::FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub(crate) fn write_poly<T, F>(f: &mut fmt::Formatter<'_>, coeffs: &[T], var: &str, fmt_abs: F) -> fmt::Result
where
    F: Fn(&T) -> (bool, bool, String),
{
    // fmt_abs returns (is_negative, abs_is_one, abs_as_string)
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        let (neg, is_one, abs) = fmt_abs(c);
        if abs == "0" {
            continue;
        }
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let needs_parens = abs.contains('/') && i > 0;
        match (i, is_one) {
            (0, _) => write!(f, "{abs}")?,
            (_, true) => {}
            _ if needs_parens => write!(f, "({abs})")?,
            _ => write!(f, "{abs}")?,
        }
        match i {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "x", |c| {
            (c.is_negative(), c.abs().is_one(), c.abs().to_string())
        })
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        IntPoly::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Operations exposed by [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
    Derivative,
}

/// Result of [`poly_arith`]: either a single polynomial or a quotient and
/// remainder pair (over Q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArithResult {
    Single(IntPoly),
    QuotRem(RatPoly, RatPoly),
}

/// Uniform entry point for the basic polynomial operations. `Derivative`
/// ignores `q`.
pub fn poly_arith(op: PolyOp, p: &IntPoly, q: &IntPoly) -> Result<PolyArithResult> {
    Ok(match op {
        PolyOp::Add => PolyArithResult::Single(p + q),
        PolyOp::Sub => PolyArithResult::Single(p - q),
        PolyOp::Mul => PolyArithResult::Single(p * q),
        PolyOp::DivRem => {
            let (a, b) = p.divrem(q)?;
            PolyArithResult::QuotRem(a, b)
        }
        PolyOp::Gcd => PolyArithResult::Single(p.gcd(q)),
        PolyOp::Derivative => PolyArithResult::Single(p.derivative()),
    })
}

/// Trace polynomial: for reciprocal `p` of degree `2n`, the degree-`n`
/// polynomial `g` with `p(x) = x^n g(x + 1/x)`.
pub fn trace_polynomial(p: &IntPoly) -> Result<IntPoly> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_reciprocal() {
        return Err(Error::NotReciprocal);
    }
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    let n = d / 2;
    // x^k + x^-k = D_k(t), D_0 = 2, D_1 = t, D_{k+1} = t D_k - D_{k-1}
    let t = IntPoly::x();
    let mut g = IntPoly::constant(p.coeff(n));
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = t.clone();
    for k in 1..=n {
        g = &g + &cur.scale(&p.coeff(n + k));
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(g)
}

/// Inverse of [`trace_polynomial`]: `x^n g(x + 1/x)` for `g` of degree `n`.
pub fn expand_trace_polynomial(g: &IntPoly) -> IntPoly {
    let n = g.deg();
    // (x + 1/x)^k x^n = x^(n-k) (x^2 + 1)^k
    let sq = IntPoly::from_i64s(&[1, 0, 1]);
    let mut out = IntPoly::zero();
    let mut pw = IntPoly::one();
    for k in 0..=n {
        let c = g.coeff(k);
        if !c.is_zero() {
            out = &out + &pw.shift(n - k).scale(&c);
        }
        pw = &pw * &sq;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn mul_difference_of_squares() {
        assert_eq!(&p("x - 1") * &p("x + 1"), p("x^2 - 1"));
    }

    #[test]
    fn divrem_exact() {
        let (q, r) = p("x^2 - 1").divrem(&p("x - 1")).unwrap();
        assert_eq!(q.to_primitive_int(), p("x + 1"));
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_by_zero_fails() {
        assert_eq!(
            p("x^2").divrem(&IntPoly::zero()).unwrap_err(),
            Error::DivisionByZeroPolynomial
        );
    }

    #[test]
    fn divrem_non_monic_is_rational() {
        let (q, r) = p("x^2 + 1").divrem(&p("2x")).unwrap();
        assert_eq!(q.to_string(), "(1/2)x");
        assert_eq!(r.to_string(), "1");
    }

    #[test]
    fn reciprocal_checks() {
        assert!(p("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1").is_reciprocal());
        assert!(p("x^2 - 3x + 1").is_reciprocal());
        assert!(!p("x^2 + x").is_reciprocal());
    }

    #[test]
    fn trace_polynomial_small() {
        assert_eq!(trace_polynomial(&p("x^2 - 3x + 1")).unwrap(), p("x - 3"));
        assert_eq!(trace_polynomial(&p("x^2 + 1")).unwrap(), p("x"));
        assert_eq!(
            trace_polynomial(&p("x^3 + 1")).unwrap_err(),
            Error::OddDegree(3)
        );
        assert_eq!(
            trace_polynomial(&p("x^2 + x")).unwrap_err(),
            Error::NotReciprocal
        );
    }

    #[test]
    fn trace_polynomial_phi14_round_trip() {
        let phi14 = p("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1");
        let g = trace_polynomial(&phi14).unwrap();
        assert_eq!(g.degree(), Some(7));
        assert_eq!(expand_trace_polynomial(&g), phi14);
    }

    #[test]
    fn gcd_and_square_free() {
        let phi10 = p("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1");
        assert_eq!(phi10.gcd(&phi10.derivative()), IntPoly::one());
        let sq = &p("x - 1") * &p("x - 1");
        assert!(!sq.is_square_free());
        assert_eq!(sq.square_free_part(), p("x - 1"));
    }

    #[test]
    fn display_high_to_low() {
        assert_eq!(
            IntPoly::from_i64s(&[1, 0, 0, -1, -1, 0, 0, 1, 0, 0, -1, -1, 0, 0, 1]).to_string(),
            "x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1"
        );
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_i64s(&[0, -2]).to_string(), "-2x");
    }

    #[test]
    fn sign_at_matches_eval() {
        let q = p("3x^3 - 2x + 5");
        for (n, d) in [(1, 3), (-7, 2), (0, 1), (5, 4)] {
            let x = BigRational::new(BigInt::from(n), BigInt::from(d));
            let v = q.eval_rational(&x);
            let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
            assert_eq!(q.sign_at(&x), s);
        }
    }
}
