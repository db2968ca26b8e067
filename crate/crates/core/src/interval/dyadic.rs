use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact dyadic rational `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Nearest,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0) as i64;
        if tz > 0 {
            Self {
                mant: mant >> tz as usize,
                exp: exp + tz,
            }
        } else {
            Self { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::new(v.clone(), 0)
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Self {
        Self::new(BigInt::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn half(&self) -> Self {
        Self::new(self.mant.clone(), self.exp - 1)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Self::new(self.mant.clone(), self.exp + k)
    }

    /// Rounds to a multiple of `2^-prec`.
    pub fn round(&self, prec: u32, mode: Round) -> Self {
        let target = -(prec as i64);
        if self.exp >= target || self.is_zero() {
            return self.clone();
        }
        let shift = (target - self.exp) as usize;
        let d = BigInt::one() << shift;
        let m = match mode {
            Round::Down => self.mant.div_floor(&d),
            Round::Up => self.mant.div_ceil(&d),
            Round::Nearest => (&self.mant + (&d >> 1usize)).div_floor(&d),
        };
        Self::new(m, target)
    }

    pub fn from_rational(r: &BigRational, prec: u32, mode: Round) -> Self {
        let scaled = r * BigRational::from_integer(BigInt::one() << prec as usize);
        let m = match mode {
            Round::Down => scaled.floor().to_integer(),
            Round::Up => scaled.ceil().to_integer(),
            Round::Nearest => scaled.round().to_integer(),
        };
        Self::new(m, -(prec as i64))
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Quotient rounded to a multiple of `2^-prec`.
    pub fn div(&self, other: &Dyadic, prec: u32, mode: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        let shift = self.exp - other.exp + prec as i64;
        let (mut num, mut den) = (self.mant.clone(), other.mant.clone());
        if shift >= 0 {
            num <<= shift as usize;
        } else {
            den <<= (-shift) as usize;
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let q = match mode {
            Round::Down => num.div_floor(&den),
            Round::Up => num.div_ceil(&den),
            Round::Nearest => ((num << 1usize) + &den).div_floor(&(&den << 1usize)),
        };
        Self::new(q, -(prec as i64))
    }

    pub fn to_f64(&self) -> f64 {
        // scale the mantissa down to ~60 significant bits before converting
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mant >> drop as usize).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + drop).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 || !v.is_finite() {
            return Self::zero();
        }
        let bits = v.to_bits();
        let sign = if (bits >> 63) == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        Self::new(BigInt::from(m) * sign, e)
    }

    /// Floor of log2 |x|; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b { a.clone() } else { b.clone() }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b { a.clone() } else { b.clone() }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        Dyadic::new(
            (&self.mant << (self.exp - e) as usize) + (&rhs.mant << (rhs.exp - e) as usize),
            e,
        )
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}
