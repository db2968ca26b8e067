use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::fp::{factor_fp, FpPoly};
use crate::poly::IntPoly;

/// Polynomial over F2; bit `i` is the coefficient of `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Poly {
    bits: BigUint,
}

impl F2Poly {
    pub fn from_bits(bits: BigUint) -> Self {
        Self { bits }
    }

    /// From exponents of the nonzero terms.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut bits = BigUint::zero();
        for &e in exps {
            bits ^= BigUint::one() << e;
        }
        Self { bits }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        let mut bits = BigUint::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.bit(0) {
                bits.set_bit(i as u64, true);
            }
        }
        Self { bits }
    }

    fn from_fp(p: &FpPoly) -> Self {
        debug_assert_eq!(p.p, 2);
        let exps: Vec<usize> = p.c.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i).collect();
        Self::from_exponents(&exps)
    }

    fn to_fp(&self) -> FpPoly {
        FpPoly::new(2, (0..self.bits.bits()).map(|i| self.bits.bit(i) as u64).collect())
    }

    pub fn bits(&self) -> &BigUint {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.bits.bits() as usize - 1)
    }

    pub fn mul(&self, o: &F2Poly) -> F2Poly {
        let mut acc = BigUint::zero();
        for i in 0..o.bits.bits() {
            if o.bits.bit(i) {
                acc ^= &self.bits << i as usize;
            }
        }
        F2Poly { bits: acc }
    }

    pub fn pow(&self, e: usize) -> F2Poly {
        (0..e).fold(F2Poly::from_exponents(&[0]), |a, _| a.mul(self))
    }

    pub fn rem(&self, m: &F2Poly) -> F2Poly {
        let dm = m.degree().expect("nonzero modulus");
        let mut r = self.bits.clone();
        while r.bits() as usize > dm {
            let shift = r.bits() as usize - 1 - dm;
            r ^= &m.bits << shift;
        }
        F2Poly { bits: r }
    }

    pub fn gcd(&self, o: &F2Poly) -> F2Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Irreducibility by the gcd test with `x^(2^k) - x` for `k < deg`, plus
    /// `x^(2^deg) = x` mod self.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let x = F2Poly::from_exponents(&[1]);
        let mut t = x.rem(self);
        for k in 1..=n {
            t = t.mul(&t).rem(self);
            let diff = F2Poly { bits: &t.bits ^ &x.rem(self).bits };
            if k < n {
                if self.gcd(&diff).degree() != Some(0) {
                    return false;
                }
            } else {
                return diff.is_zero();
            }
        }
        unreachable!()
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(n) = self.degree() else {
            return write!(f, "0");
        };
        let terms: Vec<String> = (0..=n)
            .rev()
            .filter(|&i| self.bits.bit(i as u64))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for F2Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Complete factorization over F2 of the reduction of `p`, sorted by
/// degree then bit value. A zero reduction yields an empty list.
pub fn factor_mod2(p: &IntPoly) -> Vec<(F2Poly, usize)> {
    let f = F2Poly::from_int(p);
    if f.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<(F2Poly, usize)> = factor_fp(&f.to_fp()).iter().map(|(g, m)| (F2Poly::from_fp(g), *m)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_squared_plus_x() {
        let fs = factor_mod2(&IntPoly::parse("x^2 + x").unwrap());
        assert_eq!(
            fs,
            vec![(F2Poly::from_exponents(&[1]), 1), (F2Poly::from_exponents(&[0, 1]), 1)]
        );
    }

    #[test]
    fn repeated_factor() {
        let fs = factor_mod2(&IntPoly::parse("x^2 + 1").unwrap());
        assert_eq!(fs, vec![(F2Poly::from_exponents(&[0, 1]), 2)]);
    }

    #[test]
    fn irreducibility_test() {
        assert!(F2Poly::from_exponents(&[0, 2, 5]).is_irreducible());
        assert!(!F2Poly::from_exponents(&[0, 1, 5]).is_irreducible());
        assert_eq!(F2Poly::from_exponents(&[0, 1, 3]).to_string(), "x^3 + x + 1");
    }
}
