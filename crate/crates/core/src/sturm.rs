//! Exact real-root counting and isolation via Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

/// Sturm chain of a square-free polynomial. Remainders are kept primitive
/// over Z (positive rescaling does not change sign patterns).
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.is_square_free() {
            return Err(Error::NotSquareFree);
        }
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2]
                .to_rat()
                .divrem(&chain[n - 1].to_rat())
                .expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            chain.push(positive_primitive(&(-&r)));
        }
        chain.retain(|q| !q.is_zero());
        Ok(Self { chain })
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|q| q.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|q| {
            let s = if q.leading().is_positive() { 1 } else { -1 };
            if positive || q.deg() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of real roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }
}

/// Rescales by a positive rational to a primitive integer polynomial, so the
/// sign pattern of the Sturm chain is preserved.
fn positive_primitive(r: &RatPoly) -> IntPoly {
    let p = r.to_primitive_int();
    // to_primitive_int forces a positive leading coefficient; undo that if
    // the original leading coefficient was negative
    if r.leading().is_negative() {
        -&p
    } else {
        p
    }
}

/// Exact count of real roots of the square-free `p` in `(lo, hi)`.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    for e in [lo, hi] {
        if p.sign_at(e) == 0 {
            return Err(Error::EndpointIsRoot(e.to_string()));
        }
    }
    Ok(SturmSequence::new(p)?.count(lo, hi))
}

/// An isolating interval for one real root: either the exact rational root
/// or an open interval `(lo, hi)` with a sign change of `p` across it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRootInterval {
    Exact(BigRational),
    Open(BigRational, BigRational),
}

impl RealRootInterval {
    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            Self::Exact(x) => (x.clone(), x.clone()),
            Self::Open(a, b) => (a.clone(), b.clone()),
        }
    }

    pub fn width(&self) -> BigRational {
        let (a, b) = self.bounds();
        b - a
    }
}

/// Isolates all real roots of a square-free polynomial, in increasing
/// order.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<RealRootInterval>> {
    let seq = SturmSequence::new(p)?;
    let b = BigRational::from_integer(p.cauchy_bound());
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = seq.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && p.sign_at(&lo) * p.sign_at(&hi) < 0 {
            out.push(RealRootInterval::Open(lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if p.sign_at(&mid) == 0 {
            out.push(RealRootInterval::Exact(mid.clone()));
            // shrink around the exact root so the neighbours exclude it
            let eps = (&hi - &lo) / BigRational::from_integer(BigInt::from(4));
            let mut left = &mid - &eps;
            let mut right = &mid + &eps;
            let mut e = eps;
            while p.sign_at(&left) == 0
                || p.sign_at(&right) == 0
                || seq.count(&left, &right) > 1
            {
                e /= BigRational::from_integer(BigInt::from(2));
                left = &mid - &e;
                right = &mid + &e;
            }
            stack.push((lo, left));
            stack.push((right, hi));
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|a, b| a.bounds().0.cmp(&b.bounds().0));
    Ok(out)
}

/// Bisects an isolating sign-change interval of `p` until it is narrower
/// than `width`.
pub fn refine_real_root(
    p: &IntPoly,
    root: &RealRootInterval,
    width: &BigRational,
) -> RealRootInterval {
    let (mut lo, mut hi) = match root {
        RealRootInterval::Exact(_) => return root.clone(),
        RealRootInterval::Open(a, b) => (a.clone(), b.clone()),
    };
    let slo = p.sign_at(&lo);
    let two = BigRational::from_integer(BigInt::from(2));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at(&mid);
        if s == 0 {
            return RealRootInterval::Exact(mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RealRootInterval::Open(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rat_int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    use crate::poly::trace_polynomial;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn sqrt_two_once_in_zero_two() {
        assert_eq!(sturm_count(&p("x^2 - 2"), &rat_int(0), &rat_int(2)).unwrap(), 1);
    }

    #[test]
    fn phi14_trace_root_locations() {
        let g = trace_polynomial(&p("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1")).unwrap();
        assert_eq!(sturm_count(&g, &rat_int(2), &rat_int(4)).unwrap(), 1);
        assert_eq!(sturm_count(&g, &rat_int(-2), &rat_int(2)).unwrap(), 6);
    }

    #[test]
    fn endpoint_and_square_free_errors() {
        assert!(matches!(
            sturm_count(&p("x^2 - 1"), &rat_int(1), &rat_int(2)),
            Err(Error::EndpointIsRoot(_))
        ));
        assert_eq!(
            sturm_count(&p("x^2 - 2x + 1"), &rat_int(0), &rat_int(3)).unwrap_err(),
            Error::NotSquareFree
        );
        assert_eq!(
            sturm_count(&p("x"), &rat_int(1), &rat_int(1)).unwrap_err(),
            Error::EmptyInterval
        );
    }

    #[test]
    fn isolation_with_rational_roots() {
        let q = p("x^3 - x");
        let roots = isolate_real_roots(&q).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&RealRootInterval::Exact(rat_int(0))));
        let seq = SturmSequence::new(&q).unwrap();
        assert_eq!(seq.count_all(), 3);
    }

    #[test]
    fn refine_sqrt2() {
        let q = p("x^2 - 2");
        let roots = isolate_real_roots(&q).unwrap();
        let r = refine_real_root(&q, &roots[1], &rat(1, 1_000_000_000));
        let (lo, hi) = r.bounds();
        assert!(lo < rat(1414213563, 1_000_000_000) && hi > rat(1414213562, 1_000_000_000));
    }
}
