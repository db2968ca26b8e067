use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dyadic::{Dyadic, Round};
use super::real::Interval;

/// Enclosure of `atanh(y)` for `0 <= y <= ymax < 1` by the odd power series
/// plus a geometric tail bound.
fn atanh_enclosure(y: &Interval, prec: u32) -> Interval {
    let eps = Dyadic::pow2(-(prec as i64));
    let prec = prec + 8;
    let y2 = y.sqr(prec);
    let mut term = y.clone();
    let mut sum = Interval::zero();
    let mut k: i64 = 0;
    loop {
        let denom = Interval::from_int(2 * k + 1);
        sum = sum.add(&term.div(&denom, prec).expect("odd denominator"), prec);
        term = term.mul(&y2, prec);
        k += 1;
        if term.hi <= eps {
            break;
        }
    }
    // remaining terms are bounded by term_hi / ((2k+1)(1 - ymax^2))
    let one_minus = Interval::one().sub(&y2, prec);
    let tail_hi = term
        .hi
        .div(&(&Dyadic::from_int(2 * k + 1) * &one_minus.lo), prec, Round::Up);
    Interval::new(sum.lo, &sum.hi + &tail_hi)
}

fn ln2(prec: u32) -> Interval {
    let third = Interval::from_rational(&BigRational::new(BigInt::one(), BigInt::from(3)), prec + 4);
    let a = atanh_enclosure(&third, prec + 4);
    Interval::new(
        (&a.lo + &a.lo).round(prec, Round::Down),
        (&a.hi + &a.hi).round(prec, Round::Up),
    )
}

/// Enclosure of `ln x` for a single positive dyadic.
fn ln_point(x: &Dyadic, prec: u32) -> Interval {
    let e = x.log2_floor().expect("positive argument");
    let m = Interval::point(x.mul_pow2(-e));
    let wp = prec + 8;
    let y = m
        .sub(&Interval::one(), wp)
        .div(&m.add(&Interval::one(), wp), wp)
        .expect("m + 1 > 0");
    let y = Interval::new(Dyadic::max(&y.lo, &Dyadic::zero()), y.hi);
    let a = atanh_enclosure(&y, wp);
    let lnm = Interval::new(&a.lo + &a.lo, &a.hi + &a.hi);
    ln2(wp).mul(&Interval::from_int(e), wp).add(&lnm, prec)
}

/// Certified natural logarithm of a positive interval; `None` if the
/// interval reaches zero or below.
pub fn ln_interval(x: &Interval, prec: u32) -> Option<Interval> {
    if !x.is_positive() {
        return None;
    }
    let lo = ln_point(&x.lo, prec);
    let hi = ln_point(&x.hi, prec);
    Some(Interval::new(lo.lo, hi.hi))
}

/// Decimal rendering of an enclosure `[lo, hi]`: returns the midpoint
/// rounded to `k` fractional digits with `k` maximal such that every point
/// of the interval is within `10^-k` of the printed value (capped at
/// `max_digits`).
pub fn certified_decimal(lo: &BigRational, hi: &BigRational, max_digits: usize) -> (String, usize) {
    let width = hi - lo;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut k = 0usize;
    let mut scale = BigRational::one();
    while k < max_digits {
        let next = &scale / &ten;
        if width > next {
            break;
        }
        scale = next;
        k += 1;
    }
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    (decimal_string(&mid, k), k)
}

/// `x` rounded half-away-from-zero to `digits` fractional digits.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let p = BigInt::from(10).pow(digits as u32);
    let scaled = (x.abs() * BigRational::from_integer(p.clone())).round().to_integer();
    let neg = x.is_negative() && !scaled.is_zero();
    let int_part = &scaled / &p;
    let frac = (&scaled % &p).to_string();
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac:0>digits$}")
    }
}

/// Best-effort `f64` value of a rational.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => Dyadic::from_rational(x, 80, Round::Nearest).to_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_sixteen() {
        let l = ln_interval(&Interval::from_int(16), 80).unwrap();
        let v = 16f64.ln();
        assert!(l.lo.to_f64() <= v + 1e-15 && v - 1e-15 <= l.hi.to_f64());
        assert!(l.width().to_f64() < 1e-20);
    }

    #[test]
    fn ln_of_one_is_zero() {
        let l = ln_interval(&Interval::one(), 60).unwrap();
        assert!(l.contains_zero());
        assert!(l.width().to_f64() < 1e-15);
    }

    #[test]
    fn ln_of_fraction() {
        let x = Interval::from_rational(&BigRational::new(3.into(), 10.into()), 100);
        let l = ln_interval(&x, 100).unwrap();
        assert!((l.mid_f64() - 0.3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn decimal_formatting() {
        let lo = BigRational::new(12345.into(), 10000.into());
        let hi = BigRational::new(12346.into(), 10000.into());
        assert_eq!(certified_decimal(&lo, &hi, 30), ("1.2346".to_string(), 4));
        assert_eq!(decimal_string(&BigRational::new((-1).into(), 8.into()), 2), "-0.13");
        assert_eq!(decimal_string(&BigRational::new((-1).into(), 1000.into()), 2), "0.00");
    }
}
