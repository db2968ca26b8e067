use num_rational::BigRational;

use super::dyadic::{Dyadic, Round};

/// Closed real interval with dyadic endpoints. Products and quotients are
/// rounded outward to multiples of `2^-prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::point(Dyadic::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(Dyadic::from_int(v))
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Self {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
        }
    }

    pub fn from_rationals(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        Self {
            lo: Dyadic::from_rational(lo, prec, Round::Down),
            hi: Dyadic::from_rational(hi, prec, Round::Up),
        }
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).half()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `self` lies in the interior of `other`.
    pub fn strictly_inside(&self, other: &Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: Dyadic::min(&self.lo, &other.lo),
            hi: Dyadic::max(&self.hi, &other.hi),
        }
    }

    pub fn disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn add(&self, o: &Interval, prec: u32) -> Interval {
        Interval {
            lo: (&self.lo + &o.lo).round(prec, Round::Down),
            hi: (&self.hi + &o.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Interval, prec: u32) -> Interval {
        Interval {
            lo: (&self.lo - &o.hi).round(prec, Round::Down),
            hi: (&self.hi - &o.lo).round(prec, Round::Up),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Interval, prec: u32) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
        }
    }

    pub fn sqr(&self, prec: u32) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = Dyadic::max(&a, &b).round(prec, Round::Up);
        let lo = if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&a, &b).round(prec, Round::Down)
        };
        Interval { lo, hi }
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, o: &Interval, prec: u32) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let q = |a: &Dyadic, b: &Dyadic, m| a.div(b, prec, m);
        let lows = [
            q(&self.lo, &o.lo, Round::Down),
            q(&self.lo, &o.hi, Round::Down),
            q(&self.hi, &o.lo, Round::Down),
            q(&self.hi, &o.hi, Round::Down),
        ];
        let highs = [
            q(&self.lo, &o.lo, Round::Up),
            q(&self.lo, &o.hi, Round::Up),
            q(&self.hi, &o.lo, Round::Up),
            q(&self.hi, &o.hi, Round::Up),
        ];
        Some(Interval {
            lo: lows.iter().min().expect("four").clone(),
            hi: highs.iter().max().expect("four").clone(),
        })
    }

    /// Widens symmetrically by `r >= 0`.
    pub fn inflate(&self, r: &Dyadic) -> Interval {
        Interval {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    pub fn to_rationals(&self) -> (BigRational, BigRational) {
        (self.lo.to_rational(), self.hi.to_rational())
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_encloses_products() {
        let a = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(3));
        let b = Interval::new(Dyadic::from_int(1), Dyadic::from_int(4));
        let c = a.mul(&b, 10);
        assert_eq!(c, Interval::new(Dyadic::from_int(-8), Dyadic::from_int(12)));
        assert_eq!(a.sqr(10), Interval::new(Dyadic::zero(), Dyadic::from_int(9)));
    }

    #[test]
    fn div_by_zero_interval_refused() {
        let a = Interval::one();
        let z = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1));
        assert!(a.div(&z, 10).is_none());
        let three = Interval::from_int(3);
        let q = a.div(&three, 20).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert!(q.lo.to_rational() <= third && third <= q.hi.to_rational());
    }
}
