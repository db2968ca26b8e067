use super::dyadic::{Dyadic, Round};
use super::real::Interval;

/// Axis-aligned complex rectangle `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        Self { re, im }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        Self {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn real(re: Interval) -> Self {
        Self {
            re,
            im: Interval::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Interval::zero())
    }

    pub fn one() -> Self {
        Self::real(Interval::one())
    }

    pub fn from_cx(z: &Cx) -> Self {
        Self::point(z.re.clone(), z.im.clone())
    }

    /// Square box of half-width `r` around `z`.
    pub fn ball(z: &Cx, r: &Dyadic) -> Self {
        Self {
            re: Interval::point(z.re.clone()).inflate(r),
            im: Interval::point(z.im.clone()).inflate(r),
        }
    }

    pub fn add(&self, o: &CInterval, prec: u32) -> CInterval {
        CInterval {
            re: self.re.add(&o.re, prec),
            im: self.im.add(&o.im, prec),
        }
    }

    pub fn sub(&self, o: &CInterval, prec: u32) -> CInterval {
        CInterval {
            re: self.re.sub(&o.re, prec),
            im: self.im.sub(&o.im, prec),
        }
    }

    pub fn neg(&self) -> CInterval {
        CInterval {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &CInterval, prec: u32) -> CInterval {
        let re = self
            .re
            .mul(&o.re, prec)
            .sub(&self.im.mul(&o.im, prec), prec);
        let im = self
            .re
            .mul(&o.im, prec)
            .add(&self.im.mul(&o.re, prec), prec);
        CInterval { re, im }
    }

    pub fn scale(&self, k: &Interval, prec: u32) -> CInterval {
        CInterval {
            re: self.re.mul(k, prec),
            im: self.im.mul(k, prec),
        }
    }

    pub fn conj(&self) -> CInterval {
        CInterval {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sq(&self, prec: u32) -> Interval {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    /// `1/z`; `None` when the box may contain zero.
    pub fn recip(&self, prec: u32) -> Option<CInterval> {
        let n = self.norm_sq(prec);
        if !n.is_positive() {
            return None;
        }
        Some(CInterval {
            re: self.re.div(&n, prec)?,
            im: self.im.neg().div(&n, prec)?,
        })
    }

    pub fn div(&self, o: &CInterval, prec: u32) -> Option<CInterval> {
        Some(self.mul(&o.recip(prec)?, prec))
    }

    pub fn contains_point(&self, z: &Cx) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    pub fn strictly_inside(&self, o: &CInterval) -> bool {
        self.re.strictly_inside(&o.re) && self.im.strictly_inside(&o.im)
    }

    pub fn subset_of(&self, o: &CInterval) -> bool {
        self.re.subset_of(&o.re) && self.im.subset_of(&o.im)
    }

    pub fn intersect(&self, o: &CInterval) -> Option<CInterval> {
        Some(CInterval {
            re: self.re.intersect(&o.re)?,
            im: self.im.intersect(&o.im)?,
        })
    }

    pub fn disjoint(&self, o: &CInterval) -> bool {
        self.re.disjoint(&o.re) || self.im.disjoint(&o.im)
    }

    pub fn width(&self) -> Dyadic {
        Dyadic::max(&self.re.width(), &self.im.width())
    }

    pub fn mid(&self) -> Cx {
        Cx {
            re: self.re.mid(),
            im: self.im.mid(),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

/// Approximate complex number with dyadic parts, rounded to nearest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl Cx {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Dyadic::zero(), Dyadic::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self::new(Dyadic::from_f64(re), Dyadic::from_f64(im))
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Cx, prec: u32) -> Cx {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Cx::new(re.round(prec, Round::Nearest), im.round(prec, Round::Nearest))
    }

    pub fn norm_sq(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// `None` for zero.
    pub fn div(&self, o: &Cx, prec: u32) -> Option<Cx> {
        let n = o.norm_sq();
        if n.is_zero() {
            return None;
        }
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Some(Cx::new(
            re.div(&n, prec, Round::Nearest),
            im.div(&n, prec, Round::Nearest),
        ))
    }

    pub fn abs_f64(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_mul_point() {
        let i = CInterval::point(Dyadic::zero(), Dyadic::one());
        let m = i.mul(&i, 30);
        assert_eq!(m, CInterval::point(Dyadic::from_int(-1), Dyadic::zero()));
    }

    #[test]
    fn recip_of_box_encloses() {
        let z = CInterval::point(Dyadic::from_int(3), Dyadic::from_int(4));
        let r = z.recip(60).unwrap();
        // 1/(3+4i) = (3-4i)/25
        assert!(r.re.contains(&Dyadic::from_f64(0.12)) || r.re.width().to_f64() < 1e-15);
        assert!((r.im.mid().to_f64() + 0.16).abs() < 1e-15);
    }
}
