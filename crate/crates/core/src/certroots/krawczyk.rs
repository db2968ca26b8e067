//! Interval polynomials, approximate root finders and the Krawczyk test.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::interval::{CInterval, Cx, Dyadic, Interval, Round};
use crate::poly::{IntPoly, RatPoly};

/// Polynomial with complex-interval coefficients, low to high.
#[derive(Clone, Debug)]
pub struct IntervalPoly {
    pub coeffs: Vec<CInterval>,
}

impl IntervalPoly {
    pub fn from_int(p: &IntPoly) -> Self {
        Self {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| CInterval::real(Interval::point(Dyadic::from_bigint(c))))
                .collect(),
        }
    }

    pub fn from_rat(p: &RatPoly, prec: u32) -> Self {
        Self {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| CInterval::real(Interval::from_rational(c, prec)))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn derivative(&self, prec: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Interval::from_int(i as i64), prec))
                .collect(),
        }
    }

    /// Horner evaluation over a box.
    pub fn eval(&self, x: &CInterval, prec: u32) -> CInterval {
        let mut acc = CInterval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(c, prec);
        }
        acc
    }

    pub fn mid_coeffs(&self) -> Vec<Cx> {
        self.coeffs.iter().map(CInterval::mid).collect()
    }
}

pub(crate) fn horner_cx(coeffs: &[Cx], z: &Cx, prec: u32) -> Cx {
    let mut acc = Cx::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c);
    }
    acc
}

/// Krawczyk operator `K(X)`; returns it when `K(X)` lies in the interior of
/// `X`, which certifies a unique root of every member of `p` inside `X`.
pub fn krawczyk(p: &IntervalPoly, dp: &IntervalPoly, x: &CInterval, prec: u32) -> Option<CInterval> {
    let z = x.mid();
    let zb = CInterval::from_cx(&z);
    let dz = horner_cx(&dp.mid_coeffs(), &z, prec);
    let one = Cx::new(Dyadic::one(), Dyadic::zero());
    let y = CInterval::from_cx(&one.div(&dz, prec)?);
    let pz = p.eval(&zb, prec);
    let dpx = dp.eval(x, prec);
    let slope = CInterval::one().sub(&y.mul(&dpx, prec), prec);
    let k = zb
        .sub(&y.mul(&pz, prec), prec)
        .add(&slope.mul(&x.sub(&zb, prec), prec), prec);
    k.strictly_inside(x).then_some(k)
}

/// Newton polishing with midpoint coefficients; returns the last step size.
pub(crate) fn newton_polish(coeffs: &[Cx], dcoeffs: &[Cx], z: &mut Cx, prec: u32, iters: usize) -> f64 {
    let mut last = f64::INFINITY;
    let tiny = Dyadic::pow2(-(prec as i64) + 4);
    for _ in 0..iters {
        let f = horner_cx(coeffs, z, prec);
        let df = horner_cx(dcoeffs, z, prec);
        let Some(step) = f.div(&df, prec) else {
            break;
        };
        *z = z.sub(&step);
        last = step.abs_f64();
        if step.re.abs() <= tiny && step.im.abs() <= tiny {
            break;
        }
    }
    last
}

/// Tries to certify a root near `z`: Newton-polish, then run Krawczyk on
/// squares of decreasing radius, clipped to `within` when given.
pub(crate) fn certify_near(
    p: &IntervalPoly,
    dp: &IntervalPoly,
    z: &Cx,
    prec: u32,
    within: Option<&CInterval>,
) -> Option<CInterval> {
    let mid = p.mid_coeffs();
    let dmid = dp.mid_coeffs();
    let mut z = z.clone();
    newton_polish(&mid, &dmid, &mut z, prec, 60);
    let p64 = prec as i64;
    for k in [p64 * 3 / 4, p64 / 2, p64 / 4, 12, 6] {
        let r = Dyadic::pow2(-k.max(2));
        let mut x = CInterval::ball(&z, &r);
        if let Some(w) = within {
            match x.intersect(w) {
                Some(c) => x = c,
                None => continue,
            }
        }
        if let Some(k) = krawczyk(p, dp, &x, prec) {
            return Some(k);
        }
    }
    None
}

/// Iterated Krawczyk contraction `X <- K(X) ∩ X` from an isolating box.
pub(crate) fn krawczyk_contract(
    p: &IntervalPoly,
    dp: &IntervalPoly,
    start: &CInterval,
    prec: u32,
    target: &Dyadic,
) -> Option<CInterval> {
    let mut x = start.clone();
    let mut certified = false;
    for _ in 0..4 * prec as usize {
        let z = x.mid();
        let zb = CInterval::from_cx(&z);
        let dz = horner_cx(&dp.mid_coeffs(), &z, prec);
        let one = Cx::new(Dyadic::one(), Dyadic::zero());
        let y = CInterval::from_cx(&one.div(&dz, prec)?);
        let k = zb
            .sub(&y.mul(&p.eval(&zb, prec), prec), prec)
            .add(
                &CInterval::one()
                    .sub(&y.mul(&dp.eval(&x, prec), prec), prec)
                    .mul(&x.sub(&zb, prec), prec),
                prec,
            );
        if k.strictly_inside(&x) {
            certified = true;
        }
        let next = k.intersect(&x)?;
        if certified && next.width() <= *target {
            return Some(next);
        }
        if next == x {
            return None;
        }
        x = next;
    }
    None
}

/// Aberth–Ehrlich simultaneous iteration in double precision.
pub(crate) fn aberth_f64(p: &IntPoly) -> Vec<Complex64> {
    let n = p.deg();
    let lc = crate::interval::rational_to_f64(&BigRational::from_integer(p.leading()));
    let c: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|v| Complex64::new(crate::interval::rational_to_f64(&BigRational::from_integer(v.clone())) / lc, 0.0))
        .collect();
    let dc: Vec<Complex64> = (1..=n).map(|i| c[i] * i as f64).collect();
    let eval = |cs: &[Complex64], z: Complex64| cs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &k| a * z + k);
    // Fujiwara-style radius bound
    let radius = (1..=n)
        .map(|k| c[n - k].norm().powf(1.0 / k as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..(200 + 20 * n) {
        let mut moved = 0.0f64;
        for k in 0..n {
            let f = eval(&c, z[k]);
            let df = eval(&dc, z[k]);
            if f.norm() == 0.0 {
                continue;
            }
            let w = f / df;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Aberth iteration in dyadic arithmetic at `prec` bits.
pub(crate) fn aberth_dyadic(p: &IntPoly, start: &[Cx], prec: u32, iters: usize) -> Vec<Cx> {
    let coeffs = IntervalPoly::from_int(p);
    let mid = coeffs.mid_coeffs();
    let dmid = coeffs.derivative(prec).mid_coeffs();
    let one = Cx::new(Dyadic::one(), Dyadic::zero());
    let mut z = start.to_vec();
    let n = z.len();
    let tiny = Dyadic::pow2(-(prec as i64) + 8);
    for _ in 0..iters {
        let mut done = true;
        for k in 0..n {
            let f = horner_cx(&mid, &z[k], prec);
            let df = horner_cx(&dmid, &z[k], prec);
            let Some(w) = f.div(&df, prec) else { continue };
            let mut s = Cx::zero();
            for j in (0..n).filter(|&j| j != k) {
                if let Some(t) = one.div(&z[k].sub(&z[j]), prec) {
                    s = s.add(&t);
                }
            }
            let Some(step) = w.div(&one.sub(&w.mul(&s, prec)), prec) else { continue };
            if step.re.abs() > tiny || step.im.abs() > tiny {
                done = false;
            }
            z[k] = z[k].sub(&step);
        }
        if done {
            break;
        }
    }
    z
}

pub(crate) fn cx_from_c64(z: Complex64) -> Cx {
    Cx::from_f64(z.re, z.im)
}

/// Inward rounding of a rational box to dyadics, so the result is contained
/// in the exact box.
pub(crate) fn inward_box(re: (&BigRational, &BigRational), im: (&BigRational, &BigRational), prec: u32) -> Option<CInterval> {
    let r = (
        Dyadic::from_rational(re.0, prec, Round::Up),
        Dyadic::from_rational(re.1, prec, Round::Down),
    );
    let i = (
        Dyadic::from_rational(im.0, prec, Round::Up),
        Dyadic::from_rational(im.1, prec, Round::Down),
    );
    if r.0 > r.1 || i.0 > i.1 {
        return None;
    }
    Some(CInterval::new(Interval::new(r.0, r.1), Interval::new(i.0, i.1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn krawczyk_certifies_i() {
        let p = IntervalPoly::from_int(&IntPoly::parse("x^2 + 1").unwrap());
        let dp = p.derivative(64);
        let z = Cx::from_f64(0.01, 1.02);
        let b = certify_near(&p, &dp, &z, 64, None).unwrap();
        assert!(b.contains_point(&Cx::from_f64(0.0, 1.0)));
        assert!(b.width().to_f64() < 1e-10);
    }

    #[test]
    fn krawczyk_rejects_box_with_two_roots() {
        let p = IntervalPoly::from_int(&IntPoly::parse("x^2 - 1").unwrap());
        let dp = p.derivative(64);
        let x = CInterval::ball(&Cx::zero(), &Dyadic::from_int(2));
        assert!(krawczyk(&p, &dp, &x, 64).is_none());
    }

    #[test]
    fn aberth_finds_cube_roots_of_unity() {
        let z = aberth_f64(&IntPoly::parse("x^3 - 1").unwrap());
        assert_eq!(z.len(), 3);
        for r in z {
            assert!(((r * r * r) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
