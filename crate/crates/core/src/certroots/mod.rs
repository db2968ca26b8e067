//! Certified complex root isolation and algebraic numbers as
//! (minimal polynomial, isolating box) pairs.

mod krawczyk;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{decimal_string, rational_to_f64, CInterval, Cx, Dyadic, Interval, Precision};
use crate::poly::IntPoly;
use crate::sturm::{isolate_real_roots, refine_real_root, RealRootInterval};

pub use krawczyk::{krawczyk, IntervalPoly};
use krawczyk::{aberth_dyadic, aberth_f64, certify_near, cx_from_c64, inward_box, krawczyk_contract};

/// Closed rational rectangle `[re_lo, re_hi] x [im_lo, im_hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexInterval {
    pub re_lo: BigRational,
    pub re_hi: BigRational,
    pub im_lo: BigRational,
    pub im_hi: BigRational,
}

impl ComplexInterval {
    pub fn new(re_lo: BigRational, re_hi: BigRational, im_lo: BigRational, im_hi: BigRational) -> Result<Self> {
        if re_lo > re_hi || im_lo > im_hi {
            return Err(Error::EmptyInterval);
        }
        Ok(Self {
            re_lo,
            re_hi,
            im_lo,
            im_hi,
        })
    }

    /// Rectangle from decimal-friendly `f64` corners (exactly converted).
    pub fn from_f64s(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Result<Self> {
        let q = |v: f64| Dyadic::from_f64(v).to_rational();
        Self::new(q(re_lo), q(re_hi), q(im_lo), q(im_hi))
    }

    pub fn real(lo: BigRational, hi: BigRational) -> Self {
        Self {
            re_lo: lo,
            re_hi: hi,
            im_lo: BigRational::zero(),
            im_hi: BigRational::zero(),
        }
    }

    pub fn from_cinterval(c: &CInterval) -> Self {
        let (re_lo, re_hi) = c.re.to_rationals();
        let (im_lo, im_hi) = c.im.to_rationals();
        Self {
            re_lo,
            re_hi,
            im_lo,
            im_hi,
        }
    }

    /// Outward-rounded dyadic enclosure.
    pub fn to_cinterval(&self, prec: u32) -> CInterval {
        CInterval::new(
            Interval::from_rationals(&self.re_lo, &self.re_hi, prec),
            Interval::from_rationals(&self.im_lo, &self.im_hi, prec),
        )
    }

    pub fn width(&self) -> BigRational {
        let a = &self.re_hi - &self.re_lo;
        let b = &self.im_hi - &self.im_lo;
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn re_mid(&self) -> BigRational {
        (&self.re_lo + &self.re_hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn im_mid(&self) -> BigRational {
        (&self.im_lo + &self.im_hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_real_segment(&self) -> bool {
        self.im_lo.is_zero() && self.im_hi.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re_lo: self.re_lo.clone(),
            re_hi: self.re_hi.clone(),
            im_lo: -&self.im_hi,
            im_hi: -&self.im_lo,
        }
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        &self.re_lo <= re && re <= &self.re_hi && &self.im_lo <= im && im <= &self.im_hi
    }

    pub fn subset_of(&self, o: &ComplexInterval) -> bool {
        o.re_lo <= self.re_lo && self.re_hi <= o.re_hi && o.im_lo <= self.im_lo && self.im_hi <= o.im_hi
    }

    pub fn disjoint(&self, o: &ComplexInterval) -> bool {
        self.re_hi < o.re_lo || o.re_hi < self.re_lo || self.im_hi < o.im_lo || o.im_hi < self.im_lo
    }

    /// Exact range of `|z|^2` over the rectangle.
    pub fn modulus_sq_range(&self) -> (BigRational, BigRational) {
        let axis = |lo: &BigRational, hi: &BigRational| {
            let a = lo * lo;
            let b = hi * hi;
            let max = if a > b { a.clone() } else { b.clone() };
            let min = if !lo.is_positive() && !hi.is_negative() {
                BigRational::zero()
            } else if a < b {
                a
            } else {
                b
            };
            (min, max)
        };
        let (r0, r1) = axis(&self.re_lo, &self.re_hi);
        let (i0, i1) = axis(&self.im_lo, &self.im_hi);
        (r0 + i0, r1 + i1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let (a, b) = (&self.re_lo * c, &self.re_hi * c);
        let (d, e) = (&self.im_lo * c, &self.im_hi * c);
        if c.is_negative() {
            Self {
                re_lo: b,
                re_hi: a,
                im_lo: e,
                im_hi: d,
            }
        } else {
            Self {
                re_lo: a,
                re_hi: b,
                im_lo: d,
                im_hi: e,
            }
        }
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.re_mid()), rational_to_f64(&self.im_mid()))
    }

    /// `[re_lo, re_hi, im_lo, im_hi]` as exact rational strings.
    pub fn to_strings(&self) -> [String; 4] {
        [
            self.re_lo.to_string(),
            self.re_hi.to_string(),
            self.im_lo.to_string(),
            self.im_hi.to_string(),
        ]
    }
}

impl Serialize for ComplexInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.mid_f64();
        write!(f, "{}", format_complex(re, im, 15))
    }
}

pub(crate) fn format_complex(re: f64, im: f64, digits: usize) -> String {
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{:.*} {} {:.*}i", digits, re, sign, digits, im.abs())
}

/// An algebraic number given by an irreducible integer polynomial and a
/// rectangle containing exactly one of its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    pub min_poly: IntPoly,
    pub bx: ComplexInterval,
}

impl AlgebraicNumber {
    pub fn new(min_poly: IntPoly, bx: ComplexInterval) -> Self {
        Self { min_poly, bx }
    }

    pub fn is_real(&self) -> bool {
        self.bx.is_real_segment()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.min_poly.clone(), self.bx.conj())
    }

    pub fn approx(&self) -> (f64, f64) {
        self.bx.mid_f64()
    }

    /// Enclosure as a dyadic box (outward rounded).
    pub fn enclosure(&self, prec: u32) -> CInterval {
        self.bx.to_cinterval(prec)
    }

    /// `c * self` for a nonzero rational `c`; the minimal polynomial becomes
    /// the primitive form of `p(x / c)`, which need not be monic.
    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidArgument("scale factor must be nonzero".into()));
        }
        let (u, v) = (c.numer(), c.denom());
        let d = self.min_poly.deg();
        let coeffs = self
            .min_poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| a * num_traits::pow(v.clone(), i) * num_traits::pow(u.clone(), d - i))
            .collect();
        Ok(Self::new(IntPoly::new(coeffs).primitive_part(), self.bx.scale(c)))
    }

    /// Midpoint rendered with `digits` decimals on each axis.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = decimal_string(&self.bx.re_mid(), digits);
        let im = self.bx.im_mid();
        let sign = if im.is_negative() { "-" } else { "+" };
        format!("{re} {sign} {}i", decimal_string(&im.abs(), digits))
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bx)
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicNumber", 2)?;
        st.serialize_field("min_poly", &self.min_poly)?;
        st.serialize_field("box", &self.bx)?;
        st.end()
    }
}

/// Picks one root: an explicit rectangle or an ordinal in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSelector {
    Rect(ComplexInterval),
    Ordinal(usize),
}

/// Width used to fix the canonical root order (about `10^-30`).
pub fn canonical_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(30))
}

fn real_root_box(r: &RealRootInterval) -> ComplexInterval {
    let (lo, hi) = r.bounds();
    ComplexInterval::real(lo, hi)
}

fn real_root_from_box(b: &ComplexInterval) -> RealRootInterval {
    if b.re_lo == b.re_hi {
        RealRootInterval::Exact(b.re_lo.clone())
    } else {
        RealRootInterval::Open(b.re_lo.clone(), b.re_hi.clone())
    }
}

/// Certified boxes for the roots in the open upper half plane, at one
/// working precision.
fn upper_roots_at(p: &IntPoly, seeds: &[Cx], count: usize, prec: u32) -> Option<Vec<CInterval>> {
    if count == 0 {
        return Some(Vec::new());
    }
    let mut cand = seeds.to_vec();
    cand.sort_by(|a, b| b.im.cmp(&a.im));
    let ip = IntervalPoly::from_int(p);
    let dp = ip.derivative(prec);
    let mut boxes: Vec<CInterval> = Vec::with_capacity(count);
    for z in cand.iter().take(count) {
        if !z.im.is_positive() {
            return None;
        }
        let b = certify_near(&ip, &dp, z, prec, None)?;
        if !b.im.lo.is_positive() || boxes.iter().any(|o| !o.disjoint(&b)) {
            return None;
        }
        boxes.push(b);
    }
    Some(boxes)
}

/// Certified box around the root of an interval polynomial nearest to
/// `seed`; the box holds exactly one root of every member of the family.
pub fn certify_root_near(p: &IntervalPoly, seed: (f64, f64), prec: u32) -> Option<CInterval> {
    let dp = p.derivative(prec);
    certify_near(p, &dp, &Cx::from_f64(seed.0, seed.1), prec, None)
}

/// Isolates all complex roots of a square-free integer polynomial. Real
/// roots come from Sturm bisection (boxes with zero imaginary extent);
/// non-real roots are certified in the upper half plane by the Krawczyk
/// test and mirrored. The result is in canonical order: descending real
/// part, then ascending imaginary part, compared at width `10^-30`.
pub fn isolate_roots(p: &IntPoly, prec: &Precision) -> Result<Vec<ComplexInterval>> {
    Ok(isolate_algebraic(p, prec)?.into_iter().map(|a| a.bx).collect())
}

/// As [`isolate_roots`], packaged as algebraic numbers over `p`.
pub fn isolate_algebraic(p: &IntPoly, prec: &Precision) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_square_free() {
        return Err(Error::NotSquareFree);
    }
    let n = p.deg();
    let mut reals = isolate_real_roots(p)?;
    separate_real_roots(p, &mut reals);
    let upper_count = (n - reals.len()) / 2;

    let mut upper = None;
    if upper_count > 0 {
        let mut seeds: Vec<Cx> = aberth_f64(p).into_iter().map(cx_from_c64).collect();
        for bits in prec.schedule() {
            if bits > prec.start {
                seeds = aberth_dyadic(p, &seeds, bits, 40 + 4 * n);
            }
            prec.record(bits);
            if let Some(b) = upper_roots_at(p, &seeds, upper_count, bits) {
                upper = Some(b);
                break;
            }
        }
    } else {
        upper = Some(Vec::new());
    }
    let upper = upper.ok_or(Error::PrecisionExhausted { bits: prec.cap })?;

    let width = canonical_width();
    let mut out = Vec::with_capacity(n);
    for r in &reals {
        let r = refine_real_root(p, r, &width);
        out.push(AlgebraicNumber::new(p.clone(), real_root_box(&r)));
    }
    for b in &upper {
        let a = AlgebraicNumber::new(p.clone(), ComplexInterval::from_cinterval(b));
        let a = refine(&a, &width, prec)?;
        out.push(a.conj());
        out.push(a);
    }
    sort_canonical(&mut out);
    Ok(out)
}

fn separate_real_roots(p: &IntPoly, reals: &mut [RealRootInterval]) {
    let two = BigRational::from_integer(BigInt::from(2));
    for i in 1..reals.len() {
        while reals[i - 1].bounds().1 >= reals[i].bounds().0 {
            let wa = reals[i - 1].width() / &two;
            let wb = reals[i].width() / &two;
            reals[i - 1] = refine_real_root(p, &reals[i - 1], &wa);
            reals[i] = refine_real_root(p, &reals[i], &wb);
        }
    }
}

/// Canonical order on midpoints: descending real part, ties by ascending
/// imaginary part.
pub fn sort_canonical(v: &mut [AlgebraicNumber]) {
    v.sort_by(|a, b| {
        b.bx.re_mid()
            .cmp(&a.bx.re_mid())
            .then_with(|| a.bx.im_mid().cmp(&b.bx.im_mid()))
    });
}

pub(crate) fn bits_for_width(width: &BigRational) -> u32 {
    let mut bits = 0u32;
    let mut w = BigRational::one();
    while &w > width {
        w /= BigRational::from_integer(BigInt::from(2));
        bits += 1;
    }
    bits
}

/// Shrinks the isolating box of `a` until both sides are at most `width`.
/// The result is contained in the input box.
pub fn refine(a: &AlgebraicNumber, width: &BigRational, prec: &Precision) -> Result<AlgebraicNumber> {
    if &a.bx.width() <= width {
        return Ok(a.clone());
    }
    let p = &a.min_poly;
    if a.is_real() {
        let r = refine_real_root(p, &real_root_from_box(&a.bx), width);
        return Ok(AlgebraicNumber::new(p.clone(), real_root_box(&r)));
    }
    let need = bits_for_width(width) + 24;
    let target_bits = bits_for_width(width) + 1;
    let target = Dyadic::pow2(-(target_bits as i64));
    for bits in prec.schedule().into_iter().filter(|&b| b >= need.min(prec.cap)) {
        prec.record(bits);
        let ip = IntervalPoly::from_int(p);
        let dp = ip.derivative(bits);
        let Some(within) = inward_box((&a.bx.re_lo, &a.bx.re_hi), (&a.bx.im_lo, &a.bx.im_hi), bits) else {
            continue;
        };
        let z = within.mid();
        if let Some(k) = certify_near(&ip, &dp, &z, bits, Some(&within)) {
            if k.width() <= target {
                return Ok(AlgebraicNumber::new(p.clone(), ComplexInterval::from_cinterval(&k)));
            }
        }
        if let Some(k) = krawczyk_contract(&ip, &dp, &within, bits, &target) {
            return Ok(AlgebraicNumber::new(p.clone(), ComplexInterval::from_cinterval(&k)));
        }
    }
    Err(Error::PrecisionExhausted { bits: prec.cap })
}

/// The unique root of `p` matching `selector`.
pub fn select_root(p: &IntPoly, selector: &RootSelector, prec: &Precision) -> Result<AlgebraicNumber> {
    let roots = isolate_algebraic(p, prec)?;
    match selector {
        RootSelector::Ordinal(k) => roots.get(*k).cloned().ok_or(Error::SelectorMismatch(0)),
        RootSelector::Rect(rect) => {
            let mut inside = Vec::new();
            for r in &roots {
                if r.bx.subset_of(rect) {
                    inside.push(r.clone());
                } else if !r.bx.disjoint(rect) {
                    // the root may sit on the rectangle boundary; refine once
                    // more before giving up
                    let fine = refine(r, &BigRational::new(BigInt::one(), BigInt::one() << 200usize), prec)?;
                    if fine.bx.subset_of(rect) {
                        inside.push(fine);
                    } else if !fine.bx.disjoint(rect) {
                        return Err(Error::SelectorMismatch(usize::MAX));
                    }
                }
            }
            if inside.len() == 1 {
                Ok(inside.pop().expect("one element"))
            } else {
                Err(Error::SelectorMismatch(inside.len()))
            }
        }
    }
}

/// Index of `a` in the canonical order of its minimal polynomial's roots.
pub fn ordinal_of(a: &AlgebraicNumber, prec: &Precision) -> Result<usize> {
    let roots = isolate_algebraic(&a.min_poly, prec)?;
    let hits: Vec<usize> = (0..roots.len()).filter(|&i| !roots[i].bx.disjoint(&a.bx)).collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::SelectorMismatch(hits.len())),
    }
}

/// Exact three-way comparison of `|a|` with a rational `r >= 0`.
pub fn compare_modulus(a: &AlgebraicNumber, r: &BigRational, prec: &Precision) -> Result<Ordering> {
    if r.is_negative() {
        return Err(Error::InvalidArgument("modulus bound must be non-negative".into()));
    }
    let p = &a.min_poly;
    if a.is_real() {
        // the box holds exactly one root, so a rational root in it is `a`
        for cand in [r.clone(), -r.clone()] {
            if p.sign_at(&cand) == 0 && a.bx.contains(&cand, &BigRational::zero()) {
                return Ok(Ordering::Equal);
            }
        }
    }
    let r2 = r * r;
    // |a| = r forces r^2 / a to be the conjugate root, so a is a common root
    // of p and the rescaled reversal x^d p(r^2 / x)
    let related = if r.is_zero() {
        false
    } else {
        let d = p.deg();
        let (u, v) = (r2.numer(), r2.denom());
        let q: Vec<BigInt> = (0..=d)
            .map(|j| {
                let i = d - j;
                p.coeff(i) * num_traits::pow(u.clone(), i) * num_traits::pow(v.clone(), d - i)
            })
            .collect();
        !p.gcd(&IntPoly::new(q)).is_constant()
    };
    let mut cur = a.clone();
    for bits in prec.schedule() {
        prec.record(bits);
        let (lo, hi) = cur.bx.modulus_sq_range();
        if hi < r2 {
            return Ok(Ordering::Less);
        }
        if lo > r2 {
            return Ok(Ordering::Greater);
        }
        if related && !cur.is_real() {
            // enclose r^2 / a from a finer box and test it against the
            // isolating box of the conjugate, which holds exactly one root
            let fine = refine(&cur, &(cur.bx.width() / BigRational::from_integer(BigInt::from(64))), prec)?;
            let wp = bits.max(bits_for_width(&fine.bx.width()) + 32);
            let z = fine.enclosure(wp);
            let rr = CInterval::real(Interval::from_rational(&r2, wp));
            if let Some(w) = rr.div(&z, wp) {
                let conj = inward_box(
                    (&cur.bx.re_lo, &cur.bx.re_hi),
                    (&(-&cur.bx.im_hi), &(-&cur.bx.im_lo)),
                    wp,
                );
                if conj.is_some_and(|c| w.subset_of(&c)) {
                    return Ok(Ordering::Equal);
                }
            }
        }
        let w = BigRational::new(BigInt::one(), BigInt::one() << (bits as usize / 2));
        let w = if w < cur.bx.width() { w } else { cur.bx.width() / BigRational::from_integer(BigInt::from(4)) };
        if w.is_zero() {
            break;
        }
        cur = refine(&cur, &w, prec)?;
    }
    Err(Error::PrecisionExhausted { bits: prec.cap })
}
