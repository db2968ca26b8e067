//! Exact arithmetic in `Q[x]/(m)` for a monic irreducible integer modulus.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::certroots::{bits_for_width, refine, AlgebraicNumber, ComplexInterval};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::interval::{CInterval, Interval, Precision};
use crate::poly::{IntPoly, RatFunc, RatPoly};

/// The field `Q[x]/(modulus)`. Shared between its elements through an
/// `Arc`.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: IntPoly,
}

impl NumberField {
    /// Checks that `modulus` is monic and irreducible over Q.
    pub fn new(modulus: IntPoly) -> Result<Arc<Self>> {
        if modulus.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if modulus.deg() == 0 || !is_irreducible(&modulus) {
            return Err(Error::Reducible);
        }
        Ok(Arc::new(Self { modulus }))
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }
}

/// Element of a number field in the power basis `1, x, ..., x^(d-1)`.
#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.coeffs == o.coeffs
    }
}

impl Eq for NumberFieldElement {}

fn reduce(mut c: Vec<BigRational>, m: &IntPoly) -> Vec<BigRational> {
    let d = m.deg();
    while c.len() > d {
        let top = c.pop().expect("len > d");
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - d;
        for (i, mi) in m.coeffs()[..d].iter().enumerate() {
            c[shift + i] -= &top * BigRational::from_integer(mi.clone());
        }
    }
    c.resize(d, BigRational::zero());
    c
}

impl NumberFieldElement {
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        Self {
            coeffs: reduce(coeffs, &field.modulus),
            field: field.clone(),
        }
    }

    pub fn from_ratpoly(field: &Arc<NumberField>, p: &RatPoly) -> Self {
        Self::from_coeffs(field, p.coeffs().to_vec())
    }

    pub fn from_intpoly(field: &Arc<NumberField>, p: &IntPoly) -> Self {
        Self::from_coeffs(field, p.coeffs().iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn from_rational(field: &Arc<NumberField>, r: BigRational) -> Self {
        Self::from_coeffs(field, vec![r])
    }

    pub fn from_int(field: &Arc<NumberField>, k: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, Vec::new())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The class of `x`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.field.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn to_ratpoly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &o.field) || self.field == o.field {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self::from_coeffs(&self.field, c))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self::from_coeffs(&self.field, c))
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let d = self.coeffs.len();
        let mut c = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Ok(Self::from_coeffs(&self.field, c))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Inverse via the extended Euclidean algorithm against the modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.to_ratpoly().ext_gcd(&self.field.modulus.to_rat());
        debug_assert_eq!(g, RatPoly::one());
        Ok(Self::from_ratpoly(&self.field, &s))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        self.mul(&o.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Horner evaluation of a rational polynomial at this element.
    pub fn eval_ratpoly(&self, p: &RatPoly) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same field");
            acc.coeffs[0] += c;
        }
        acc
    }

    pub fn eval_intpoly(&self, p: &IntPoly) -> Self {
        self.eval_ratpoly(&p.to_rat())
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratpoly())
    }
}

impl Serialize for NumberFieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("NumberFieldElement", 2)?;
        st.serialize_field("modulus", &self.field.modulus)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Operation selector for [`nf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfOp {
    Add,
    Sub,
    Mul,
    Inv,
    Div,
    Pow,
}

/// Second operand of [`nf_arith`]: an element, or an exponent for `Pow`.
#[derive(Clone, Debug)]
pub enum NfOperand<'a> {
    None,
    Element(&'a NumberFieldElement),
    Exponent(i64),
}

pub fn nf_arith(op: NfOp, a: &NumberFieldElement, b: NfOperand<'_>) -> Result<NumberFieldElement> {
    let need = |b: NfOperand<'_>| match b {
        NfOperand::Element(e) => Ok(e.clone()),
        _ => Err(Error::InvalidArgument("operation needs a second element".into())),
    };
    match op {
        NfOp::Add => a.add(&need(b)?),
        NfOp::Sub => a.sub(&need(b)?),
        NfOp::Mul => a.mul(&need(b)?),
        NfOp::Div => a.div(&need(b)?),
        NfOp::Inv => a.inv(),
        NfOp::Pow => match b {
            NfOperand::Exponent(e) => a.pow(e),
            _ => Err(Error::InvalidArgument("pow needs an integer exponent".into())),
        },
    }
}

/// `r(a)`, normalised to a single field element.
pub fn nf_eval_ratfunc(r: &RatFunc, a: &NumberFieldElement) -> Result<NumberFieldElement> {
    let den = a.eval_intpoly(r.denominator());
    if den.is_zero() {
        return Err(Error::Degenerate("pole at this element".into()));
    }
    a.eval_intpoly(r.numerator()).mul(&den.inv()?)
}

/// Interval Horner evaluation of the element's representative at `z`.
pub fn embed_at(a: &NumberFieldElement, z: &CInterval, prec: u32) -> CInterval {
    let mut acc = CInterval::zero();
    for c in a.coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(&CInterval::real(Interval::from_rational(c, prec)), prec);
    }
    acc
}

/// Certified image of `a` under the embedding sending the generator to
/// `root`, with both sides of the box at most `width`.
pub fn nf_embed(
    a: &NumberFieldElement,
    root: &AlgebraicNumber,
    width: &BigRational,
    prec: &Precision,
) -> Result<ComplexInterval> {
    if &root.min_poly != a.modulus() {
        return Err(Error::ModulusMismatch);
    }
    let base = bits_for_width(width) + 8;
    for bits in prec.schedule().into_iter().filter(|&b| b >= base.min(prec.cap)) {
        prec.record(bits);
        let rw = BigRational::new(BigInt::one(), BigInt::one() << (bits as usize - 8));
        let r = refine(root, &rw, prec)?;
        let v = ComplexInterval::from_cinterval(&embed_at(a, &r.enclosure(bits), bits));
        if &v.width() <= width {
            return Ok(v);
        }
    }
    Err(Error::PrecisionExhausted { bits: prec.cap })
}

/// Image of `a` under the automorphism `x -> 1/x` of a reciprocal modulus.
pub fn nf_involution(a: &NumberFieldElement) -> Result<NumberFieldElement> {
    let m = a.modulus();
    if !m.is_reciprocal() || m.coeff(0).is_zero() {
        return Err(Error::NotReciprocal);
    }
    let xinv = NumberFieldElement::generator(a.field()).inv()?;
    Ok(xinv.eval_ratpoly(&a.to_ratpoly()))
}

/// Exact test `a == nf_involution(a)`.
pub fn is_involution_fixed(a: &NumberFieldElement) -> Result<bool> {
    Ok(&nf_involution(a)? == a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certroots::{select_root, RootSelector};

    fn phi14() -> Arc<NumberField> {
        NumberField::new(IntPoly::parse("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1").unwrap()).unwrap()
    }

    fn elem(k: &Arc<NumberField>, s: &str) -> NumberFieldElement {
        NumberFieldElement::from_intpoly(k, &IntPoly::parse(s).unwrap())
    }

    #[test]
    fn generator_inverse() {
        let k = phi14();
        let d = NumberFieldElement::generator(&k);
        assert_eq!(d.inv().unwrap(), elem(&k, "-x^13 + x^10 + x^9 - x^6 + x^3 + x^2"));
        assert!(d.mul(&d.inv().unwrap()).unwrap().is_one());
    }

    #[test]
    fn fourteenth_power_reduces() {
        let k = phi14();
        let d = NumberFieldElement::generator(&k);
        assert_eq!(d.pow(14).unwrap(), elem(&k, "x^11 + x^10 - x^7 + x^4 + x^3 - 1"));
        assert_eq!(d.pow(-1).unwrap(), d.inv().unwrap());
    }

    #[test]
    fn mismatched_fields() {
        let k = phi14();
        let l = NumberField::new(IntPoly::parse("x^2 - 2").unwrap()).unwrap();
        let e = NumberFieldElement::generator(&k).add(&NumberFieldElement::generator(&l));
        assert_eq!(e.unwrap_err(), Error::ModulusMismatch);
        assert_eq!(NumberField::new(IntPoly::parse("x^2 - 1").unwrap()).unwrap_err(), Error::Reducible);
    }

    #[test]
    fn ratfunc_cancellation() {
        let k = phi14();
        let d = NumberFieldElement::generator(&k);
        let r = RatFunc::new(IntPoly::parse("x^2 - 1").unwrap(), IntPoly::parse("x - 1").unwrap()).unwrap();
        assert_eq!(nf_eval_ratfunc(&r, &d).unwrap(), d.add(&NumberFieldElement::one(&k)).unwrap());
    }

    #[test]
    fn involution_basics() {
        let k = phi14();
        let d = NumberFieldElement::generator(&k);
        let di = d.inv().unwrap();
        assert_eq!(nf_involution(&d).unwrap(), di);
        let s = d.add(&di).unwrap();
        assert!(is_involution_fixed(&s).unwrap());
        assert!(!is_involution_fixed(&d).unwrap());
        let l = NumberField::new(IntPoly::parse("x^2 - 2").unwrap()).unwrap();
        assert_eq!(nf_involution(&NumberFieldElement::generator(&l)).unwrap_err(), Error::NotReciprocal);
    }

    #[test]
    fn embedding_of_one_and_generator() {
        let k = phi14();
        let prec = Precision::default();
        let rect = ComplexInterval::from_f64s(-1.0, -0.9, -0.2, -0.1).unwrap();
        let delta = select_root(k.modulus(), &RootSelector::Rect(rect), &prec).unwrap();
        let w = BigRational::new(BigInt::one(), BigInt::from(10).pow(20));
        let one = nf_embed(&NumberFieldElement::one(&k), &delta, &w, &prec).unwrap();
        assert!(one.contains(&BigRational::one(), &BigRational::zero()));
        let g = nf_embed(&NumberFieldElement::generator(&k), &delta, &w, &prec).unwrap();
        let (re, im) = g.mid_f64();
        assert!((re + 0.99039883523004).abs() < 1e-13 && (im + 0.13823945592693).abs() < 1e-13);
    }
}
