//! Factorization over F2 and Z, cyclotomic detection, Salem classification
//! and the cyclotomic-times-Salem spectral decomposition.

mod f2;
mod fp;
mod zassenhaus;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{ln_interval, Interval, RealEnclosure};
use crate::poly::{trace_polynomial, IntPoly};
use crate::sturm::{refine_real_root, RealRootInterval, SturmSequence};

pub use f2::{factor_mod2, F2Poly};
pub use fp::{berlekamp, factor_fp, square_free_decomposition, FpPoly};

/// Canonical factor order: ascending degree, then coefficients low to high.
fn canonical_cmp(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Complete factorization over Z of a nonzero polynomial into primitive
/// irreducible factors with positive leading coefficient. Integer content
/// and sign are dropped; constants yield an empty list.
pub fn factor_z(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    if p.is_zero() || p.deg() == 0 {
        return Vec::new();
    }
    let f = p.primitive_part();
    let mut out = Vec::new();
    for (part, m) in zassenhaus::yun(&f) {
        for g in zassenhaus::factor_square_free(&part) {
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    out
}

/// `true` iff `p` has a single irreducible factor of multiplicity one.
pub fn is_irreducible(p: &IntPoly) -> bool {
    let fs = factor_z(p);
    fs.len() == 1 && fs[0].1 == 1
}

/// One Graeffe step: the polynomial whose roots are the squares of the
/// roots of `p`.
pub fn graeffe(p: &IntPoly) -> IntPoly {
    let prod = p * &p.negate_variable();
    let sign = if p.deg().is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    IntPoly::new(prod.coeffs().iter().step_by(2).map(|c| c * &sign).collect())
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Graeffe orbit test on a monic polynomial: a cycle means every root is a
/// root of unity; a coefficient beyond the binomial bound means some root
/// lies off the unit circle.
fn graeffe_cycles(p: &IntPoly) -> Result<bool> {
    let c0 = p.coeff(0);
    if c0.abs() != BigInt::one() {
        return Ok(false);
    }
    let n = p.deg();
    let bounds = binomials(n);
    let mut seen = HashSet::new();
    let mut cur = p.clone();
    for _ in 0..=2 * n * n {
        if cur.coeffs().iter().zip(&bounds).any(|(c, b)| c.abs() > *b) {
            return Ok(false);
        }
        if !seen.insert(cur.clone()) {
            return Ok(true);
        }
        cur = graeffe(&cur);
    }
    Err(Error::Inconclusive("Graeffe iteration cap reached".into()))
}

/// Whether all roots of a monic irreducible polynomial are roots of unity.
pub fn is_cyclotomic(p: &IntPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_irreducible(p) {
        return Err(Error::Reducible);
    }
    graeffe_cycles(p)
}

/// Outcome of the Salem test, with a certified enclosure of the Salem
/// number when the test passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalemReport {
    pub polynomial: IntPoly,
    pub is_monic: bool,
    pub is_reciprocal: bool,
    pub is_irreducible: bool,
    pub real_roots_off_circle: usize,
    pub is_salem: bool,
    pub salem_number: Option<RealEnclosure>,
}

impl Serialize for SalemReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SalemReport", 7)?;
        st.serialize_field("polynomial", &self.polynomial)?;
        st.serialize_field("is_monic", &self.is_monic)?;
        st.serialize_field("is_reciprocal", &self.is_reciprocal)?;
        st.serialize_field("is_irreducible", &self.is_irreducible)?;
        st.serialize_field("real_roots_off_circle", &self.real_roots_off_circle)?;
        st.serialize_field("is_salem", &self.is_salem)?;
        st.serialize_field("salem_number", &self.salem_number)?;
        st.end()
    }
}

/// Default enclosure width for Salem numbers, `2^-64`.
pub fn default_salem_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 64usize)
}

fn real_roots_off_circle(p: &IntPoly) -> usize {
    if p.is_zero() || p.deg() == 0 {
        return 0;
    }
    let q = p.square_free_part();
    let total = SturmSequence::new(&q).map(|s| s.count_all()).unwrap_or(0);
    let on = [BigInt::one(), -BigInt::one()]
        .iter()
        .filter(|v| q.eval(v).is_zero())
        .count();
    total - on
}

/// Enclosure of the unique root in `(1, inf)` of a Salem polynomial, of
/// width at most `width`.
pub fn salem_number_enclosure(p: &IntPoly, width: &BigRational) -> Result<RealEnclosure> {
    let one = BigRational::one();
    let b = BigRational::from_integer(p.cauchy_bound() + BigInt::one());
    if p.sign_at(&one) >= 0 || p.sign_at(&b) <= 0 {
        return Err(Error::NotSalem);
    }
    match refine_real_root(p, &RealRootInterval::Open(one, b), width) {
        RealRootInterval::Exact(x) => Ok(RealEnclosure::exact(x)),
        RealRootInterval::Open(lo, hi) => Ok(RealEnclosure::new(lo, hi)),
    }
}

fn trace_test(p: &IntPoly) -> bool {
    let n = p.deg() / 2;
    let Ok(g) = trace_polynomial(p) else {
        return false;
    };
    let two = BigRational::from_integer(BigInt::from(2));
    if g.sign_at(&two) == 0 || g.sign_at(&-two.clone()) == 0 {
        return false;
    }
    let Ok(seq) = SturmSequence::new(&g) else {
        return false;
    };
    let big = BigRational::from_integer(g.cauchy_bound() + BigInt::from(3));
    seq.count(&two, &big) == 1 && seq.count(&-two.clone(), &two) == n - 1 && seq.count_all() == n
}

/// Classifies `p` as Salem or not. Never fails: non-Salem is a valid
/// answer.
pub fn salem_classify(p: &IntPoly) -> SalemReport {
    let is_monic = !p.is_zero() && p.is_monic();
    let is_reciprocal = !p.is_zero() && p.is_reciprocal();
    let is_irreducible = !p.is_zero() && p.deg() > 0 && is_irreducible(p);
    let off = real_roots_off_circle(p);
    let is_salem =
        is_monic && is_reciprocal && is_irreducible && p.deg() >= 2 && p.deg().is_multiple_of(2) && trace_test(p);
    let salem_number = if is_salem {
        salem_number_enclosure(p, &default_salem_width()).ok()
    } else {
        None
    };
    SalemReport {
        polynomial: p.clone(),
        is_monic,
        is_reciprocal,
        is_irreducible,
        real_roots_off_circle: off,
        is_salem: is_salem && salem_number.is_some(),
        salem_number,
    }
}

/// Factorization of an isometry spectrum into cyclotomic factors and at
/// most one Salem factor, with the resulting entropy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralDecomposition {
    pub cyclotomic_factors: Vec<(IntPoly, usize)>,
    pub salem_factor: Option<IntPoly>,
    pub salem_number: Option<RealEnclosure>,
    pub entropy: RealEnclosure,
}

impl Serialize for SpectralDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            factor: &'a IntPoly,
            multiplicity: usize,
        }
        let cyc: Vec<Factor> = self
            .cyclotomic_factors
            .iter()
            .map(|(f, m)| Factor {
                factor: f,
                multiplicity: *m,
            })
            .collect();
        let mut st = s.serialize_struct("SpectralDecomposition", 3)?;
        st.serialize_field("cyclotomic", &cyc)?;
        st.serialize_field("salem", &self.salem_factor)?;
        st.serialize_field("entropy", &self.entropy)?;
        st.end()
    }
}

/// Entropy enclosure width target, `2^-100`.
const ENTROPY_BITS: u32 = 100;

/// `log` of a Salem number, certified.
pub fn log_enclosure(x: &RealEnclosure) -> Result<RealEnclosure> {
    let i = Interval::from_rationals(&x.lo, &x.hi, ENTROPY_BITS + 20);
    let l = ln_interval(&i, ENTROPY_BITS + 20).ok_or_else(|| Error::InvalidArgument("log of non-positive".into()))?;
    Ok(RealEnclosure::from_interval(&l))
}

/// Splits a monic polynomial into cyclotomic and Salem factors.
pub fn spectral_classify(p: &IntPoly) -> Result<SpectralDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut cyclotomic_factors = Vec::new();
    let mut salem: Option<IntPoly> = None;
    for (f, m) in factor_z(p) {
        if graeffe_cycles(&f)? {
            cyclotomic_factors.push((f, m));
        } else if salem_classify(&f).is_salem {
            if m > 1 || salem.is_some() {
                return Err(Error::NotIsometrySpectrum(format!("more than one Salem factor ({f})")));
            }
            salem = Some(f);
        } else {
            return Err(Error::NotIsometrySpectrum(format!("factor {f} is neither cyclotomic nor Salem")));
        }
    }
    let (salem_number, entropy) = match &salem {
        Some(s) => {
            let w = BigRational::new(BigInt::one(), BigInt::one() << (ENTROPY_BITS as usize + 8));
            let a = salem_number_enclosure(s, &w)?;
            let h = log_enclosure(&a)?;
            (Some(a), h)
        }
        None => (None, RealEnclosure::exact(BigRational::zero())),
    };
    Ok(SpectralDecomposition {
        cyclotomic_factors,
        salem_factor: salem,
        salem_number,
        entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn product(fs: &[(IntPoly, usize)]) -> IntPoly {
        fs.iter().fold(IntPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(factor_z(&p("x^2 - 1")), vec![(p("x - 1"), 1), (p("x + 1"), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_splitting() {
        // x^4 + 1 splits modulo every prime but is irreducible over Z
        assert_eq!(factor_z(&p("x^4 + 1")), vec![(p("x^4 + 1"), 1)]);
        let f = p("x^8 - 40x^6 + 352x^4 - 960x^2 + 576");
        assert_eq!(factor_z(&f), vec![(f.clone(), 1)]);
    }

    #[test]
    fn mixed_factorization_round_trips() {
        let f = &(&p("x^2 + x + 1").pow(2) * &p("3x^3 - 2x + 7")) * &p("x - 5").pow(3);
        let fs = factor_z(&f);
        assert_eq!(product(&fs), f);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn non_monic_recombination() {
        let f = &p("6x^2 + 5x + 1") * &p("4x^2 - 1");
        let fs = factor_z(&f);
        assert_eq!(product(&fs), f);
        assert_eq!(fs, vec![(p("2x - 1"), 1), (p("2x + 1"), 2), (p("3x + 1"), 1)]);
    }

    #[test]
    fn cyclotomic_checks() {
        assert!(is_cyclotomic(&p("x^2 + x + 1")).unwrap());
        assert!(is_cyclotomic(&p("x - 1")).unwrap());
        assert!(!is_cyclotomic(&p("x")).unwrap());
        assert!(!is_cyclotomic(&p("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1")).unwrap());
        assert_eq!(is_cyclotomic(&p("x^2 - 1")).unwrap_err(), Error::Reducible);
    }

    #[test]
    fn quadratic_salem() {
        let r = salem_classify(&p("x^2 - 3x + 1"));
        assert!(r.is_salem);
        let v = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((r.salem_number.unwrap().mid_f64() - v).abs() < 1e-15);
        assert!(!salem_classify(&p("x^2 - 1")).is_salem);
    }

    #[test]
    fn pure_cyclotomic_has_zero_entropy() {
        let d = spectral_classify(&p("x - 1").pow(22)).unwrap();
        assert!(d.salem_factor.is_none());
        assert!(d.entropy.lo.is_zero() && d.entropy.hi.is_zero());
    }

    #[test]
    fn rejects_non_spectrum() {
        assert!(matches!(spectral_classify(&p("x^2 - 2")), Err(Error::NotIsometrySpectrum(_))));
    }

    #[test]
    fn k3_spectrum() {
        let phi = p("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1");
        let f = &p("x - 1").pow(8) * &phi;
        assert_eq!(factor_z(&f), vec![(p("x - 1"), 8), (phi.clone(), 1)]);
        let d = spectral_classify(&f).unwrap();
        assert_eq!(d.salem_factor, Some(phi));
        assert_eq!(d.cyclotomic_factors, vec![(p("x - 1"), 8)]);
        assert!((d.salem_number.unwrap().mid_f64() - 1.200026523).abs() < 1e-9);
    }
}
