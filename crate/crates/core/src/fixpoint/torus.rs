use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{ln_interval, Interval, RealEnclosure};
use crate::matrix::{char_poly, IntMatrix};
use crate::sturm::{isolate_real_roots, refine_real_root, RealRootInterval};

const BITS: u32 = 120;

/// Which of the three regimes `|a| >= |b| >= 1`, `|a| >= 1 >= |b|`,
/// `1 >= |a| >= |b|` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TorusCase {
    #[serde(rename = "i")]
    BothExpanding,
    #[serde(rename = "ii")]
    OneExpanding,
    #[serde(rename = "iii")]
    NoneExpanding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusEntropy {
    pub char_poly: crate::poly::IntPoly,
    /// `|a| >= |b|`.
    pub moduli: [RealEnclosure; 2],
    pub case: TorusCase,
    pub entropy: RealEnclosure,
}

/// Position of a modulus enclosure relative to 1; `None` means exactly 1.
fn side_of_one(e: &RealEnclosure) -> Option<std::cmp::Ordering> {
    let one = BigRational::one();
    if e.lo > one {
        Some(std::cmp::Ordering::Greater)
    } else if e.hi < one {
        Some(std::cmp::Ordering::Less)
    } else {
        None
    }
}

/// Enclosure of `|root|` that is either exact or excludes 1.
fn modulus_enclosure(p: &crate::poly::IntPoly, r: &RealRootInterval, width: &BigRational) -> RealEnclosure {
    let mut w = width.clone();
    loop {
        let e = to_enclosure(&refine_real_root(p, r, &w));
        let e = if e.hi.is_negative() || (e.hi.is_zero() && e.lo.is_zero()) {
            RealEnclosure::new(-e.hi, -e.lo)
        } else {
            e
        };
        if e.lo == e.hi || side_of_one(&e).is_some() {
            return e;
        }
        w /= BigRational::from_integer(BigInt::one() << BITS as usize);
    }
}

fn log_enclosure(e: &RealEnclosure) -> Result<Interval> {
    let i = Interval::from_rationals(&e.lo, &e.hi, BITS);
    ln_interval(&i, BITS).ok_or(Error::SingularMatrix)
}

/// Entropy `2 * sum max(0, log |l|)` over the eigenvalues of a nonsingular
/// integer 2x2 matrix.
pub fn torus_entropy(m: &IntMatrix) -> Result<TorusEntropy> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let cp = char_poly(m)?;
    let det = cp.coeff(0);
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let tr = -cp.coeff(1);
    let disc = &tr * &tr - BigInt::from(4) * &det;
    let width = BigRational::new(BigInt::one(), BigInt::one() << BITS as usize);
    let moduli: [RealEnclosure; 2] = if disc.is_negative() {
        // |a|^2 = |b|^2 = det; enclose sqrt(det) through x^2 - det
        let q = crate::poly::IntPoly::new(vec![-det.clone(), BigInt::zero(), BigInt::one()]);
        let e = modulus_enclosure(&q, &isolate_real_roots(&q)?.pop().expect("positive root"), &width);
        [e.clone(), e]
    } else {
        let sf = cp.square_free_part();
        let roots = isolate_real_roots(&sf)?;
        let mut es: Vec<RealEnclosure> = roots
            .iter()
            .map(|r| modulus_enclosure(&sf, r, &width))
            .collect();
        if es.len() == 1 {
            es.push(es[0].clone());
        }
        es.sort_by(|a, b| b.lo.cmp(&a.lo));
        [es[0].clone(), es[1].clone()]
    };
    let sides = [side_of_one(&moduli[0]), side_of_one(&moduli[1])];
    let expanding = |s: Option<std::cmp::Ordering>| s == Some(std::cmp::Ordering::Greater);
    let case = if !expanding(sides[0]) {
        TorusCase::NoneExpanding
    } else if sides[1] != Some(std::cmp::Ordering::Less) {
        TorusCase::BothExpanding
    } else {
        TorusCase::OneExpanding
    };
    let mut h = Interval::zero();
    for (e, s) in moduli.iter().zip(sides) {
        if expanding(s) {
            let l = log_enclosure(e)?;
            h = h.add(&l, BITS).add(&l, BITS);
        }
    }
    let entropy = if h.lo.is_zero() && h.hi.is_zero() {
        RealEnclosure::exact(BigRational::zero())
    } else {
        RealEnclosure::from_interval(&h)
    };
    Ok(TorusEntropy {
        char_poly: cp,
        moduli,
        case,
        entropy,
    })
}

fn to_enclosure(r: &RealRootInterval) -> RealEnclosure {
    match r {
        RealRootInterval::Exact(x) => RealEnclosure::exact(x.clone()),
        RealRootInterval::Open(a, b) => RealEnclosure::new(a.clone(), b.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
        IntMatrix::from_rows(&[vec![a, b], vec![c, d]]).unwrap()
    }

    #[test]
    fn identity_has_zero_entropy() {
        let t = torus_entropy(&m(1, 0, 0, 1)).unwrap();
        assert_eq!(t.case, TorusCase::NoneExpanding);
        assert!(t.entropy.lo.is_zero() && t.entropy.hi.is_zero());
    }

    #[test]
    fn scalar_two() {
        let t = torus_entropy(&m(2, 0, 0, 2)).unwrap();
        assert_eq!(t.case, TorusCase::BothExpanding);
        assert!((t.entropy.mid_f64() - 16f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn cat_map() {
        let t = torus_entropy(&m(2, 1, 1, 1)).unwrap();
        assert_eq!(t.case, TorusCase::OneExpanding);
        let want = 2.0 * ((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((t.entropy.mid_f64() - want).abs() < 1e-14);
        assert!(t.entropy.width() < BigRational::new(BigInt::one(), BigInt::from(10).pow(30)));
    }

    #[test]
    fn rotation_and_singular() {
        let t = torus_entropy(&m(0, -1, 1, 0)).unwrap();
        assert_eq!(t.case, TorusCase::NoneExpanding);
        let t = torus_entropy(&m(1, -1, 1, 1)).unwrap();
        assert_eq!(t.case, TorusCase::BothExpanding);
        assert!((t.entropy.mid_f64() - 4f64.ln()).abs() < 1e-14);
        assert_eq!(torus_entropy(&m(1, 2, 2, 4)).unwrap_err(), Error::SingularMatrix);
    }
}
