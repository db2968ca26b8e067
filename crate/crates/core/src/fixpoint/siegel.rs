use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::powers_dependency_witness;
use crate::certroots::{
    bits_for_width, certify_root_near, compare_modulus, refine, AlgebraicNumber, ComplexInterval, IntervalPoly,
};
use crate::error::{Error, Result};
use crate::interval::{CInterval, Precision};
use crate::numfield::{embed_at, is_involution_fixed, nf_embed, NumberFieldElement};

/// Certificate for `|e1| = |e2| = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitModulusCertificate {
    /// `trace^2 / det - 2`.
    pub k: NumberFieldElement,
    pub k_involution_fixed: bool,
    pub root_on_unit_circle: bool,
    pub k_embedding: Option<ComplexInterval>,
    pub abs_k_below_two: Option<bool>,
}

/// Quadratic roots at one conjugate and whether they settle independence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateCheck {
    pub ordinal: usize,
    pub conjugate: AlgebraicNumber,
    pub roots: [ComplexInterval; 2],
    pub moduli_vs_one: [UnitSide; 2],
    pub decisive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndependenceCertificate {
    /// `e1 = g^a`, `e2 = g^b`, so `e1^m e2^n = 1` for the witness.
    Dependent { exponents: (i64, i64), witness: (i64, i64) },
    /// First conjugate in canonical order whose quadratic has a root of
    /// modulus above one; `others` holds further decisive ones on request.
    Decisive {
        check: ConjugateCheck,
        generator_not_root_of_unity: bool,
        others: Vec<ConjugateCheck>,
    },
    Inconclusive { checked: Vec<ConjugateCheck> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiegelVerdict {
    pub condition_algebraic: bool,
    pub condition_unit_modulus: bool,
    pub unit_modulus: UnitModulusCertificate,
    pub condition_mult_independent: bool,
    pub independence: IndependenceCertificate,
    /// Roots of `x^2 - trace x + det` at the chosen embedding, ascending
    /// real part.
    pub eigenvalues: [ComplexInterval; 2],
    pub has_siegel_disk: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SiegelOptions {
    /// Collect every decisive conjugate, not just the first.
    pub all_decisive: bool,
    /// Restrict the conjugate scan to this canonical ordinal.
    pub conjugate: Option<usize>,
    /// Width of reported eigenvalue boxes; defaults to `2^-64`.
    pub width: Option<BigRational>,
}

/// Exponents `(a, b)` with `g^a + g^b = trace` and `g^(a+b) = det`, for
/// `|a|, |b| <= 4 deg`.
pub fn dependency_search(trace: &NumberFieldElement, det: &NumberFieldElement) -> Result<Option<(i64, i64)>> {
    let field = trace.field();
    let r = 4 * field.degree() as i64;
    let g = NumberFieldElement::generator(field);
    let gi = g.inv()?;
    // powers[i] = g^(i - 2r)
    let mut pos = vec![NumberFieldElement::one(field)];
    let mut neg = vec![NumberFieldElement::one(field)];
    for i in 1..=(2 * r) as usize {
        pos.push(pos[i - 1].mul(&g)?);
        neg.push(neg[i - 1].mul(&gi)?);
    }
    let pw = |e: i64| if e >= 0 { &pos[e as usize] } else { &neg[(-e) as usize] };
    let Some(e) = (-2 * r..=2 * r).find(|&e| pw(e) == det) else {
        return Ok(None);
    };
    for a in -r..=r {
        let b = e - a;
        if b.abs() > r {
            continue;
        }
        if &pw(a).add(pw(b))? == trace {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

fn rational_pow2(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Certified roots of `x^2 - trace x + det` under the embedding at `root`,
/// sorted by ascending real part, each box at most `width` wide.
pub fn quadratic_roots(
    trace: &NumberFieldElement,
    det: &NumberFieldElement,
    root: &AlgebraicNumber,
    width: &BigRational,
    prec: &Precision,
) -> Result<[ComplexInterval; 2]> {
    if &root.min_poly != trace.modulus() {
        return Err(Error::ModulusMismatch);
    }
    let start = bits_for_width(width) + 16;
    for bits in prec.schedule().into_iter().filter(|&b| b >= start.min(prec.cap)) {
        prec.record(bits);
        let r = refine(root, &rational_pow2(bits - 8), prec)?;
        let z = r.enclosure(bits);
        let t = embed_at(trace, &z, bits);
        let d = embed_at(det, &z, bits);
        let p = IntervalPoly {
            coeffs: vec![d.clone(), t.neg(), CInterval::one()],
        };
        let (tr, ti) = t.mid().to_f64();
        let (dr, di) = d.mid().to_f64();
        let tc = Complex64::new(tr, ti);
        let sq = (tc * tc - 4.0 * Complex64::new(dr, di)).sqrt();
        let seeds = [(tc + sq) / 2.0, (tc - sq) / 2.0];
        let boxes: Vec<CInterval> = seeds
            .iter()
            .filter_map(|s| certify_root_near(&p, (s.re, s.im), bits))
            .collect();
        if boxes.len() != 2 || !boxes[0].disjoint(&boxes[1]) {
            continue;
        }
        let mut out: Vec<ComplexInterval> = boxes.iter().map(ComplexInterval::from_cinterval).collect();
        if out.iter().any(|b| &b.width() > width) {
            continue;
        }
        out.sort_by_key(|a| a.re_mid());
        let second = out.pop().expect("two roots");
        let first = out.pop().expect("two roots");
        return Ok([first, second]);
    }
    Err(Error::PrecisionExhausted { bits: prec.cap })
}

/// Position of a box relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSide {
    Inside,
    Outside,
    Undecided,
}

fn modulus_vs_one(b: &ComplexInterval) -> UnitSide {
    let (lo, hi) = b.modulus_sq_range();
    let one = BigRational::one();
    if lo > one {
        UnitSide::Outside
    } else if hi < one {
        UnitSide::Inside
    } else {
        UnitSide::Undecided
    }
}

fn unit_modulus(
    trace: &NumberFieldElement,
    det: &NumberFieldElement,
    at_root: &AlgebraicNumber,
    prec: &Precision,
) -> Result<UnitModulusCertificate> {
    let field = trace.field();
    let two = NumberFieldElement::from_int(field, 2);
    let k = trace.mul(trace)?.div(det)?.sub(&two)?;
    if k == two || k == two.neg() {
        return Err(Error::Boundary("|k| = 2: the quadratic has a repeated root".into()));
    }
    let fixed = is_involution_fixed(&k)?;
    let on_circle = compare_modulus(at_root, &BigRational::one(), prec)? == Ordering::Equal;
    let mut emb = None;
    let mut below = None;
    let four = BigRational::from_integer(BigInt::from(4));
    for bits in prec.schedule() {
        let e = nf_embed(&k, at_root, &rational_pow2(bits / 2), prec)?;
        let (lo, hi) = e.modulus_sq_range();
        emb = Some(e);
        if hi < four {
            below = Some(true);
            break;
        }
        if lo > four {
            below = Some(false);
            break;
        }
    }
    if below.is_none() {
        return Err(Error::PrecisionExhausted { bits: prec.cap });
    }
    Ok(UnitModulusCertificate {
        k,
        k_involution_fixed: fixed,
        root_on_unit_circle: on_circle,
        k_embedding: emb,
        abs_k_below_two: below,
    })
}

/// Decides the three conditions of the Siegel-disk criterion for the
/// eigenvalues `e1, e2` of an isolated fixed point, given through
/// `x^2 - trace x + det` over the field of the generator.
pub fn siegel_criterion(
    trace: &NumberFieldElement,
    det: &NumberFieldElement,
    at_root: &AlgebraicNumber,
    all_roots: &[AlgebraicNumber],
    modulus_not_cyclotomic: bool,
    prec: &Precision,
) -> Result<SiegelVerdict> {
    siegel_criterion_with(trace, det, at_root, all_roots, modulus_not_cyclotomic, &SiegelOptions::default(), prec)
}

pub fn siegel_criterion_with(
    trace: &NumberFieldElement,
    det: &NumberFieldElement,
    at_root: &AlgebraicNumber,
    all_roots: &[AlgebraicNumber],
    modulus_not_cyclotomic: bool,
    opts: &SiegelOptions,
    prec: &Precision,
) -> Result<SiegelVerdict> {
    if trace.modulus() != det.modulus() {
        return Err(Error::ModulusMismatch);
    }
    let width = opts.width.clone().unwrap_or_else(|| rational_pow2(64));
    let um = unit_modulus(trace, det, at_root, prec)?;
    let eigenvalues = quadratic_roots(trace, det, at_root, &width, prec)?;
    let cond2 = um.k_involution_fixed && um.root_on_unit_circle && um.abs_k_below_two == Some(true);

    let independence = if let Some((a, b)) = dependency_search(trace, det)? {
        IndependenceCertificate::Dependent {
            exponents: (a, b),
            witness: powers_dependency_witness(a, b)?,
        }
    } else {
        scan_conjugates(trace, det, at_root, all_roots, modulus_not_cyclotomic, opts, &width, prec)?
    };
    let cond3 = matches!(
        &independence,
        IndependenceCertificate::Decisive { generator_not_root_of_unity: true, .. }
    );
    if cond2 && !cond3 && !matches!(independence, IndependenceCertificate::Dependent { .. }) {
        return Err(Error::Inconclusive(
            "no conjugate embedding separates the eigenvalue moduli".into(),
        ));
    }
    Ok(SiegelVerdict {
        condition_algebraic: true,
        condition_unit_modulus: cond2,
        unit_modulus: um,
        condition_mult_independent: cond3,
        independence,
        eigenvalues,
        has_siegel_disk: cond2 && cond3,
    })
}

#[allow(clippy::too_many_arguments)]
fn scan_conjugates(
    trace: &NumberFieldElement,
    det: &NumberFieldElement,
    at_root: &AlgebraicNumber,
    all_roots: &[AlgebraicNumber],
    modulus_not_cyclotomic: bool,
    opts: &SiegelOptions,
    width: &BigRational,
    prec: &Precision,
) -> Result<IndependenceCertificate> {
    let mut checked = Vec::new();
    let mut decisive: Vec<ConjugateCheck> = Vec::new();
    let conj = at_root.conj();
    for (ordinal, r) in all_roots.iter().enumerate() {
        if opts.conjugate.is_some_and(|c| c != ordinal) {
            continue;
        }
        if r.is_real() || !r.bx.disjoint(&at_root.bx) || !r.bx.disjoint(&conj.bx) {
            continue;
        }
        if compare_modulus(r, &BigRational::one(), prec)? != Ordering::Equal {
            continue;
        }
        let roots = quadratic_roots(trace, det, r, width, prec)?;
        let moduli_vs_one = [modulus_vs_one(&roots[0]), modulus_vs_one(&roots[1])];
        let is_decisive = moduli_vs_one.contains(&UnitSide::Outside);
        let c = ConjugateCheck {
            ordinal,
            conjugate: r.clone(),
            roots,
            moduli_vs_one,
            decisive: is_decisive,
        };
        if is_decisive {
            decisive.push(c);
            if !opts.all_decisive {
                break;
            }
        } else {
            checked.push(c);
        }
    }
    if decisive.is_empty() {
        return Ok(IndependenceCertificate::Inconclusive { checked });
    }
    let check = decisive.remove(0);
    Ok(IndependenceCertificate::Decisive {
        check,
        generator_not_root_of_unity: modulus_not_cyclotomic,
        others: decisive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{named_selector, phi14};
    use crate::certroots::{isolate_algebraic, select_root};
    use crate::numfield::NumberField;

    #[test]
    fn powers_of_generator_are_dependent() {
        let field = NumberField::new(phi14()).unwrap();
        let g = NumberFieldElement::generator(&field);
        let trace = g.pow(-1).unwrap().add(&g.pow(2).unwrap()).unwrap();
        assert_eq!(dependency_search(&trace, &g).unwrap(), Some((-1, 2)));
        let prec = Precision::default();
        let roots = isolate_algebraic(&phi14(), &prec).unwrap();
        let delta = select_root(&phi14(), &named_selector("delta").unwrap(), &prec).unwrap();
        let v = siegel_criterion(&trace, &g, &delta, &roots, true, &prec).unwrap();
        assert!(!v.has_siegel_disk);
        assert!(v.condition_unit_modulus);
        assert_eq!(
            v.independence,
            IndependenceCertificate::Dependent {
                exponents: (-1, 2),
                witness: (2, 1)
            }
        );
    }

    #[test]
    fn boundary_is_flagged() {
        // trace^2 = 4 det gives k = 2
        let field = NumberField::new(phi14()).unwrap();
        let g = NumberFieldElement::generator(&field);
        let trace = g.scale(&BigRational::from_integer(BigInt::from(2)));
        let det = g.mul(&g).unwrap();
        let prec = Precision::default();
        let roots = isolate_algebraic(&phi14(), &prec).unwrap();
        assert!(matches!(
            siegel_criterion(&trace, &det, &roots[1], &roots, true, &prec),
            Err(Error::Boundary(_))
        ));
    }

    #[test]
    fn decisive_conjugate_is_theta() {
        let prec = Precision::default();
        let p = phi14();
        let field = NumberField::new(p.clone()).unwrap();
        let g = NumberFieldElement::generator(&field);
        let trace = crate::numfield::nf_eval_ratfunc(&crate::builtins::gamma(), &g).unwrap();
        let roots = isolate_algebraic(&p, &prec).unwrap();
        let delta = select_root(&p, &named_selector("delta").unwrap(), &prec).unwrap();
        let theta = select_root(&p, &named_selector("theta").unwrap(), &prec).unwrap();
        let v = siegel_criterion(&trace, &g, &delta, &roots, true, &prec).unwrap();
        assert!(v.has_siegel_disk);
        let k = v.unit_modulus.k_embedding.as_ref().unwrap().mid_f64();
        assert!((k.0 + 1.37301).abs() < 1e-4 && k.1.abs() < 1e-12);
        let IndependenceCertificate::Decisive { check, .. } = &v.independence else {
            panic!("expected a decisive conjugate");
        };
        assert!(!check.conjugate.bx.disjoint(&theta.bx));
        let (re, im) = check.roots[1].mid_f64();
        assert!((re - 1.24306).abs() < 1e-4 && (im + 1.83720).abs() < 1e-4);
        // Vieta at the chosen embedding
        let [a, b] = &v.eigenvalues;
        let (ar, ai) = a.mid_f64();
        let (br, bi) = b.mid_f64();
        let (dr, di) = delta.approx();
        assert!((ar * br - ai * bi - dr).abs() < 1e-12 && (ar * bi + ai * br - di).abs() < 1e-12);
    }
}
