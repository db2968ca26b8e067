//! End-to-end check for a degree-14 Salem polynomial acting on a K3 lattice
//! with the E8 fixed-curve configuration.

use serde::Serialize;

use crate::builtins::{e8_components, e8_graph, gamma};
use crate::certroots::{isolate_algebraic, ordinal_of, select_root, AlgebraicNumber, RootSelector};
use crate::error::{Error, Result};
use crate::factor::{salem_classify, spectral_classify, SpectralDecomposition};
use crate::fixpoint::{
    known_euler_sum, propagate_chain, siegel_criterion_with, solve_unknown_point, topological_lefschetz_count,
    SiegelOptions, SiegelVerdict,
};
use crate::interval::Precision;
use crate::numfield::{nf_eval_ratfunc, NumberField, NumberFieldElement};
use crate::poly::IntPoly;
use crate::surfgeom::{build_block_isometry, verify_isometry, BlockIsometry, IsometryCertificate, RootSystemSpec};

/// Statements the verification does not establish.
pub const NOT_CLAIMED: [&str; 3] = [
    "existence of a K3 surface and automorphism realizing the lattice isometry (Torelli theorem, surjectivity of the period map)",
    "the automorphism group of such a surface being infinite cyclic",
    "minimality of Lehmer's number among all Salem numbers",
];

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedPoint {
    pub label: String,
    pub exponents: (i64, i64),
}

#[derive(Clone, Debug, Serialize)]
pub struct K3Verification {
    pub polynomial: IntPoly,
    pub root: AlgebraicNumber,
    pub root_ordinal: usize,
    pub isometry: BlockIsometry,
    pub isometry_certificate: IsometryCertificate,
    pub spectrum: SpectralDecomposition,
    pub fixed_points: Vec<IsolatedPoint>,
    pub known_euler_sum: i64,
    /// Fixed points left for the topological Lefschetz count.
    pub remaining_points: i64,
    pub trace: NumberFieldElement,
    pub det: NumberFieldElement,
    pub trace_equals_gamma: bool,
    pub verdict: SiegelVerdict,
    pub not_claimed: [&'static str; 3],
}

/// Runs lattice model, propagation, both Lefschetz formulas and the Siegel
/// criterion for the generator `selector` picks.
pub fn k3_verify(
    p: &IntPoly,
    selector: &RootSelector,
    conjugate: Option<&RootSelector>,
    prec: &Precision,
) -> Result<K3Verification> {
    if p.degree() != Some(14) {
        return Err(Error::WrongDegree {
            expected: 14,
            got: p.degree().unwrap_or(0),
        });
    }
    if !salem_classify(p).is_salem {
        return Err(Error::NotSalem);
    }
    let root = select_root(p, selector, prec)?;
    let root_ordinal = ordinal_of(&root, prec)?;
    let all_roots = isolate_algebraic(p, prec)?;
    let e8 = RootSystemSpec::new(crate::surfgeom::Family::E, 8)?;
    let isometry = build_block_isometry(p, root_ordinal, Some(&e8), prec)?;
    let isometry_certificate = verify_isometry(&isometry, prec)?;
    let spectrum = spectral_classify(&isometry.char_poly)?;

    let graph = e8_graph();
    let prop = propagate_chain(&graph)?;
    let fixed_points = prop
        .isolated_table()
        .into_iter()
        .map(|(label, exponents)| IsolatedPoint { label, exponents })
        .collect();
    let components = e8_components();
    let known = known_euler_sum(&components);
    let t = topological_lefschetz_count(&isometry.char_poly, known)?;
    if t != 1 {
        return Err(Error::Inconsistent(format!(
            "the configuration needs exactly one further fixed point, the count gives {t}"
        )));
    }

    let field = NumberField::new(p.clone())?;
    let sol = solve_unknown_point(&components, &field, graph.det_exponent)?;
    let trace = sol.trace.expect("one unknown");
    let det = sol.det.expect("one unknown");
    let g = NumberFieldElement::generator(&field);
    let trace_equals_gamma = nf_eval_ratfunc(&gamma(), &g).is_ok_and(|v| v == trace);

    let opts = SiegelOptions {
        conjugate: match conjugate {
            None => None,
            Some(RootSelector::Ordinal(k)) => Some(*k),
            Some(sel) => Some(ordinal_of(&select_root(p, sel, prec)?, prec)?),
        },
        ..Default::default()
    };
    let verdict = siegel_criterion_with(&trace, &det, &root, &all_roots, true, &opts, prec)?;
    Ok(K3Verification {
        polynomial: p.clone(),
        root,
        root_ordinal,
        isometry,
        isometry_certificate,
        spectrum,
        fixed_points,
        known_euler_sum: known,
        remaining_points: t,
        trace,
        det,
        trace_equals_gamma,
        verdict,
        not_claimed: NOT_CLAIMED,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{big_phi14, named_selector, phi14};

    #[test]
    fn rejects_wrong_input() {
        let p = Precision::default();
        let sel = RootSelector::Ordinal(0);
        assert!(matches!(k3_verify(&crate::builtins::phi10(), &sel, None, &p), Err(Error::WrongDegree { .. })));
        let q: IntPoly = "x^14+1".parse().unwrap();
        assert_eq!(k3_verify(&q, &sel, None, &p).unwrap_err(), Error::NotSalem);
    }

    #[test]
    fn delta_run() {
        let p = Precision::default();
        let v = k3_verify(&phi14(), &named_selector("delta").unwrap(), None, &p).unwrap();
        assert!(v.trace_equals_gamma);
        assert_eq!(v.remaining_points, 1);
        assert!(v.isometry_certificate.certified);
        assert!(v.verdict.has_siegel_disk);
        let (re, im) = v.verdict.eigenvalues[0].mid_f64();
        assert!((re + 0.88865).abs() < 1e-4 && (im + 0.45859).abs() < 1e-4);
    }

    #[test]
    fn theta_and_prime_runs() {
        let p = Precision::default();
        let v = k3_verify(&phi14(), &named_selector("theta").unwrap(), None, &p).unwrap();
        assert!(v.trace_equals_gamma);
        assert!(!v.verdict.has_siegel_disk);
        assert!(!v.verdict.condition_unit_modulus);
        let v = k3_verify(&big_phi14(), &named_selector("delta'").unwrap(), None, &p).unwrap();
        assert!(v.verdict.has_siegel_disk);
        let (re, im) = v.verdict.eigenvalues[0].mid_f64();
        assert!((re + 0.29457).abs() < 1e-4 && (im + 0.95562).abs() < 1e-4);
    }
}
