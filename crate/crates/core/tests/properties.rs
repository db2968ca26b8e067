use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::Config;

use salemkit::builtins::{named, phi14, SALEM_POLYNOMIALS};
use salemkit::certroots::{compare_modulus, isolate_algebraic, isolate_roots, refine};
use salemkit::factor::{factor_mod2, factor_z, is_irreducible, salem_classify, spectral_classify, F2Poly};
use salemkit::fixpoint::{enriques_obstruction, propagate_chain, siegel_criterion, CurveChainGraph};
use salemkit::interval::Precision;
use salemkit::matrix::{char_poly, IntMatrix};
use salemkit::numfield::{nf_embed, nf_involution, NumberField, NumberFieldElement};
use salemkit::poly::{expand_trace_polynomial, trace_polynomial, IntPoly};
use salemkit::sturm::sturm_count;

fn cfg(cases: u32) -> Config {
    Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg).prop_flat_map(move |d| {
        (prop::collection::vec(-bound..=bound, d), 1..=bound).prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPoly::from_i64s(&c)
        })
    })
}

/// Monic reciprocal polynomial of even degree `2m`, built from its trace
/// polynomial.
fn reciprocal_poly(max_half: usize) -> impl Strategy<Value = IntPoly> {
    (1..=max_half).prop_flat_map(|m| {
        prop::collection::vec(-4i64..=4, m).prop_map(|mut c| {
            c.push(1);
            expand_trace_polynomial(&IntPoly::from_i64s(&c))
        })
    })
}

fn field_elem(field: std::sync::Arc<NumberField>) -> impl Strategy<Value = NumberFieldElement> {
    let n = field.degree();
    prop::collection::vec((-9i64..=9, 1i64..=5), n).prop_map(move |c| {
        NumberFieldElement::from_coeffs(&field, c.into_iter().map(|(a, b)| rat(a, b)).collect())
    })
}

/// Real roots counted by sign changes on a fine grid, plus exact rational
/// roots at grid points.
fn grid_real_roots(p: &IntPoly, bound: &BigInt) -> usize {
    let steps = 4096i64;
    let b = BigRational::from_integer(bound.clone());
    let h = &b * rat(2, steps);
    let mut count = 0;
    let mut prev: Option<i32> = None;
    for k in 0..=steps {
        let x = -&b + &h * rat(k, 1);
        let s = p.sign_at(&x);
        if s == 0 {
            count += 1;
            prev = None;
            continue;
        }
        if prev.is_some_and(|q| q != s) {
            count += 1;
        }
        prev = Some(s);
    }
    count
}

proptest! {
    #![proptest_config(cfg(200))]

    #[test]
    fn divrem_recombines(p in int_poly(10, 20), q in int_poly(5, 6)) {
        let (quo, rem) = p.divrem(&q).unwrap();
        let back = &(&quo * &q.to_rat()) + &rem;
        prop_assert_eq!(back, p.to_rat());
        prop_assert!(rem.degree().is_none_or(|d| d < q.deg()));
    }

    #[test]
    fn trace_polynomial_round_trip(p in reciprocal_poly(10)) {
        let g = trace_polynomial(&p).unwrap();
        prop_assert_eq!(g.deg() * 2, p.deg());
        prop_assert_eq!(expand_trace_polynomial(&g), p);
    }
}

proptest! {
    #![proptest_config(cfg(500))]

    #[test]
    fn factor_mod2_reconstructs(p in int_poly(24, 9)) {
        let target = F2Poly::from_int(&p);
        prop_assume!(!target.is_zero());
        let fs = factor_mod2(&p);
        let prod = fs.iter().fold(F2Poly::from_exponents(&[0]), |a, (f, m)| a.mul(&f.pow(*m)));
        prop_assert_eq!(prod, target);
        for (f, _) in &fs {
            prop_assert!(f.is_irreducible());
        }
    }
}

proptest! {
    #![proptest_config(cfg(60))]

    #[test]
    fn factor_z_pieces_are_irreducible(fs in prop::collection::vec(int_poly(4, 4), 1..=3)) {
        let f = fs.iter().fold(IntPoly::one(), |a, b| &a * b);
        let out = factor_z(&f);
        let prod = out.iter().fold(IntPoly::one(), |a, (g, m)| &a * &g.pow(*m as u32));
        prop_assert!(prod == f.primitive_part() || prod == -&f.primitive_part());
        for (g, _) in &out {
            prop_assert!(is_irreducible(g));
            prop_assert_eq!(factor_z(g).len(), 1);
        }
    }

    #[test]
    fn char_poly_of_block_diagonal(a in int_poly(4, 3), b in int_poly(4, 3)) {
        let mon = |p: &IntPoly| {
            let mut c = p.coeffs().to_vec();
            *c.last_mut().unwrap() = BigInt::from(1);
            IntPoly::new(c)
        };
        let (a, b) = (mon(&a), mon(&b));
        let m = IntMatrix::block_diag(&[IntMatrix::companion(&a).unwrap(), IntMatrix::companion(&b).unwrap()]);
        prop_assert_eq!(char_poly(&m).unwrap(), &a * &b);
    }

    #[test]
    fn enriques_factor_degrees_are_reciprocal_closed(p in reciprocal_poly(5).prop_filter("deg 10", |p| p.deg() == 10)) {
        let v = enriques_obstruction(&p).unwrap();
        let fs = factor_mod2(&p);
        for (f, m) in &fs {
            let bits = f.degree().unwrap();
            let exps: Vec<usize> = (0..=bits).filter(|&i| f.bits().bit(i as u64)).map(|i| bits - i).collect();
            let r = F2Poly::from_exponents(&exps);
            prop_assert!(fs.iter().any(|(g, k)| *g == r && k == m), "{:?} lacks its reciprocal", f);
        }
        prop_assert_eq!(v.mod2_factors.len(), fs.len());
    }

    #[test]
    fn propagation_respects_det(
        parents in prop::collection::vec(any::<prop::sample::Index>(), 1..8),
        fixed in any::<prop::sample::Index>(),
        det in 1i64..5,
    ) {
        let n = parents.len() + 1;
        let g = CurveChainGraph {
            vertices: (0..n).map(|k| format!("C{k}")).collect(),
            edges: parents.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect(),
            pointwise_fixed: fixed.index(n),
            det_exponent: det,
        };
        if let Ok(c) = propagate_chain(&g) {
            for p in &c.points {
                prop_assert_eq!(p.exponents.0 + p.exponents.1, det, "{}", p.label);
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg(50))]

    #[test]
    fn sturm_matches_grid(p in int_poly(12, 8)) {
        let p = p.square_free_part();
        prop_assume!(p.deg() >= 1);
        let b = p.cauchy_bound() + BigInt::from(1);
        let br = BigRational::from_integer(b.clone());
        let n = sturm_count(&p, &-&br, &br).unwrap();
        // a grid can merge close roots but never invent one
        prop_assert!(grid_real_roots(&p, &b) <= n);
        if p.deg() <= 3 && p.max_abs_coeff() <= BigInt::from(3) {
            prop_assert_eq!(grid_real_roots(&p, &b), n);
        }
    }

    #[test]
    fn isolation_covers_every_root(p in int_poly(8, 6)) {
        let p = p.square_free_part();
        prop_assume!(p.deg() >= 1);
        let prec = Precision::default();
        let roots = isolate_algebraic(&p, &prec).unwrap();
        prop_assert_eq!(roots.len(), p.deg());
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                prop_assert!(roots[i].bx.disjoint(&roots[j].bx));
            }
            let finer = refine(&roots[i], &rat(1, 1 << 20), &prec).unwrap();
            prop_assert!(finer.bx.subset_of(&roots[i].bx));
        }
        prop_assert_eq!(isolate_roots(&p, &prec).unwrap().len(), p.deg());
    }

    #[test]
    fn field_identities(a in field_elem(NumberField::new(phi14()).unwrap()),
                        b in field_elem(NumberField::new(phi14()).unwrap())) {
        prop_assert_eq!(nf_involution(&nf_involution(&a).unwrap()).unwrap(), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
        // embedding is multiplicative up to certified tolerance
        let prec = Precision::default();
        let root = isolate_algebraic(&phi14(), &prec).unwrap().into_iter().find(|r| !r.is_real()).unwrap();
        let w = rat(1, 1 << 30);
        let ab = nf_embed(&a.mul(&b).unwrap(), &root, &w, &prec).unwrap().mid_f64();
        let (ea, eb) = (nf_embed(&a, &root, &w, &prec).unwrap().mid_f64(), nf_embed(&b, &root, &w, &prec).unwrap().mid_f64());
        let prod = (ea.0 * eb.0 - ea.1 * eb.1, ea.0 * eb.1 + ea.1 * eb.0);
        let tol = 1e-6 * (1.0 + prod.0.abs() + prod.1.abs());
        prop_assert!((ab.0 - prod.0).abs() < tol && (ab.1 - prod.1).abs() < tol);
        // fixed elements embed to reals on the unit circle
        let sym = a.add(&nf_involution(&a).unwrap()).unwrap();
        let e = nf_embed(&sym, &root, &w, &prec).unwrap();
        prop_assert!(e.contains(&e.re_mid(), &rat(0, 1)));
    }
}

#[test]
fn salem_implies_reciprocal_and_reversal_invariance() {
    for (name, _, _) in SALEM_POLYNOMIALS {
        let p = named(name).unwrap();
        let r = salem_classify(&p);
        assert!(r.is_salem && r.is_reciprocal && p.coeff(0) == BigInt::from(1));
        let e = r.salem_number.clone().unwrap();
        assert!(e.lo > rat(1, 1));
        let back = salem_classify(&p.reversed());
        assert_eq!(back.salem_number, r.salem_number, "{name}");
        let s = spectral_classify(&p).unwrap();
        assert!(s.salem_factor.is_some() && s.entropy.lo > rat(0, 1));
    }
    let s = spectral_classify(&IntPoly::from_i64s(&[1, 1, 1])).unwrap();
    assert!(s.salem_factor.is_none() && s.entropy.hi == rat(0, 1));
}

#[test]
fn only_real_roots_leave_the_circle() {
    let prec = Precision::default();
    for (name, _, _) in SALEM_POLYNOMIALS {
        let p = named(name).unwrap();
        for r in isolate_algebraic(&p, &prec).unwrap() {
            let c = compare_modulus(&r, &rat(1, 1), &prec).unwrap();
            assert_eq!(c.is_eq(), !r.is_real(), "{name}");
        }
    }
}

#[test]
fn siegel_roots_satisfy_vieta() {
    let prec = Precision::default();
    let field = NumberField::new(phi14()).unwrap();
    let g = NumberFieldElement::generator(&field);
    let trace = g.pow(13).unwrap().sub(&g.pow(9).unwrap()).unwrap();
    let roots = isolate_algebraic(&phi14(), &prec).unwrap();
    let w = rat(1, 1 << 40);
    for at in roots.iter().filter(|r| !r.is_real()) {
        let Ok(v) = siegel_criterion(&trace, &g, at, &roots, true, &prec) else { continue };
        let [a, b] = &v.eigenvalues;
        let (a, b) = (a.mid_f64(), b.mid_f64());
        let t = nf_embed(&trace, at, &w, &prec).unwrap().mid_f64();
        let d = nf_embed(&g, at, &w, &prec).unwrap().mid_f64();
        assert!((a.0 + b.0 - t.0).abs() < 1e-9 && (a.1 + b.1 - t.1).abs() < 1e-9);
        let prod = (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        assert!((prod.0 - d.0).abs() < 1e-9 && (prod.1 - d.1).abs() < 1e-9);
    }
}
