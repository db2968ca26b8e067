//! Second eigenvalue at the unknown point against its printed value. The
//! printed real part has the wrong sign (the product of the printed pair is
//! not the generator), so this stays ignored and fails when run.

use salemkit::builtins::{named_selector, phi14};
use salemkit::interval::Precision;
use salemkit::k3::k3_verify;

#[test]
#[ignore = "printed value carries a sign error; run with --ignored to see the mismatch"]
fn second_eigenvalue_matches_print() {
    let v = k3_verify(&phi14(), &named_selector("delta").unwrap(), None, &Precision::default()).unwrap();
    let (re, im) = v.verdict.eigenvalues[1].mid_f64();
    assert!((re + 0.94351).abs() <= 1e-4, "re = {re}");
    assert!((im + 0.33133).abs() <= 1e-4, "im = {im}");
}

#[test]
fn printed_pair_is_inconsistent_with_the_generator() {
    // (-0.8886 - 0.45858i)(-0.94351 - 0.33133i) is far from delta, while the
    // computed pair multiplies to delta
    let (a, b) = ((-0.8886f64, -0.45858f64), (-0.94351f64, -0.33133f64));
    let prod = (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let v = k3_verify(&phi14(), &named_selector("delta").unwrap(), None, &Precision::default()).unwrap();
    let d = v.root.approx();
    assert!((prod.0 - d.0).hypot(prod.1 - d.1) > 1.0);
    let (e1, e2) = (v.verdict.eigenvalues[0].mid_f64(), v.verdict.eigenvalues[1].mid_f64());
    let got = (e1.0 * e2.0 - e1.1 * e2.1, e1.0 * e2.1 + e1.1 * e2.0);
    assert!((got.0 - d.0).hypot(got.1 - d.1) < 1e-12);
    assert!((e2.0 - 0.94351).abs() < 1e-4 && (e2.1 + 0.33133).abs() < 1e-4);
}
