//! Named polynomials, root boxes and the E8 fixed-curve configuration used
//! as fixtures throughout the toolkit.

use crate::certroots::{ComplexInterval, RootSelector};
use crate::fixpoint::{propagate_chain, CurveChainGraph, FixedComponent};
use crate::poly::{trace_polynomial, IntPoly, RatFunc};

/// `(name, polynomial, Salem number to six places)`.
pub const SALEM_POLYNOMIALS: [(&str, &str, &str); 5] = [
    ("phi10", "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "1.176280"),
    ("phi18", "x^18-x^17+x^16-x^15-x^12+x^11-x^10+x^9-x^8+x^7-x^6-x^3+x^2-x+1", "1.188368"),
    ("phi14", "x^14-x^11-x^10+x^7-x^4-x^3+1", "1.200026"),
    ("PHI14", "x^14-x^12-x^7-x^2+1", "1.202616"),
    ("PHI10", "x^10-x^6-x^5-x^4+1", "1.216391"),
];

/// Degree-10 Salem polynomial with no degree-5 factor mod 2.
pub const UNOBSTRUCTED_DEG10: &str = "x^10-x^7-x^5-x^3+1";

/// Built-in polynomial by name (case-sensitive: `phi14` and `PHI14` differ).
pub fn named(name: &str) -> Option<IntPoly> {
    SALEM_POLYNOMIALS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, p, _)| p.parse().expect("built-in polynomial"))
}

/// Parses a polynomial, accepting built-in names.
pub fn resolve_poly(s: &str) -> crate::Result<IntPoly> {
    match named(s.trim()) {
        Some(p) => Ok(p),
        None => s.parse(),
    }
}

pub fn phi10() -> IntPoly {
    named("phi10").unwrap()
}

pub fn phi14() -> IntPoly {
    named("phi14").unwrap()
}

pub fn big_phi10() -> IntPoly {
    named("PHI10").unwrap()
}

pub fn big_phi14() -> IntPoly {
    named("PHI14").unwrap()
}

fn rect(re: (f64, f64), im: (f64, f64)) -> RootSelector {
    RootSelector::Rect(ComplexInterval::from_f64s(re.0, re.1, im.0, im.1).expect("nonempty box"))
}

/// Boxes for named roots.
pub fn named_selector(name: &str) -> Option<RootSelector> {
    Some(match name {
        // roots of phi14
        "delta" => rect((-1.0, -0.9), (-0.2, -0.1)),
        "theta" => rect((-0.4, -0.3), (-1.0, -0.9)),
        // roots of PHI14
        "delta'" | "delta-prime" => rect((-0.5, -0.4), (-0.9, -0.8)),
        "theta'" | "theta-prime" => rect((-1.0, -0.9), (-0.3, -0.2)),
        _ => return None,
    })
}

/// Parses `delta`, an ordinal like `#12`, or a box `re_lo,re_hi,im_lo,im_hi`.
pub fn resolve_selector(s: &str) -> crate::Result<RootSelector> {
    let s = s.trim();
    if let Some(sel) = named_selector(s) {
        return Ok(sel);
    }
    if let Some(n) = s.strip_prefix('#') {
        return n
            .parse()
            .map(RootSelector::Ordinal)
            .map_err(|_| crate::Error::Parse(format!("bad root ordinal {s:?}")));
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() == 4 {
        let nums: std::result::Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
        if let Ok(v) = nums {
            return Ok(RootSelector::Rect(ComplexInterval::from_f64s(v[0], v[1], v[2], v[3])?));
        }
    }
    Err(crate::Error::Parse(format!("bad root selector {s:?}")))
}

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

/// `gamma(x)` with `x^2 - gamma(d) x + d` the eigenvalue quadratic at the
/// unknown point.
pub fn gamma() -> RatFunc {
    RatFunc::new(
        ip(&[1, 1, 0, -1, -1, -1, -1, -1, -1, 0, 1, 1]),
        ip(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]),
    )
    .expect("nonzero denominator")
}

/// `(f1, f2)` with `gamma(x) = (x + 1) f1(x + 1/x) / f2(x + 1/x)`.
pub fn gamma_trace_form() -> (IntPoly, IntPoly) {
    let g = gamma();
    let num = g.numerator().div_exact(&ip(&[1, 1])).expect("x + 1 divides the numerator");
    let f1 = trace_polynomial(&num).expect("reciprocal numerator");
    let f2 = trace_polynomial(g.denominator()).expect("reciprocal denominator");
    (f1, f2)
}

/// Contribution required of the unknown point as a function of the
/// generator.
pub fn f_closed_form() -> RatFunc {
    let num = ip(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let den = [
        ip(&[1, -2, 1]),
        ip(&[0, 1]),
        ip(&[1, 1]),
        ip(&[1, 1, 1]),
        ip(&[1, 1, 1, 1, 1]),
    ]
    .iter()
    .fold(IntPoly::one(), |a, b| &a * b);
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Dual graph of the E8 configuration `C0..C7` with `C0` attached to `C3`,
/// `C3` pointwise fixed and the generator acting on 2-forms.
pub fn e8_graph() -> CurveChainGraph {
    CurveChainGraph {
        vertices: (0..8).map(|k| format!("C{k}")).collect(),
        edges: vec![(0, 3), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)],
        pointwise_fixed: 3,
        det_exponent: 1,
    }
}

/// Fixed locus for the E8 configuration: propagated points and curve plus
/// one unknown point `Q`.
pub fn e8_components() -> Vec<FixedComponent> {
    let mut c = propagate_chain(&e8_graph()).expect("E8 graph propagates").components;
    c.push(FixedComponent::unknown("Q"));
    c
}
