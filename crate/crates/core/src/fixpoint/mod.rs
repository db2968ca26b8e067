//! Fixed-point bookkeeping, Lefschetz formulas, the Siegel-disk test,
//! torus entropy and the Enriques mod-2 obstruction.

mod enriques;
mod siegel;
mod torus;

use std::collections::VecDeque;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::{NumberField, NumberFieldElement};
use crate::poly::IntPoly;

pub use enriques::{admissible_prime_power_orders, enriques_obstruction, EnriquesVerdict};
pub use siegel::{
    dependency_search, quadratic_roots, siegel_criterion, siegel_criterion_with, ConjugateCheck, IndependenceCertificate,
    SiegelOptions, SiegelVerdict, UnitModulusCertificate, UnitSide,
};
pub use torus::{torus_entropy, TorusCase, TorusEntropy};

/// Kind of a connected component of the fixed locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    /// Isolated point with eigenvalues `(g^a, g^b)` for the field generator
    /// `g`.
    IsolatedKnown { exponents: (i64, i64) },
    IsolatedUnknown,
    /// Pointwise fixed curve; `g^conormal_exponent` acts on the conormal
    /// bundle of degree `conormal_degree`.
    FixedCurve {
        genus: u32,
        conormal_exponent: i64,
        conormal_degree: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedComponent {
    #[serde(default)]
    pub label: String,
    #[serde(flatten)]
    pub kind: ComponentKind,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

impl FixedComponent {
    pub fn isolated(label: &str, a: i64, b: i64) -> Self {
        Self {
            label: label.into(),
            kind: ComponentKind::IsolatedKnown { exponents: (a, b) },
            multiplicity: 1,
        }
    }

    pub fn unknown(label: &str) -> Self {
        Self {
            label: label.into(),
            kind: ComponentKind::IsolatedUnknown,
            multiplicity: 1,
        }
    }

    pub fn curve(label: &str, genus: u32, conormal_exponent: i64, conormal_degree: i64) -> Self {
        Self {
            label: label.into(),
            kind: ComponentKind::FixedCurve {
                genus,
                conormal_exponent,
                conormal_degree,
            },
            multiplicity: 1,
        }
    }

    /// Topological Euler number of the component.
    pub fn euler(&self) -> i64 {
        match &self.kind {
            ComponentKind::FixedCurve { genus, .. } => 2 - 2 * i64::from(*genus),
            _ => 1,
        }
    }
}

/// Tree of smooth rational curves meeting transversally, one of which is
/// pointwise fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveChainGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub pointwise_fixed: usize,
    pub det_exponent: i64,
}

impl CurveChainGraph {
    fn adjacency(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.vertices.len();
        if n == 0 || self.pointwise_fixed >= n || self.edges.len() + 1 != n {
            return Err(Error::NotATree);
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b || adj[a].contains(&b) {
                return Err(Error::NotATree);
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        // connected with n - 1 edges means a tree
        let mut seen = vec![false; n];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        if seen.iter().all(|s| *s) {
            Ok(adj)
        } else {
            Err(Error::NotATree)
        }
    }

    fn short(&self, v: usize) -> String {
        let name = &self.vertices[v];
        match name.strip_prefix('C') {
            Some(rest) if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) => rest.to_string(),
            _ => name.clone(),
        }
    }
}

/// A fixed point found by propagation. `exponents` lists the tangent
/// exponent along each curve through the point, then the remaining one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagatedPoint {
    pub label: String,
    pub curves: Vec<String>,
    pub exponents: (i64, i64),
    pub on_fixed_curve: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPropagation {
    pub points: Vec<PropagatedPoint>,
    pub components: Vec<FixedComponent>,
}

impl ChainPropagation {
    /// Isolated points only, as `(label, (a, b))`.
    pub fn isolated_table(&self) -> Vec<(String, (i64, i64))> {
        self.points
            .iter()
            .filter(|p| !p.on_fixed_curve)
            .map(|p| (p.label.clone(), p.exponents))
            .collect()
    }
}

/// Propagates eigenvalue exponents outward from the pointwise fixed curve.
///
/// At a point of the fixed curve the exponents are `(0, det)`. On a
/// non-fixed curve the multiplier at the far fixed point is the inverse of
/// the one at the near point, and the normal exponent is always `det` minus
/// the tangent one. A far point shared with a further curve becomes that
/// curve's near point.
pub fn propagate_chain(g: &CurveChainGraph) -> Result<ChainPropagation> {
    let adj = g.adjacency()?;
    let det = g.det_exponent;
    let f = g.pointwise_fixed;
    let mut points = Vec::new();
    let mut components = vec![FixedComponent::curve(&g.vertices[f], 0, det, 2)];
    // (vertex, parent, tangent exponent at the near point)
    let mut stack: Vec<(usize, usize, i64)> = Vec::new();
    for &w in adj[f].iter().rev() {
        points.push(PropagatedPoint {
            label: format!("P{}{}", g.short(f.min(w)), g.short(f.max(w))),
            curves: vec![g.vertices[f].clone(), g.vertices[w].clone()],
            exponents: (0, det),
            on_fixed_curve: true,
        });
        stack.push((w, f, det));
    }
    points.reverse();
    let mut order = Vec::new();
    while let Some((v, parent, near)) = stack.pop() {
        if near == 0 {
            return Err(Error::Degenerate(format!(
                "curve {} has a parabolic action (multiplier 1 at its fixed point)",
                g.vertices[v]
            )));
        }
        let far = -near;
        let children: Vec<usize> = adj[v].iter().copied().filter(|&w| w != parent).collect();
        match children.as_slice() {
            [] => {
                let ex = (far, det - far);
                order.push(PropagatedPoint {
                    label: format!("P{}", g.short(v)),
                    curves: vec![g.vertices[v].clone()],
                    exponents: ex,
                    on_fixed_curve: false,
                });
            }
            [w] => {
                let ex = (far, det - far);
                order.push(PropagatedPoint {
                    label: format!("P{}{}", g.short(v.min(*w)), g.short(v.max(*w))),
                    curves: vec![g.vertices[v].clone(), g.vertices[*w].clone()],
                    exponents: ex,
                    on_fixed_curve: false,
                });
                stack.push((*w, v, det - far));
            }
            _ => {
                return Err(Error::Degenerate(format!(
                    "curve {} meets {} further curves; a rational curve with three fixed points is fixed pointwise",
                    g.vertices[v],
                    children.len()
                )));
            }
        }
    }
    for p in &order {
        let (a, b) = p.exponents;
        if a == 0 || b == 0 {
            return Err(Error::Degenerate(format!("point {} has eigenvalue 1", p.label)));
        }
        components.push(FixedComponent::isolated(&p.label, a, b));
    }
    points.extend(order);
    Ok(ChainPropagation { points, components })
}

/// Sum of Euler numbers of the known components.
pub fn known_euler_sum(components: &[FixedComponent]) -> i64 {
    components
        .iter()
        .filter(|c| c.kind != ComponentKind::IsolatedUnknown)
        .map(FixedComponent::euler)
        .sum()
}

/// Number of fixed points not yet accounted for, from the topological
/// Lefschetz formula on a K3 surface (`b1 = b3 = 0`).
pub fn topological_lefschetz_count(h2_charpoly: &IntPoly, known_euler_sum: i64) -> Result<i64> {
    if h2_charpoly.is_zero() || h2_charpoly.deg() != 22 {
        return Err(Error::WrongDegree {
            expected: 22,
            got: h2_charpoly.degree().unwrap_or(0),
        });
    }
    if !h2_charpoly.is_monic() {
        return Err(Error::NotMonic);
    }
    let trace: i64 = (-h2_charpoly.coeff(21))
        .try_into()
        .map_err(|_| Error::InvalidArgument("trace out of range".into()))?;
    let t = 2 + trace - known_euler_sum;
    if t < 0 {
        return Err(Error::Inconsistent(format!("negative count of remaining fixed points ({t})")));
    }
    Ok(t)
}

fn one_minus_power(field: &Arc<NumberField>, e: i64) -> Result<NumberFieldElement> {
    let g = NumberFieldElement::generator(field);
    NumberFieldElement::one(field).sub(&g.pow(e)?)
}

/// Holomorphic Lefschetz contribution of a known component.
pub fn holomorphic_contribution(c: &FixedComponent, field: &Arc<NumberField>) -> Result<NumberFieldElement> {
    let contribution = match &c.kind {
        ComponentKind::IsolatedUnknown => {
            return Err(Error::InvalidArgument(format!("component {} is unknown", c.label)));
        }
        ComponentKind::IsolatedKnown { exponents: (a, b) } => {
            let (u, v) = (one_minus_power(field, *a)?, one_minus_power(field, *b)?);
            if u.is_zero() || v.is_zero() {
                return Err(Error::Degenerate(format!("eigenvalue 1 at isolated point {}", c.label)));
            }
            u.mul(&v)?.inv()?
        }
        ComponentKind::FixedCurve {
            genus,
            conormal_exponent,
            conormal_degree,
        } => {
            let lambda = NumberFieldElement::generator(field).pow(*conormal_exponent)?;
            let u = one_minus_power(field, *conormal_exponent)?;
            if u.is_zero() {
                return Err(Error::Degenerate(format!("conormal eigenvalue 1 on curve {}", c.label)));
            }
            let first = NumberFieldElement::from_int(field, 1 - i64::from(*genus)).div(&u)?;
            let second = lambda.scale(&num_rational::BigRational::from_integer((*conormal_degree).into())).div(&u.mul(&u)?)?;
            first.add(&second)?
        }
    };
    Ok(contribution.scale(&num_rational::BigRational::from_integer(c.multiplicity.into())))
}

/// Result of the holomorphic Lefschetz bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzSolution {
    /// `1 + g^(-det)`, the alternating trace on `H^k(O_S)` of a K3 surface.
    pub rhs: NumberFieldElement,
    pub known_sum: NumberFieldElement,
    /// Contribution `1/((1 - e1)(1 - e2))` required of the unknown point.
    pub f: Option<NumberFieldElement>,
    /// `e1 + e2`.
    pub trace: Option<NumberFieldElement>,
    /// `e1 e2`.
    pub det: Option<NumberFieldElement>,
    /// `known_sum - rhs` when no component is unknown.
    pub residual: Option<NumberFieldElement>,
}

/// Solves for the eigenvalue data of the single unknown isolated point, or
/// checks consistency when there is none.
pub fn solve_unknown_point(
    components: &[FixedComponent],
    field: &Arc<NumberField>,
    det_exponent: i64,
) -> Result<LefschetzSolution> {
    let unknowns = components.iter().filter(|c| c.kind == ComponentKind::IsolatedUnknown).count();
    if unknowns > 1 {
        return Err(Error::UnknownCount(unknowns));
    }
    let g = NumberFieldElement::generator(field);
    let rhs = NumberFieldElement::one(field).add(&g.pow(-det_exponent)?)?;
    let mut known_sum = NumberFieldElement::zero(field);
    for c in components.iter().filter(|c| c.kind != ComponentKind::IsolatedUnknown) {
        known_sum = known_sum.add(&holomorphic_contribution(c, field)?)?;
    }
    if unknowns == 0 {
        let residual = known_sum.sub(&rhs)?;
        return Ok(LefschetzSolution {
            rhs,
            known_sum,
            f: None,
            trace: None,
            det: None,
            residual: Some(residual),
        });
    }
    let f = rhs.sub(&known_sum)?;
    if f.is_zero() {
        return Err(Error::Degenerate("no consistent isolated point: required contribution is zero".into()));
    }
    let det = g.pow(det_exponent)?;
    let trace = NumberFieldElement::one(field).add(&det)?.sub(&f.inv()?)?;
    Ok(LefschetzSolution {
        rhs,
        known_sum,
        f: Some(f),
        trace: Some(trace),
        det: Some(det),
        residual: None,
    })
}

/// `(m, n)` with `(g^a)^m (g^b)^n = 1`, primitive, first nonzero entry
/// positive.
pub fn powers_dependency_witness(a: i64, b: i64) -> Result<(i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::InvalidArgument("both exponents are zero".into()));
    }
    let d = a.gcd(&b);
    let (mut m, mut n) = (b / d, -a / d);
    if m < 0 || (m == 0 && n < 0) {
        m = -m;
        n = -n;
    }
    Ok((m, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e8_graph() -> CurveChainGraph {
        CurveChainGraph {
            vertices: (0..8).map(|k| format!("C{k}")).collect(),
            edges: vec![(0, 3), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)],
            pointwise_fixed: 3,
            det_exponent: 1,
        }
    }

    fn phi14() -> Arc<NumberField> {
        NumberField::new(IntPoly::parse("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1").unwrap()).unwrap()
    }

    #[test]
    fn e8_table() {
        let r = propagate_chain(&e8_graph()).unwrap();
        let mut t = r.isolated_table();
        t.sort();
        let mut want: Vec<(String, (i64, i64))> = [
            ("P12", (-1, 2)),
            ("P1", (-2, 3)),
            ("P0", (-1, 2)),
            ("P45", (-1, 2)),
            ("P56", (-2, 3)),
            ("P67", (-3, 4)),
            ("P7", (-4, 5)),
        ]
        .iter()
        .map(|(l, e)| (l.to_string(), *e))
        .collect();
        want.sort();
        assert_eq!(t, want);
        assert!(r.points.iter().all(|p| p.exponents.0 + p.exponents.1 == 1));
        assert_eq!(r.components.len(), 8);
    }

    #[test]
    fn lone_fixed_curve() {
        let g = CurveChainGraph {
            vertices: vec!["C0".into()],
            edges: vec![],
            pointwise_fixed: 0,
            det_exponent: 1,
        };
        let r = propagate_chain(&g).unwrap();
        assert!(r.isolated_table().is_empty());
        assert_eq!(r.components.len(), 1);
    }

    #[test]
    fn two_curve_chain() {
        let g = CurveChainGraph {
            vertices: vec!["C0".into(), "C1".into()],
            edges: vec![(0, 1)],
            pointwise_fixed: 0,
            det_exponent: 1,
        };
        let r = propagate_chain(&g).unwrap();
        assert_eq!(r.isolated_table(), vec![("P1".to_string(), (-1, 2))]);
        assert_eq!(r.points[0].exponents, (0, 1));
    }

    #[test]
    fn rejects_cycles() {
        let g = CurveChainGraph {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![(0, 1), (1, 2), (2, 0)],
            pointwise_fixed: 0,
            det_exponent: 1,
        };
        assert_eq!(propagate_chain(&g).unwrap_err(), Error::NotATree);
    }

    #[test]
    fn lefschetz_counts() {
        let p = IntPoly::parse("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1").unwrap();
        let h2 = &IntPoly::parse("x - 1").unwrap().pow(8) * &p;
        assert_eq!(topological_lefschetz_count(&h2, 9).unwrap(), 1);
        assert_eq!(topological_lefschetz_count(&h2, 10).unwrap(), 0);
        assert_eq!(topological_lefschetz_count(&IntPoly::parse("x - 1").unwrap().pow(22), 24).unwrap(), 0);
        assert!(matches!(topological_lefschetz_count(&h2, 11), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn fixed_curve_contribution() {
        let k = phi14();
        let c = holomorphic_contribution(&FixedComponent::curve("C3", 0, 1, 2), &k).unwrap();
        let d = NumberFieldElement::generator(&k);
        let one = NumberFieldElement::one(&k);
        let u = one.sub(&d).unwrap();
        let want = one.add(&d).unwrap().div(&u.mul(&u).unwrap()).unwrap();
        assert_eq!(c, want);
        let e = holomorphic_contribution(&FixedComponent::isolated("Q", 0, 1), &k);
        assert!(matches!(e, Err(Error::Degenerate(_))));
    }

    #[test]
    fn witnesses() {
        assert_eq!(powers_dependency_witness(-1, 2).unwrap(), (2, 1));
        assert_eq!(powers_dependency_witness(-4, 5).unwrap(), (5, 4));
        assert_eq!(powers_dependency_witness(1, 1).unwrap(), (1, -1));
        assert!(powers_dependency_witness(0, 0).is_err());
    }

    #[test]
    fn unknown_counts() {
        let k = phi14();
        let comps = vec![FixedComponent::unknown("Q"), FixedComponent::unknown("R")];
        assert_eq!(solve_unknown_point(&comps, &k, 1).unwrap_err(), Error::UnknownCount(2));
    }
}
