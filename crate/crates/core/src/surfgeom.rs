//! Root lattices, Coxeter elements and the block isometry attached to a
//! Salem polynomial.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::certroots::{compare_modulus, isolate_algebraic, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::factor::salem_classify;
use crate::interval::{Interval, Precision};
use crate::matrix::{determinant, signature, IntMatrix};
use crate::poly::{expand_trace_polynomial, trace_polynomial, IntPoly};
use crate::sturm::{isolate_real_roots, refine_real_root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A Dynkin diagram of type A, D or E and given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => rank >= 6,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRootSystem(format!("{family:?}{rank}")))
        }
    }

    /// `E9`: the affine diagram, whose form is degenerate.
    pub fn is_degenerate(&self) -> bool {
        self.family == Family::E && self.rank == 9
    }

    /// Edges of the diagram in vertex order. For `E_n` the chain is
    /// `1..n-1` and vertex 0 hangs off vertex 3.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n.saturating_sub(1)).map(|k| (k, k + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|k| (k, k + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e: Vec<_> = (1..n - 1).map(|k| (k, k + 1)).collect();
                e.insert(0, (0, 3));
                e
            }
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("root system '{s}', expected e.g. E10, A2, D4"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

impl Serialize for RootSystemSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(IntMatrix);

impl GramMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
        }
        if !m.is_symmetric() {
            return Err(Error::InvalidArgument("Gram matrix must be symmetric".into()));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rows()
    }

    /// `(positive, negative, null)`.
    pub fn signature(&self) -> (usize, usize, usize) {
        signature(&self.0).expect("symmetric")
    }
}

impl Serialize for GramMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Gram matrix of the negative-definite form: `-2` on the diagonal, `1` for
/// joined vertices.
pub fn ade_gram(spec: &RootSystemSpec) -> GramMatrix {
    let n = spec.rank;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, BigInt::from(-2));
    }
    for (i, j) in spec.edges() {
        m.set(i, j, BigInt::one());
        m.set(j, i, BigInt::one());
    }
    GramMatrix(m)
}

/// `|det g|`.
pub fn discriminant(g: &GramMatrix) -> BigInt {
    determinant(&g.0).expect("square").abs()
}

fn partitions(rest: usize, min: Option<RootSystemSpec>, all: &[RootSystemSpec], cur: &mut Vec<RootSystemSpec>, out: &mut Vec<Vec<RootSystemSpec>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for s in all {
        if s.rank > rest || min.is_some_and(|m| *s < m) {
            continue;
        }
        cur.push(*s);
        partitions(rest - s.rank, Some(*s), all, cur, out);
        cur.pop();
    }
}

/// Every multiset of A/D/E diagrams of total rank `rank`, with the
/// discriminant of the orthogonal sum.
pub fn enumerate_root_lattices(rank: usize) -> Vec<(Vec<RootSystemSpec>, BigInt)> {
    let mut all = Vec::new();
    for r in 1..=rank {
        for f in [Family::A, Family::D, Family::E] {
            if let Ok(s) = RootSystemSpec::new(f, r) {
                // E_n beyond 8 is not positive definite
                if !(f == Family::E && r > 8) {
                    all.push(s);
                }
            }
        }
    }
    all.sort();
    let mut out = Vec::new();
    partitions(rank, None, &all, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|ms| {
            let d = ms.iter().fold(BigInt::one(), |acc, s| acc * discriminant(&ade_gram(s)));
            (ms, d)
        })
        .collect()
}

/// Rank-8 root lattices of discriminant one.
pub fn enumerate_rank8_unimodular_root_lattices() -> Vec<Vec<RootSystemSpec>> {
    enumerate_root_lattices(8)
        .into_iter()
        .filter(|(_, d)| d.is_one())
        .map(|(ms, _)| ms)
        .collect()
}

/// Simple reflection `r_k(v) = v + (v, s_k) s_k` on the root basis.
pub fn reflection(g: &GramMatrix, k: usize) -> IntMatrix {
    let n = g.rank();
    let mut r = IntMatrix::identity(n);
    for j in 0..n {
        let v = r.get(k, j) + g.0.get(j, k);
        r.set(k, j, v);
    }
    r
}

/// Product `r_0 r_1 ... r_{n-1}` of the simple reflections.
pub fn coxeter_element(spec: &RootSystemSpec) -> IntMatrix {
    let g = ade_gram(spec);
    (0..spec.rank).fold(IntMatrix::identity(spec.rank), |acc, k| &acc * &reflection(&g, k))
}

/// One block of the orthogonal decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// Form `[[0,1],[1,0]]`, matrix `diag(a, 1/a)`.
    Hyperbolic { salem: AlgebraicNumber },
    /// Form `form_sign * I2`, matrix the rotation by `root`.
    Rotation { root: AlgebraicNumber, form_sign: i8 },
    /// Identity on a lattice with the given form.
    Identity { rank: usize, form: GramMatrix },
}

impl Block {
    fn signature(&self) -> (usize, usize) {
        match self {
            Block::Hyperbolic { .. } => (1, 1),
            Block::Rotation { form_sign, .. } => {
                if *form_sign > 0 {
                    (2, 0)
                } else {
                    (0, 2)
                }
            }
            Block::Identity { form, .. } => {
                let (p, q, _) = form.signature();
                (p, q)
            }
        }
    }

    fn rank(&self) -> usize {
        match self {
            Block::Identity { rank, .. } => *rank,
            _ => 2,
        }
    }
}

impl Serialize for Block {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Block", 3)?;
        match self {
            Block::Hyperbolic { salem } => {
                st.serialize_field("kind", "hyperbolic")?;
                st.serialize_field("form", &[[0, 1], [1, 0]])?;
                st.serialize_field("root", salem)?;
            }
            Block::Rotation { root, form_sign } => {
                st.serialize_field("kind", "rotation")?;
                let f = i64::from(*form_sign);
                st.serialize_field("form", &[[f, 0], [0, f]])?;
                st.serialize_field("root", root)?;
            }
            Block::Identity { rank, form } => {
                st.serialize_field("kind", "identity")?;
                st.serialize_field("form", form)?;
                st.serialize_field("rank", rank)?;
            }
        }
        st.end()
    }
}

/// Real block model of an isometry with a Salem factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockIsometry {
    pub salem_poly: IntPoly,
    pub blocks: Vec<Block>,
    pub ambient_signature: (usize, usize),
    pub char_poly: IntPoly,
}

/// Builds `F = id ⊕ f` for a Salem polynomial `p`: one hyperbolic block for
/// the Salem pair, a positive rotation block for the root with canonical
/// ordinal `positive_plane`, negative rotation blocks for the other circle
/// pairs, and an optional identity block (`E8` for the K3 lattice).
pub fn build_block_isometry(
    p: &IntPoly,
    positive_plane: usize,
    identity: Option<&RootSystemSpec>,
    prec: &Precision,
) -> Result<BlockIsometry> {
    if !salem_classify(p).is_salem {
        return Err(Error::NotSalem);
    }
    let roots = isolate_algebraic(p, prec)?;
    let chosen = roots
        .get(positive_plane)
        .filter(|r| !r.is_real())
        .ok_or_else(|| Error::InvalidArgument(format!("ordinal {positive_plane} is not a circle root")))?
        .clone();
    let salem = roots[0].clone();
    let mut blocks = vec![
        Block::Hyperbolic { salem },
        Block::Rotation { root: chosen.clone(), form_sign: 1 },
    ];
    for r in &roots {
        if r.is_real() || !r.bx.im_hi.is_negative() {
            continue;
        }
        if r == &chosen || r.conj() == chosen {
            continue;
        }
        blocks.push(Block::Rotation { root: r.clone(), form_sign: -1 });
    }
    let mut char_poly = p.clone();
    if let Some(spec) = identity {
        blocks.push(Block::Identity { rank: spec.rank, form: ade_gram(spec) });
        char_poly = &IntPoly::parse("x - 1").expect("literal").pow(spec.rank as u32) * &char_poly;
    }
    let ambient_signature = blocks.iter().fold((0, 0), |(a, b), bl| {
        let (p, q) = bl.signature();
        (a + p, b + q)
    });
    Ok(BlockIsometry {
        salem_poly: p.clone(),
        blocks,
        ambient_signature,
        char_poly,
    })
}

/// Enclosure of `a + 1/a` for the hyperbolic root and `2 Re b` for a
/// rotation root.
fn block_trace(b: &Block, prec: u32) -> Option<Interval> {
    match b {
        Block::Hyperbolic { salem } => {
            let z = salem.enclosure(prec);
            Some(z.re.add(&Interval::one().div(&z.re, prec)?, prec))
        }
        Block::Rotation { root, .. } => {
            let z = root.enclosure(prec);
            Some(z.re.add(&z.re, prec))
        }
        Block::Identity { .. } => None,
    }
}

/// Rebuilds the characteristic polynomial from the blocks: each 2x2 block
/// contributes `x^2 - t x + 1` with `t` a certified root of the trace
/// polynomial, distinct blocks hitting distinct roots, so the product is
/// `x^n g(x + 1/x)`; identity blocks contribute `(x - 1)^rank`.
pub fn reconstruct_char_poly(b: &BlockIsometry) -> Result<IntPoly> {
    let g = trace_polynomial(&b.salem_poly)?;
    let isol = isolate_real_roots(&g)?;
    let narrow = BigRational::new(BigInt::one(), BigInt::one() << 40usize);
    let tight: Vec<(BigRational, BigRational)> =
        isol.iter().map(|r| refine_real_root(&g, r, &narrow).bounds()).collect();
    let mut hit = vec![false; tight.len()];
    let mut rank_one = 0usize;
    for bl in &b.blocks {
        if let Block::Identity { rank, .. } = bl {
            rank_one += rank;
            continue;
        }
        let t = block_trace(bl, 128).ok_or(Error::PrecisionExhausted { bits: 128 })?;
        let (lo, hi) = t.to_rationals();
        let idx: Vec<usize> = (0..tight.len())
            .filter(|&i| !(hi < tight[i].0 || lo > tight[i].1))
            .collect();
        match idx.as_slice() {
            [i] if !hit[*i] => hit[*i] = true,
            _ => return Err(Error::Inconsistent("block traces do not match the trace polynomial".into())),
        }
    }
    if hit.iter().any(|h| !h) || b.blocks.iter().filter(|x| !matches!(x, Block::Identity { .. })).count() != g.deg() {
        return Err(Error::Inconsistent("blocks do not cover the trace polynomial".into()));
    }
    let lin = IntPoly::parse("x - 1").expect("literal").pow(rank_one as u32);
    Ok(&lin * &expand_trace_polynomial(&g))
}

/// Outcome of one block check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCheck {
    pub kind: &'static str,
    pub preserved: bool,
    pub reason: String,
}

/// Certificate that `F^T Q F = Q` blockwise, plus the signature count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryCertificate {
    pub blocks: Vec<BlockCheck>,
    pub signature: (usize, usize),
    pub signature_matches: bool,
    pub certified: bool,
}

/// Checks each block: the hyperbolic block by the identity `a * (1/a) = 1`
/// once `a != 0` is certified, rotation blocks by `|b| = 1` decided
/// exactly, identity blocks trivially.
pub fn verify_isometry(b: &BlockIsometry, prec: &Precision) -> Result<IsometryCertificate> {
    let mut checks = Vec::new();
    for bl in &b.blocks {
        let c = match bl {
            Block::Hyperbolic { salem } => {
                let nonzero = !salem.bx.contains(&BigRational::zero(), &BigRational::zero());
                BlockCheck {
                    kind: "hyperbolic",
                    preserved: nonzero,
                    reason: "diag(a, 1/a) fixes the antidiagonal form".into(),
                }
            }
            Block::Rotation { root, .. } => {
                let ord = compare_modulus(root, &BigRational::one(), prec)?;
                BlockCheck {
                    kind: "rotation",
                    preserved: ord == Ordering::Equal,
                    reason: format!("|b| vs 1: {ord:?}"),
                }
            }
            Block::Identity { form, .. } => BlockCheck {
                kind: "identity",
                preserved: form.matrix().is_symmetric(),
                reason: "identity preserves any form".into(),
            },
        };
        checks.push(c);
    }
    let signature = b.blocks.iter().fold((0, 0), |(p, q), bl| {
        let (a, c) = bl.signature();
        (p + a, q + c)
    });
    let rank: usize = b.blocks.iter().map(Block::rank).sum();
    let signature_matches = signature == b.ambient_signature && signature.0 + signature.1 == rank;
    let certified = signature_matches && checks.iter().all(|c| c.preserved);
    Ok(IsometryCertificate {
        blocks: checks,
        signature,
        signature_matches,
        certified,
    })
}

/// A rotation block with `root` replaced by a rescaled copy; used to
/// exercise the failure path of [`verify_isometry`].
pub fn rescaled_rotation(root: &AlgebraicNumber, c: &BigRational) -> Result<Block> {
    Ok(Block::Rotation { root: root.scale(c)?, form_sign: -1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::char_poly;

    fn spec(s: &str) -> RootSystemSpec {
        s.parse().unwrap()
    }

    #[test]
    fn small_grams() {
        assert_eq!(ade_gram(&spec("A1")).matrix().to_nested(), vec![vec![BigInt::from(-2)]]);
        let d4 = ade_gram(&spec("D4"));
        let deg2 = (0..4).filter(|&i| (0..4).filter(|&j| j != i && d4.matrix().get(i, j).is_one()).count() == 3).count();
        assert_eq!(deg2, 1);
        let e8 = ade_gram(&spec("E8"));
        let nb0: Vec<usize> = (1..8).filter(|&j| e8.matrix().get(0, j).is_one()).collect();
        assert_eq!(nb0, vec![3]);
    }

    #[test]
    fn discriminants() {
        for n in 1..=9 {
            assert_eq!(discriminant(&ade_gram(&spec(&format!("A{n}")))), BigInt::from(n + 1));
        }
        for n in 4..=9 {
            assert_eq!(discriminant(&ade_gram(&spec(&format!("D{n}")))), BigInt::from(4));
        }
        for (n, d) in [(6, 3), (7, 2), (8, 1)] {
            assert_eq!(discriminant(&ade_gram(&spec(&format!("E{n}")))), BigInt::from(d));
        }
    }

    #[test]
    fn only_e8_is_unimodular() {
        assert_eq!(enumerate_rank8_unimodular_root_lattices(), vec![vec![spec("E8")]]);
        let all = enumerate_root_lattices(8);
        let find = |ms: &[RootSystemSpec]| all.iter().find(|(m, _)| m == ms).unwrap().1.clone();
        assert_eq!(find(&[spec("A1"), spec("A7")]), BigInt::from(16));
        assert_eq!(find(&[spec("D8")]), BigInt::from(4));
    }

    #[test]
    fn coxeter_small() {
        let a1 = coxeter_element(&spec("A1"));
        assert_eq!(a1.to_nested(), vec![vec![BigInt::from(-1)]]);
        assert_eq!(char_poly(&coxeter_element(&spec("A2"))).unwrap(), IntPoly::parse("x^2 + x + 1").unwrap());
        let e10 = char_poly(&coxeter_element(&spec("E10"))).unwrap();
        assert_eq!(e10, IntPoly::parse("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1").unwrap());
    }

    #[test]
    fn reflections_are_involutive_isometries() {
        let g = ade_gram(&spec("E10"));
        for k in 0..10 {
            let r = reflection(&g, k);
            assert_eq!(&r * &r, IntMatrix::identity(10));
            assert_eq!(&(&r.transpose() * g.matrix()) * &r, g.matrix().clone());
        }
    }

    #[test]
    fn e9_is_degenerate() {
        let s = spec("E9");
        assert!(s.is_degenerate());
        assert_eq!(ade_gram(&s).signature().2, 1);
        assert!("E5".parse::<RootSystemSpec>().is_err());
    }

    #[test]
    fn rejects_non_salem_block_request() {
        let prec = Precision::default();
        let e = build_block_isometry(&IntPoly::parse("x^2 - 1").unwrap(), 0, None, &prec);
        assert_eq!(e.unwrap_err(), Error::NotSalem);
    }

    #[test]
    fn phi14_block_model() {
        let prec = Precision::default();
        let p = IntPoly::parse("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1").unwrap();
        // ordinal 12 is the lower root of the pair near -0.99 - 0.14i
        let b = build_block_isometry(&p, 12, Some(&spec("E8")), &prec).unwrap();
        assert_eq!(b.ambient_signature, (3, 19));
        assert_eq!(b.blocks.len(), 8);
        assert_eq!(reconstruct_char_poly(&b).unwrap(), b.char_poly);
        let lin = IntPoly::parse("x - 1").unwrap().pow(8);
        assert_eq!(b.char_poly, &lin * &p);
        let cert = verify_isometry(&b, &prec).unwrap();
        assert!(cert.certified);

        let mut bad = b.clone();
        let Block::Rotation { root, .. } = &b.blocks[2] else { panic!() };
        bad.blocks[2] = rescaled_rotation(root, &BigRational::new(BigInt::from(11), BigInt::from(10))).unwrap();
        let cert = verify_isometry(&bad, &prec).unwrap();
        assert!(!cert.certified);
        assert!(!cert.blocks[2].preserved);
    }

    #[test]
    fn identity_only_isometry() {
        let b = BlockIsometry {
            salem_poly: IntPoly::one(),
            blocks: vec![Block::Identity { rank: 8, form: ade_gram(&spec("E8")) }],
            ambient_signature: (0, 8),
            char_poly: IntPoly::parse("x - 1").unwrap().pow(8),
        };
        assert!(verify_isometry(&b, &Precision::default()).unwrap().certified);
    }
}
