//! Factorization over Z: square-free decomposition, factorization modulo a
//! small prime, quadratic Hensel lifting on a factor tree, and subset
//! recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{factor_fp, FpPoly};
use crate::poly::{IntPoly, RatPoly};

const PRIMES_TRIED: usize = 5;

/// Odd primes below 10000, in increasing order.
fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..10_000).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Polynomial with coefficients reduced into `[0, m)`.
#[derive(Clone, Debug)]
struct ZmPoly {
    c: Vec<BigInt>,
}

impl ZmPoly {
    fn new(mut c: Vec<BigInt>, m: &BigInt) -> Self {
        for v in c.iter_mut() {
            *v = v.mod_floor(m);
        }
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self { c }
    }

    fn from_int(p: &IntPoly, m: &BigInt) -> Self {
        Self::new(p.coeffs().to_vec(), m)
    }

    fn from_fp(p: &FpPoly, m: &BigInt) -> Self {
        Self::new(p.c.iter().map(|&v| BigInt::from(v)).collect(), m)
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn add(&self, o: &ZmPoly, m: &BigInt) -> ZmPoly {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        ZmPoly::new(
            (0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect(),
            m,
        )
    }

    fn sub(&self, o: &ZmPoly, m: &BigInt) -> ZmPoly {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        ZmPoly::new(
            (0..n).map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).collect(),
            m,
        )
    }

    fn mul(&self, o: &ZmPoly, m: &BigInt) -> ZmPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return ZmPoly { c: Vec::new() };
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZmPoly::new(c, m)
    }

    /// Division by a monic divisor.
    fn divrem_monic(&self, d: &ZmPoly, m: &BigInt) -> (ZmPoly, ZmPoly) {
        debug_assert!(d.c.last().is_some_and(One::is_one));
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (ZmPoly { c: Vec::new() }, self.clone());
        }
        let dd = d.deg();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd].mod_floor(m);
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &coef * b;
            }
            q[k] = coef;
        }
        (ZmPoly::new(q, m), ZmPoly::new(r, m))
    }

    /// Symmetric lift to an integer polynomial with coefficients in
    /// `(-m/2, m/2]`.
    fn symmetric(&self, m: &BigInt) -> IntPoly {
        let half = m / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|v| if v > &half { v - m } else { v.clone() })
                .collect(),
        )
    }
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m`
/// (with `h` monic) to the same relations modulo `m^2`.
fn hensel_step(
    f: &IntPoly,
    g: &ZmPoly,
    h: &ZmPoly,
    s: &ZmPoly,
    t: &ZmPoly,
    m2: &BigInt,
) -> (ZmPoly, ZmPoly, ZmPoly, ZmPoly) {
    let fm = ZmPoly::from_int(f, m2);
    let e = fm.sub(&g.mul(h, m2), m2);
    let (q, r) = s.mul(&e, m2).divrem_monic(h, m2);
    let g2 = g.add(&t.mul(&e, m2), m2).add(&q.mul(g, m2), m2);
    let h2 = h.add(&r, m2);
    let one = ZmPoly::new(vec![BigInt::one()], m2);
    let b = s.mul(&g2, m2).add(&t.mul(&h2, m2), m2).sub(&one, m2);
    let (c, d) = s.mul(&b, m2).divrem_monic(&h2, m2);
    let s2 = s.sub(&d, m2);
    let t2 = t.sub(&t.mul(&b, m2), m2).sub(&c.mul(&g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod(factors)` modulo `p` (factors monic, pairwise
/// coprime) to a factorization modulo `p^(2^k) >= bound`. Returns the
/// monic lifted factors.
fn multifactor_lift(f: &IntPoly, factors: &[FpPoly], p: u64, bound: &BigInt) -> (Vec<ZmPoly>, BigInt) {
    let pb = BigInt::from(p);
    let mut m_final = pb.clone();
    while &m_final <= bound {
        m_final = &m_final * &m_final;
    }
    (lift_tree(f, factors, p, &m_final), m_final)
}

fn lift_tree(f: &IntPoly, factors: &[FpPoly], p: u64, m_final: &BigInt) -> Vec<ZmPoly> {
    if factors.len() == 1 {
        // the lone factor is f / lc(f) modulo m_final
        let inv = mod_inverse(&f.leading(), m_final).expect("leading coefficient is a unit mod p");
        let c = f.coeffs().iter().map(|v| v * &inv).collect();
        return vec![ZmPoly::new(c, m_final)];
    }
    let k = factors.len() / 2;
    let fp = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let lc_f = FpPoly::from_int(&IntPoly::constant(f.leading()), p);
    let g0 = fp(&factors[..k]).mul(&lc_f);
    let h0 = fp(&factors[k..]);
    let (_, s0, t0) = g0.ext_gcd(&h0);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut g = ZmPoly::from_fp(&g0, &m);
    let mut h = ZmPoly::from_fp(&h0, &m);
    let mut s = ZmPoly::from_fp(&s0, &m);
    let mut t = ZmPoly::from_fp(&t0, &m);
    while &m < m_final {
        let m2 = &m * &m;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m2);
        m = m2;
    }
    let m = m_final;
    let g_int = ZmPoly::new(g.c, m).symmetric(m);
    let h_int = ZmPoly::new(h.c, m).symmetric(m);
    let mut out = lift_tree(&g_int, &factors[..k], p, m);
    out.extend(lift_tree(&h_int, &factors[k..], p, m));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

/// Coefficient bound for any factor of `f` (Mignotte-style, generous).
fn factor_bound(f: &IntPoly) -> BigInt {
    let n = f.deg();
    (BigInt::one() << n) * BigInt::from(n + 1) * f.max_abs_coeff() * f.leading().abs()
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(next);
    }
    s
}

/// Irreducible factors of a primitive square-free polynomial of positive
/// degree with positive leading coefficient.
pub(crate) fn factor_square_free(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.leading();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_int(f, p);
        if fp.deg() != n || fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        let fs: Vec<FpPoly> = factor_fp(&fp).into_iter().map(|(g, _)| g).collect();
        let degs: Vec<usize> = fs.iter().map(FpPoly::deg).collect();
        allowed = allowed.intersection(&subset_sums(&degs)).copied().collect();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= PRIMES_TRIED || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, fs) = best.expect("some small prime keeps a square-free integer polynomial square-free");
    if fs.len() == 1 || allowed.iter().all(|&d| d == 0 || d == n) {
        return vec![f.clone()];
    }
    let bound = factor_bound(f) * 2;
    let (lifted, m) = multifactor_lift(f, &fs, p, &bound);
    recombine(f, lifted, &m, &allowed)
}

fn recombine(f: &IntPoly, mut lifted: Vec<ZmPoly>, m: &BigInt, allowed: &BTreeSet<usize>) -> Vec<IntPoly> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), size) {
            let deg: usize = subset.iter().map(|&i| lifted[i].deg()).sum();
            if !allowed.contains(&deg) {
                continue;
            }
            let lc = ZmPoly::new(vec![f.leading()], m);
            let prod = subset.iter().fold(lc, |a, &i| a.mul(&lifted[i], m));
            let cand = prod.symmetric(m).primitive_part();
            if let Some(q) = f.div_exact(&cand) {
                out.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.deg() > 0 {
        out.push(f.primitive_part());
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Yun's square-free decomposition over Q of a primitive polynomial with
/// positive leading coefficient; factors are returned primitive over Z.
pub(crate) fn yun(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let div = |a: &RatPoly, b: &RatPoly| a.divrem(b).expect("nonzero divisor").0;
    let fr = f.to_rat();
    let df = fr.derivative();
    let a0 = fr.gcd(&df);
    let mut b = div(&fr, &a0);
    let c = div(&df, &a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.to_primitive_int(), i));
        }
        b = div(&b, &a);
        let c = div(&d, &a);
        d = &c - &b.derivative();
        i += 1;
    }
    out
}
