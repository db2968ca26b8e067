//! Dense polynomials over a small prime field and Berlekamp factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

/// Polynomial over `F_p`, coefficients in `0..p`, low to high, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|v| v.mod_floor(&pb).to_u64().expect("reduced below p"))
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + self.p - o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| self.mulmod(a, k)).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.lc()))
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (FpPoly::zero(self.p), self.clone());
        }
        let inv = self.inv(d.lc());
        let dd = d.deg();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = self.mulmod(r[k + dd], inv);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p - self.mulmod(coef, b)) % self.p;
            }
        }
        (FpPoly::new(self.p, q), FpPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let k = r0.inv(r0.lc());
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| self.mulmod(a, i as u64 % self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Inverse of the Frobenius on a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&v| BigInt::from(v)).collect())
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Square-free decomposition of a monic polynomial over `F_p`:
/// `f = prod g_i^{m_i}` with each `g_i` square-free and monic.
pub fn square_free_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in square_free_decomposition(&f.pth_root()) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.deg() > 0 {
        for (g, m) in square_free_decomposition(&c.monic().pth_root()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Kernel basis of a square matrix over `F_p` acting on row vectors
/// (`v M = 0`).
fn left_kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    // transpose so the problem becomes M^T v^T = 0
    let mut a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = pow_mod(a[row][col], p - 2, p);
        for v in a[row].iter_mut() {
            *v = ((*v as u128 * inv as u128) % p as u128) as u64;
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let k = a[r][col];
                for j in 0..n {
                    let sub = ((k as u128 * a[row][j] as u128) % p as u128) as u64;
                    a[r][j] = (a[r][j] + p - sub) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// Berlekamp splitting of a monic square-free polynomial into monic
/// irreducibles. Deterministic: tries every constant shift in order.
pub fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.monic()];
    }
    let p = f.p;
    let xp = FpPoly::x(p).pow_mod(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for i in 0..n {
        let mut r: Vec<u64> = (0..n).map(|j| cur.c.get(j).copied().unwrap_or(0)).collect();
        r[i] = (r[i] + p - 1) % p;
        rows.push(r);
        cur = cur.mul(&xp).rem(f);
    }
    let basis = left_kernel(&rows, p);
    let k = basis.len();
    let mut factors = vec![f.monic()];
    for v in &basis {
        if factors.len() == k {
            break;
        }
        let vp = FpPoly::new(p, v.clone());
        if vp.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.deg() <= 1 {
                next.push(g);
                continue;
            }
            let mut pending = vec![g];
            for s in 0..p {
                let mut split = Vec::new();
                for h in pending {
                    if h.deg() <= 1 {
                        split.push(h);
                        continue;
                    }
                    let d = h.gcd(&vp.sub(&FpPoly::new(p, vec![s])));
                    if d.deg() > 0 && d.deg() < h.deg() {
                        let q = h.divrem(&d).0.monic();
                        split.push(d);
                        split.push(q);
                    } else {
                        split.push(h);
                    }
                }
                pending = split;
            }
            next.extend(pending);
        }
        factors = next;
    }
    factors.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.c.iter().rev().cmp(b.c.iter().rev())));
    factors
}

/// Complete factorization of a nonzero polynomial over `F_p` into monic
/// irreducibles with multiplicities (the leading unit is dropped).
pub fn factor_fp(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    for (g, m) in square_free_decomposition(&f.monic()) {
        for h in berlekamp(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.c.iter().rev().cmp(b.0.c.iter().rev())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn square_free_in_char_p() {
        // (x + 1)^3 (x + 2) over F_3: derivative tricks with p-th powers
        let a = fp(3, &[1, 1]);
        let b = fp(3, &[2, 1]);
        let f = a.mul(&a).mul(&a).mul(&b);
        let mut d = square_free_decomposition(&f);
        d.sort_by_key(|x| x.1);
        assert_eq!(d, vec![(b, 1), (a, 3)]);
    }

    #[test]
    fn berlekamp_splits_x4_minus_1_mod_5() {
        let f = fp(5, &[4, 0, 0, 0, 1]);
        let fs = berlekamp(&f);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|g| g.deg() == 1));
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = fp(2, &[1, 1, 0, 0, 0, 1]); // x^5 + x + 1 = (x^2+x+1)(x^3+x^2+1)
        let fs = berlekamp(&f);
        assert_eq!(fs.iter().map(FpPoly::deg).collect::<Vec<_>>(), vec![2, 3]);
        let g = fp(2, &[1, 0, 1, 0, 0, 1]); // x^5 + x^2 + 1 irreducible
        assert_eq!(berlekamp(&g).len(), 1);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = fp(7, &[1, 2, 3]);
        let b = fp(7, &[5, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_one());
    }
}
