//! Dense integer matrices and exact characteristic polynomials.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Block-diagonal sum of square matrices.
    pub fn block_diag(blocks: &[IntMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    /// Companion matrix of a monic polynomial (last column carries `-c_i`).
    pub fn companion(p: &IntPoly) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = p.deg();
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, BigInt::one());
        }
        for i in 0..n {
            m.set(i, n - 1, -p.coeff(i));
        }
        Ok(m)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nested: Vec<Vec<String>> = self
            .to_nested()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_string()).collect())
            .collect();
        nested.serialize(s)
    }
}

/// `det(xI - m)` via Faddeev–LeVerrier over Q. Exact; integral for integer
/// input.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let a: Vec<BigRational> = m
        .entries
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    let matmul = |x: &[BigRational], y: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = &x[i * n + k];
                if xik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += xik * &y[k * n + j];
                }
            }
        }
        out
    };
    // c[n] = 1; M_1 = I; c_{n-k} = -tr(A M_k)/k; M_{k+1} = A M_k + c_{n-k} I
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: Vec<BigRational> = (0..n * n)
        .map(|idx| {
            if idx / n == idx % n {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    for k in 1..=n {
        let am = matmul(&a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i * n + i].clone()).sum();
        let c = -tr / BigRational::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
        mk = am;
        for i in 0..n {
            mk[i * n + i] += &c;
        }
    }
    Ok(IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect(),
    ))
}

/// Exact determinant, read off the characteristic polynomial.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let cp = char_poly(m)?;
    let c0 = cp.coeff(0);
    Ok(if m.rows.is_multiple_of(2) { c0 } else { -c0 })
}

/// Signature `(positive, negative, null)` of a symmetric matrix, counted
/// exactly by Descartes' rule on its (real-rooted) characteristic
/// polynomial.
pub fn signature(m: &IntMatrix) -> Result<(usize, usize, usize)> {
    if !m.is_symmetric() {
        return Err(Error::InvalidArgument("signature needs a symmetric matrix".into()));
    }
    let cp = char_poly(m)?;
    let null = cp.coeffs().iter().take_while(|c| c.is_zero()).count();
    let variations = |p: &IntPoly| {
        let signs: Vec<bool> = p
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.sign() == num_bigint::Sign::Minus)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = variations(&cp);
    let neg = variations(&cp.negate_variable());
    Ok((pos, neg, null))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_char_poly() {
        let cp = char_poly(&IntMatrix::identity(2)).unwrap();
        assert_eq!(cp, IntPoly::parse("x^2 - 2x + 1").unwrap());
    }

    #[test]
    fn companion_identity() {
        let phi14 = IntPoly::parse("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1").unwrap();
        let c = IntMatrix::companion(&phi14).unwrap();
        assert_eq!(char_poly(&c).unwrap(), phi14);
    }

    #[test]
    fn non_square_rejected() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(char_poly(&m), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn block_diag_char_poly_multiplies() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![0, -1, 0], vec![1, 0, 0], vec![3, 4, 5]]).unwrap();
        let ab = IntMatrix::block_diag(&[a.clone(), b.clone()]);
        assert_eq!(
            char_poly(&ab).unwrap(),
            &char_poly(&a).unwrap() * &char_poly(&b).unwrap()
        );
    }

    #[test]
    fn determinant_and_signature() {
        let h = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(determinant(&h).unwrap(), BigInt::from(-1));
        assert_eq!(signature(&h).unwrap(), (1, 1, 0));
        let z = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(signature(&z).unwrap(), (1, 0, 1));
    }
}
