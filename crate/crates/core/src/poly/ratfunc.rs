use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use super::IntPoly;
use crate::error::{Error, Result};

/// A rational function `numerator / denominator` kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    numerator: IntPoly,
    denominator: IntPoly,
}

impl RatFunc {
    pub fn new(numerator: IntPoly, denominator: IntPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let g = numerator.gcd(&denominator);
        let (mut num, mut den) = if g.is_constant() {
            (numerator, denominator)
        } else {
            (
                numerator.div_exact(&g).expect("gcd divides numerator"),
                denominator.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if num.is_zero() {
            return Ok(Self {
                numerator: num,
                denominator: IntPoly::one(),
            });
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = IntPoly::new(num.coeffs().iter().map(|x| x / &c).collect());
            den = IntPoly::new(den.coeffs().iter().map(|x| x / &c).collect());
        }
        Ok(Self {
            numerator: num,
            denominator: den,
        })
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self {
            numerator: p,
            denominator: IntPoly::one(),
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denominator
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let den = &self.denominator * &other.denominator;
        RatFunc::new(num, den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
        .expect("nonzero denominators")
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.recip()?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == IntPoly::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("numerator", &self.numerator)?;
        st.serialize_field("denominator", &self.denominator)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn normalises_common_factor() {
        let r = RatFunc::new(p("x^2 - 1"), p("x - 1")).unwrap();
        assert_eq!(r.numerator(), &p("x + 1"));
        assert_eq!(r.denominator(), &IntPoly::one());
    }

    #[test]
    fn denominator_sign_and_content() {
        let r = RatFunc::new(p("2x"), p("-4")).unwrap();
        assert_eq!(r.numerator(), &p("-x"));
        assert_eq!(r.denominator(), &p("2"));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(RatFunc::new(p("x"), IntPoly::zero()).is_err());
    }
}
