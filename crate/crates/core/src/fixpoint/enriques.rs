use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::{factor_mod2, F2Poly};
use crate::poly::IntPoly;

/// Rank of the lattice whose isometry orders bound the admissible primes.
const ORDER_RANK: u64 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesVerdict {
    pub polynomial: IntPoly,
    pub mod2_factors: Vec<(F2Poly, usize)>,
    pub has_degree5_factor: bool,
    pub admissible_orders: BTreeSet<u64>,
    pub obstructed: bool,
    pub rationale: String,
}

impl Serialize for EnriquesVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            factor: &'a F2Poly,
            degree: usize,
            multiplicity: usize,
        }
        let factors: Vec<Factor> = self
            .mod2_factors
            .iter()
            .map(|(f, m)| Factor {
                factor: f,
                degree: f.degree().unwrap_or(0),
                multiplicity: *m,
            })
            .collect();
        let mut st = s.serialize_struct("EnriquesVerdict", 6)?;
        st.serialize_field("polynomial", &self.polynomial)?;
        st.serialize_field("mod2_factors", &factors)?;
        st.serialize_field("has_degree5_factor", &self.has_degree5_factor)?;
        st.serialize_field("admissible_orders", &self.admissible_orders)?;
        st.serialize_field("obstructed", &self.obstructed)?;
        st.serialize_field("rationale", &self.rationale)?;
        st.end()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime powers `q = p^m` with `p^(m-1) (p-1) <= rank`, i.e. with
/// `phi(q) <= rank`.
pub fn admissible_prime_power_orders(rank: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    // p - 1 <= rank bounds p
    for p in (2..=rank.saturating_add(1)).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut phi = p - 1;
        while phi <= rank {
            out.insert(q);
            match (q.checked_mul(p), phi.checked_mul(p)) {
                (Some(nq), Some(nphi)) => {
                    q = nq;
                    phi = nphi;
                }
                _ => break,
            }
        }
    }
    out
}

/// Mod-2 test: a degree-5 irreducible factor of the reduction forces an
/// eigenvalue of multiplicative order 31 on the discriminant group.
pub fn enriques_obstruction(p: &IntPoly) -> Result<EnriquesVerdict> {
    if p.degree() != Some(10) {
        return Err(Error::WrongDegree {
            expected: 10,
            got: p.degree().unwrap_or(0),
        });
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mod2_factors = factor_mod2(p);
    let has5 = mod2_factors.iter().any(|(f, _)| f.degree() == Some(5));
    let admissible_orders = admissible_prime_power_orders(ORDER_RANK);
    let rationale = if has5 {
        format!(
            "a degree-5 irreducible factor over F2 has its roots in F32 \\ F2, so the induced isometry of the \
             discriminant group F2^10 has order divisible by 31; 31 is not among the admissible prime powers {:?}",
            admissible_orders
        )
    } else {
        "no irreducible factor of degree 5 over F2; the test is necessary only, so realizability is not decided"
            .to_string()
    };
    Ok(EnriquesVerdict {
        polynomial: p.clone(),
        mod2_factors,
        has_degree5_factor: has5,
        admissible_orders,
        obstructed: has5,
        rationale,
    })
}
