//! Certified interval arithmetic over dyadic rationals.

mod complex;
mod dyadic;
mod elementary;
mod real;

use std::sync::atomic::{AtomicU32, Ordering};

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use complex::{CInterval, Cx};
pub use dyadic::{Dyadic, Round};
pub use elementary::{certified_decimal, decimal_string, ln_interval, rational_to_f64};
pub use real::Interval;

pub const START_PRECISION: u32 = 64;
pub const DEFAULT_PRECISION_CAP: u32 = 8192;

/// Working-precision policy plus a high-water mark of the bits actually used.
#[derive(Debug)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
    used: AtomicU32,
}

impl Precision {
    pub fn new(cap: u32) -> Self {
        Self {
            start: START_PRECISION.min(cap),
            cap,
            used: AtomicU32::new(0),
        }
    }

    pub fn record(&self, bits: u32) {
        self.used.fetch_max(bits, Ordering::Relaxed);
    }

    pub fn used(&self) -> u32 {
        self.used.load(Ordering::Relaxed)
    }

    /// Doubling schedule from `start` up to and including `cap`.
    pub fn schedule(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut p = self.start.max(1);
        loop {
            out.push(p.min(self.cap));
            if p >= self.cap {
                break;
            }
            p = p.saturating_mul(2);
        }
        out
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::new(DEFAULT_PRECISION_CAP)
    }
}

impl Clone for Precision {
    fn clone(&self) -> Self {
        Self {
            start: self.start,
            cap: self.cap,
            used: AtomicU32::new(self.used()),
        }
    }
}

/// Certified real enclosure `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealEnclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn exact(v: BigRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_interval(i: &Interval) -> Self {
        let (lo, hi) = i.to_rationals();
        Self { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn mid_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }

    /// Midpoint decimal with the number of certified fractional digits.
    pub fn decimal(&self, max_digits: usize) -> (String, usize) {
        certified_decimal(&self.lo, &self.hi, max_digits)
    }
}

impl Serialize for RealEnclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (decimal, digits) = self.decimal(40);
        let mut st = s.serialize_struct("RealEnclosure", 4)?;
        st.serialize_field("decimal", &decimal)?;
        st.serialize_field("certified_digits", &digits)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}
