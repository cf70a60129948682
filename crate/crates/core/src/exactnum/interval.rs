use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ceil_dyadic, floor_dyadic, format_rational, serde_rational, ExactRational};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints that is guaranteed to
/// contain some real quantity.
///
/// Arithmetic is exact on the endpoints, so results are tight; the only
/// widening happens in [`CertifiedInterval::round_outward`], which moves `lo`
/// down and `hi` up onto a dyadic grid to keep endpoint sizes bounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CertifiedInterval {
    #[serde(with = "serde_rational")]
    lo: ExactRational,
    #[serde(with = "serde_rational")]
    hi: ExactRational,
}

impl CertifiedInterval {
    pub fn new(lo: ExactRational, hi: ExactRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(
                "CertifiedInterval::new",
                format!("lo {} exceeds hi {}", format_rational(&lo), format_rational(&hi)),
            ));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(value: ExactRational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    /// Interval centred on `center` with half-width `radius >= 0`.
    pub fn around(center: &ExactRational, radius: &ExactRational) -> Self {
        debug_assert!(!radius.is_negative());
        Self {
            lo: center - radius,
            hi: center + radius,
        }
    }

    pub fn lo(&self) -> &ExactRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExactRational {
        &self.hi
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> ExactRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Strict containment in the interior of `other`.
    pub fn is_strict_subset_of(&self, other: &Self) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn add_scalar(&self, c: &ExactRational) -> Self {
        Self {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Self { lo, hi }
    }

    /// `1 / x` for an interval that excludes zero.
    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::invalid(
                "CertifiedInterval::recip",
                "interval contains zero",
            ));
        }
        Ok(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Widens the interval onto the grid `2^-bits`: `lo` rounds down, `hi`
    /// rounds up. The result always contains `self`.
    pub fn round_outward(&self, bits: u32) -> Self {
        Self {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }
}

impl fmt::Display for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}
