use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{biguint_to_int, serde_rational, CertifiedInterval, ExactRational};
use crate::error::{Error, Result};

/// Largest partial-sum length evaluated with exact rationals in
/// [`zeta_bracket`]. Longer partial sums use fixed-point floor/ceil sums.
pub const ZETA_EXACT_LIMIT: u64 = 20_000;

/// Default `m` for the `zeta(2)` and `2 + pi^2/3` brackets.
pub const DEFAULT_ZETA_TERMS: u64 = 1_000_000;

const FIXED_POINT_BITS: u32 = 120;

/// Running exact value of `sum_{k=1..n} 1/k^p`.
///
/// The sum is held unreduced over the common denominator `lcm(1..n)^p`, so
/// extending it by one term costs one small division and, at prime powers,
/// one small rescaling. No gcd of large numbers is ever taken.
#[derive(Clone, Debug)]
pub struct PowerSumAccumulator {
    power: u32,
    n: u64,
    lcm: BigUint,
    lcm_pow: BigUint,
    numer: BigUint,
}

impl PowerSumAccumulator {
    /// The empty sum (`n = 0`).
    pub fn new(power: u32) -> Self {
        assert!(power >= 1, "power sums start at exponent 1");
        Self {
            power,
            n: 0,
            lcm: BigUint::one(),
            lcm_pow: BigUint::one(),
            numer: BigUint::zero(),
        }
    }

    /// Accumulator already advanced to `n` terms.
    pub fn up_to(power: u32, n: u64) -> Self {
        let mut acc = Self::new(power);
        while acc.n < n {
            acc.advance();
        }
        acc
    }

    /// Adds the term `1/(n+1)^p`.
    pub fn advance(&mut self) {
        let k = self.n + 1;
        let rem = (&self.lcm % k).to_u64().unwrap_or(0);
        let q = k / rem.gcd(&k);
        if q > 1 {
            let q_pow = BigUint::from(q).pow(self.power);
            self.lcm *= q;
            self.lcm_pow *= &q_pow;
            self.numer *= &q_pow;
        }
        self.numer += &self.lcm_pow / BigUint::from(k).pow(self.power);
        self.n = k;
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// `lcm(1..n)`.
    pub fn lcm(&self) -> &BigUint {
        &self.lcm
    }

    /// Unreduced numerator over [`Self::denom`].
    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    /// `lcm(1..n)^p`.
    pub fn denom(&self) -> &BigUint {
        &self.lcm_pow
    }

    /// Reduced value. Costs a gcd of the full-size numbers.
    pub fn value(&self) -> ExactRational {
        BigRational::new(
            biguint_to_int(self.numer.clone()),
            biguint_to_int(self.lcm_pow.clone()),
        )
    }
}

/// `H_n` together with its index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicValue {
    pub n: u64,
    #[serde(with = "serde_rational")]
    pub value: ExactRational,
}

/// Exact harmonic number `H_n = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: u64) -> Result<HarmonicValue> {
    if n == 0 {
        return Err(Error::invalid("harmonic", "n must be at least 1"));
    }
    Ok(HarmonicValue {
        n,
        value: PowerSumAccumulator::up_to(1, n).value(),
    })
}

/// Bracket for `zeta(s) = sum_{k>=1} 1/k^s`, `s >= 2`, from the partial sum
/// through `m - 1` plus the integral-comparison tail
/// `1/((s-1) m^(s-1)) < sum_{k>=m} 1/k^s < 1/((s-1)(m-1)^(s-1))`.
///
/// For `m - 1 <= ZETA_EXACT_LIMIT` the partial sum is exact; beyond that each
/// term is rounded down (resp. up) to a multiple of `2^-120`, which widens the
/// bracket by at most `m * 2^-120`.
pub fn zeta_bracket(s: u32, m: u64) -> Result<CertifiedInterval> {
    if s < 2 {
        return Err(Error::invalid("zeta_bracket", "exponent must be at least 2"));
    }
    if m < 2 {
        return Err(Error::invalid("zeta_bracket", "m must be at least 2"));
    }
    let (partial_lo, partial_hi) = if m - 1 <= ZETA_EXACT_LIMIT {
        let exact = PowerSumAccumulator::up_to(s, m - 1).value();
        (exact.clone(), exact)
    } else {
        fixed_point_power_sum(s, m - 1)
    };
    let sm1 = BigInt::from(s - 1);
    let tail_lo = BigRational::new(BigInt::one(), &sm1 * BigInt::from(m).pow(s - 1));
    let tail_hi = BigRational::new(BigInt::one(), &sm1 * BigInt::from(m - 1).pow(s - 1));
    CertifiedInterval::new(partial_lo + tail_lo, partial_hi + tail_hi)
}

/// Lower and upper dyadic bounds on `sum_{k=1..n} 1/k^s`.
fn fixed_point_power_sum(s: u32, n: u64) -> (ExactRational, ExactRational) {
    let unit: u128 = 1 << FIXED_POINT_BITS;
    let mut lo: u128 = 0;
    let mut hi: u128 = 0;
    for k in 1..=n {
        match (k as u128).checked_pow(s) {
            Some(d) => {
                let q = unit / d;
                lo += q;
                hi += if unit % d == 0 { q } else { q + 1 };
            }
            None => hi += 1,
        }
    }
    let denom = BigInt::from(unit);
    (
        BigRational::new(BigInt::from(lo), denom.clone()),
        BigRational::new(BigInt::from(hi), denom),
    )
}

/// Bracket for `pi^2/6`; see [`zeta_bracket`].
pub fn zeta2_bracket(m: u64) -> Result<CertifiedInterval> {
    zeta_bracket(2, m)
}

/// Bracket for `2 + pi^2/3`, the limit of the induction-step quotient `g(n)`.
pub fn limit_constant_bracket(m: u64) -> Result<CertifiedInterval> {
    let two = BigRational::from_integer(2.into());
    Ok(zeta2_bracket(m)?.scale(&two).add_scalar(&two))
}
