use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CertifiedInterval, ExactRational};
use crate::error::{Error, Result};

/// Default number of series terms for [`ln_bracket`].
pub const DEFAULT_LN_TERMS: u32 = 64;

/// Working precision (bits after the binary point) used for `terms` series
/// terms. Each atanh term gains at least `log2(9)` bits, so rounding noise
/// stays well below the truncation bound.
fn working_bits(terms: u32) -> u32 {
    4 * terms + 64
}

/// Bracket for `atanh(z) = sum_{i>=0} z^(2i+1) / (2i+1)`, `|z| < 1`, from the
/// first `terms` terms. The discarded tail is bounded by
/// `|z|^(2 terms + 1) / ((2 terms + 1)(1 - z^2))`.
pub fn atanh_bracket(z: &ExactRational, terms: u32) -> Result<CertifiedInterval> {
    if z.abs() >= BigRational::one() {
        return Err(Error::invalid("atanh_bracket", "argument must satisfy |z| < 1"));
    }
    if terms == 0 {
        return Err(Error::invalid("atanh_bracket", "at least one term is required"));
    }
    if z.is_zero() {
        return Ok(CertifiedInterval::point(BigRational::zero()));
    }
    let bits = working_bits(terms);
    let zi = CertifiedInterval::point(z.clone()).round_outward(bits);
    let z2 = zi.mul(&zi).round_outward(bits);
    let mut power = zi;
    let mut sum = CertifiedInterval::point(BigRational::zero());
    for i in 0..terms {
        let odd = BigRational::new(BigInt::one(), BigInt::from(2 * i + 1));
        sum = sum.add(&power.scale(&odd)).round_outward(bits);
        power = power.mul(&z2).round_outward(bits);
    }
    let abs_z = z.abs();
    let exponent = 2 * terms + 1;
    let tail = num_traits::pow(abs_z.clone(), exponent as usize)
        / (BigRational::from_integer(exponent.into()) * (BigRational::one() - &abs_z * &abs_z));
    let tail = CertifiedInterval::around(&BigRational::zero(), &tail).round_outward(bits);
    Ok(sum.add(&tail))
}

/// Bracket for `ln x`, `x > 0`.
///
/// `x` is reduced to `y = x / 2^k` with `3/4 <= y < 3/2`, then
/// `ln x = k ln 2 + 2 atanh((y-1)/(y+1))` and `ln 2 = 2 atanh(1/3)`, each
/// series truncated after `precision_terms` terms with its remainder folded
/// into the interval. `ln 1` is returned as the exact point `[0, 0]`.
pub fn ln_bracket(x: &ExactRational, precision_terms: u32) -> Result<CertifiedInterval> {
    if !x.is_positive() {
        return Err(Error::invalid("ln_bracket", "argument must be positive"));
    }
    if precision_terms == 0 {
        return Err(Error::invalid("ln_bracket", "at least one term is required"));
    }
    let bits = working_bits(precision_terms);
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let upper = BigRational::new(3.into(), 2.into());
    let lower = BigRational::new(3.into(), 4.into());

    // Coarse power-of-two estimate first so huge arguments reduce in one step.
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = scale_pow2(x, -k);
    while y >= upper {
        y /= &two;
        k += 1;
    }
    while y < lower {
        y *= &two;
        k -= 1;
    }

    let z = (&y - &one) / (&y + &one);
    let mut result = atanh_bracket(&z, precision_terms)?.scale(&two);
    if k != 0 {
        let ln2 = atanh_bracket(&BigRational::new(1.into(), 3.into()), precision_terms)?
            .scale(&two);
        result = result.add(&ln2.scale(&BigRational::from_integer(k.into())));
    }
    Ok(result.round_outward(bits))
}

fn scale_pow2(x: &ExactRational, e: i64) -> ExactRational {
    let factor = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        x * BigRational::from_integer(factor)
    } else {
        x / BigRational::from_integer(factor)
    }
}
