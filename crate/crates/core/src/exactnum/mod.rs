//! Exact arithmetic foundations.
//!
//! Integers and rationals are the `num` big-number types; every rational is
//! kept in lowest terms with a positive denominator, so equality and ordering
//! are exact. On top of those sit certified intervals with outward rounding,
//! exact harmonic and power sums, and rational brackets for `zeta(2)`,
//! `2 + pi^2/3` and natural logarithms.

mod interval;
mod log;
mod sums;

pub use interval::CertifiedInterval;
pub use log::{atanh_bracket, ln_bracket, DEFAULT_LN_TERMS};
pub use sums::{
    harmonic, limit_constant_bracket, zeta2_bracket, zeta_bracket, HarmonicValue,
    PowerSumAccumulator, DEFAULT_ZETA_TERMS, ZETA_EXACT_LIMIT,
};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Canonical fraction of two [`ExactInt`]s (reduced, denominator positive).
pub type ExactRational = BigRational;

/// Builds `num/den` as a canonical rational.
pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_rational(value: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(value.into())
}

/// Renders a rational as `"num/den"`, always with an explicit denominator.
pub fn format_rational(value: &ExactRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"num/den"` or a bare integer into a canonical rational.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let err = || Error::Parse {
        what: "rational",
        input: text.to_string(),
    };
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_int(text: &str) -> Result<ExactInt> {
    text.trim().parse().map_err(|_| Error::Parse {
        what: "integer",
        input: text.to_string(),
    })
}

/// Decimal expansion of `value` truncated (toward zero) after `digits`
/// fractional digits. No rounding ever happens, so every printed digit is a
/// true digit of the value.
pub fn truncated_decimal(value: &ExactRational, digits: usize) -> String {
    fraction_to_decimal(value.numer(), value.denom(), digits)
}

/// Same as [`truncated_decimal`] for an unreduced fraction `num/den`, `den > 0`.
pub fn fraction_to_decimal(num: &BigInt, den: &BigInt, digits: usize) -> String {
    debug_assert!(den.is_positive());
    let negative = num.is_negative();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (num.abs() * &scale) / den;
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let mut out = String::new();
    if negative && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        out.extend(std::iter::repeat('0').take(digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Nearest `f64` to a rational, for display and plotting only.
pub fn to_f64(value: &ExactRational) -> f64 {
    fraction_to_f64(value.numer(), value.denom())
}

pub fn fraction_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries 64 significant bits.
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if shift >= 0 {
        num / (den << shift as usize)
    } else {
        (num << (-shift) as usize) / den
    };
    let mantissa: f64 = q.to_string().parse().unwrap_or(f64::NAN);
    mantissa * 2f64.powi(shift as i32)
}

/// `floor(x * 2^bits) / 2^bits`.
pub fn floor_dyadic(x: &ExactRational, bits: u32) -> ExactRational {
    let scale = BigInt::one() << bits as usize;
    let scaled = (x * BigRational::from_integer(scale.clone())).floor();
    BigRational::new(scaled.to_integer(), scale)
}

/// `ceil(x * 2^bits) / 2^bits`.
pub fn ceil_dyadic(x: &ExactRational, bits: u32) -> ExactRational {
    let scale = BigInt::one() << bits as usize;
    let scaled = (x * BigRational::from_integer(scale.clone())).ceil();
    BigRational::new(scaled.to_integer(), scale)
}

pub(crate) fn biguint_to_int(value: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, value)
}

/// Serde adapter storing an [`ExactRational`] as a `"num/den"` string.
pub mod serde_rational {
    use super::{format_rational, parse_rational, ExactRational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }

    /// Optional variant, `null` when absent.
    pub mod option {
        use super::super::{format_rational, parse_rational, ExactRational};
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(
            value: &Option<ExactRational>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&format_rational(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<ExactRational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| parse_rational(&t).map_err(D::Error::custom))
                .transpose()
        }
    }
}

/// Serde adapter storing an [`ExactInt`] as a decimal string.
pub mod serde_int {
    use super::{parse_int, ExactInt};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &ExactInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactInt, D::Error> {
        let text = String::deserialize(d)?;
        parse_int(&text).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&int_rational(7)), "7/1");
        assert_eq!(parse_rational("10/4").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int_rational(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn decimal_truncates() {
        assert_eq!(truncated_decimal(&ratio(2, 3), 4), "0.6666");
        assert_eq!(truncated_decimal(&ratio(-2, 3), 2), "-0.66");
        assert_eq!(truncated_decimal(&ratio(1, 200), 2), "0.00");
        assert_eq!(truncated_decimal(&ratio(601, 100), 3), "6.010");
        assert_eq!(truncated_decimal(&int_rational(5), 0), "5");
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&ratio(1, 4)), 0.25);
        let big = BigRational::new(BigInt::from(10u32).pow(400) + 1u32, BigInt::from(10u32).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = ratio(1, 3);
        let lo = floor_dyadic(&x, 10);
        let hi = ceil_dyadic(&x, 10);
        assert!(lo < x && x < hi);
        assert_eq!(&hi - &lo, ratio(1, 1024));
        assert_eq!(floor_dyadic(&ratio(3, 4), 2), ratio(3, 4));
    }

    fn small_rational() -> impl Strategy<Value = ExactRational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in small_rational(), b in small_rational()) {
            let mut results = vec![&a + &b, &a * &b, &a - &b];
            if !b.is_zero() {
                results.push(&a / &b);
            }
            for r in results {
                prop_assert!(r.denom().is_positive());
                prop_assert!(r.numer().gcd(r.denom()).is_one());
                prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
            }
        }
    }
}
