//! Empirical growth of `C_n`: the Cauchy-Hadamard root `C_n^(1/n)`, the
//! approach of `g(n)` to `2 + pi^2/3`, the Stirling ratio, and a log-log fit
//! recovering the exponent `3/2`.
//!
//! Nothing here is a proof. Values are certified intervals at an explicit
//! binary precision; decimals are reported only as far as both endpoints
//! agree, so raising the precision can add digits but never change one.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::QuotientWalk;
use crate::catalan::compute_binomial;
use crate::error::{Error, Result};
use crate::exactnum::{
    biguint_to_int, fraction_to_decimal, ln_bracket, serde_rational, truncated_decimal,
    CertifiedInterval, ExactRational,
};

pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Decimal digits shown for fitted parameters.
const FIT_DIGITS: usize = 12;

fn series_terms(bits: u32) -> u32 {
    bits / 3 + 16
}

fn rat(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

/// Longest truncated decimal (up to `max_digits` places) shared by both
/// endpoints; every digit shown is a digit of any value in the interval.
pub fn stable_decimal(interval: &CertifiedInterval, max_digits: usize) -> String {
    let mut best = truncated_decimal(interval.lo(), 0);
    for d in 1..=max_digits {
        let lo = truncated_decimal(interval.lo(), d);
        if lo != truncated_decimal(interval.hi(), d) {
            break;
        }
        best = lo;
    }
    best
}

/// Bracket for `ln n` of a positive integer: keep the top `bits + 8` bits
/// `T` of `n = T 2^s + rest`, so `ln n` lies in `[ln T, ln (T+1)] + s ln 2`.
pub fn ln_integer_bracket(n: &BigInt, bits: u32) -> Result<CertifiedInterval> {
    if !n.is_positive() {
        return Err(Error::invalid("ln_integer_bracket", "argument must be positive"));
    }
    let terms = series_terms(bits);
    let keep = bits as u64 + 8;
    let shift = n.bits().saturating_sub(keep);
    if shift == 0 {
        return ln_bracket(&rat(n.clone()), terms);
    }
    let top = n >> shift as usize;
    let lo = ln_bracket(&rat(top.clone()), terms)?;
    let hi = ln_bracket(&rat(top + 1u32), terms)?;
    let ln2 = ln_bracket(&rat(2), terms)?;
    let base = CertifiedInterval::new(lo.lo().clone(), hi.hi().clone())?;
    Ok(base
        .add(&ln2.scale(&rat(shift)))
        .round_outward(bits + 16))
}

/// `exp(t)` for a rational `t`, as a certified interval.
fn exp_rational(t: &ExactRational, bits: u32) -> CertifiedInterval {
    if t.is_zero() {
        return CertifiedInterval::point(BigRational::one());
    }
    // u = t / 2^s with |u| <= 1/2, then square s times
    let magnitude = t.numer().bits() as i64 - t.denom().bits() as i64 + 2;
    let s = magnitude.max(0) as u32;
    let work = bits + 2 * s + 32;
    let u = t / rat(BigInt::one() << s as usize);
    let ui = CertifiedInterval::point(u.clone()).round_outward(work);
    let mut sum = CertifiedInterval::point(BigRational::one());
    let mut term = CertifiedInterval::point(BigRational::one());
    let abs_u = u.abs();
    let mut k: u32 = 0;
    let cutoff = BigRational::new(BigInt::one(), BigInt::one() << (work as usize));
    let mut bound = BigRational::one();
    loop {
        k += 1;
        term = term.mul(&ui).scale(&BigRational::new(1.into(), k.into())).round_outward(work);
        bound = bound * &abs_u / rat(k);
        sum = sum.add(&term).round_outward(work);
        if bound < cutoff {
            break;
        }
    }
    // tail after u^k/k!: at most 2 |u|^(k+1) / (k+1)!
    let tail = bound * &abs_u / rat(k + 1) * rat(2);
    let mut result = sum.add(&CertifiedInterval::around(&BigRational::zero(), &tail));
    for _ in 0..s {
        result = result.mul(&result).round_outward(work);
    }
    result.round_outward(bits + 16)
}

/// `exp` is increasing, so endpoints map to endpoints.
pub fn exp_bracket(x: &CertifiedInterval, bits: u32) -> CertifiedInterval {
    let lo = exp_rational(x.lo(), bits);
    let hi = exp_rational(x.hi(), bits);
    CertifiedInterval::new(lo.lo().clone(), hi.hi().clone()).expect("exp is increasing")
}

/// `sqrt(x)` for a nonnegative interval.
pub fn sqrt_bracket(x: &CertifiedInterval, bits: u32) -> Result<CertifiedInterval> {
    if x.lo().is_negative() {
        return Err(Error::invalid("sqrt_bracket", "interval must be nonnegative"));
    }
    let scale = rat(BigInt::one() << (2 * bits as usize));
    let denom = BigInt::one() << bits as usize;
    let lo = (x.lo() * &scale).floor().to_integer().sqrt();
    let hi_sq = (x.hi() * &scale).ceil().to_integer();
    let mut hi = hi_sq.sqrt();
    if &hi * &hi != hi_sq {
        hi += 1u32;
    }
    CertifiedInterval::new(
        BigRational::new(lo, denom.clone()),
        BigRational::new(hi, denom),
    )
}

/// `arctan(z)` for `0 < z < 1` from its alternating series.
fn arctan_bracket(z: &ExactRational, bits: u32) -> CertifiedInterval {
    let work = bits + 32;
    let zi = CertifiedInterval::point(z.clone()).round_outward(work);
    let z2 = zi.mul(&zi).round_outward(work);
    let cutoff = BigRational::new(BigInt::one(), BigInt::one() << (work as usize));
    let mut power = zi;
    let mut exact_power = z.clone();
    let mut sum = CertifiedInterval::point(BigRational::zero());
    let mut i: u32 = 0;
    loop {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let coeff = BigRational::new(sign.into(), (2 * i + 1).into());
        sum = sum.add(&power.scale(&coeff)).round_outward(work);
        power = power.mul(&z2).round_outward(work);
        exact_power = &exact_power * z * z;
        i += 1;
        let next_term = &exact_power / rat(2 * i + 1);
        if next_term < cutoff {
            return sum.add(&CertifiedInterval::around(&BigRational::zero(), &next_term));
        }
    }
}

/// `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn pi_bracket(bits: u32) -> CertifiedInterval {
    let a = arctan_bracket(&BigRational::new(1.into(), 5.into()), bits + 8);
    let b = arctan_bracket(&BigRational::new(1.into(), 239.into()), bits + 8);
    a.scale(&rat(16)).sub(&b.scale(&rat(4))).round_outward(bits + 16)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusPoint {
    pub n: u64,
    /// Encloses `C_n^(1/n)`.
    pub root: CertifiedInterval,
    /// Encloses `1 / C_n^(1/n)`, the finite-n radius estimate.
    pub radius: CertifiedInterval,
    pub root_decimal: String,
    pub radius_decimal: String,
}

/// Powers of two up to `max_n`, plus `max_n` itself.
pub fn power_of_two_grid(min_n: u64, max_n: u64) -> Vec<u64> {
    let mut grid: Vec<u64> = std::iter::successors(Some(1u64), |&p| p.checked_mul(2))
        .take_while(|&p| p <= max_n)
        .filter(|&p| p >= min_n)
        .collect();
    if grid.first() != Some(&min_n) {
        grid.insert(0, min_n);
    }
    if grid.last() != Some(&max_n) {
        grid.push(max_n);
    }
    grid
}

/// `C_n^(1/n) = exp(ln C_n / n)` on the grid `1, 2, 4, ..., max_n`.
pub fn estimate_radius(max_n: u64, precision_bits: u32) -> Result<Vec<RadiusPoint>> {
    if max_n < 10 {
        return Err(Error::invalid("estimate_radius", "max_n must be at least 10"));
    }
    radius_at(&power_of_two_grid(1, max_n), precision_bits)
}

/// [`estimate_radius`] at explicit sample points.
pub fn radius_at(points: &[u64], precision_bits: u32) -> Result<Vec<RadiusPoint>> {
    let Some(&max) = points.iter().max() else {
        return Ok(Vec::new());
    };
    if points.contains(&0) {
        return Err(Error::invalid("radius_at", "sample points start at n = 1"));
    }
    let table = compute_binomial(max as usize)?;
    let digits = (precision_bits as usize * 3) / 10;
    points
        .iter()
        .map(|&n| {
            let ln_c = ln_integer_bracket(&table.values()[n as usize], precision_bits)?;
            let root = exp_bracket(&ln_c.scale(&BigRational::new(1.into(), n.into())), precision_bits);
            let radius = root.recip()?.round_outward(precision_bits + 16);
            Ok(RadiusPoint {
                n,
                root_decimal: stable_decimal(&root, digits),
                radius_decimal: stable_decimal(&radius, digits),
                root,
                radius,
            })
        })
        .collect()
}

/// `g(n)` next to its distance from the bracket around `2 + pi^2/3`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LimitRow {
    pub n: u64,
    pub g_decimal: String,
    pub distance_decimal: String,
    #[serde(skip)]
    distance: (BigInt, BigInt),
}

impl LimitRow {
    /// Exact distance `num/den` (unreduced, `den > 0`).
    pub fn distance(&self) -> (&BigInt, &BigInt) {
        (&self.distance.0, &self.distance.1)
    }

    pub fn distance_below(&self, bound: &ExactRational) -> bool {
        let (num, den) = &self.distance;
        num * bound.denom() < bound.numer() * den
    }
}

/// `g(n)` for each sample `n >= 4`, with its exact distance to `bracket`
/// (zero inside it). Samples are sorted and evaluated in one forward walk.
pub fn limit_convergence_table(
    n_points: &[u64],
    bracket: &CertifiedInterval,
) -> Result<Vec<LimitRow>> {
    let mut points = n_points.to_vec();
    points.sort_unstable();
    points.dedup();
    let Some(&first) = points.first() else {
        return Ok(Vec::new());
    };
    if first < 4 {
        return Err(Error::invalid("limit_convergence_table", "each n must be at least 4"));
    }
    let mut walk = QuotientWalk::starting_at(first);
    let mut rows = Vec::with_capacity(points.len());
    for n in points {
        walk.skip_to(n);
        let term = walk.next().expect("walk is unbounded");
        let g = term.fraction();
        let num = biguint_to_int(g.numer().clone());
        let den = biguint_to_int(g.denom().clone());
        let above = &num * bracket.hi().denom() - bracket.hi().numer() * &den;
        let below = bracket.lo().numer() * &den - &num * bracket.lo().denom();
        let distance = if above.sign() == Sign::Plus {
            (above, &den * bracket.hi().denom())
        } else if below.sign() == Sign::Plus {
            (below, &den * bracket.lo().denom())
        } else {
            (BigInt::zero(), BigInt::one())
        };
        rows.push(LimitRow {
            n,
            g_decimal: fraction_to_decimal(&num, &den, 10),
            distance_decimal: fraction_to_decimal(&distance.0, &distance.1, 12),
            distance,
        });
    }
    Ok(rows)
}

/// Exact check that distances strictly decrease along the rows.
pub fn distances_strictly_decreasing(rows: &[LimitRow]) -> bool {
    rows.windows(2).all(|w| {
        let (a, b) = (&w[0].distance, &w[1].distance);
        (&a.0 * &b.1).cmp(&(&b.0 * &a.1)) == Ordering::Greater
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingRow {
    pub n: u64,
    /// Encloses `C_n sqrt(pi) n^(3/2) / 4^n`.
    pub ratio: CertifiedInterval,
    pub decimal: String,
}

pub fn stirling_ratio(n_points: &[u64], precision_bits: u32) -> Result<Vec<StirlingRow>> {
    let Some(&max) = n_points.iter().max() else {
        return Ok(Vec::new());
    };
    if n_points.contains(&0) {
        return Err(Error::invalid("stirling_ratio", "each n must be at least 1"));
    }
    let table = compute_binomial(max as usize)?;
    let work = precision_bits + 32;
    let sqrt_pi = sqrt_bracket(&pi_bracket(work), work)?;
    let digits = (precision_bits as usize * 3) / 10;
    n_points
        .iter()
        .map(|&n| {
            let sqrt_n = sqrt_bracket(&CertifiedInterval::point(rat(n)), work)?;
            let scale = BigRational::new(
                &table.values()[n as usize] * n,
                BigInt::from(4u32).pow(n as u32),
            );
            let ratio = sqrt_pi
                .mul(&sqrt_n)
                .scale(&scale)
                .round_outward(precision_bits + 16);
            Ok(StirlingRow {
                n,
                decimal: stable_decimal(&ratio, digits),
                ratio,
            })
        })
        .collect()
}

/// Least-squares line through `(ln n, ln(4^n / C_n))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitResult {
    /// Estimates the critical exponent `3/2`.
    #[serde(with = "serde_rational")]
    pub slope: ExactRational,
    /// Estimates `ln sqrt(pi) = 0.5724...`.
    #[serde(with = "serde_rational")]
    pub intercept: ExactRational,
    pub n_range: (u64, u64),
    pub points: Vec<u64>,
    #[serde(with = "serde_rational")]
    pub residual_max: ExactRational,
}

impl FitResult {
    pub fn slope_decimal(&self) -> String {
        truncated_decimal(&self.slope, FIT_DIGITS)
    }

    pub fn intercept_decimal(&self) -> String {
        truncated_decimal(&self.intercept, FIT_DIGITS)
    }

    pub fn residual_decimal(&self) -> String {
        truncated_decimal(&self.residual_max, FIT_DIGITS)
    }
}

/// Fit over the power-of-two grid spanning `[n_min, n_max]`.
pub fn fit_r0(n_min: u64, n_max: u64) -> Result<FitResult> {
    if n_min < 2 || n_min >= n_max {
        return Err(Error::invalid(
            "fit_r0",
            format!("need 2 <= n_min < n_max, got [{n_min}, {n_max}]"),
        ));
    }
    fit_r0_points(&power_of_two_grid(n_min, n_max), DEFAULT_PRECISION_BITS)
}

/// Fit through explicit sample points (at least two distinct, each `>= 2`).
///
/// The data are interval midpoints at `precision_bits`; the regression itself
/// is carried out in exact rational arithmetic.
pub fn fit_r0_points(points: &[u64], precision_bits: u32) -> Result<FitResult> {
    let mut points = points.to_vec();
    points.sort_unstable();
    points.dedup();
    if points.len() < 2 || points[0] < 2 {
        return Err(Error::invalid(
            "fit_r0",
            "need at least two distinct sample points, each >= 2",
        ));
    }
    let max = *points.last().expect("nonempty");
    let table = compute_binomial(max as usize)?;
    let ln4 = ln_integer_bracket(&BigInt::from(4u32), precision_bits)?;
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &n in &points {
        let ln_n = ln_integer_bracket(&BigInt::from(n), precision_bits)?;
        let ln_c = ln_integer_bracket(&table.values()[n as usize], precision_bits)?;
        let y = ln4.scale(&rat(n)).sub(&ln_c);
        xs.push(ln_n.midpoint());
        ys.push(y.midpoint());
    }
    let count = rat(points.len() as u64);
    let x_mean = xs.iter().fold(BigRational::zero(), |a, x| a + x) / &count;
    let y_mean = ys.iter().fold(BigRational::zero(), |a, y| a + y) / &count;
    let mut sxy = BigRational::zero();
    let mut sxx = BigRational::zero();
    for (x, y) in xs.iter().zip(&ys) {
        let dx = x - &x_mean;
        sxy += &dx * (y - &y_mean);
        sxx += &dx * &dx;
    }
    let slope = sxy / sxx;
    let intercept = &y_mean - &slope * &x_mean;
    let residual_max = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (&intercept + &slope * x)).abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    let round = |v: ExactRational| {
        CertifiedInterval::point(v)
            .round_outward(precision_bits)
            .midpoint()
    };
    Ok(FitResult {
        slope: round(slope),
        intercept: round(intercept),
        n_range: (points[0], max),
        points,
        residual_max: round(residual_max),
    })
}

/// Scan of `n^r C_n` against `M^n` for a rational exponent `r = p/q`,
/// decided exactly as `n^p C_n^q > M^(q n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentScan {
    pub r: String,
    pub m: u64,
    pub n_max: u64,
    /// First `n` with `C_n > M^n / n^r`, if any.
    pub first_exceedance: Option<u64>,
    pub exceedances: u64,
}

/// Looks for violations of `C_n <= M^n / n^r` up to `n_max`.
///
/// With `M = 4`, the reciprocal of the true radius, the scan separates the
/// exponents: `n^r C_n / 4^n` behaves like `n^(r - 3/2) / sqrt(pi)`, so
/// violations appear for `r > 3/2` and never for `r <= 3/2`.
pub fn critical_exponent_scan(r: &ExactRational, m: u64, n_max: u64) -> Result<ExponentScan> {
    if !r.is_positive() || m == 0 || n_max == 0 {
        return Err(Error::invalid(
            "critical_exponent_scan",
            "need r > 0, M >= 1 and n_max >= 1",
        ));
    }
    let p = r.numer().to_u32().ok_or_else(|| {
        Error::invalid("critical_exponent_scan", "exponent numerator too large")
    })?;
    let q = r.denom().to_u32().ok_or_else(|| {
        Error::invalid("critical_exponent_scan", "exponent denominator too large")
    })?;
    let table = compute_binomial(n_max as usize)?;
    let m_q = BigInt::from(m).pow(q);
    let mut rhs = BigInt::one();
    let mut first = None;
    let mut count = 0;
    for n in 1..=n_max {
        rhs *= &m_q;
        let lhs = BigInt::from(n).pow(p) * table.values()[n as usize].pow(q);
        if lhs > rhs {
            count += 1;
            first.get_or_insert(n);
        }
    }
    Ok(ExponentScan {
        r: format!("{p}/{q}"),
        m,
        n_max,
        first_exceedance: first,
        exceedances: count,
    })
}
