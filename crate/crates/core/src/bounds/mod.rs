//! The induction step behind `C_n <= M^n / n^r`.
//!
//! Assuming the bound for all indices up to `n`, Segner's recursion gives
//! `C_{n+1} <= M^n S_r(n)` with
//!
//! ```text
//! S_r(n) = 2/n^r + sum_{k=1..n-1} 1 / (k (n-k))^r,
//! ```
//!
//! so the induction closes at `n` exactly when the quotient
//! `g_r(n) = S_r(n) (n+1)^r` is at most `M`. For `r = 2` the quotient has the
//! finite closed form `(n+1)^2 [ (2/n^2)(1 + sum_{k<n} 1/k^2) + (4/n^3) H_{n-1} ]`,
//! decreases for `n >= 4`, and tends to `2 + pi^2/3`.
//!
//! Everything here is exact. Long scans use unreduced fractions over
//! `lcm(1..n)` powers and compare by cross-multiplication, so no gcd of large
//! numbers is taken inside a loop.

mod certificate;

pub use certificate::{
    audit_certificate, build_certificate, search_bound, search_bound_with, verify_base_cases,
    verify_certificate,
    BaseCheck, BoundCertificate, SearchConfig, SearchOutcome, Verdict, CERTIFICATE_SCHEMA_VERSION,
};

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    biguint_to_int, fraction_to_decimal, CertifiedInterval, ExactRational, PowerSumAccumulator,
};

/// A nonnegative fraction kept unreduced.
#[derive(Clone, Debug)]
pub struct Fraction {
    numer: BigUint,
    denom: BigUint,
}

impl Fraction {
    fn new(numer: BigUint, denom: BigUint) -> Self {
        debug_assert!(!denom.is_zero());
        Self { numer, denom }
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    /// Reduced value.
    pub fn to_rational(&self) -> ExactRational {
        BigRational::new(
            biguint_to_int(self.numer.clone()),
            biguint_to_int(self.denom.clone()),
        )
    }

    pub fn cmp_fraction(&self, other: &Fraction) -> Ordering {
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }

    pub fn cmp_rational(&self, other: &ExactRational) -> Ordering {
        let lhs = biguint_to_int(&self.numer * other.denom().magnitude());
        let rhs = other.numer() * biguint_to_int(self.denom.clone());
        lhs.cmp(&rhs)
    }

    pub fn cmp_integer(&self, m: u64) -> Ordering {
        self.numer.cmp(&(&self.denom * m))
    }

    /// Truncated decimal expansion.
    pub fn decimal(&self, digits: usize) -> String {
        fraction_to_decimal(
            &biguint_to_int(self.numer.clone()),
            &biguint_to_int(self.denom.clone()),
            digits,
        )
    }
}

fn require_positive(op: &'static str, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid(op, "n must be at least 1"));
    }
    Ok(())
}

/// `S_r(n)` by direct summation over `k`, unreduced over the lcm of all term
/// denominators.
fn direct_weight_sum(r: u32, n: u64) -> Fraction {
    // (weight, denominator) pairs; terms k and n-k coincide
    let mut terms: Vec<(u32, BigUint)> = Vec::with_capacity(n as usize / 2 + 2);
    terms.push((2, BigUint::from(n).pow(r)));
    for k in 1..=(n - 1) / 2 {
        terms.push((2, BigUint::from(k * (n - k)).pow(r)));
    }
    if n % 2 == 0 && n >= 2 {
        let half = n / 2;
        terms.push((1, BigUint::from(half * half).pow(r)));
    }
    let mut lcm = BigUint::one();
    for (_, d) in &terms {
        let rem = &lcm % d;
        let g = rem.gcd(d);
        lcm *= d / g;
    }
    let mut numer = BigUint::zero();
    for (w, d) in &terms {
        numer += (&lcm / d) * *w;
    }
    Fraction::new(numer, lcm)
}

/// `S(n) = 2/n^2 + sum_{k=1..n-1} 1/(k(n-k))^2`, summed term by term.
/// The sum is empty for `n = 1`, so `S(1) = 2`.
pub fn sum_s(n: u64) -> Result<ExactRational> {
    require_positive("sum_s", n)?;
    Ok(direct_weight_sum(2, n).to_rational())
}

/// `S(n)` through the harmonic rewrite
/// `(2/n^2)(1 + sum_{k=1..n-1} 1/k^2) + (4/n^3) H_{n-1}`.
pub fn sum_s_closed(n: u64) -> Result<ExactRational> {
    if n < 2 {
        return Err(Error::invalid("sum_s_closed", "n must be at least 2"));
    }
    let squares = PowerSumAccumulator::up_to(2, n - 1).value();
    let harmonic = PowerSumAccumulator::up_to(1, n - 1).value();
    let n = BigRational::from_integer(n.into());
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    Ok(&two / (&n * &n) * (BigRational::one() + squares) + four / (&n * &n * &n) * harmonic)
}

/// `S_r(n) = 2/n^r + sum_{k=1..n-1} 1/(k(n-k))^r` for integer `r >= 2`.
pub fn sum_s_general(r: u32, n: u64) -> Result<ExactRational> {
    if r < 2 {
        return Err(Error::invalid("sum_s_general", "exponent r must be at least 2"));
    }
    require_positive("sum_s_general", n)?;
    Ok(direct_weight_sum(r, n).to_rational())
}

/// `g(n) = S(n) (n+1)^2`.
pub fn quotient_g(n: u64) -> Result<ExactRational> {
    require_positive("quotient_g", n)?;
    Ok(QuotientWalk::starting_at(n).next().expect("walk is unbounded").value())
}

/// `g_r(n) = S_r(n) (n+1)^r` by direct summation, unreduced.
pub fn quotient_g_general_fraction(r: u32, n: u64) -> Result<Fraction> {
    if r < 2 {
        return Err(Error::invalid("quotient_g_general", "exponent r must be at least 2"));
    }
    require_positive("quotient_g_general", n)?;
    let s = direct_weight_sum(r, n);
    Ok(Fraction::new(s.numer * BigUint::from(n + 1).pow(r), s.denom))
}

pub fn quotient_g_general(r: u32, n: u64) -> Result<ExactRational> {
    Ok(quotient_g_general_fraction(r, n)?.to_rational())
}

/// `g(n)` truncated to `digits` decimals, e.g. `g(36) = 6.0150...`.
pub fn g_decimal(n: u64, digits: usize) -> Result<String> {
    require_positive("g_decimal", n)?;
    Ok(QuotientWalk::starting_at(n)
        .next()
        .expect("walk is unbounded")
        .fraction()
        .decimal(digits))
}

/// One value `g(n)` produced by [`QuotientWalk`].
///
/// Stored as `(n+1)^2 X / (n^3 L^2)` with `L = lcm(1..n-1)`, together with
/// `q = lcm(1..n) / lcm(1..n-1)`, which lets consecutive terms be compared
/// using only small multipliers.
#[derive(Clone, Debug)]
pub struct QuotientTerm {
    pub n: u64,
    numer: BigUint,
    denom: BigUint,
    lcm_step: u64,
}

impl QuotientTerm {
    pub fn value(&self) -> ExactRational {
        self.fraction().to_rational()
    }

    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.numer.clone(), self.denom.clone())
    }

    /// `g(n) > g(n+1)`, given the next term of the same walk.
    pub fn exceeds_next(&self, next: &QuotientTerm) -> bool {
        debug_assert_eq!(next.n, self.n + 1);
        let n = self.n;
        let lhs = &self.numer * (BigUint::from(n + 1).pow(3) * self.lcm_step * self.lcm_step);
        let rhs = &next.numer * BigUint::from(n).pow(3);
        lhs > rhs
    }

    pub fn cmp_integer(&self, m: u64) -> Ordering {
        self.numer.cmp(&(&self.denom * m))
    }

    pub fn cmp_rational(&self, other: &ExactRational) -> Ordering {
        Fraction::new(self.numer.clone(), self.denom.clone()).cmp_rational(other)
    }
}

/// Successive values `g(n), g(n+1), ...` computed from running harmonic and
/// square sums.
#[derive(Clone, Debug)]
pub struct QuotientWalk {
    n: u64,
    squares: PowerSumAccumulator,
    harmonic: PowerSumAccumulator,
}

impl QuotientWalk {
    /// Walk whose first term is `g(n)`, `n >= 1`.
    pub fn starting_at(n: u64) -> Self {
        assert!(n >= 1, "g is defined for n >= 1");
        Self {
            n,
            squares: PowerSumAccumulator::up_to(2, n - 1),
            harmonic: PowerSumAccumulator::up_to(1, n - 1),
        }
    }

    /// Skips ahead so the next term is `g(n)`.
    pub fn skip_to(&mut self, n: u64) {
        assert!(n >= self.n, "walks only move forward");
        while self.n < n {
            self.squares.advance();
            self.harmonic.advance();
            self.n += 1;
        }
    }
}

impl Iterator for QuotientWalk {
    type Item = QuotientTerm;

    fn next(&mut self) -> Option<QuotientTerm> {
        let n = self.n;
        let lcm = self.harmonic.lcm();
        let lcm_sq = self.squares.denom();
        // X = 2n (L^2 + A) + 4 B L, where sum 1/k^2 = A/L^2 and H = B/L
        let x = (lcm_sq + self.squares.numer()) * (2 * n) + self.harmonic.numer() * lcm * 4u32;
        let numer = x * BigUint::from(n + 1).pow(2);
        let denom = lcm_sq * BigUint::from(n).pow(3);
        let rem = (lcm % n).to_u64().unwrap_or(0);
        let lcm_step = n / rem.gcd(&n);
        self.squares.advance();
        self.harmonic.advance();
        self.n += 1;
        Some(QuotientTerm {
            n,
            numer,
            denom,
            lcm_step,
        })
    }
}

/// Outcome of a scan that either passes everywhere or stops at the first
/// violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeCheck {
    pub from: u64,
    pub to: u64,
    pub holds: bool,
    pub first_violation: Option<u64>,
}

impl RangeCheck {
    fn from_violation(from: u64, to: u64, first_violation: Option<u64>) -> Self {
        Self {
            from,
            to,
            holds: first_violation.is_none(),
            first_violation,
        }
    }
}

fn check_range(op: &'static str, from: u64, to: u64) -> Result<()> {
    if from < 1 || from >= to {
        return Err(Error::invalid(op, format!("need 1 <= from < to, got [{from}, {to}]")));
    }
    Ok(())
}

/// Checks `g(n) > g(n+1)` exactly for every `n` in `[from, to-1]`.
pub fn check_monotone_decreasing(from: u64, to: u64) -> Result<RangeCheck> {
    check_range("check_monotone_decreasing", from, to)?;
    let mut walk = QuotientWalk::starting_at(from);
    let mut prev = walk.next().expect("walk is unbounded");
    for next in walk.take((to - from) as usize) {
        if !prev.exceeds_next(&next) {
            return Ok(RangeCheck::from_violation(from, to, Some(prev.n)));
        }
        prev = next;
    }
    Ok(RangeCheck::from_violation(from, to, None))
}

/// Checks `g_r(n) > g_r(n+1)` for every `n` in `[from, to-1]`. Uses the fast
/// closed-form walk for `r = 2` and direct sums otherwise.
pub fn check_monotone_decreasing_general(r: u32, from: u64, to: u64) -> Result<RangeCheck> {
    if r == 2 {
        return check_monotone_decreasing(from, to);
    }
    check_range("check_monotone_decreasing_general", from, to)?;
    let mut prev = quotient_g_general_fraction(r, from)?;
    for n in from..to {
        let next = quotient_g_general_fraction(r, n + 1)?;
        if prev.cmp_fraction(&next) != Ordering::Greater {
            return Ok(RangeCheck::from_violation(from, to, Some(n)));
        }
        prev = next;
    }
    Ok(RangeCheck::from_violation(from, to, None))
}

/// Checks `bracket.hi < g(n) < upper` for every `n` in `[from, to]`, where
/// `bracket` encloses the limit `2 + pi^2/3`.
pub fn check_limit_sandwich(
    from: u64,
    to: u64,
    bracket: &CertifiedInterval,
    upper: u64,
) -> Result<RangeCheck> {
    if from < 1 || from > to {
        return Err(Error::invalid(
            "check_limit_sandwich",
            format!("need 1 <= from <= to, got [{from}, {to}]"),
        ));
    }
    for term in QuotientWalk::starting_at(from).take((to - from + 1) as usize) {
        let above = term.cmp_rational(bracket.hi()) == Ordering::Greater;
        let below = term.cmp_integer(upper) == Ordering::Less;
        if !(above && below) {
            return Ok(RangeCheck::from_violation(from, to, Some(term.n)));
        }
    }
    Ok(RangeCheck::from_violation(from, to, None))
}

/// `1/2 + 1/3 + ... + 1/(n-1) > 1/2 + 1/(2n)`, the inequality monotonicity of
/// `g` reduces to; true exactly when `n >= 4`.
pub fn reduced_inequality_holds(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::invalid("reduced_inequality_holds", "n must be at least 2"));
    }
    Ok(reduced_inequality_at(&PowerSumAccumulator::up_to(1, n - 1), n))
}

/// `acc` holds `H_{n-1} = B/L`; the inequality is `2n (B - L) > (n+1) L`.
fn reduced_inequality_at(acc: &PowerSumAccumulator, n: u64) -> bool {
    let b = biguint_to_int(acc.numer().clone());
    let l = biguint_to_int(acc.denom().clone());
    (b - &l) * (2 * n) > l * (n + 1)
}

/// [`reduced_inequality_holds`] for every `n` in `[from, to]`, in one pass.
pub fn reduced_inequality_range(from: u64, to: u64) -> Result<Vec<(u64, bool)>> {
    if from < 2 || from > to {
        return Err(Error::invalid(
            "reduced_inequality_range",
            format!("need 2 <= from <= to, got [{from}, {to}]"),
        ));
    }
    let mut acc = PowerSumAccumulator::up_to(1, from - 1);
    let mut out = Vec::with_capacity((to - from + 1) as usize);
    for n in from..=to {
        out.push((n, reduced_inequality_at(&acc, n)));
        acc.advance();
    }
    Ok(out)
}

/// Why the `r = 1` induction cannot close: it would need
/// `H_{n-1} < n/(n+1) - 2`, whose right side is negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R1FailureReport {
    pub from: u64,
    pub to: u64,
    pub checked: u64,
    pub successes: u64,
    pub first_success: Option<u64>,
}

impl R1FailureReport {
    pub fn fails_everywhere(&self) -> bool {
        self.successes == 0
    }
}

pub const R1_RANGE_LIMIT: u64 = 10_000;

pub fn demonstrate_r1_failure(from: u64, to: u64) -> Result<R1FailureReport> {
    if from < 2 || from > to || to > R1_RANGE_LIMIT {
        return Err(Error::invalid(
            "demonstrate_r1_failure",
            format!("range must lie within [2, {R1_RANGE_LIMIT}], got [{from}, {to}]"),
        ));
    }
    let mut acc = PowerSumAccumulator::up_to(1, from - 1);
    let mut successes = 0;
    let mut first_success = None;
    for n in from..=to {
        // B/L < (n - 2(n+1))/(n+1)  <=>  B (n+1) < -(n+2) L
        let b = biguint_to_int(acc.numer().clone());
        let l = biguint_to_int(acc.denom().clone());
        if b * (n + 1) < -(l * (n + 2)) {
            successes += 1;
            first_success.get_or_insert(n);
        }
        acc.advance();
    }
    Ok(R1FailureReport {
        from,
        to,
        checked: to - from + 1,
        successes,
        first_success,
    })
}

/// Whether the naive `r = 0` induction step `M^n (n+1) <= M^(n+1)` holds.
pub fn naive_step_holds(m: u64, n: u64) -> bool {
    let mn = BigInt::from(m).pow(n as u32);
    &mn * (n + 1) <= mn * m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R0FailureReport {
    pub m: u64,
    pub from: u64,
    pub to: u64,
    /// Every `n` in range where the step still works (exactly `n + 1 <= M`).
    pub holding: Vec<u64>,
    /// Smallest `n` in range from which the step fails for good.
    pub fails_from: Option<u64>,
}

pub fn demonstrate_r0_failure(m: u64, from: u64, to: u64) -> Result<R0FailureReport> {
    if m < 1 || from > to {
        return Err(Error::invalid("demonstrate_r0_failure", "need M >= 1 and from <= to"));
    }
    let holding: Vec<u64> = (from..=to).filter(|&n| naive_step_holds(m, n)).collect();
    let fails_from = match holding.last() {
        Some(&last) if last == to => None,
        Some(&last) => Some(last + 1),
        None => Some(from),
    };
    Ok(R0FailureReport {
        m,
        from,
        to,
        holding,
        fails_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int_rational, ratio};

    fn naive_s(r: u32, n: u64) -> ExactRational {
        let mut s = BigRational::new(2.into(), BigInt::from(n).pow(r));
        for k in 1..n {
            s += BigRational::new(BigInt::one(), BigInt::from(k * (n - k)).pow(r));
        }
        s
    }

    #[test]
    fn sum_s_examples() {
        assert_eq!(sum_s(1).unwrap(), int_rational(2));
        assert_eq!(sum_s(2).unwrap(), ratio(3, 2));
        // 2/9 + 1/4 + 1/4
        assert_eq!(sum_s(3).unwrap(), ratio(13, 18));
        assert!(sum_s(0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(sum_s_closed(2).unwrap(), ratio(3, 2));
        assert_eq!(sum_s_closed(3).unwrap(), ratio(13, 18));
        assert_eq!(sum_s_closed(100).unwrap(), sum_s(100).unwrap());
        assert!(sum_s_closed(1).is_err());
    }

    #[test]
    fn direct_sum_matches_naive_rational_loop() {
        for r in 2..=4 {
            for n in 1..=60 {
                assert_eq!(sum_s_general(r, n).unwrap(), naive_s(r, n), "r = {r}, n = {n}");
            }
        }
        assert_eq!(sum_s_general(3, 2).unwrap(), ratio(5, 4));
        assert_eq!(sum_s_general(3, 50).unwrap(), naive_s(3, 50));
        assert!(sum_s_general(1, 5).is_err());
    }

    #[test]
    fn g_examples() {
        assert_eq!(quotient_g(1).unwrap(), int_rational(8));
        assert_eq!(quotient_g(2).unwrap(), ratio(27, 2));
        assert_eq!(quotient_g(3).unwrap(), &sum_s(3).unwrap() * int_rational(16));
        assert_eq!(g_decimal(36, 4).unwrap(), "6.0150");
        assert_eq!(g_decimal(37, 4).unwrap(), "5.9979");
        assert!(quotient_g(0).is_err());
    }

    #[test]
    fn walk_matches_direct_definition() {
        for (term, n) in QuotientWalk::starting_at(1).zip(1..=120u64) {
            assert_eq!(term.n, n);
            let direct = sum_s(n).unwrap() * int_rational((n + 1) * (n + 1));
            assert_eq!(term.value(), direct);
        }
        let mut walk = QuotientWalk::starting_at(5);
        walk.skip_to(40);
        assert_eq!(walk.next().unwrap().value(), quotient_g_general(2, 40).unwrap());
    }

    #[test]
    fn fast_comparison_matches_rational_comparison() {
        let terms: Vec<QuotientTerm> = QuotientWalk::starting_at(1).take(80).collect();
        for w in terms.windows(2) {
            assert_eq!(w[0].exceeds_next(&w[1]), w[0].value() > w[1].value(), "n = {}", w[0].n);
        }
    }

    #[test]
    fn monotone_examples() {
        let c = check_monotone_decreasing(1, 2).unwrap();
        assert!(!c.holds);
        assert_eq!(c.first_violation, Some(1));
        assert!(check_monotone_decreasing(4, 1000).unwrap().holds);
        assert!(check_monotone_decreasing(37, 100).unwrap().holds);
        assert!(check_monotone_decreasing(5, 5).is_err());
        assert!(check_monotone_decreasing(0, 5).is_err());
    }

    #[test]
    fn monotone_general_r() {
        assert!(check_monotone_decreasing_general(3, 4, 200).unwrap().holds);
        assert_eq!(
            check_monotone_decreasing_general(2, 1, 2).unwrap().first_violation,
            Some(1)
        );
    }

    #[test]
    fn small_n_behaviour_of_g() {
        // g(1) < g(2), then decreasing from n = 2 on
        let g: Vec<ExactRational> = (1..=5).map(|n| quotient_g(n).unwrap()).collect();
        assert!(g[0] < g[1]);
        assert!(g[1] > g[2] && g[2] > g[3] && g[3] > g[4]);
    }

    #[test]
    fn reduced_inequality_examples() {
        assert!(!reduced_inequality_holds(2).unwrap());
        assert!(!reduced_inequality_holds(3).unwrap());
        assert!(reduced_inequality_holds(4).unwrap());
        assert!(reduced_inequality_holds(1000).unwrap());
        assert!(reduced_inequality_holds(1).is_err());
        let range = reduced_inequality_range(2, 300).unwrap();
        assert!(range.iter().all(|&(n, ok)| ok == (n >= 4)));
    }

    #[test]
    fn r1_failure_examples() {
        for (from, to) in [(2, 2), (100, 100), (2, 1000)] {
            let report = demonstrate_r1_failure(from, to).unwrap();
            assert!(report.fails_everywhere());
            assert_eq!(report.checked, to - from + 1);
        }
        assert!(demonstrate_r1_failure(1, 10).is_err());
        assert!(demonstrate_r1_failure(2, 10_001).is_err());
    }

    #[test]
    fn r0_step_fails_past_m() {
        let report = demonstrate_r0_failure(6, 1, 200).unwrap();
        assert_eq!(report.holding, vec![1, 2, 3, 4, 5]);
        assert_eq!(report.fails_from, Some(6));
        for n in 6..=200 {
            assert!(!naive_step_holds(6, n));
        }
    }

    #[test]
    fn sandwich_near_threshold() {
        let bracket = crate::exactnum::limit_constant_bracket(10_000).unwrap();
        assert!(check_limit_sandwich(37, 300, &bracket, 6).unwrap().holds);
        assert_eq!(
            check_limit_sandwich(36, 40, &bracket, 6).unwrap().first_violation,
            Some(36)
        );
    }
}
