use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{
    check_monotone_decreasing_general, quotient_g_general, quotient_g_general_fraction, Fraction,
    QuotientWalk, RangeCheck,
};
use crate::catalan::{compute_binomial, compute_segner};
use crate::error::{Error, Result};
use crate::exactnum::{
    format_rational, serde_int, serde_rational, truncated_decimal, zeta_bracket, ExactInt,
    ExactRational,
};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Falsified,
}

/// `n^r C_n <= M^n`, decided by exact integer comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCheck {
    pub n: u64,
    #[serde(with = "serde_int")]
    pub c_n: ExactInt,
    pub holds: bool,
}

/// Finite evidence that `C_n <= M^n / n^r` for every `n >= 1`, and hence
/// that the generating function has radius of convergence at least `1/M`.
///
/// The argument is induction on `n`: the base cases `1..threshold` are
/// checked directly, `g_r(threshold) < M` closes the step at the threshold,
/// and `g_r` decreasing from the threshold on closes it everywhere after.
/// Decrease is machine-checked over `monotone_spot_check` only; beyond that
/// range the certificate leans on the lemma stated in `trusted_lemma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub schema_version: u32,
    pub r: u32,
    pub m: u64,
    pub threshold: u64,
    pub base_case_max: u64,
    pub base_checks: Vec<BaseCheck>,
    #[serde(with = "serde_rational")]
    pub g_at_threshold: ExactRational,
    #[serde(with = "serde_rational")]
    pub g_prev_threshold: ExactRational,
    pub monotone_spot_check: RangeCheck,
    pub trusted_lemma: String,
    pub verdict: Verdict,
    /// One entry per failed check; empty when verified.
    pub failures: Vec<String>,
    #[serde(with = "serde_rational::option")]
    pub radius_lower_bound: Option<ExactRational>,
}

impl BoundCertificate {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate always serializes")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::MalformedCertificate(vec![e.to_string()]))
    }
}

fn base_holds(r: u32, m: u64, n: u64, c_n: &BigInt) -> bool {
    BigInt::from(n).pow(r) * c_n <= BigInt::from(m).pow(n as u32)
}

fn base_checks_from(r: u32, m: u64, values: &[ExactInt], up_to: u64) -> Vec<BaseCheck> {
    (1..=up_to)
        .map(|n| {
            let c_n = values[n as usize].clone();
            BaseCheck {
                n,
                holds: base_holds(r, m, n, &c_n),
                c_n,
            }
        })
        .collect()
}

/// Exact base-case comparisons `n^r C_n <= M^n` for `1 <= n <= up_to`, with
/// `C_n` from Segner's recursion.
pub fn verify_base_cases(r: u32, m: u64, up_to: u64) -> Result<Vec<BaseCheck>> {
    if r == 0 || m == 0 || up_to == 0 {
        return Err(Error::invalid(
            "verify_base_cases",
            "r, M and up_to must all be positive",
        ));
    }
    let table = compute_segner(up_to as usize);
    Ok(base_checks_from(r, m, table.values(), up_to))
}

fn trusted_lemma(r: u32, to: u64) -> String {
    if r == 2 {
        format!(
            "g(n) > g(n+1) for every n >= 4, proved analytically; machine-checked here only for 4 <= n < {to}"
        )
    } else {
        format!(
            "g_{r}(n) > g_{r}(n+1) for every n >= {to}; observed on the checked range, not proved for r = {r}"
        )
    }
}

/// Quotients `g_r(threshold - 1)`, `g_r(threshold)` and the monotone check on
/// `[4, monotone_to]`.
fn quotient_evidence(
    r: u32,
    threshold: u64,
    monotone_to: u64,
) -> Result<(Fraction, Fraction, RangeCheck)> {
    if r == 2 {
        let mut walk = QuotientWalk::starting_at(threshold - 1);
        let prev = walk.next().expect("walk is unbounded").fraction();
        let at = walk.next().expect("walk is unbounded").fraction();
        let monotone = super::check_monotone_decreasing(4, monotone_to)?;
        Ok((prev, at, monotone))
    } else {
        Ok((
            quotient_g_general_fraction(r, threshold - 1)?,
            quotient_g_general_fraction(r, threshold)?,
            check_monotone_decreasing_general(r, 4, monotone_to)?,
        ))
    }
}

/// Assembles and self-checks a certificate for `C_n <= M^n / n^r`.
///
/// Preconditions (`r >= 2`, `M >= 1`, `threshold >= 4`,
/// `monotone_check_to >= threshold` and `> 4`) are usage errors. Failed checks
/// are not errors: they produce a `falsified` certificate naming each failure.
pub fn build_certificate(
    r: u32,
    m: u64,
    threshold: u64,
    monotone_check_to: u64,
) -> Result<BoundCertificate> {
    const OP: &str = "build_certificate";
    if r < 2 {
        return Err(Error::invalid(OP, "exponent r must be at least 2"));
    }
    if m == 0 {
        return Err(Error::invalid(OP, "M must be positive"));
    }
    if threshold < 4 {
        return Err(Error::invalid(OP, "threshold must be at least 4"));
    }
    if monotone_check_to < threshold || monotone_check_to <= 4 {
        return Err(Error::invalid(
            OP,
            "monotone_check_to must be at least the threshold and above 4",
        ));
    }

    let table = compute_segner(threshold as usize - 1);
    let base_checks = base_checks_from(r, m, table.values(), threshold - 1);
    let (g_prev, g_at, monotone) = quotient_evidence(r, threshold, monotone_check_to)?;

    let mut failures = Vec::new();
    for check in base_checks.iter().filter(|c| !c.holds) {
        failures.push(format!(
            "base case n = {}: {}^{} * C_{} exceeds {}^{}",
            check.n, check.n, r, check.n, m, check.n
        ));
    }
    if g_at.cmp_integer(m) != Ordering::Less {
        failures.push(format!(
            "g_{r}({threshold}) = {}... is not below M = {m}",
            g_at.decimal(4)
        ));
    }
    if let Some(n) = monotone.first_violation {
        failures.push(format!("g_{r}({n}) > g_{r}({}) fails", n + 1));
    }

    let verdict = if failures.is_empty() {
        Verdict::Verified
    } else {
        Verdict::Falsified
    };
    Ok(BoundCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        r,
        m,
        threshold,
        base_case_max: threshold - 1,
        base_checks,
        g_at_threshold: g_at.to_rational(),
        g_prev_threshold: g_prev.to_rational(),
        monotone_spot_check: monotone,
        trusted_lemma: trusted_lemma(r, monotone_check_to),
        radius_lower_bound: (verdict == Verdict::Verified)
            .then(|| BigRational::new(BigInt::one(), BigInt::from(m))),
        verdict,
        failures,
    })
}

fn structural_problems(cert: &BoundCertificate) -> Vec<String> {
    let mut problems = Vec::new();
    if cert.schema_version != CERTIFICATE_SCHEMA_VERSION {
        problems.push(format!(
            "schema_version: expected {CERTIFICATE_SCHEMA_VERSION}, found {}",
            cert.schema_version
        ));
    }
    if cert.r < 2 {
        problems.push(format!("r: must be at least 2, found {}", cert.r));
    }
    if cert.m == 0 {
        problems.push("m: must be positive".to_string());
    }
    if cert.threshold < 2 {
        problems.push(format!("threshold: must be at least 2, found {}", cert.threshold));
    }
    if cert.base_case_max + 1 != cert.threshold {
        problems.push(format!(
            "base_case_max: expected threshold - 1 = {}, found {}",
            cert.threshold.saturating_sub(1),
            cert.base_case_max
        ));
    }
    let indices_ok = cert.base_checks.len() as u64 == cert.base_case_max
        && cert
            .base_checks
            .iter()
            .enumerate()
            .all(|(i, c)| c.n == i as u64 + 1);
    if !indices_ok {
        problems.push(format!(
            "base_checks: expected entries n = 1..={}, found {} entries",
            cert.base_case_max,
            cert.base_checks.len()
        ));
    }
    let mono = &cert.monotone_spot_check;
    if mono.from < 1 || mono.from >= mono.to {
        problems.push(format!(
            "monotone_spot_check: need 1 <= from < to, found [{}, {}]",
            mono.from, mono.to
        ));
    }
    problems
}

/// Recomputes every claim in `cert` from scratch and lists the ones that do
/// not reproduce. Base values come from the binomial formula and quotients
/// from direct summation, independently of how the certificate was built.
///
/// A certificate whose shape is inconsistent (wrong schema version, base
/// checks not covering `1..threshold`, empty ranges) is rejected as
/// [`Error::MalformedCertificate`] with one diagnostic per field.
pub fn audit_certificate(cert: &BoundCertificate) -> Result<Vec<String>> {
    let problems = structural_problems(cert);
    if !problems.is_empty() {
        return Err(Error::MalformedCertificate(problems));
    }
    let mut mismatches = Vec::new();
    let r = cert.r;
    let m = cert.m;
    let n_thr = cert.threshold;

    let table = compute_binomial(cert.base_case_max as usize)?;
    for check in &cert.base_checks {
        let expected = &table.values()[check.n as usize];
        if &check.c_n != expected {
            mismatches.push(format!("base_checks[n = {}]: C_n is wrong", check.n));
        }
        if check.holds != base_holds(r, m, check.n, expected) {
            mismatches.push(format!("base_checks[n = {}]: verdict does not reproduce", check.n));
        }
    }

    let g_at = quotient_g_general(r, n_thr)?;
    if g_at != cert.g_at_threshold {
        mismatches.push(format!(
            "g_at_threshold: claimed {}, recomputed {}",
            format_rational(&cert.g_at_threshold),
            truncated_decimal(&g_at, 6)
        ));
    }
    if quotient_g_general(r, n_thr - 1)? != cert.g_prev_threshold {
        mismatches.push("g_prev_threshold: does not reproduce".to_string());
    }

    let mono = &cert.monotone_spot_check;
    let recheck = check_monotone_decreasing_general(r, mono.from, mono.to)?;
    if &recheck != mono {
        mismatches.push(format!(
            "monotone_spot_check: claimed {:?}, recomputed {:?}",
            mono.first_violation, recheck.first_violation
        ));
    }

    let m_rational = BigRational::from_integer(m.into());
    let should_verify = table.values()[1..].iter().enumerate().all(|(i, c)| base_holds(r, m, i as u64 + 1, c))
        && n_thr >= 4
        && g_at < m_rational
        && recheck.holds
        && recheck.from <= n_thr
        && recheck.to >= n_thr;
    let expected_verdict = if should_verify {
        Verdict::Verified
    } else {
        Verdict::Falsified
    };
    if cert.verdict != expected_verdict {
        mismatches.push(format!(
            "verdict: claimed {:?}, checks give {:?}",
            cert.verdict, expected_verdict
        ));
    }
    let expected_radius =
        should_verify.then(|| BigRational::new(BigInt::one(), BigInt::from(m)));
    if cert.radius_lower_bound != expected_radius {
        mismatches.push("radius_lower_bound: must be 1/M exactly when verified".to_string());
    }
    if cert.failures.is_empty() != should_verify {
        mismatches.push("failures: inconsistent with verdict".to_string());
    }
    Ok(mismatches)
}

/// `true` iff every claim in the certificate reproduces.
pub fn verify_certificate(cert: &BoundCertificate) -> Result<bool> {
    Ok(audit_certificate(cert)?.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest threshold `N` the scan will consider.
    pub scan_limit: u64,
    /// `g_r` must be seen decreasing on `[N, N + check_window]`.
    pub check_window: u64,
    /// Give up after this many candidate constants.
    pub max_m: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            scan_limit: 100_000,
            check_window: 1_000,
            max_m: 1_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        r: u32,
        m: u64,
        threshold: u64,
        certificate: Box<BoundCertificate>,
    },
    NotFound {
        r: u32,
        m: u64,
        scan_limit: u64,
        reason: String,
    },
}

/// [`search_bound_with`] using [`SearchConfig::default`].
pub fn search_bound(r: u32) -> Result<SearchOutcome> {
    search_bound_with(r, SearchConfig::default())
}

/// Finds the least integer `M` and, for it, the least threshold `N >= 4` such
/// that `g_r(N) < M`, `g_r` decreases on `[N, N + window]`, and the base
/// cases `n < N` hold; returns the resulting certificate.
///
/// The first candidate is the least integer above a certified lower bracket
/// of `lim g_r = 2 + 2 zeta(r)`: no smaller `M` can close the induction step
/// for large `n`. A candidate whose base cases fail is replaced by `M + 1`.
pub fn search_bound_with(r: u32, config: SearchConfig) -> Result<SearchOutcome> {
    if r < 2 {
        return Err(Error::invalid("search_bound", "exponent r must be at least 2"));
    }
    let mut m = first_candidate(r)?;
    let window = config.check_window.max(1);
    while m <= config.max_m {
        let Some(threshold) = least_threshold(r, m, config.scan_limit, window)? else {
            return Ok(SearchOutcome::NotFound {
                r,
                m,
                scan_limit: config.scan_limit,
                reason: format!(
                    "no threshold N <= {} with g_{r}(N) < {m} and g_{r} decreasing after it",
                    config.scan_limit
                ),
            });
        };
        let base_ok = verify_base_cases(r, m, threshold - 1)?
            .iter()
            .all(|c| c.holds);
        if !base_ok {
            m += 1;
            continue;
        }
        let certificate = build_certificate(r, m, threshold, threshold + window)?;
        if !certificate.is_verified() {
            return Ok(SearchOutcome::NotFound {
                r,
                m,
                scan_limit: config.scan_limit,
                reason: format!("certificate falsified: {}", certificate.failures.join("; ")),
            });
        }
        return Ok(SearchOutcome::Found {
            r,
            m,
            threshold,
            certificate: Box::new(certificate),
        });
    }
    Ok(SearchOutcome::NotFound {
        r,
        m,
        scan_limit: config.scan_limit,
        reason: format!("no constant M <= {} passes the base cases", config.max_m),
    })
}

/// Least integer `M >= 2` above `2 + 2 zeta(r)`.
fn first_candidate(r: u32) -> Result<u64> {
    let two = BigRational::from_integer(2.into());
    let mut terms = 1_000;
    loop {
        let limit = zeta_bracket(r, terms)?.scale(&two).add_scalar(&two);
        let lo = limit.lo().floor();
        if lo == limit.hi().floor() {
            let m = lo.to_integer().to_u64().unwrap_or(u64::MAX - 1) + 1;
            return Ok(m.max(2));
        }
        if terms >= 1 << 24 {
            return Err(Error::Resource(format!(
                "cannot separate lim g_{r} from an integer"
            )));
        }
        terms *= 4;
    }
}

fn least_threshold(r: u32, m: u64, scan_limit: u64, window: u64) -> Result<Option<u64>> {
    if scan_limit < 4 {
        return Ok(None);
    }
    if r == 2 {
        for term in QuotientWalk::starting_at(4).take((scan_limit - 3) as usize) {
            if term.cmp_integer(m) == Ordering::Less {
                if confirm_decrease(r, term.n, window)? {
                    return Ok(Some(term.n));
                }
            }
        }
    } else {
        for n in 4..=scan_limit {
            if quotient_g_general_fraction(r, n)?.cmp_integer(m) == Ordering::Less {
                if confirm_decrease(r, n, window)? {
                    return Ok(Some(n));
                }
            }
        }
    }
    Ok(None)
}

fn confirm_decrease(r: u32, n: u64, window: u64) -> Result<bool> {
    Ok(check_monotone_decreasing_general(r, n, n + window)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    #[test]
    fn base_case_examples() {
        let checks = verify_base_cases(2, 6, 36).unwrap();
        assert_eq!(checks.len(), 36);
        assert!(checks.iter().all(|c| c.holds));
        let first = &verify_base_cases(2, 6, 1).unwrap()[0];
        assert_eq!((first.n, first.c_n.clone(), first.holds), (1, BigInt::from(1), true));
        assert!(verify_base_cases(0, 6, 3).is_err());
    }

    #[test]
    fn base_cases_with_m4_report_failures() {
        // n^2 C_n / 4^n grows like sqrt(n / pi), so M = 4 fails early.
        let checks = verify_base_cases(2, 4, 36).unwrap();
        let failing: Vec<u64> = checks.iter().filter(|c| !c.holds).map(|c| c.n).collect();
        assert!(!failing.is_empty());
        for c in &checks {
            let lhs = BigInt::from(c.n * c.n) * &c.c_n;
            assert_eq!(c.holds, lhs <= BigInt::from(4).pow(c.n as u32));
        }
    }

    #[test]
    fn six_and_thirty_seven_verify() {
        let cert = build_certificate(2, 6, 37, 1000).unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
        assert_eq!(cert.radius_lower_bound, Some(ratio(1, 6)));
        assert!(cert.failures.is_empty());
        assert_eq!(cert.base_case_max, 36);
        assert!(verify_certificate(&cert).unwrap());
    }

    #[test]
    fn m5_and_n36_are_falsified() {
        let m5 = build_certificate(2, 5, 37, 1000).unwrap();
        assert_eq!(m5.verdict, Verdict::Falsified);
        assert!(m5.failures.iter().any(|f| f.contains("g_2(37)")));
        assert_eq!(m5.radius_lower_bound, None);
        assert!(verify_certificate(&m5).unwrap());

        let n36 = build_certificate(2, 6, 36, 1000).unwrap();
        assert_eq!(n36.verdict, Verdict::Falsified);
        assert!(n36.failures.iter().any(|f| f.contains("6.0150")));
        assert!(verify_certificate(&n36).unwrap());
    }

    #[test]
    fn build_preconditions() {
        assert!(build_certificate(2, 6, 3, 100).is_err());
        assert!(build_certificate(2, 6, 37, 36).is_err());
        assert!(build_certificate(1, 6, 37, 100).is_err());
        assert!(build_certificate(2, 0, 37, 100).is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let cert = build_certificate(2, 6, 37, 200).unwrap();

        let mut bad_g = cert.clone();
        bad_g.g_at_threshold = ratio(11, 2);
        assert!(!verify_certificate(&bad_g).unwrap());

        let mut low_threshold = build_certificate(2, 6, 4, 200).unwrap();
        assert_eq!(low_threshold.verdict, Verdict::Falsified);
        low_threshold.threshold = 3;
        low_threshold.base_case_max = 2;
        low_threshold.base_checks.truncate(2);
        low_threshold.verdict = Verdict::Verified;
        low_threshold.failures.clear();
        low_threshold.radius_lower_bound = Some(ratio(1, 6));
        low_threshold.g_at_threshold = quotient_g_general(2, 3).unwrap();
        low_threshold.g_prev_threshold = quotient_g_general(2, 2).unwrap();
        assert!(!verify_certificate(&low_threshold).unwrap());

        let mut bad_c = cert.clone();
        bad_c.base_checks[9].c_n += 1;
        assert!(!verify_certificate(&bad_c).unwrap());

        let mut bad_radius = cert.clone();
        bad_radius.radius_lower_bound = Some(ratio(1, 5));
        assert!(!verify_certificate(&bad_radius).unwrap());
    }

    #[test]
    fn malformed_certificates_are_errors() {
        let mut cert = build_certificate(2, 6, 37, 100).unwrap();
        cert.base_checks.pop();
        cert.schema_version = 9;
        match verify_certificate(&cert) {
            Err(Error::MalformedCertificate(problems)) => {
                assert_eq!(problems.len(), 2);
                assert!(problems[0].starts_with("schema_version"));
                assert!(problems[1].starts_with("base_checks"));
            }
            other => panic!("expected malformed, got {other:?}"),
        }
        assert!(BoundCertificate::from_json("{\"r\": 2}").is_err());
    }

    #[test]
    fn json_round_trip() {
        let cert = build_certificate(2, 6, 37, 100).unwrap();
        let json = cert.to_json();
        assert!(json.contains("\"radius_lower_bound\": \"1/6\""));
        assert!(json.contains("\"verdict\": \"verified\""));
        assert!(json.contains("\"trusted_lemma\""));
        let back = BoundCertificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back).unwrap());
    }

    #[test]
    fn search_r2_reproduces_six_and_thirty_seven() {
        match search_bound(2).unwrap() {
            SearchOutcome::Found {
                m,
                threshold,
                certificate,
                ..
            } => {
                assert_eq!((m, threshold), (6, 37));
                assert!(verify_certificate(&certificate).unwrap());
            }
            other => panic!("expected a bound, got {other:?}"),
        }
    }

    #[test]
    fn search_respects_scan_limit() {
        let config = SearchConfig {
            scan_limit: 10,
            ..SearchConfig::default()
        };
        assert!(matches!(
            search_bound_with(2, config).unwrap(),
            SearchOutcome::NotFound { m: 6, .. }
        ));
        assert!(search_bound(1).is_err());
    }

    #[test]
    fn first_candidates() {
        // 2 + 2 zeta(2) = 5.2898..., 2 + 2 zeta(3) = 4.4041...
        assert_eq!(first_candidate(2).unwrap(), 6);
        assert_eq!(first_candidate(3).unwrap(), 5);
        assert_eq!(first_candidate(8).unwrap(), 5);
    }
}
