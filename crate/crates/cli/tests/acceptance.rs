//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the report is printed even when everything passes.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use segner::asymptotics::{
    distances_strictly_decreasing, fit_r0, limit_convergence_table, radius_at, stirling_ratio,
};
use segner::bounds::{
    build_certificate, check_limit_sandwich, check_monotone_decreasing, demonstrate_r1_failure,
    quotient_g, reduced_inequality_range, search_bound, sum_s, sum_s_closed, sum_s_general,
    verify_certificate, BoundCertificate, SearchOutcome,
};
use segner::catalan::compute_segner;
use segner::exactnum::{limit_constant_bracket, ratio};
use segner::oracle::count_triangulations;
use segner::series::{catalan_series, verify_goldbach_for, verify_goldbach_quadratic};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["segner"];
    argv.extend_from_slice(args);
    let code = segner_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn value_pinning() -> Outcome {
    let (code, out) = cli(&["compute", "--max", "8", "--method", "all", "--format", "json"]);
    ensure(code == 0, format!("exit code {code}"))?;
    let json: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let expected = ["1", "1", "2", "5", "14", "42", "132", "429", "1430"];
    let rows = json["rows"].as_array().ok_or("rows missing")?;
    ensure(rows.len() == expected.len(), "wrong row count")?;
    for (row, want) in rows.iter().zip(expected) {
        for method in ["segner", "product", "binomial"] {
            ensure(
                row["values"][method] == want,
                format!("{method} gives {} at n = {}", row["values"][method], row["n"]),
            )?;
        }
        ensure(row["agree"] == true, "methods disagree")?;
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let table = compute_segner(9);
    for sides in 3..=11usize {
        let count = count_triangulations(sides).map_err(|e| e.to_string())?.count;
        ensure(count == table.values()[sides - 2], format!("{sides} sides gives {count}"))?;
    }
    ensure(
        count_triangulations(9).unwrap().count == BigInt::from(429)
            && count_triangulations(10).unwrap().count == BigInt::from(1430),
        "T_9 or T_10 off",
    )
}

fn goldbach_identity() -> Outcome {
    let report = verify_goldbach_quadratic(200).map_err(|e| e.to_string())?;
    ensure(report.holds, "identities fail on the true series")?;
    let mut faulty = catalan_series(200);
    let bumped = faulty.coeff(137).unwrap() + rat(1);
    faulty.set_coeff(137, bumped).unwrap();
    let report = verify_goldbach_for(&faulty).map_err(|e| e.to_string())?;
    ensure(!report.holds, "fault not detected")?;
    let index = report.first_failure.map(|f| f.index);
    ensure(index == Some(137), format!("fault reported at {index:?}, injected at 137"))
}

fn threshold_reproduction() -> Outcome {
    let g36 = quotient_g(36).map_err(|e| e.to_string())?;
    let g37 = quotient_g(37).map_err(|e| e.to_string())?;
    ensure(ratio(60150, 10000) <= g36 && g36 < ratio(60151, 10000), "g(36) outside [6.0150, 6.0151)")?;
    ensure(ratio(59979, 10000) <= g37 && g37 < ratio(59980, 10000), "g(37) outside [5.9979, 5.9980)")
}

fn certificate() -> Outcome {
    let cert = build_certificate(2, 6, 37, 10_000).map_err(|e| e.to_string())?;
    ensure(cert.is_verified(), format!("falsified: {:?}", cert.failures))?;
    ensure(cert.radius_lower_bound == Some(ratio(1, 6)), "radius bound is not 1/6")?;
    let back = BoundCertificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
    ensure(back == cert, "JSON round trip changed the certificate")?;
    ensure(verify_certificate(&back).map_err(|e| e.to_string())?, "verification failed")?;

    let path = std::env::temp_dir().join(format!("segner-acceptance-{}.json", std::process::id()));
    let path_str = path.to_str().ok_or("temp path is not utf-8")?;
    let (code, _) = cli(&["bounds", "certify", "--r", "2", "--m", "6", "--threshold", "37", "--output", path_str]);
    ensure(code == 0, format!("certify exit code {code}"))?;
    let (code, _) = cli(&["bounds", "verify", "--input", path_str]);
    let _ = std::fs::remove_file(&path);
    ensure(code == 0, format!("verify exit code {code}"))?;

    for (m, threshold) in [(5, 37), (6, 36)] {
        let bad = build_certificate(2, m, threshold, 10_000).map_err(|e| e.to_string())?;
        ensure(!bad.is_verified(), format!("M = {m}, N = {threshold} verified"))?;
    }
    let (code, _) = cli(&["bounds", "certify", "--r", "2", "--m", "5", "--threshold", "37"]);
    ensure(code == 1, format!("falsified certify exit code {code}"))
}

fn quotient_properties() -> Outcome {
    for n in 2..=2000 {
        ensure(sum_s(n).unwrap() == sum_s_closed(n).unwrap(), format!("S differs at n = {n}"))?;
    }
    let mono = check_monotone_decreasing(4, 10_000).map_err(|e| e.to_string())?;
    ensure(mono.holds, format!("g not decreasing at {:?}", mono.first_violation))?;
    for (n, holds) in reduced_inequality_range(2, 10_000).map_err(|e| e.to_string())? {
        ensure(holds == (n >= 4), format!("reduced inequality wrong at n = {n}"))?;
    }
    let bracket = limit_constant_bracket(1_000_000).map_err(|e| e.to_string())?;
    let sandwich = check_limit_sandwich(37, 10_000, &bracket, 6).map_err(|e| e.to_string())?;
    ensure(sandwich.holds, format!("sandwich fails at {:?}", sandwich.first_violation))
}

fn consequence_audit() -> Outcome {
    // C_n by the multiplicative recurrence (n+2) C_(n+1) = (4n+2) C_n
    let mut c = BigInt::one();
    let mut six_n = BigInt::one();
    for n in 1..=2000u64 {
        c = c * (4 * n - 2) / (n + 1);
        six_n *= 6;
        ensure(BigInt::from(n * n) * &c <= six_n, format!("n^2 C_n > 6^n at n = {n}"))?;
    }
    Ok(())
}

fn r1_failure() -> Outcome {
    let report = demonstrate_r1_failure(2, 1000).map_err(|e| e.to_string())?;
    ensure(report.checked == 999, "wrong range")?;
    ensure(report.successes == 0, format!("{} successes", report.successes))
}

fn limit_constant() -> Outcome {
    let bracket = limit_constant_bracket(1_000_000).map_err(|e| e.to_string())?;
    let rows = limit_convergence_table(&[37, 100, 1000, 10_000, 100_000], &bracket)
        .map_err(|e| e.to_string())?;
    let last = rows.last().ok_or("no rows")?;
    ensure(last.distance_below(&ratio(1, 1000)), format!("distance at 1e5 is {}", last.distance_decimal))?;
    ensure(distances_strictly_decreasing(&rows), "distances not decreasing")
}

fn asymptotics() -> Outcome {
    let root = &radius_at(&[1000], 128).map_err(|e| e.to_string())?[0].root;
    ensure(root.lo() > &ratio(394, 100) && root.hi() < &ratio(397, 100), format!("root {root}"))?;
    let stirling = &stirling_ratio(&[1000], 128).map_err(|e| e.to_string())?[0].ratio;
    ensure(stirling.lo() > &ratio(998, 1000) && stirling.hi() < &rat(1), format!("ratio {stirling}"))?;
    let fit = fit_r0(512, 4096).map_err(|e| e.to_string())?;
    ensure(
        fit.slope >= ratio(148, 100) && fit.slope <= ratio(152, 100),
        format!("slope {}", fit.slope_decimal()),
    )
}

fn general_r() -> Outcome {
    let outcome = search_bound(3).map_err(|e| e.to_string())?;
    let SearchOutcome::Found { certificate, .. } = outcome else {
        return Err("search for r = 3 found nothing".into());
    };
    ensure(verify_certificate(&certificate).map_err(|e| e.to_string())?, "certificate rejected")?;
    for n in 1..=500 {
        ensure(sum_s_general(2, n).unwrap() == sum_s(n).unwrap(), format!("S_2 differs at n = {n}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("value pinning", value_pinning, Duration::from_secs(1)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(60)),
        ("goldbach identity", goldbach_identity, Duration::from_secs(10)),
        ("threshold reproduction", threshold_reproduction, Duration::from_secs(1)),
        ("certificate", certificate, Duration::from_secs(30)),
        ("quotient properties", quotient_properties, Duration::from_secs(120)),
        ("consequence audit", consequence_audit, Duration::from_secs(30)),
        ("r = 1 failure", r1_failure, Duration::from_secs(1)),
        ("limit constant", limit_constant, Duration::from_secs(120)),
        ("asymptotics", asymptotics, Duration::from_secs(120)),
        ("general r", general_r, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= *budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {}s budget)", budget.as_secs()),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict:<4} [{:>2}] {name} ({:.2}s)", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
