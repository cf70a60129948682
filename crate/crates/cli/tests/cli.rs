use segner_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["segner"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn compute_text_table() {
    let (code, out, _) = cli(&["compute", "--max", "8", "--method", "all"]);
    assert_eq!(code, EXIT_OK);
    let last = out.lines().last().unwrap();
    assert_eq!(last.split_whitespace().collect::<Vec<_>>(), ["8", "1430", "1430", "1430", "true"]);
}

#[test]
fn compute_csv() {
    let (code, out, _) = cli(&["compute", "--max", "3", "--method", "product", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "n,product\n0,1\n1,1\n2,2\n3,5\n");
}

#[test]
fn identical_arguments_give_identical_output() {
    for args in [
        &["bounds", "certify", "--r", "2", "--m", "6", "--threshold", "37", "--monotone-to", "200"][..],
        &["asymptotics", "stirling", "--n", "5,50", "--format", "json"][..],
        &["bounds", "g", "--n", "4,36,37", "--format", "csv"][..],
    ] {
        assert_eq!(cli(args), cli(args));
    }
}

#[test]
fn every_subcommand_has_json() {
    for args in [
        &["compute", "--max", "4"][..],
        &["oracle", "--sides", "6"][..],
        &["series", "verify", "--order", "20"][..],
        &["series", "eval", "--order", "10", "--x", "1/6"][..],
        &["bounds", "s", "--n", "1,2,10"][..],
        &["bounds", "g", "--n", "10", "--r", "3"][..],
        &["bounds", "search", "--r", "2"][..],
        &["bounds", "r1-failure", "--n-max", "50"][..],
        &["asymptotics", "radius", "--max", "64", "--precision-bits", "64"][..],
        &["asymptotics", "limit", "--n", "37,100"][..],
        &["asymptotics", "r0", "--n-min", "64", "--n-max", "256"][..],
        &["asymptotics", "exponent-scan", "--r", "8/5", "--max", "400"][..],
    ] {
        let mut args = args.to_vec();
        args.extend(["--format", "json"]);
        let (code, out, err) = cli(&args);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        serde_json::from_str::<serde_json::Value>(&out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn oracle_json_shape() {
    let (code, out, _) = cli(&["oracle", "--sides", "7", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!({"sides": 7, "count": "42", "matches_catalan": true}));
}

#[test]
fn falsified_certificate_exits_one() {
    let (code, out, _) = cli(&["bounds", "certify", "--r", "2", "--m", "5", "--threshold", "37", "--monotone-to", "100"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("\"verdict\": \"falsified\""));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("segner-cli-tamper-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _, _) = cli(&["bounds", "certify", "--m", "6", "--threshold", "37", "--monotone-to", "100", "--output", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(cli(&["bounds", "verify", "--input", p]).0, EXIT_OK);

    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\"m\": 6", "\"m\": 5", 1)).unwrap();
    assert_eq!(cli(&["bounds", "verify", "--input", p]).0, EXIT_FAILED);

    std::fs::write(&path, "{\"schema_version\": 1}").unwrap();
    assert_eq!(cli(&["bounds", "verify", "--input", p]).0, EXIT_USAGE);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = cli(&["compute", "--max", "3", "--bogus"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Usage"));
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["oracle", "--sides", "14"]).0, EXIT_USAGE);
    assert_eq!(cli(&["bounds", "certify", "--m", "6", "--threshold", "2"]).0, EXIT_USAGE);
    assert_eq!(cli(&["series", "eval", "--order", "3", "--x", "1/0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["bounds", "certify", "--m", "6", "--threshold", "37", "--format", "csv"]).0, EXIT_USAGE);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("asymptotics"));
}

#[test]
fn large_integers_print_in_full() {
    let (_, out, _) = cli(&["compute", "--max", "100", "--format", "csv"]);
    assert!(out.ends_with("100,896519947090131496687170070074100632420837521538745909320\n"));
}

#[test]
fn memory_cap_refuses_before_computing() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_segner"))
        .args(["compute", "--max", "200000"])
        .env("SEGNER_MAX_MEMORY_MB", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SEGNER_MAX_MEMORY_MB"));
}

#[test]
fn polygon_index_relabels_rows() {
    let (code, out, _) = cli(&["compute", "--max", "8", "--polygon-index", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("sides,segner\n2,1\n3,1\n4,2\n"));
    assert!(out.ends_with("10,1430\n"));
}
