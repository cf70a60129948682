//! Command-line front end for the `segner` library.
//!
//! [`run`] parses an argument list, runs one computation and writes the
//! result as text, JSON or CSV. Exit codes: 0 success or verified, 1 a check
//! failed or a claim was falsified, 2 usage or resource error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use segner::asymptotics::{
    critical_exponent_scan, distances_strictly_decreasing, estimate_radius, fit_r0,
    limit_convergence_table, radius_at, stirling_ratio, DEFAULT_PRECISION_BITS,
};
use segner::bounds::{
    build_certificate, demonstrate_r1_failure, quotient_g, quotient_g_general, search_bound_with,
    sum_s, sum_s_closed, sum_s_general, BoundCertificate, SearchConfig, SearchOutcome,
};
use segner::catalan::{compare_methods, compute_segner, Method};
use segner::exactnum::{
    format_rational, limit_constant_bracket, parse_rational, truncated_decimal, ExactRational,
};
use segner::oracle::{count_triangulations_with_limit, DEFAULT_SIDES_LIMIT};
use segner::series::{catalan_series, evaluate_partial_sum, verify_goldbach_quadratic};
use segner::{bounds, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the soft memory cap in megabytes.
pub const MEMORY_ENV: &str = "SEGNER_MAX_MEMORY_MB";
const DEFAULT_MEMORY_MB: u64 = 2048;

const DECIMAL_DIGITS: usize = 12;
const LIMIT_BRACKET_TERMS: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "segner",
    version,
    about = "Exact Catalan numbers and certified bounds on their growth"
)]
struct Cli {
    /// Output format (defaults to json for certificates, text otherwise)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result to PATH instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Segner,
    Product,
    Binomial,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Segner => vec![Method::Segner],
            MethodArg::Product => vec![Method::Product],
            MethodArg::Binomial => vec![Method::Binomial],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalan numbers C_0..C_max by one or all methods
    Compute {
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "segner")]
        method: MethodArg,
        /// Label rows by polygon size: T_sides = C_(sides-2)
        #[arg(long)]
        polygon_index: bool,
    },
    /// Count triangulations of a convex polygon by brute force
    Oracle {
        #[arg(long)]
        sides: usize,
        /// Raise the default cap on --sides
        #[arg(long, default_value_t = DEFAULT_SIDES_LIMIT)]
        sides_limit: usize,
    },
    /// Truncated generating function
    #[command(subcommand)]
    Series(SeriesCommand),
    /// Exact sums, quotients and bound certificates
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Numerical growth estimates at certified precision
    #[command(subcommand)]
    Asymptotics(AsymptoticsCommand),
}

#[derive(Subcommand, Debug)]
enum SeriesCommand {
    /// Check x C^2 - C + 1 = 0 and T = (1 + xT)^2 coefficient by coefficient
    Verify {
        #[arg(long)]
        order: usize,
    },
    /// Evaluate the partial sum of C(x) at a rational point
    Eval {
        #[arg(long)]
        order: usize,
        #[arg(long, value_name = "NUM/DEN", value_parser = rational_arg)]
        x: ExactRational,
    },
}

#[derive(Args, Debug)]
struct PointsArgs {
    /// Comma-separated sample points
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    n: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    r: u32,
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// The convolution weight sum S_r(n)
    S(PointsArgs),
    /// The induction quotient g_r(n) = S_r(n) (n+1)^r
    G(PointsArgs),
    /// Build and self-check a certificate for C_n <= M^n / n^r
    Certify {
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        threshold: u64,
        #[arg(long, default_value_t = 10_000)]
        monotone_to: u64,
    },
    /// Find the least M and threshold for exponent r and certify them
    Search {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = SearchConfig::default().scan_limit)]
        scan_limit: u64,
    },
    /// Show that the r = 1 induction step never closes
    R1Failure {
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
    },
    /// Re-check a certificate produced by `bounds certify`
    Verify {
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum AsymptoticsCommand {
    /// C_n^(1/n) and its reciprocal on a power-of-two grid
    Radius {
        #[arg(long, default_value_t = 4096)]
        max: u64,
        /// Explicit sample points instead of the grid
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        n: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
    },
    /// g(n) against the bracket for 2 + pi^2/3
    Limit {
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "37,100,1000,10000")]
        n: Vec<u64>,
    },
    /// C_n sqrt(pi) n^(3/2) / 4^n
    Stirling {
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1,10,100,1000")]
        n: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
    },
    /// Least-squares fit of ln(4^n / C_n) against ln n
    R0 {
        #[arg(long, default_value_t = 512)]
        n_min: u64,
        #[arg(long, default_value_t = 4096)]
        n_max: u64,
    },
    /// Exact scan for n with n^r C_n > M^n, r rational
    ExponentScan {
        #[arg(long, value_name = "NUM/DEN", value_parser = rational_arg)]
        r: ExactRational,
        #[arg(long, default_value_t = 4)]
        m: u64,
        #[arg(long, default_value_t = 2000)]
        max: u64,
    },
}

fn rational_arg(text: &str) -> Result<ExactRational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// What a command produced: rendered output and its exit code.
struct Outcome {
    body: String,
    code: i32,
}

impl Outcome {
    fn new(body: String, passed: bool) -> Self {
        Self {
            body,
            code: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity { .. } | Error::NotFound(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = memory_cap().and_then(|cap| dispatch(&cli, cap));
    match result {
        Ok(outcome) => {
            let mut body = outcome.body;
            if !body.ends_with('\n') {
                body.push('\n');
            }
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_FAILED
        }
    }
}

fn memory_cap() -> std::result::Result<u64, Failure> {
    match std::env::var(MEMORY_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(|mb| mb.saturating_mul(1 << 20))
            .map_err(|_| Failure::Usage(format!("{MEMORY_ENV} must be a whole number of MB, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MEMORY_MB << 20),
    }
}

/// Refuses runs whose Catalan tables alone would exceed the cap: `C_n` has
/// about `2n` bits, so a table up to `n` takes about `n^2 / 4` bytes.
fn check_table_memory(copies: u64, max_index: u64, cap: u64) -> std::result::Result<(), Failure> {
    let estimate = copies
        .saturating_mul(max_index)
        .saturating_mul(max_index)
        / 4;
    if estimate > cap {
        return Err(Failure::Usage(format!(
            "estimated {} MB for Catalan tables up to n = {max_index} exceeds the cap of {} MB (set {MEMORY_ENV})",
            estimate >> 20,
            cap >> 20
        )));
    }
    Ok(())
}

fn dispatch(cli: &Cli, cap: u64) -> CmdResult {
    let default = match &cli.command {
        Command::Bounds(BoundsCommand::Certify { .. } | BoundsCommand::Search { .. }) => Format::Json,
        _ => Format::Text,
    };
    let fmt = cli.format.unwrap_or(default);
    match &cli.command {
        Command::Compute {
            max,
            method,
            polygon_index,
        } => cmd_compute(fmt, *max, *method, *polygon_index, cap),
        Command::Oracle { sides, sides_limit } => cmd_oracle(fmt, *sides, *sides_limit),
        Command::Series(SeriesCommand::Verify { order }) => {
            check_table_memory(3, *order as u64, cap)?;
            cmd_series_verify(fmt, *order)
        }
        Command::Series(SeriesCommand::Eval { order, x }) => {
            check_table_memory(1, *order as u64, cap)?;
            cmd_series_eval(fmt, *order, x)
        }
        Command::Bounds(cmd) => match cmd {
            BoundsCommand::S(args) => cmd_sum_table(fmt, args, false),
            BoundsCommand::G(args) => cmd_sum_table(fmt, args, true),
            BoundsCommand::Certify {
                r,
                m,
                threshold,
                monotone_to,
            } => cmd_certify(fmt, *r, *m, *threshold, *monotone_to),
            BoundsCommand::Search { r, scan_limit } => cmd_search(fmt, *r, *scan_limit),
            BoundsCommand::R1Failure { n_min, n_max } => cmd_r1(fmt, *n_min, *n_max),
            BoundsCommand::Verify { input } => cmd_verify(fmt, input),
        },
        Command::Asymptotics(cmd) => match cmd {
            AsymptoticsCommand::Radius {
                max,
                n,
                precision_bits,
            } => {
                let top = n.iter().copied().max().unwrap_or(*max);
                check_table_memory(1, top, cap)?;
                cmd_radius(fmt, *max, n, *precision_bits)
            }
            AsymptoticsCommand::Limit { n } => cmd_limit(fmt, n),
            AsymptoticsCommand::Stirling { n, precision_bits } => {
                check_table_memory(1, n.iter().copied().max().unwrap_or(0), cap)?;
                cmd_stirling(fmt, n, *precision_bits)
            }
            AsymptoticsCommand::R0 { n_min, n_max } => {
                check_table_memory(1, *n_max, cap)?;
                cmd_r0(fmt, *n_min, *n_max)
            }
            AsymptoticsCommand::ExponentScan { r, m, max } => {
                check_table_memory(1, *max, cap)?;
                cmd_exponent_scan(fmt, r, *m, *max)
            }
        },
    }
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}

/// Left-aligned columns separated by two spaces.
fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = vec![header.join(",")];
    out.extend(rows.iter().map(|r| r.join(",")));
    out.join("\n")
}

fn table(fmt: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    match fmt {
        Format::Csv => csv_table(header, rows),
        _ => text_table(header, rows),
    }
}

fn no_csv(fmt: Format, what: &str) -> std::result::Result<(), Failure> {
    if fmt == Format::Csv {
        return Err(Failure::Usage(format!("{what} has no CSV form; use --format json or text")));
    }
    Ok(())
}

fn cmd_compute(fmt: Format, max: usize, method: MethodArg, polygon: bool, cap: u64) -> CmdResult {
    let methods = method.methods();
    check_table_memory(methods.len() as u64, max as u64, cap)?;
    let rows = compare_methods(&methods, max)?;
    let all_agree = rows.iter().all(|r| r.agree);
    let body = match fmt {
        Format::Json => pretty(&json!({
            "method": format!("{method:?}").to_lowercase(),
            "max": max,
            "all_agree": all_agree,
            "rows": rows.iter().map(|r| {
                let values: serde_json::Map<String, Value> = r
                    .values
                    .iter()
                    .map(|(m, v)| (m.name().to_string(), Value::String(v.to_string())))
                    .collect();
                let mut row = json!({ "n": r.n, "values": values, "agree": r.agree });
                if polygon {
                    row["sides"] = json!(r.n + 2);
                }
                row
            }).collect::<Vec<_>>(),
        })),
        _ => {
            let mut header = vec![if polygon { "sides" } else { "n" }];
            header.extend(methods.iter().map(|m| m.name()));
            if methods.len() > 1 {
                header.push("agree");
            }
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let label = if polygon { r.n + 2 } else { r.n };
                    let mut cells = vec![label.to_string()];
                    cells.extend(r.values.iter().map(|(_, v)| v.to_string()));
                    if methods.len() > 1 {
                        cells.push(r.agree.to_string());
                    }
                    cells
                })
                .collect();
            table(fmt, &header, &cells)
        }
    };
    Ok(Outcome::new(body, all_agree))
}

fn cmd_oracle(fmt: Format, sides: usize, limit: usize) -> CmdResult {
    let counted = count_triangulations_with_limit(sides, limit)?;
    let catalan = compute_segner(sides - 2).values()[sides - 2].clone();
    let matches = counted.count == catalan;
    let body = match fmt {
        Format::Json => pretty(&json!({
            "sides": sides,
            "count": counted.count.to_string(),
            "matches_catalan": matches,
        })),
        _ => table(
            fmt,
            &["sides", "count", "catalan", "matches_catalan"],
            &[vec![
                sides.to_string(),
                counted.count.to_string(),
                catalan.to_string(),
                matches.to_string(),
            ]],
        ),
    };
    Ok(Outcome::new(body, matches))
}

fn cmd_series_verify(fmt: Format, order: usize) -> CmdResult {
    no_csv(fmt, "series verify")?;
    let report = verify_goldbach_quadratic(order)?;
    let body = match fmt {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        _ => match &report.first_failure {
            None => format!("order {order}: x C^2 - C + 1 = 0 and T = (1 + xT)^2 hold exactly"),
            Some(f) => format!(
                "order {order}: {:?} fails first at coefficient {} ({} failure(s))",
                f.identity,
                f.index,
                report.failures.len()
            ),
        },
    };
    Ok(Outcome::new(body, report.holds))
}

fn cmd_series_eval(fmt: Format, order: usize, x: &ExactRational) -> CmdResult {
    no_csv(fmt, "series eval")?;
    let value = evaluate_partial_sum(&catalan_series(order), x);
    let decimal = truncated_decimal(&value, DECIMAL_DIGITS);
    let body = match fmt {
        Format::Json => pretty(&json!({
            "order": order,
            "x": format_rational(x),
            "value": format_rational(&value),
            "decimal": decimal,
        })),
        _ => format!(
            "sum_(n<={order}) C_n x^n at x = {}\nexact   {}\ndecimal {decimal}",
            format_rational(x),
            format_rational(&value)
        ),
    };
    Ok(Outcome::new(body, true))
}

fn cmd_sum_table(fmt: Format, args: &PointsArgs, quotient: bool) -> CmdResult {
    let r = args.r;
    let name = if quotient { "g" } else { "S" };
    let mut values = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let v = match (quotient, r) {
            (true, 2) => quotient_g(n)?,
            (true, _) => quotient_g_general(r, n)?,
            (false, 2) if n >= 2 => sum_s_closed(n)?,
            (false, 2) => sum_s(n)?,
            (false, _) => sum_s_general(r, n)?,
        };
        values.push((n, v));
    }
    let body = match fmt {
        Format::Json => pretty(&json!({
            "quantity": name,
            "r": r,
            "rows": values.iter().map(|(n, v)| json!({
                "n": n,
                "value": format_rational(v),
                "decimal": truncated_decimal(v, DECIMAL_DIGITS),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_table(
            &["n", "value", "decimal"],
            &values
                .iter()
                .map(|(n, v)| vec![n.to_string(), format_rational(v), truncated_decimal(v, DECIMAL_DIGITS)])
                .collect::<Vec<_>>(),
        ),
        Format::Text => text_table(
            &["n", &format!("{name}_{r}(n)")],
            &values
                .iter()
                .map(|(n, v)| vec![n.to_string(), truncated_decimal(v, DECIMAL_DIGITS)])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::new(body, true))
}

fn certificate_summary(cert: &BoundCertificate) -> String {
    let mut lines = vec![
        format!(
            "claim      C_n <= {}^n / n^{} for all n >= 1",
            cert.m, cert.r
        ),
        format!("verdict    {:?}", cert.verdict).to_lowercase(),
        format!("threshold  {}", cert.threshold),
        format!(
            "g(N)       {}",
            truncated_decimal(&cert.g_at_threshold, DECIMAL_DIGITS)
        ),
        format!(
            "monotone   checked on [{}, {}]: {}",
            cert.monotone_spot_check.from, cert.monotone_spot_check.to, cert.monotone_spot_check.holds
        ),
    ];
    if let Some(radius) = &cert.radius_lower_bound {
        lines.push(format!("radius     >= {}", format_rational(radius)));
    }
    lines.extend(cert.failures.iter().map(|f| format!("failure    {f}")));
    lines.join("\n")
}

fn cmd_certify(fmt: Format, r: u32, m: u64, threshold: u64, monotone_to: u64) -> CmdResult {
    no_csv(fmt, "a certificate")?;
    let cert = build_certificate(r, m, threshold, monotone_to)?;
    let body = match fmt {
        Format::Json => cert.to_json(),
        _ => certificate_summary(&cert),
    };
    Ok(Outcome::new(body, cert.is_verified()))
}

fn cmd_search(fmt: Format, r: u32, scan_limit: u64) -> CmdResult {
    no_csv(fmt, "a search result")?;
    let config = SearchConfig {
        scan_limit,
        ..SearchConfig::default()
    };
    let outcome = search_bound_with(r, config)?;
    let found = matches!(outcome, SearchOutcome::Found { .. });
    let body = match (fmt, &outcome) {
        (Format::Json, _) => serde_json::to_string_pretty(&outcome).expect("outcome serializes"),
        (_, SearchOutcome::Found { certificate, .. }) => certificate_summary(certificate),
        (_, SearchOutcome::NotFound { reason, .. }) => format!("not found: {reason}"),
    };
    Ok(Outcome::new(body, found))
}

fn cmd_r1(fmt: Format, from: u64, to: u64) -> CmdResult {
    let report = demonstrate_r1_failure(from, to)?;
    let body = match fmt {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        Format::Csv => csv_table(
            &["from", "to", "checked", "successes"],
            &[vec![
                from.to_string(),
                to.to_string(),
                report.checked.to_string(),
                report.successes.to_string(),
            ]],
        ),
        Format::Text => format!(
            "H_(n-1) < n/(n+1) - 2 checked for n in [{from}, {to}]: {} of {} hold",
            report.successes, report.checked
        ),
    };
    Ok(Outcome::new(body, report.fails_everywhere()))
}

fn cmd_verify(fmt: Format, input: &PathBuf) -> CmdResult {
    no_csv(fmt, "certificate verification")?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let cert = BoundCertificate::from_json(&text)?;
    let problems = bounds::audit_certificate(&cert)?;
    let verified = problems.is_empty();
    let body = match fmt {
        Format::Json => pretty(&json!({ "verified": verified, "failures": problems })),
        _ if verified => format!(
            "verified: C_n <= {}^n / n^{} for all n >= 1",
            cert.m, cert.r
        ),
        _ => {
            let mut lines = vec!["not verified".to_string()];
            lines.extend(problems.iter().map(|p| format!("  {p}")));
            lines.join("\n")
        }
    };
    Ok(Outcome::new(body, verified))
}

fn cmd_radius(fmt: Format, max: u64, points: &[u64], bits: u32) -> CmdResult {
    let rows = if points.is_empty() {
        estimate_radius(max, bits)?
    } else {
        radius_at(points, bits)?
    };
    let body = match fmt {
        Format::Json => pretty(&json!({
            "precision_bits": bits,
            "rows": rows.iter().map(|p| json!({
                "n": p.n,
                "root": p.root_decimal,
                "radius": p.radius_decimal,
                "root_interval": p.root,
                "radius_interval": p.radius,
            })).collect::<Vec<_>>(),
        })),
        _ => table(
            fmt,
            &["n", "root", "radius"],
            &rows
                .iter()
                .map(|p| vec![p.n.to_string(), p.root_decimal.clone(), p.radius_decimal.clone()])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::new(body, true))
}

fn cmd_limit(fmt: Format, points: &[u64]) -> CmdResult {
    let bracket = limit_constant_bracket(LIMIT_BRACKET_TERMS)?;
    let rows = limit_convergence_table(points, &bracket)?;
    let decreasing = distances_strictly_decreasing(&rows);
    let body = match fmt {
        Format::Json => pretty(&json!({
            "limit_bracket": bracket,
            "distances_decreasing": decreasing,
            "rows": rows,
        })),
        _ => table(
            fmt,
            &["n", "g", "distance"],
            &rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.g_decimal.clone(), r.distance_decimal.clone()])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::new(body, decreasing))
}

fn cmd_stirling(fmt: Format, points: &[u64], bits: u32) -> CmdResult {
    let rows = stirling_ratio(points, bits)?;
    let body = match fmt {
        Format::Json => pretty(&json!({
            "precision_bits": bits,
            "rows": rows.iter().map(|r| json!({
                "n": r.n,
                "ratio": r.decimal,
                "interval": r.ratio,
            })).collect::<Vec<_>>(),
        })),
        _ => table(
            fmt,
            &["n", "ratio"],
            &rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.decimal.clone()])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::new(body, true))
}

fn cmd_r0(fmt: Format, n_min: u64, n_max: u64) -> CmdResult {
    let fit = fit_r0(n_min, n_max)?;
    let body = match fmt {
        Format::Json => pretty(&json!({
            "slope": fit.slope_decimal(),
            "intercept": fit.intercept_decimal(),
            "residual_max": fit.residual_decimal(),
            "n_range": [fit.n_range.0, fit.n_range.1],
            "points": fit.points,
        })),
        Format::Csv => csv_table(
            &["n_min", "n_max", "slope", "intercept", "residual_max"],
            &[vec![
                fit.n_range.0.to_string(),
                fit.n_range.1.to_string(),
                fit.slope_decimal(),
                fit.intercept_decimal(),
                fit.residual_decimal(),
            ]],
        ),
        Format::Text => format!(
            "fit of ln(4^n / C_n) against ln n over n in {:?}\nslope        {}\nintercept    {}\nresidual_max {}",
            fit.points,
            fit.slope_decimal(),
            fit.intercept_decimal(),
            fit.residual_decimal()
        ),
    };
    Ok(Outcome::new(body, true))
}

fn cmd_exponent_scan(fmt: Format, r: &ExactRational, m: u64, max: u64) -> CmdResult {
    let scan = critical_exponent_scan(r, m, max)?;
    let body = match fmt {
        Format::Json => serde_json::to_string_pretty(&scan).expect("scan serializes"),
        _ => {
            let first = scan
                .first_exceedance
                .map_or_else(|| "none".to_string(), |n| n.to_string());
            table(
                fmt,
                &["r", "m", "n_max", "first_exceedance", "exceedances"],
                &[vec![
                    scan.r.clone(),
                    m.to_string(),
                    max.to_string(),
                    first,
                    scan.exceedances.to_string(),
                ]],
            )
        }
    };
    Ok(Outcome::new(body, true))
}
