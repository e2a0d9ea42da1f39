//! Command-line front end.
//!
//! [`run`] turns parsed arguments into an [`Outcome`] without touching the
//! terminal, so the output can be compared byte for byte in tests. [`main`]
//! writes the outcome and maps it to an exit code: `0` when every check
//! passes, `2` for usage errors, `3` when a check fails.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebraic::FieldSpec;
use crate::asymptotics::{
    estimate_constant, generating_function_coeffs, rational_string, recurrence, solve_all_roots,
    solve_real_root, truncated_decimal, DEFAULT_ROOT_CAP,
};
use crate::error::{Error, Result};
use crate::measure::{big_to_number, expand, SignedMeasure};
use crate::oddm;
use crate::sineprod;
use crate::tree::{self, PrunedTree, SeparationMode};
use crate::SCHEMA_VERSION;

/// Default number of decimal digits for `λ`.
pub const DEFAULT_PRECISION: u32 = 30;
/// Largest level the `verify` brute-force cross-check expands.
pub const DEFAULT_BRUTE_DEPTH: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "signed-bernoulli",
    version,
    about = "Exact signed Bernoulli convolutions for multinacci numbers"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Decimal digits for the characteristic root.
    #[arg(long, global = true, env = "SIGNED_BERNOULLI_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; the output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence table of a_n = 2^n ‖ν^(n)‖.
    Table {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 30)]
        max_n: usize,
    },
    /// Run every structural check and print a report.
    Verify {
        #[arg(long)]
        m: usize,
        /// Pruned-tree depth; defaults by m.
        #[arg(long)]
        depth: Option<usize>,
        /// Depth of the 2^n brute-force cross-check.
        #[arg(long, default_value_t = DEFAULT_BRUTE_DEPTH)]
        brute_depth: usize,
    },
    /// All roots of the characteristic polynomial.
    Roots {
        #[arg(long)]
        m: usize,
    },
    /// Taylor coefficients of the generating function.
    Gf {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 30)]
        max_n: usize,
    },
    /// Scan the sine product |F_n| and compare with ‖ν^(n)‖.
    Sineprod {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Upper end of the scan; defaults to min(10 β^n, 10^4).
        #[arg(long)]
        xi_max: Option<f64>,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        /// Emit every k-th grid point in CSV output.
        #[arg(long, default_value_t = 100)]
        stride: usize,
        /// Where to write the JSON summary in CSV mode; stderr otherwise.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Witness search, and for odd m the no-decay and parity checks.
    Oddm {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = oddm::DEFAULT_VERIFY_DEPTH)]
        max_n: usize,
    },
    /// The measure ν^(n) (or μ^(n)) with exact positions.
    Dump {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        unsigned: bool,
    },
    /// Survivors of the pruned tree, one per line, or DOT.
    DumpTree {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Primary output: stdout or `--out`.
    pub output: String,
    /// Secondary output, e.g. the `sineprod` summary in CSV mode.
    pub summary: Option<String>,
    pub passed: bool,
}

impl Outcome {
    fn pass(output: String) -> Self {
        Outcome {
            output,
            summary: None,
            passed: true,
        }
    }
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Versioned {
        schema_version: SCHEMA_VERSION,
        body,
    })
    .expect("report serializes");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn require_even(m: usize) -> Result<()> {
    if m % 2 == 1 {
        return Err(Error::OddDegree(m));
    }
    Ok(())
}

/// Runs a command inside a pool of `--jobs` workers.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match cli.global.jobs {
        Some(0) => Err(Error::InvalidParameter("--jobs must be positive".into())),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Table { m, max_n } => table(*m, *max_n, g),
        Command::Verify {
            m,
            depth,
            brute_depth,
        } => {
            require_even(*m)?;
            let spec = FieldSpec::new(*m)?;
            let depth = depth.unwrap_or_else(|| tree::default_depth(*m));
            let report = verify(&spec, depth, *brute_depth, g.seed, g.precision)?;
            Ok(Outcome {
                passed: report.passed,
                output: to_json(&report),
                summary: None,
            })
        }
        Command::Roots { m } => roots(*m, g),
        Command::Gf { m, max_n } => gf(*m, *max_n, g),
        Command::Sineprod {
            m,
            n,
            xi_max,
            samples,
            stride,
            ..
        } => sine_products(*m, *n, *xi_max, *samples, *stride, g),
        Command::Oddm { m, max_n } => {
            let spec = FieldSpec::new(*m)?;
            let report = oddm::report(&spec, *max_n)?;
            Ok(Outcome {
                passed: report.passed(),
                output: to_json(&report),
                summary: None,
            })
        }
        Command::Dump { m, level, unsigned } => dump(*m, *level, *unsigned, g),
        Command::DumpTree { m, depth, dot } => {
            let spec = FieldSpec::new(*m)?;
            let depth = depth.unwrap_or_else(|| tree::default_depth(*m));
            let t = PrunedTree::build(&spec, depth)?;
            Ok(Outcome::pass(if *dot {
                t.to_dot(depth)
            } else {
                t.dump_lines()
            }))
        }
    }
}

fn table(m: usize, max_n: usize, g: &GlobalArgs) -> Result<Outcome> {
    let t = recurrence(m, max_n)?;
    let lambda = solve_real_root(m, g.precision)?;
    let mid = lambda.midpoint();
    let digits = g.precision.min(20);
    let mut power = BigRational::one();
    let mut rows = Vec::with_capacity(max_n + 1);
    for (n, a) in t.values().iter().enumerate() {
        let ratio = BigRational::from_integer(a.clone()) / &power;
        rows.push((
            n,
            a.clone(),
            rational_string(&t.normalized(n)),
            truncated_decimal(&ratio, digits),
        ));
        power *= &mid;
    }
    let output = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_string(
            &["schema_version", "n", "a_n", "a_n/2^n", "a_n*lambda^-n"],
            rows.into_iter().map(|(n, a, norm, ratio)| {
                vec![
                    SCHEMA_VERSION.to_string(),
                    n.to_string(),
                    a.to_string(),
                    norm,
                    ratio,
                ]
            }),
        ),
        Format::Json => to_json(json!({
            "m": m,
            "lambda": lambda,
            "rows": rows.into_iter().map(|(n, a, norm, ratio)| json!({
                "n": n,
                "a_n": big_to_number(&a),
                "a_n/2^n": norm,
                "a_n*lambda^-n": ratio,
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::pass(output))
}

fn roots(m: usize, g: &GlobalArgs) -> Result<Outcome> {
    let report = crate::asymptotics::solve_all_roots_with(m, DEFAULT_ROOT_CAP, g.precision)?;
    let passed = report.passed(1e-10);
    let output = match g.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => csv_string(
            &["schema_version", "index", "re", "im", "modulus", "residual"],
            std::iter::once(&report.real_root)
                .chain(&report.complex_roots)
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        SCHEMA_VERSION.to_string(),
                        i.to_string(),
                        r.re.to_string(),
                        r.im.to_string(),
                        r.modulus.to_string(),
                        r.residual.to_string(),
                    ]
                }),
        ),
    };
    Ok(Outcome {
        output,
        summary: None,
        passed,
    })
}

fn gf(m: usize, max_n: usize, g: &GlobalArgs) -> Result<Outcome> {
    let coeffs = generating_function_coeffs(m, max_n)?;
    let table = recurrence(m, max_n)?;
    let matches: Vec<bool> = coeffs
        .iter()
        .zip(table.values())
        .map(|(c, a)| c == a)
        .collect();
    let passed = matches.iter().all(|&b| b);
    let output = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_string(
            &["schema_version", "n", "coefficient", "matches_recurrence"],
            coeffs.iter().zip(&matches).enumerate().map(|(n, (c, ok))| {
                vec![
                    SCHEMA_VERSION.to_string(),
                    n.to_string(),
                    c.to_string(),
                    ok.to_string(),
                ]
            }),
        ),
        Format::Json => to_json(json!({
            "m": m,
            "coefficients": coeffs.iter().map(big_to_number).collect::<Vec<_>>(),
            "matches_recurrence": passed,
        })),
    };
    Ok(Outcome {
        output,
        summary: None,
        passed,
    })
}

fn sine_products(
    m: usize,
    n: usize,
    xi_max: Option<f64>,
    samples: usize,
    stride: usize,
    g: &GlobalArgs,
) -> Result<Outcome> {
    let spec = FieldSpec::new(m)?;
    let xi_max = xi_max.unwrap_or_else(|| sineprod::default_xi_max(&spec, n));
    let scan = sineprod::scan(&spec, n, xi_max, samples)?;
    let summary = to_json(&scan);
    Ok(match g.format.unwrap_or(Format::Csv) {
        Format::Json => Outcome::pass(summary),
        Format::Csv => {
            let grid = sineprod::sample_grid(&spec, n, xi_max, samples, stride)?;
            Outcome {
                output: csv_string(
                    &["schema_version", "xi", "F_n"],
                    grid.into_iter().map(|(xi, v)| {
                        vec![SCHEMA_VERSION.to_string(), xi.to_string(), v.to_string()]
                    }),
                ),
                summary: Some(summary),
                passed: true,
            }
        }
    })
}

fn dump(m: usize, level: usize, unsigned: bool, g: &GlobalArgs) -> Result<Outcome> {
    let spec = FieldSpec::new(m)?;
    let measure = if unsigned {
        SignedMeasure::unsigned(&spec, level)?
    } else {
        SignedMeasure::signed(&spec, level)?
    };
    let output = match g.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = measure.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let beta = spec.beta_f64();
            let shrink = beta.powi(-(level as i32));
            csv_string(
                &[
                    "schema_version",
                    "index",
                    "coeffs",
                    "numerator",
                    "weight",
                    "position",
                ],
                measure.atoms().iter().enumerate().map(|(i, a)| {
                    let coeffs: Vec<String> =
                        a.position.coeffs().iter().map(BigInt::to_string).collect();
                    vec![
                        SCHEMA_VERSION.to_string(),
                        i.to_string(),
                        coeffs.join(" "),
                        a.numerator.to_string(),
                        rational_string(&BigRational::new(
                            a.numerator.clone(),
                            BigInt::one() << level,
                        )),
                        (a.position.eval_f64(beta) * shrink).to_string(),
                    ]
                }),
            )
        }
    };
    Ok(Outcome::pass(output))
}

/// One named entry of a [`VerifyReport`].
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub report: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub m: usize,
    pub depth: usize,
    pub brute_force_depth: usize,
    pub seed: u64,
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn entry(name: &str, passed: bool, report: impl Serialize) -> CheckEntry {
    CheckEntry {
        name: name.into(),
        passed,
        report: serde_json::to_value(report).expect("report serializes"),
    }
}

/// Budget of level-`(n + k)` nodes up to which separation runs exhaustively.
const SEPARATION_BUDGET: usize = 4096;

/// Every check for an even `m`: recurrence against the merged measures, the
/// brute-force expansion and the generating function; the pruned-tree
/// structure up to `depth`; roots and the constant bracket.
pub fn verify(
    spec: &FieldSpec,
    depth: usize,
    brute_depth: usize,
    seed: u64,
    precision: u32,
) -> Result<VerifyReport> {
    let m = spec.m();
    require_even(m)?;
    if depth < m + 1 {
        return Err(Error::InvalidParameter(format!(
            "depth {depth} must be at least m + 1 = {}",
            m + 1
        )));
    }
    let brute_depth = brute_depth.min(depth);
    let tree = PrunedTree::build(spec, depth)?;
    let table = recurrence(m, depth.max(200))?;
    let mut checks = Vec::new();

    // a_n three ways
    let rows: Vec<Value> = (0..=depth)
        .map(|n| {
            let a = &table.values()[n];
            let merged = tree.measure(n).abs_numerator_sum();
            let survivors = tree.level(n).len();
            json!({
                "n": n,
                "a_n": big_to_number(a),
                "measure": big_to_number(&merged),
                "survivors": survivors,
                "passed": &merged == a && BigInt::from(survivors) == *a,
            })
        })
        .collect();
    let ok = rows.iter().all(|r| r["passed"] == true);
    checks.push(entry("recurrence_vs_measure", ok, rows));

    let mut rows = Vec::new();
    for n in 0..=brute_depth {
        let brute = expand(spec, n, true)?;
        let a = &table.values()[n];
        rows.push(json!({
            "n": n,
            "a_n": big_to_number(a),
            "brute_force": big_to_number(&brute.abs_numerator_sum()),
            "passed": brute.abs_numerator_sum() == *a && &brute == tree.measure(n),
        }));
    }
    let ok = rows.iter().all(|r| r["passed"] == true);
    checks.push(entry("recurrence_vs_brute_force", ok, rows));

    let gf = generating_function_coeffs(m, table.n_max())?;
    let ok = gf == table.values();
    checks.push(entry(
        "generating_function",
        ok,
        json!({ "n_max": table.n_max(), "matches": ok }),
    ));

    let first = tree::check_first_pruning(&tree);
    checks.push(entry("first_pruning", first.passed, &first));

    let iso: Vec<_> = (0..=depth)
        .map(|n| tree::check_isomorphism(spec, tree.level(n), tree.measure(n)))
        .collect();
    checks.push(entry("isomorphism", iso.iter().all(|r| r.passed), &iso));

    let leafless: Vec<_> = (0..depth)
        .map(|n| tree::check_leafless(tree.level(n), tree.level(n + 1)))
        .collect();
    checks.push(entry(
        "leafless",
        leafless.iter().all(|r| r.passed),
        &leafless,
    ));

    let diamonds = (1..depth)
        .map(|n| tree::check_diamond(&tree, n))
        .collect::<Result<Vec<_>>>()?;
    checks.push(entry(
        "diamond",
        diamonds.iter().all(|r| r.passed),
        &diamonds,
    ));

    let mut separation = Vec::new();
    for k in 1..=m + 1 {
        for n in 1..=depth.saturating_sub(k) {
            let mode =
                SeparationMode::within_budget(tree.level(n + k).len(), SEPARATION_BUDGET, seed);
            separation.push(tree::check_separation(&tree, n, k, mode)?);
        }
    }
    checks.push(entry(
        "separation",
        separation.iter().all(|r| r.passed),
        &separation,
    ));

    let ineq = [
        tree::check_first_collision_inequality(spec),
        tree::check_tail_gap(spec),
    ];
    checks.push(entry("inequalities", ineq.iter().all(|r| r.passed), &ineq));

    if m <= DEFAULT_ROOT_CAP {
        let roots = solve_all_roots(m)?;
        checks.push(entry("root_dominance", roots.passed(1e-10), &roots));
    }

    let lambda = solve_real_root(m, precision)?;
    let n_c = 80.max(40 * m);
    let constant = match estimate_constant(&recurrence(m, n_c)?, &lambda) {
        Ok(r) => entry("constant_bracket", true, &r),
        Err(e) => entry("constant_bracket", false, json!({ "error": e.to_string() })),
    };
    checks.push(constant);

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        m,
        depth,
        brute_force_depth: brute_depth,
        seed,
        checks,
        passed,
    })
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::DegreeTooSmall(_)
            | Error::OddDegree(_)
            | Error::EvenDegree(_)
            | Error::InvalidParameter(_)
            | Error::NotCertifiedIrreducible(_)
            | Error::PrecisionUnachievable(_)
    )
}

/// Exit code for a failed [`run`].
pub fn error_exit_code(e: &Error) -> u8 {
    if is_usage_error(e) {
        2
    } else {
        3
    }
}

fn error_report(e: &Error) -> String {
    to_json(json!({ "error": e.to_string(), "detail": format!("{e:?}") }))
}

fn write_primary(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.global.out {
        Some(path) => fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

/// Runs the command and writes its output.
pub fn main(cli: Cli) -> ExitCode {
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = write_primary(&cli, &outcome.output) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if let Some(summary) = &outcome.summary {
                let target = match &cli.command {
                    Command::Sineprod {
                        summary: Some(p), ..
                    } => Some(p),
                    _ => None,
                };
                match target {
                    Some(path) => {
                        if let Err(e) = fs::write(path, summary) {
                            eprintln!("error: {e}");
                            return ExitCode::from(1);
                        }
                    }
                    None => eprint!("{summary}"),
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            let code = error_exit_code(&e);
            if code == 2 {
                eprintln!("usage error: {e}");
            }
            eprint!("{}", error_report(&e));
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let cli =
            Cli::try_parse_from(std::iter::once("signed-bernoulli").chain(args.iter().copied()))
                .expect("arguments parse");
        run(&cli)
    }

    #[test]
    fn table_csv() {
        let out = run_args(&["table", "--m", "2", "--max-n", "10", "--format", "csv"]).unwrap();
        let mut lines = out.output.lines();
        assert_eq!(
            lines.next(),
            Some("schema_version,n,a_n,a_n/2^n,a_n*lambda^-n")
        );
        let a: Vec<&str> = lines.map(|l| l.split(',').nth(2).unwrap()).collect();
        assert_eq!(
            a,
            ["1", "2", "4", "6", "8", "12", "20", "32", "48", "72", "112"]
        );
        assert!(out.output.contains(",112,7/64,"));
    }

    #[test]
    fn roots_json() {
        let out = run_args(&["roots", "--m", "2", "--precision", "12"]).unwrap();
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert!(v["lambda_decimal"]
            .as_str()
            .unwrap()
            .starts_with("1.543689"));
        assert!(v["lambda_half_decimal"]
            .as_str()
            .unwrap()
            .starts_with("0.771844"));
        assert!(out.passed);
    }

    #[test]
    fn even_only_commands_reject_odd_m() {
        for cmd in ["table", "verify", "roots", "gf"] {
            let err = run_args(&[cmd, "--m", "3"]).unwrap_err();
            assert_eq!(error_exit_code(&err), 2, "{cmd}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(error_exit_code(&Error::OddDegree(3)), 2);
        assert_eq!(error_exit_code(&Error::InvalidParameter("x".into())), 2);
        let violated = Error::BoundViolated {
            n: 4,
            max_abs: 0.5,
            bound: "1/4".into(),
        };
        assert_eq!(error_exit_code(&violated), 3);
        assert!(error_report(&violated).contains("\"schema_version\": 1"));
    }

    #[test]
    fn verify_small() {
        let out = run_args(&["verify", "--m", "2", "--depth", "8", "--brute-depth", "8"]).unwrap();
        assert!(out.passed, "{}", out.output);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 11);
    }

    #[test]
    fn oddm_reports() {
        let odd = run_args(&["oddm", "--m", "3", "--max-n", "8"]).unwrap();
        assert!(odd.passed);
        assert!(odd.output.contains("\"witness\": null"));
        let even = run_args(&["oddm", "--m", "2", "--max-n", "4"]).unwrap();
        assert!(even.passed);
    }

    #[test]
    fn dump_and_dump_tree() {
        let d = run_args(&["dump", "--m", "2", "--level", "2"]).unwrap();
        let v: Value = serde_json::from_str(&d.output).unwrap();
        assert_eq!(v["level"], 2);
        let t = run_args(&["dump-tree", "--m", "2", "--depth", "3"]).unwrap();
        assert!(t.output.starts_with("0 \n1 -\n1 +\n"));
        assert_eq!(t.output.lines().filter(|l| l.starts_with("3 ")).count(), 6);
        assert!(!t.output.contains("3 -++\n") && !t.output.contains("3 +--\n"));
        let dot = run_args(&["dump-tree", "--m", "2", "--depth", "2", "--dot"]).unwrap();
        assert!(dot.output.starts_with("digraph"));
    }

    #[test]
    fn sineprod_csv_and_summary() {
        let out = run_args(&[
            "sineprod",
            "--m",
            "2",
            "--n",
            "6",
            "--samples",
            "1001",
            "--stride",
            "100",
        ])
        .unwrap();
        assert_eq!(out.output.lines().count(), 1 + 11);
        let summary: Value = serde_json::from_str(out.summary.as_deref().unwrap()).unwrap();
        assert_eq!(summary["bound"], "5/16");
    }

    #[test]
    fn jobs_do_not_change_output() {
        let a = run_args(&[
            "--jobs",
            "1",
            "sineprod",
            "--m",
            "2",
            "--n",
            "8",
            "--samples",
            "20000",
            "--format",
            "json",
        ])
        .unwrap();
        let b = run_args(&[
            "--jobs",
            "3",
            "sineprod",
            "--m",
            "2",
            "--n",
            "8",
            "--samples",
            "20000",
            "--format",
            "json",
        ])
        .unwrap();
        assert_eq!(a, b);
        assert!(run_args(&["--jobs", "0", "roots", "--m", "2"]).is_err());
    }
}
