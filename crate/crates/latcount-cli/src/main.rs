//! Command-line front end for the lattice-counting engine.
//!
//! Output is a pure function of the arguments: rationals print as exact
//! `p/q` strings, polynomial coefficients ascend from the constant term,
//! and JSON map keys are sorted. Exit codes: 0 success, 1 computation or
//! verification failure, 2 usage error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use latcount::algebra::poly::QPoly;
use latcount::counting::{
    count_closed_simplex, count_denumerant, count_hpolytope, count_open_simplex, HPolytopeSpec,
    SimplexSpec,
};
use latcount::dedekind::{dedekind_direct, dedekind_fast, dedekind_root_identity};
use latcount::ehrhart::{
    codim2_closed_form, coefficient_from_residues, ehrhart_closed_residue, hpolytope_count_series,
};
use latcount::verify::{run_suite, Suite, SuiteConfig, SuiteReport};
use latcount::{lagrange_interpolate, rat, rat_u128, Rational};

#[derive(Parser)]
#[command(
    name = "latcount",
    version,
    about = "Exact lattice-point counts of axis simplices and H-polytopes via residue calculus",
    long_about = None,
    after_help = "Rationals print as exact p/q strings (p when the denominator is 1); polynomial \
                  coefficient lists ascend from the constant term. Output is deterministic: \
                  identical invocations produce byte-identical output."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed and interior count polynomials of an axis simplex, plus the
    /// residue breakdown that produced them
    Ehrhart(EhrhartArgs),
    /// Brute-force lattice-point counts of an axis simplex
    Count(CountArgs),
    /// Dedekind sum s(a, b)
    Dedekind(DedekindArgs),
    /// One coefficient of the closed count polynomial, by a chosen route
    Coeff(CoeffArgs),
    /// Lattice-point count of an H-polytope
    Polytope(PolytopeArgs),
    /// Run an identity-verification suite and report per-case results
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FormatArgs {
    /// Emit JSON (keys sorted, rationals as strings)
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV rows
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct EhrhartArgs {
    /// Leg lengths, comma separated, e.g. 2,3,5
    #[arg(long, value_parser = parse_legs)]
    legs: Legs,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Closed,
    Open,
    Denumerant,
}

#[derive(Args)]
struct CountArgs {
    /// Leg lengths, comma separated
    #[arg(long, value_parser = parse_legs)]
    legs: Legs,
    /// Dilation factor
    #[arg(long)]
    t: u32,
    #[arg(long, value_enum, default_value = "closed")]
    kind: CountKind,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum DedekindMethod {
    Fast,
    Direct,
    RootIdentity,
}

#[derive(Args)]
struct DedekindArgs {
    /// First argument (any integer coprime to b)
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    /// Modulus (positive integer)
    #[arg(long)]
    b: u64,
    #[arg(long, value_enum, default_value = "fast")]
    method: DedekindMethod,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffMethod {
    /// Power-numerator residue extraction
    Residue,
    /// Dedekind-sum closed form (codimension 2 only)
    ClosedForm,
    /// Interpolation of brute-force counts
    Interpolate,
}

#[derive(Args)]
struct CoeffArgs {
    /// Leg lengths, comma separated
    #[arg(long, value_parser = parse_legs)]
    legs: Legs,
    /// Coefficient index m (of t^m)
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value = "residue")]
    method: CoeffMethod,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolytopeMethod {
    /// Constant-term extraction from the multivariate generating function
    Series,
    /// Bounding-box enumeration
    Enumerate,
}

#[derive(Args)]
struct PolytopeArgs {
    /// Constraint rows, semicolon separated, entries comma separated,
    /// e.g. 2,1;1,2
    #[arg(long, value_parser = parse_rows)]
    rows: Rows,
    /// Dilation factor
    #[arg(long)]
    t: u32,
    #[arg(long, value_enum, default_value = "series")]
    method: PolytopeMethod,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id: oracle, reciprocity, lemma4, theorem7, theorem8,
    /// dedekind-identities, or all
    #[arg(long)]
    suite: String,
    /// Largest simplex dimension for generated families
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Largest leg length for generated families
    #[arg(long, default_value_t = 5)]
    max_a: u64,
    /// Skip simplices whose leg product exceeds this
    #[arg(long, default_value_t = 2000)]
    max_product: u128,
    /// Seed for the randomized cases
    #[arg(long, default_value_t = 0x1a7c0547)]
    seed: u64,
    /// Worker threads for independent cases
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Clone)]
struct Legs(Vec<u64>);

#[derive(Clone)]
struct Rows(Vec<Vec<u64>>);

fn parse_legs(s: &str) -> Result<Legs, String> {
    let legs: Result<Vec<u64>, _> = s.split(',').map(|p| p.trim().parse::<u64>()).collect();
    let legs = legs.map_err(|e| format!("leg list must be comma-separated integers: {e}"))?;
    if legs.is_empty() {
        return Err("leg list must be nonempty".to_string());
    }
    Ok(Legs(legs))
}

fn parse_rows(s: &str) -> Result<Rows, String> {
    let rows: Result<Vec<Vec<u64>>, String> = s.split(';').map(|row| Ok(parse_legs(row)?.0)).collect();
    Ok(Rows(rows?))
}

/// Exact coefficient strings, ascending; the zero polynomial prints as ["0"].
fn poly_strings(p: &QPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn csv_row(fields: &[String]) -> String {
    fields.join(",")
}

#[derive(Serialize)]
struct EhrhartReport {
    a: Vec<u64>,
    closed: Vec<String>,
    open: Vec<String>,
    residue_at_one: Vec<String>,
    roots: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
struct CountReport {
    a: Vec<u64>,
    t: u32,
    kind: String,
    count: u64,
}

#[derive(Serialize)]
struct ValueReport<T: Serialize> {
    #[serde(flatten)]
    input: T,
    value: String,
}

#[derive(Serialize)]
struct DedekindInput {
    a: i64,
    b: u64,
    method: String,
}

#[derive(Serialize)]
struct CoeffInput {
    a: Vec<u64>,
    m: usize,
    method: String,
}

#[derive(Serialize)]
struct PolytopeReport {
    rows: Vec<Vec<u64>>,
    t: u32,
    method: String,
    count: u64,
}

#[derive(Serialize)]
struct VerifyCase {
    name: String,
    pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    suite: String,
    cases: Vec<VerifyCase>,
    passed: usize,
    failed: usize,
}

fn main() -> ExitCode {
    // behave like a normal unix filter when the read end of a pipe closes
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> latcount::Result<ExitCode> {
    match command {
        Command::Ehrhart(args) => cmd_ehrhart(args),
        Command::Count(args) => cmd_count(args),
        Command::Dedekind(args) => cmd_dedekind(args),
        Command::Coeff(args) => cmd_coeff(args),
        Command::Polytope(args) => cmd_polytope(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// The residue engine factors the leg product over u64; reject inputs past
/// that before they reach an internal assertion.
fn residue_scale_guard(simplex: &SimplexSpec) -> latcount::Result<()> {
    if simplex.leg_product() > u64::MAX as u128 {
        return Err(latcount::Error::ProductOverflow);
    }
    Ok(())
}

fn cmd_ehrhart(args: EhrhartArgs) -> latcount::Result<ExitCode> {
    let simplex = SimplexSpec::new(args.legs.0)?;
    residue_scale_guard(&simplex)?;
    let (polynomial, breakdown) = ehrhart_closed_residue(&simplex)?;
    let report = EhrhartReport {
        a: simplex.legs().to_vec(),
        closed: poly_strings(&polynomial.closed),
        open: poly_strings(&polynomial.open),
        residue_at_one: poly_strings(&breakdown.at_one),
        roots: breakdown
            .at_roots
            .iter()
            .map(|(d, p)| (d.to_string(), poly_strings(p)))
            .collect(),
    };
    if args.format.json {
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    } else if args.format.csv {
        println!("{}", csv_row(&["field".into(), "coefficients ascending".into()]));
        let legs: Vec<String> = report.a.iter().map(|x| x.to_string()).collect();
        println!("{}", csv_row(&[vec!["a".to_string()], legs].concat()));
        for (label, coeffs) in [
            ("closed", &report.closed),
            ("open", &report.open),
            ("residue_at_one", &report.residue_at_one),
        ] {
            println!("{}", csv_row(&[vec![label.to_string()], coeffs.clone()].concat()));
        }
        for (d, coeffs) in &report.roots {
            println!("{}", csv_row(&[vec![format!("root_order_{d}")], coeffs.clone()].concat()));
        }
    } else {
        println!("a = ({})", join_u64(simplex.legs()));
        println!("closed   = {}", polynomial.closed.display_t());
        println!("open     = {}", polynomial.open.display_t());
        println!("res(z=1) = {}", breakdown.at_one.display_t());
        if breakdown.at_roots.is_empty() {
            println!("root orbit sums: none");
        } else {
            for (d, p) in &breakdown.at_roots {
                println!("root orbit sum (order {d}) = {}", p.display_t());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_count(args: CountArgs) -> latcount::Result<ExitCode> {
    let simplex = SimplexSpec::new(args.legs.0)?;
    let (kind, count) = match args.kind {
        CountKind::Closed => ("closed", count_closed_simplex(&simplex, args.t)?),
        CountKind::Open => ("open", count_open_simplex(&simplex, args.t)?),
        CountKind::Denumerant => ("denumerant", count_denumerant(&simplex, args.t)?),
    };
    let report = CountReport {
        a: simplex.legs().to_vec(),
        t: args.t,
        kind: kind.to_string(),
        count,
    };
    if args.format.json {
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    } else if args.format.csv {
        println!("a,t,kind,count");
        println!(
            "{}",
            csv_row(&[
                join_u64(simplex.legs()).replace(',', " "),
                args.t.to_string(),
                kind.to_string(),
                count.to_string(),
            ])
        );
    } else {
        println!("{count}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dedekind(args: DedekindArgs) -> latcount::Result<ExitCode> {
    let (method, value) = match args.method {
        DedekindMethod::Fast => ("fast", dedekind_fast(args.a, args.b)?),
        DedekindMethod::Direct => ("direct", dedekind_direct(args.a, args.b)?),
        DedekindMethod::RootIdentity => ("root-identity", dedekind_root_identity(args.a, args.b)?),
    };
    emit_value(
        &args.format,
        ValueReport {
            input: DedekindInput {
                a: args.a,
                b: args.b,
                method: method.to_string(),
            },
            value: value.to_string(),
        },
        &["a", "b", "method", "value"],
        &[args.a.to_string(), args.b.to_string(), method.to_string(), value.to_string()],
    );
    Ok(ExitCode::SUCCESS)
}

fn interpolated_coefficient(simplex: &SimplexSpec, m: usize) -> latcount::Result<Rational> {
    let points: latcount::Result<Vec<(Rational, Rational)>> = (0..=simplex.dim() as u32)
        .map(|t| Ok((rat(t as i64), rat_u128(count_closed_simplex(simplex, t)? as u128))))
        .collect();
    Ok(lagrange_interpolate(&points?)?.coeff(m))
}

fn cmd_coeff(args: CoeffArgs) -> latcount::Result<ExitCode> {
    let simplex = SimplexSpec::new(args.legs.0)?;
    let (method, value) = match args.method {
        CoeffMethod::Residue => {
            residue_scale_guard(&simplex)?;
            ("residue", coefficient_from_residues(&simplex, args.m)?)
        }
        CoeffMethod::ClosedForm => {
            if args.m + 2 != simplex.dim() {
                return Err(latcount::Error::ClosedFormIndexMismatch {
                    m: args.m,
                    expected: simplex.dim().saturating_sub(2),
                });
            }
            ("closed-form", codim2_closed_form(&simplex)?)
        }
        CoeffMethod::Interpolate => ("interpolate", interpolated_coefficient(&simplex, args.m)?),
    };
    emit_value(
        &args.format,
        ValueReport {
            input: CoeffInput {
                a: simplex.legs().to_vec(),
                m: args.m,
                method: method.to_string(),
            },
            value: value.to_string(),
        },
        &["a", "m", "method", "value"],
        &[
            join_u64(simplex.legs()).replace(',', " "),
            args.m.to_string(),
            method.to_string(),
            value.to_string(),
        ],
    );
    Ok(ExitCode::SUCCESS)
}

fn emit_value<T: Serialize>(
    format: &FormatArgs,
    report: ValueReport<T>,
    csv_header: &[&str],
    csv_fields: &[String],
) {
    if format.json {
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    } else if format.csv {
        println!("{}", csv_header.join(","));
        println!("{}", csv_fields.join(","));
    } else {
        println!("{}", report.value);
    }
}

fn cmd_polytope(args: PolytopeArgs) -> latcount::Result<ExitCode> {
    let polytope = HPolytopeSpec::new(args.rows.0)?;
    let (method, count) = match args.method {
        PolytopeMethod::Series => ("series", hpolytope_count_series(&polytope, args.t)?),
        PolytopeMethod::Enumerate => ("enumerate", count_hpolytope(&polytope, args.t)?),
    };
    let report = PolytopeReport {
        rows: polytope.entries().to_vec(),
        t: args.t,
        method: method.to_string(),
        count,
    };
    if args.format.json {
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    } else if args.format.csv {
        println!("rows,t,method,count");
        let rows: Vec<String> = report
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        println!(
            "{}",
            csv_row(&[rows.join(";"), args.t.to_string(), method.to_string(), count.to_string()])
        );
    } else {
        println!("{count}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> latcount::Result<ExitCode> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::all().to_vec()
    } else {
        match Suite::from_id(&args.suite) {
            Some(s) => vec![s],
            None => {
                eprintln!(
                    "error: unknown suite '{}'; expected one of oracle, reciprocity, lemma4, \
                     theorem7, theorem8, dedekind-identities, all",
                    args.suite
                );
                return Ok(ExitCode::from(2));
            }
        }
    };
    let cfg = SuiteConfig {
        max_n: args.max_n,
        max_a: args.max_a,
        max_product: args.max_product,
        seed: args.seed,
        threads: args.threads,
    };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| run_suite(s, &cfg)).collect();
    let mut all_passed = true;
    if args.format.json {
        for report in &reports {
            let (passed, failed) = report.counts();
            all_passed &= failed == 0;
            let out = VerifyReport {
                suite: report.suite.to_string(),
                cases: report
                    .checks
                    .iter()
                    .map(|c| VerifyCase {
                        name: c.name.clone(),
                        pass: c.passed,
                        detail: c.detail.clone(),
                    })
                    .collect(),
                passed,
                failed,
            };
            println!("{}", serde_json::to_string(&out).expect("serializable"));
        }
    } else if args.format.csv {
        println!("suite,case,result,detail");
        for report in &reports {
            let (_, failed) = report.counts();
            all_passed &= failed == 0;
            for c in &report.checks {
                println!(
                    "{}",
                    csv_row(&[
                        report.suite.to_string(),
                        c.name.replace(',', ";"),
                        if c.passed { "PASS" } else { "FAIL" }.to_string(),
                        c.detail.replace(',', ";"),
                    ])
                );
            }
        }
    } else {
        for report in &reports {
            for c in &report.checks {
                if c.passed {
                    println!("PASS {} {}", report.suite, c.name);
                } else {
                    println!("FAIL {} {}: {}", report.suite, c.name, c.detail);
                }
            }
            let (passed, failed) = report.counts();
            all_passed &= failed == 0;
            println!("suite {}: {} passed, {} failed", report.suite, passed, failed);
        }
    }
    Ok(ExitCode::from(if all_passed { 0 } else { 1 }))
}
