mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermit_core::bounds::{
    classical_distance, redundancy_table, search_sequences, BoundMethod, CosetBoundSequence, DistanceSource,
    RedundancyMode, SequenceKind,
};
use hermit_core::code::{classical_checks, classical_code, designed_code, CheckDiagram, LinearCode};
use hermit_core::field::{prime_power, SUPPORTED_Q};
use hermit_core::oracle::{weight_distribution_exhaustive, weight_distribution_via_dual, DEFAULT_BUDGET};
use hermit_core::{Curve, HermitError, Hermitian};
use serde_json::json;

use render::Format;

/// Budget used by `verify --extended` when none is given.
const EXTENDED_BUDGET: u128 = 1 << 33;

#[derive(Parser)]
#[command(
    name = "hermit",
    version,
    about = "One- and two-point Hermitian codes and their Feng-Rao improvements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coset minimum-weight bounds along a divisor sequence.
    CosetBounds(CosetBoundsArgs),
    /// Optimal redundancies of the four constructions per designed distance.
    Redundancy(RedundancyArgs),
    /// Compare the iP + Q sequence against every monotone P/Q sequence.
    Search(SearchArgs),
    /// Write the check matrix and check diagram of a code.
    Build(BuildArgs),
    /// Check a code's distance claim by enumeration.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CosetBoundsArgs {
    #[arg(long)]
    q: i64,
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_enum, default_value_t = Method::Simple)]
    method: Method,
    /// Last step; defaults to q(q+1) + 2.
    #[arg(long, allow_hyphen_values = true)]
    i_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RedundancyArgs {
    #[arg(long)]
    q: i64,
    #[arg(long)]
    delta_min: Option<i64>,
    #[arg(long)]
    delta_max: Option<i64>,
    /// Distance between consecutive designed distances; 2 for q = 8, else 1.
    #[arg(long)]
    delta_step: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: i64,
    /// Largest designed distance; defaults to q^2.
    #[arg(long)]
    delta_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, value_enum)]
    construction: Construction,
    /// Evaluation degree of a classical code `C_L(D, aP)` or `C_L(D, aP - 2Q)`.
    #[arg(long, conflicts_with = "delta")]
    a: Option<i64>,
    /// Designed distance.
    #[arg(long)]
    delta: Option<i64>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum)]
    oracle: Oracle,
    /// Maximum number of enumerated vectors.
    #[arg(long, env = "HERMIT_BUDGET")]
    budget: Option<u128>,
    /// Allow long enumerations (budget 2^33 unless given).
    #[arg(long)]
    extended: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Onepoint,
    Twopoint,
}

impl From<Kind> for SequenceKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Onepoint => SequenceKind::OnePoint,
            Kind::Twopoint => SequenceKind::TwoPoint,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Simple,
    Improved,
}

impl From<Method> for BoundMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Simple => BoundMethod::Simple,
            Method::Improved => BoundMethod::Improved,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    OnepointClassical,
    OnepointImproved,
    TwopointClassical,
    TwopointImproved,
}

impl Construction {
    fn kind(self) -> SequenceKind {
        match self {
            Construction::OnepointClassical | Construction::OnepointImproved => SequenceKind::OnePoint,
            _ => SequenceKind::TwoPoint,
        }
    }

    fn mode(self) -> RedundancyMode {
        match self {
            Construction::OnepointClassical | Construction::TwopointClassical => RedundancyMode::Classical,
            _ => RedundancyMode::Improved,
        }
    }

    fn name(self) -> String {
        let mode = match self.mode() {
            RedundancyMode::Classical => "classical",
            RedundancyMode::Improved => "improved",
        };
        format!("{}-{mode}", self.kind().name())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Exhaustive,
    Macwilliams,
}

enum Failure {
    Usage(String),
    Budget { needed: u128, budget: u128 },
    Claims,
    Internal(anyhow::Error),
}

impl From<HermitError> for Failure {
    fn from(e: HermitError) -> Self {
        match e {
            HermitError::BudgetExceeded { needed, budget } => Failure::Budget { needed, budget },
            HermitError::UnsupportedQ(_)
            | HermitError::OutOfRange(_)
            | HermitError::VacuousCode { .. }
            | HermitError::HorizonTooSmall(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, result) = match cli.command {
        Command::CosetBounds(a) => ("coset-bounds", coset_bounds(a)),
        Command::Redundancy(a) => ("redundancy", redundancy(a)),
        Command::Search(a) => ("search", search(a)),
        Command::Build(a) => ("build", build(a)),
        Command::Verify(a) => ("verify", verify(a)),
    };
    eprintln!("{name}: {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget { needed, budget }) => {
            if needed == u128::MAX {
                eprintln!("budget exceeded: enumeration needs more than 2^128 vectors, budget is {budget}");
            } else {
                eprintln!("budget exceeded: enumeration needs {needed} vectors, budget is {budget}");
                eprintln!("rerun with --budget {needed} (or HERMIT_BUDGET={needed})");
            }
            ExitCode::from(3)
        }
        Err(Failure::Claims) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Curves exist over every prime power; the bound formulas need nothing more.
fn formula_curve(q: i64) -> Result<Hermitian, Failure> {
    let ok = u32::try_from(q).ok().and_then(prime_power).is_some();
    if !ok {
        return Err(Failure::Usage(format!("q = {q} is not a prime power")));
    }
    Ok(Hermitian::new(q)?)
}

fn field_curve(q: u32) -> Result<Curve, Failure> {
    if !SUPPORTED_Q.contains(&q) {
        return Err(Failure::Usage(format!("q = {q} is not one of {SUPPORTED_Q:?}")));
    }
    Ok(Curve::new(q)?)
}

fn coset_bounds(args: CosetBoundsArgs) -> Outcome {
    let herm = formula_curve(args.q)?;
    let i_max = args.i_max.unwrap_or(args.q * (args.q + 1) + 2);
    if i_max < -1 {
        return Err(Failure::Usage(format!("--i-max {i_max} is below the first step -1")));
    }
    let seq = CosetBoundSequence::new(&herm, args.kind.into(), args.method.into(), i_max);
    print!("{}", render::coset_bounds(&seq, args.format)?);
    Ok(())
}

fn redundancy(args: RedundancyArgs) -> Outcome {
    let herm = formula_curve(args.q)?;
    let q = args.q;
    let (lo, hi, step) = match q {
        4 => (3, 11, 1),
        8 => (5, 31, 2),
        _ => (2, q * q, 1),
    };
    let lo = args.delta_min.unwrap_or(lo);
    let hi = args.delta_max.unwrap_or(hi);
    let step = args.delta_step.unwrap_or(step);
    if lo < 2 || hi < lo || step < 1 {
        return Err(Failure::Usage(format!(
            "need 2 <= delta-min <= delta-max and delta-step >= 1, got {lo}, {hi}, {step}"
        )));
    }
    let deltas = (lo..=hi).step_by(step as usize);
    let table = redundancy_table(&herm, deltas)?;
    print!("{}", render::redundancy(&table, args.format)?);
    Ok(())
}

fn search(args: SearchArgs) -> Outcome {
    let herm = formula_curve(args.q)?;
    let delta_max = args.delta_max.unwrap_or(args.q * args.q);
    if delta_max < 2 {
        return Err(Failure::Usage(format!("--delta-max {delta_max} must be at least 2")));
    }
    let result = search_sequences(delta_max, &herm)?;
    print!("{}", render::search(&result, args.format)?);
    Ok(())
}

/// The code named by the flags, with its check diagram.
fn make_code(curve: &Curve, args: &CodeArgs) -> Result<(LinearCode, CheckDiagram), Failure> {
    let kind = args.construction.kind();
    let method = match kind {
        SequenceKind::OnePoint => BoundMethod::Simple,
        SequenceKind::TwoPoint => BoundMethod::Improved,
    };
    match (args.construction.mode(), args.a, args.delta) {
        (RedundancyMode::Classical, Some(a), None) => Ok(classical_checks(curve, kind, a)?),
        (mode, None, Some(delta)) => Ok(designed_code(curve, kind, delta, method, mode)?),
        (RedundancyMode::Improved, Some(_), _) => Err(Failure::Usage(format!(
            "{} takes --delta, not --a",
            args.construction.name()
        ))),
        _ => Err(Failure::Usage(format!(
            "{} needs --a or --delta",
            args.construction.name()
        ))),
    }
}

fn build(args: BuildArgs) -> Outcome {
    let curve = field_curve(args.code.q)?;
    let (code, diagram) = make_code(&curve, &args.code)?;
    fs::create_dir_all(&args.out)?;
    let csv_path = args.out.join("checks.csv");
    let json_path = args.out.join("checks.json");
    fs::write(&csv_path, render::check_csv(&code))?;
    let doc = render::check_json(&code, &diagram);
    fs::write(&json_path, serde_json::to_string_pretty(&doc)? + "\n")?;
    println!(
        "{} q={}: n={} k={} r={}",
        code.provenance.construction,
        curve.q(),
        code.n,
        code.k,
        code.redundancy()
    );
    let removed: Vec<&str> = diagram.removed().map(|e| e.display.as_str()).collect();
    if !removed.is_empty() {
        println!("removed checks: {}", removed.join(" "));
    }
    if code.k == 0 {
        println!("{}", zero_code_note(&args.code));
    }
    println!("wrote {}", csv_path.display());
    println!("wrote {}", json_path.display());
    Ok(())
}

fn zero_code_note(args: &CodeArgs) -> String {
    match (args.construction.kind(), args.a) {
        (SequenceKind::OnePoint, Some(a)) => format!("zero code: L({a}P) has an empty basis"),
        (SequenceKind::TwoPoint, Some(a)) => format!("zero code: L({a}P - 2Q) has an empty basis"),
        _ => "zero code: every coordinate is checked".to_string(),
    }
}

fn verify(args: VerifyArgs) -> Outcome {
    let curve = field_curve(args.code.q)?;
    let (by_checks, diagram) = make_code(&curve, &args.code)?;
    let budget = args
        .budget
        .unwrap_or(if args.extended { EXTENDED_BUDGET } else { DEFAULT_BUDGET });
    // the evaluation form carries a generator, saving a null-space computation
    let code = match (args.code.construction.mode(), args.code.a) {
        (RedundancyMode::Classical, Some(a)) => classical_code(&curve, args.code.construction.kind(), a)?,
        _ => by_checks.clone(),
    };
    let (oracle, dist) = match args.oracle {
        Oracle::Exhaustive => ("exhaustive", weight_distribution_exhaustive(&code, budget)?),
        Oracle::Macwilliams => ("macwilliams", weight_distribution_via_dual(&code, budget)?),
    };
    let distance = dist.min_distance();
    let n = code.n as i64;
    let mut claims = Vec::new();
    if let Some(delta) = diagram.delta {
        claims.push(json!({
            "claim": "distance >= designed distance",
            "expected": delta,
            "actual": distance,
            "pass": distance.is_none_or(|d| d as i64 >= delta),
        }));
    }
    if let Some(a) = args.code.a {
        let pred = classical_distance(args.code.construction.kind(), a, curve.herm());
        let (expected, source) = match pred {
            Some(p) => (
                Some(p.distance),
                match p.source {
                    DistanceSource::Theorem(case) => {
                        format!("two-point distance formula, case {}", render::case_name(case))
                    }
                    DistanceSource::OrderBound => "order bound".to_string(),
                },
            ),
            None => (None, "zero code".to_string()),
        };
        let pass = match (distance, expected) {
            (Some(d), Some(e)) => d as i64 == e,
            (None, None) => true,
            (None, Some(e)) => e > n,
            (Some(_), None) => false,
        };
        claims.push(json!({
            "claim": format!("distance equals prediction ({source})"),
            "expected": expected,
            "actual": distance,
            "pass": pass,
        }));
    }
    if args.code.a.is_some() {
        claims.push(json!({
            "claim": "evaluation and check constructions have equal dimension",
            "expected": n - by_checks.redundancy() as i64,
            "actual": code.k,
            "pass": code.k == by_checks.k,
        }));
    }
    let all = claims.iter().all(|c| c["pass"] == true);
    let report = json!({
        "command": "verify",
        "parameters": {
            "q": args.code.q,
            "construction": args.code.construction.name(),
            "a": args.code.a,
            "delta": args.code.delta,
            "oracle": oracle,
            "budget": budget.to_string(),
        },
        "code": {
            "n": code.n,
            "k": code.k,
            "provenance": code.provenance,
        },
        "outputs": {
            "distance": distance,
            "weight_distribution": dist,
        },
        "claims": claims,
        "pass": all,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    if all {
        Ok(())
    } else {
        Err(Failure::Claims)
    }
}
