//! Argument surface and command dispatch.
//!
//! Exit codes: 0 — success and every check passed; 1 — a verification
//! failed (the report is still rendered, plus a JSON failure record);
//! 2 — usage or parse errors. All results go to standard out,
//! diagnostics to standard error.

use std::fmt;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use diffseq_core::diffalg::{DiffPoly, ExpDiffPoly};
use diffseq_core::integrals::{
    check_linearisation, combine, invariant, solution_jet, CombinationSpec, IntegralsError,
};
use diffseq_core::report::VerificationFailure;
use diffseq_core::sequence::{generate_member, Sequence};
use diffseq_core::singularity::{painleve_report, SingularityError};
use diffseq_core::symmetry::{
    check_symmetry, nonlocal_generator, second_member_point_symmetries, sl2_generators, Generator,
};
use serde_json::{json, Value};

use crate::json;
use crate::parse::{parse_poly_list, parse_rational, parse_rational_list};
use crate::render;
use crate::suites::{all_pass, run_suite, CheckRecord, Suite};

/// Default seed of the randomized suites; override with `--seed`.
pub const DEFAULT_SEED: u64 = 987654321;

/// Default bound on member indices; the environment variable
/// `DIFFSEQ_MAX_N` overrides it.
pub const DEFAULT_GUARD: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "diffseq",
    version,
    about = "Exact generation and verification toolkit for the Riccati differential sequence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Generate members of the sequence
    Gen(GenArgs),
    /// Generate members of the adjoint sequence
    Adjoint(GenArgs),
    /// Expand a combination of members and optionally check its linearisation
    Combine(CombineArgs),
    /// Singularity analysis of a member
    Painleve(PainleveArgs),
    /// List and verify the symmetries of a member
    Symmetries(SymmetriesArgs),
    /// Exponential invariants of a member
    Invariants(InvariantsArgs),
    /// Evaluate the closed-form solution at a point
    Solve(SolveArgs),
    /// Run an identity verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["n", "range"])))]
pub struct GenArgs {
    /// Member index
    #[arg(long)]
    pub n: Option<u32>,
    /// Inclusive range of indices, written A..B
    #[arg(long)]
    pub range: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CombineArgs {
    /// Coefficient polynomials f0;f1;..., semicolon separated
    #[arg(long)]
    pub coeffs: String,
    /// Verify the combination against (sum f_i P^(i+1))/P at y = P'/P
    #[arg(long, requires = "p")]
    pub check_linearisation: bool,
    /// Solution polynomial P for the linearisation check
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PainleveArgs {
    /// Member index
    #[arg(long)]
    pub n: u32,
    /// Laurent depth (raised to the largest positive resonance)
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SymmetriesArgs {
    /// Member index
    #[arg(long)]
    pub n: u32,
    /// Include the exponential (nonlocal) characteristics
    #[arg(long)]
    pub nonlocal: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    /// Member index
    #[arg(long)]
    pub n: u32,
    /// Single invariant index
    #[arg(long, conflicts_with = "all")]
    pub j: Option<u32>,
    /// All invariants 1..=n+1 (the default)
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Member index
    #[arg(long)]
    pub n: u32,
    /// Solution coefficients A0,...,An, comma separated
    #[arg(long)]
    pub a: String,
    /// Sample point
    #[arg(long)]
    pub x0: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Which identity suite to run
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Upper member index for the suite
    #[arg(long)]
    pub max_n: u32,
    /// Seed for the randomized checks
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Success flavours of a command run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Everything rendered and every check passed.
    Success,
    /// Output was rendered but some verification failed.
    VerificationFailed,
}

/// Errors that map to exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Exit code for a finished run.
pub fn exit_code(result: &Result<Outcome, CliError>) -> i32 {
    match result {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::VerificationFailed) => 1,
        Err(CliError::Usage(_)) => 2,
    }
}

/// The active guard on member indices.
pub fn guard_limit() -> u32 {
    std::env::var("DIFFSEQ_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

fn check_guard(n: u32) -> Result<(), CliError> {
    let limit = guard_limit();
    if n > limit {
        return Err(CliError::Usage(format!(
            "index {n} exceeds the guard ({limit}); set DIFFSEQ_MAX_N to raise it"
        )));
    }
    Ok(())
}

fn usage<T>(msg: String) -> Result<T, CliError> {
    Err(CliError::Usage(msg))
}

fn parse_range(range: &str) -> Result<(u32, u32), CliError> {
    let Some((lo, hi)) = range.split_once("..") else {
        return usage(format!("range {range:?} is not of the form A..B"));
    };
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("range start {lo:?} is not a nonnegative integer")))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("range end {hi:?} is not a nonnegative integer")))?;
    if lo > hi {
        return usage(format!("empty range {range:?}"));
    }
    Ok((lo, hi))
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "{text}");
}

fn emit_json(out: &mut dyn Write, value: &Value) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("valid json")
    );
}

fn emit_failure(out: &mut dyn Write, failure: &VerificationFailure) {
    emit_json(out, &json::failure_to_json(failure));
}

/// Run one parsed command, writing results to `out` and diagnostics to
/// `err`.
pub fn run(cmd: &Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Cmd::Gen(args) => run_gen(args, false, out),
        Cmd::Adjoint(args) => run_gen(args, true, out),
        Cmd::Combine(args) => run_combine(args, out),
        Cmd::Painleve(args) => run_painleve(args, out),
        Cmd::Symmetries(args) => run_symmetries(args, out),
        Cmd::Invariants(args) => run_invariants(args, out),
        Cmd::Solve(args) => run_solve(args, out),
        Cmd::Verify(args) => run_verify(args, out, err),
    }
}

fn run_gen(args: &GenArgs, adjoint: bool, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (lo, hi) = match (args.n, &args.range) {
        (Some(n), None) => (n, n),
        (None, Some(range)) => parse_range(range)?,
        _ => return usage("give exactly one of --n or --range".into()),
    };
    check_guard(hi)?;
    let single = lo == hi;
    let mut json_members = Vec::new();
    for n in lo..=hi {
        let member = generate_member(n, adjoint);
        match args.format {
            Format::Text => {
                let line = format!("{} = 0", member.body);
                emit(
                    out,
                    &if single {
                        line
                    } else {
                        format!("n={n}: {} = 0", member.body)
                    },
                );
            }
            Format::Latex => {
                let line = format!("{} = 0", render::diffpoly_latex(&member.body));
                emit(
                    out,
                    &if single {
                        line.clone()
                    } else {
                        format!("n={n}: {line}")
                    },
                );
            }
            Format::Json => json_members.push(json::member_to_json(n, adjoint, &member.body)),
        }
    }
    if args.format == Format::Json {
        if single {
            emit_json(out, &json_members[0]);
        } else {
            emit_json(out, &Value::Array(json_members));
        }
    }
    Ok(Outcome::Success)
}

fn run_combine(args: &CombineArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let coeffs =
        parse_poly_list(&args.coeffs).map_err(|e| CliError::Usage(format!("--coeffs: {e}")))?;
    let spec = match CombinationSpec::new(coeffs) {
        Ok(spec) => spec,
        Err(_) => return usage("the top combination coefficient must be nonzero".into()),
    };
    check_guard(spec.order())?;
    let mut seq = Sequence::new();
    let combined = combine(&spec, &mut seq);
    let mut check_outcome = None;
    if args.check_linearisation {
        let p_text = args.p.as_ref().expect("clap enforces --p with the check");
        let p =
            crate::parse::parse_poly(p_text).map_err(|e| CliError::Usage(format!("--p: {e}")))?;
        check_outcome = Some(match check_linearisation(&spec, &p, 5) {
            Ok(()) => Ok(()),
            Err(IntegralsError::Failure(f)) => Err(f),
            Err(other) => return usage(format!("--p: {other}")),
        });
    }
    match args.format {
        Format::Text => {
            emit(out, &format!("{combined} = 0"));
            if let Some(result) = &check_outcome {
                match result {
                    Ok(()) => emit(
                        out,
                        "linearisation check: ok (combination at y = P'/P equals (sum f_i P^(i+1))/P)",
                    ),
                    Err(f) => emit(out, &format!("linearisation check: FAIL ({f})")),
                }
            }
        }
        Format::Latex => {
            emit(out, &format!("{} = 0", render::diffpoly_latex(&combined)));
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("order".into(), json!(spec.order()));
            obj.insert(
                "coeffs".into(),
                Value::Array(spec.coeffs().iter().map(json::unipoly_to_json).collect()),
            );
            obj.insert("terms".into(), json::diffpoly_to_json(&combined));
            if let Some(result) = &check_outcome {
                obj.insert("linearisation_ok".into(), json!(result.is_ok()));
            }
            emit_json(out, &Value::Object(obj));
        }
    }
    match check_outcome {
        Some(Err(f)) => {
            emit_failure(out, &f);
            Ok(Outcome::VerificationFailed)
        }
        _ => Ok(Outcome::Success),
    }
}

fn singularity_failure(e: &SingularityError) -> VerificationFailure {
    VerificationFailure::new(
        "singularity",
        "painleve_report",
        e.to_string(),
        ExpDiffPoly::zero(),
    )
}

fn run_painleve(args: &PainleveArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.n == 0 {
        return usage("the analysis needs a member index of at least 1".into());
    }
    check_guard(args.n)?;
    let mut seq = Sequence::new();
    let report = match painleve_report(args.n, args.depth, &mut seq) {
        Ok(report) => report,
        Err(e) => {
            emit_failure(out, &singularity_failure(&e));
            return Ok(Outcome::VerificationFailed);
        }
    };
    match args.format {
        Format::Text => emit(out, render::painleve_text(&report).trim_end()),
        Format::Latex => emit(out, render::painleve_latex(&report).trim_end()),
        Format::Json => emit_json(out, &json::painleve_to_json(&report)),
    }
    if report.painleve_pass && report.pattern_rule_holds && report.closed_form_holds {
        Ok(Outcome::Success)
    } else {
        emit_failure(
            out,
            &VerificationFailure::new(
                "singularity",
                "painleve_report",
                format!(
                    "pass={} pattern={} closed_form={}",
                    report.painleve_pass, report.pattern_rule_holds, report.closed_form_holds
                ),
                ExpDiffPoly::zero(),
            ),
        );
        Ok(Outcome::VerificationFailed)
    }
}

fn describe_cofactor(cofactor: &Option<ExpDiffPoly>) -> String {
    match cofactor {
        Some(c) => format!("cofactor = {c}"),
        None => "reduces to zero".into(),
    }
}

fn run_symmetries(args: &SymmetriesArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.n == 0 {
        return usage("symmetry checks need a member index of at least 1".into());
    }
    check_guard(args.n)?;
    let mut seq = Sequence::new();
    let point: Vec<Generator> = if args.n == 2 {
        second_member_point_symmetries()
            .into_iter()
            .map(Into::into)
            .collect()
    } else {
        sl2_generators(args.n).into_iter().map(Into::into).collect()
    };
    let mut failed = false;
    let mut point_records = Vec::new();
    for g in &point {
        let check = check_symmetry(g, args.n, &mut seq);
        failed |= !check.is_symmetry;
        point_records.push((g.clone(), check));
    }
    let mut nonlocal_records = Vec::new();
    if args.nonlocal {
        for i in 1..=args.n + 1 {
            let g: Generator = nonlocal_generator(i).into();
            let check = check_symmetry(&g, args.n, &mut seq);
            failed |= !check.is_symmetry;
            nonlocal_records.push((g, check));
        }
    }
    match args.format {
        Format::Text => {
            emit(
                out,
                &format!(
                    "point symmetries of member {} ({} total):",
                    args.n,
                    point.len()
                ),
            );
            for (idx, (g, check)) in point_records.iter().enumerate() {
                let Generator::Point(p) = g else {
                    unreachable!()
                };
                emit(
                    out,
                    &format!(
                        "  [{}] xi = {}; eta = {}; symmetry: {}; {}",
                        idx + 1,
                        p.xi(),
                        p.eta(),
                        if check.is_symmetry { "yes" } else { "NO" },
                        describe_cofactor(&check.cofactor),
                    ),
                );
            }
            if !nonlocal_records.is_empty() {
                emit(out, "exponential characteristics:");
                for (idx, (g, check)) in nonlocal_records.iter().enumerate() {
                    let Generator::Evolutionary(e) = g else {
                        unreachable!()
                    };
                    emit(
                        out,
                        &format!(
                            "  [{}] Q = {}; symmetry: {}; {}",
                            idx + 1,
                            e.characteristic(),
                            if check.is_symmetry { "yes" } else { "NO" },
                            describe_cofactor(&check.cofactor),
                        ),
                    );
                }
            }
        }
        Format::Latex => {
            for (g, _) in point_records.iter().chain(nonlocal_records.iter()) {
                match g {
                    Generator::Point(p) => emit(
                        out,
                        &format!(
                            "\\left({}\\right)\\partial_x + \\left({}\\right)\\partial_y \\\\",
                            render::diffpoly_latex(p.xi()),
                            render::diffpoly_latex(p.eta())
                        ),
                    ),
                    Generator::Evolutionary(e) => emit(
                        out,
                        &format!(
                            "{}\\,\\partial_y \\\\",
                            render::expdiffpoly_latex(e.characteristic())
                        ),
                    ),
                }
            }
        }
        Format::Json => {
            let record = |(g, check): &(Generator, diffseq_core::symmetry::SymmetryCheck)| {
                let mut obj = serde_json::Map::new();
                obj.insert("generator".into(), json::generator_to_json(g));
                obj.insert("is_symmetry".into(), json!(check.is_symmetry));
                obj.insert(
                    "cofactor".into(),
                    check
                        .cofactor
                        .as_ref()
                        .map(json::expdiffpoly_to_json)
                        .unwrap_or(Value::Null),
                );
                Value::Object(obj)
            };
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), json!(args.n));
            obj.insert(
                "point".into(),
                Value::Array(point_records.iter().map(record).collect()),
            );
            if args.nonlocal {
                obj.insert(
                    "nonlocal".into(),
                    Value::Array(nonlocal_records.iter().map(record).collect()),
                );
            }
            emit_json(out, &Value::Object(obj));
        }
    }
    if failed {
        emit_failure(
            out,
            &VerificationFailure::new(
                "symmetry",
                "check_symmetry",
                format!("a listed generator fails on member {}", args.n),
                ExpDiffPoly::zero(),
            ),
        );
        return Ok(Outcome::VerificationFailed);
    }
    Ok(Outcome::Success)
}

fn run_invariants(args: &InvariantsArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.n == 0 {
        return usage("invariants need a member index of at least 1".into());
    }
    check_guard(args.n)?;
    let indices: Vec<u32> = match args.j {
        Some(j) => vec![j],
        None => (1..=args.n + 1).collect(),
    };
    let mut seq = Sequence::new();
    let mut built = Vec::new();
    for j in indices {
        match invariant(args.n, j, &mut seq) {
            Ok(inv) => built.push(inv),
            Err(IntegralsError::IndexOutOfRange { index, max }) => {
                return usage(format!("--j: index {index} outside 1..={max}"));
            }
            Err(IntegralsError::Failure(f)) => {
                emit_failure(out, &f);
                return Ok(Outcome::VerificationFailed);
            }
            Err(other) => return usage(other.to_string()),
        }
    }
    match args.format {
        Format::Text => {
            for inv in &built {
                emit(out, &format!("I_{} = {}; conserved: yes", inv.j, inv.body));
            }
        }
        Format::Latex => {
            for inv in &built {
                emit(
                    out,
                    &format!(
                        "I_{{{}}} = {} \\\\",
                        inv.j,
                        render::expdiffpoly_latex(&inv.body)
                    ),
                );
            }
        }
        Format::Json => {
            let list: Vec<Value> = built
                .iter()
                .map(|inv| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("n".into(), json!(inv.n));
                    obj.insert("j".into(), json!(inv.j));
                    obj.insert("terms".into(), json::expdiffpoly_to_json(&inv.body));
                    obj.insert("conserved".into(), json!(true));
                    Value::Object(obj)
                })
                .collect();
            emit_json(out, &Value::Array(list));
        }
    }
    Ok(Outcome::Success)
}

fn run_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    check_guard(args.n)?;
    let coeffs = parse_rational_list(&args.a).map_err(|e| CliError::Usage(format!("--a: {e}")))?;
    if coeffs.len() != args.n as usize + 1 {
        return usage(format!(
            "--a: expected {} coefficients A0,...,A{}, got {}",
            args.n + 1,
            args.n,
            coeffs.len()
        ));
    }
    let x0 = parse_rational(&args.x0).map_err(|e| CliError::Usage(format!("--x0: {e}")))?;
    let jet = match solution_jet(args.n, &coeffs, &x0) {
        Ok(jet) => jet,
        Err(e) => return usage(format!("--a/--x0: {e}")),
    };
    let mut seq = Sequence::new();
    let residual = seq.member(args.n).eval(&jet).expect("jet is long enough");
    match args.format {
        Format::Text => {
            let values: Vec<String> = jet
                .values()
                .iter()
                .enumerate()
                .map(|(k, v)| format!("{} = {v}", DiffPoly::jet(k as u32)))
                .collect();
            emit(out, &format!("x0 = {}; {}", jet.x0(), values.join(", ")));
            emit(out, &format!("member residual = {residual}"));
        }
        Format::Latex => {
            let values: Vec<String> = jet.values().iter().map(render::rational_latex).collect();
            emit(out, &format!("\\left({}\\right)", values.join(",\\ ")));
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), json!(args.n));
            obj.insert("jet".into(), json::jet_to_json(&jet));
            obj.insert("residual".into(), json!(residual.to_string()));
            emit_json(out, &Value::Object(obj));
        }
    }
    if num_traits::Zero::is_zero(&residual) {
        Ok(Outcome::Success)
    } else {
        emit_failure(
            out,
            &VerificationFailure::new(
                "integrals",
                "solution_jet",
                format!("member residual {residual} at x0 = {}", jet.x0()),
                ExpDiffPoly::zero(),
            ),
        );
        Ok(Outcome::VerificationFailed)
    }
}

fn run_verify(
    args: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    check_guard(args.max_n)?;
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let records = run_suite(args.suite, args.max_n, seed);
    let _ = writeln!(err, "suite {:?}: {} checks", args.suite, records.len());
    match args.format {
        Format::Text | Format::Latex => {
            for record in &records {
                emit(
                    out,
                    &format!(
                        "{} {}",
                        if record.pass { "ok  " } else { "FAIL" },
                        record.label
                    ),
                );
            }
            if !records.is_empty() {
                let passed = records.iter().filter(|r| r.pass).count();
                emit(out, &format!("{passed}/{} checks passed", records.len()));
            }
        }
        Format::Json => {
            if records.is_empty() {
                emit_json(out, &Value::Object(serde_json::Map::new()));
            } else {
                emit_json(out, &verify_report_json(args, seed, &records));
            }
        }
    }
    for record in &records {
        if let Some(failure) = &record.failure {
            emit_failure(out, failure);
        }
    }
    if all_pass(&records) {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::VerificationFailed)
    }
}

fn verify_report_json(args: &VerifyArgs, seed: u64, records: &[CheckRecord]) -> Value {
    let checks: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut obj = serde_json::Map::new();
            obj.insert("label".into(), json!(r.label));
            obj.insert("pass".into(), json!(r.pass));
            Value::Object(obj)
        })
        .collect();
    let mut obj = serde_json::Map::new();
    obj.insert(
        "suite".into(),
        json!(format!("{:?}", args.suite).to_lowercase()),
    );
    obj.insert("max_n".into(), json!(args.max_n));
    obj.insert("seed".into(), json!(seed));
    obj.insert("checks".into(), Value::Array(checks));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(cmd: &Cmd) -> (Result<Outcome, CliError>, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let result = run(cmd, &mut out, &mut err);
        (result, String::from_utf8(out).unwrap())
    }

    #[test]
    fn gen_text_matches_published_member() {
        let cmd = Cmd::Gen(GenArgs {
            n: Some(2),
            range: None,
            format: Format::Text,
        });
        let (result, text) = run_to_string(&cmd);
        assert_eq!(result, Ok(Outcome::Success));
        assert_eq!(text, "y'' + 3*y*y' + y^3 = 0\n");
    }

    #[test]
    fn gen_latex_first_member() {
        let cmd = Cmd::Gen(GenArgs {
            n: Some(1),
            range: None,
            format: Format::Latex,
        });
        let (_, text) = run_to_string(&cmd);
        assert_eq!(text, "y' + y^{2} = 0\n");
    }

    #[test]
    fn guard_rejects_large_indices() {
        let cmd = Cmd::Gen(GenArgs {
            n: Some(40),
            range: None,
            format: Format::Text,
        });
        let (result, _) = run_to_string(&cmd);
        assert!(matches!(result, Err(CliError::Usage(_))));
        assert_eq!(exit_code(&result), 2);
    }

    #[test]
    fn range_generation_labels_lines() {
        let cmd = Cmd::Gen(GenArgs {
            n: None,
            range: Some("0..2".into()),
            format: Format::Text,
        });
        let (_, text) = run_to_string(&cmd);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("n=0: y ="));
        assert!(lines[2].starts_with("n=2: "));
    }

    #[test]
    fn solve_reports_zero_residual() {
        let cmd = Cmd::Solve(SolveArgs {
            n: 2,
            a: "1,1,1".into(),
            x0: "0".into(),
            format: Format::Text,
        });
        let (result, text) = run_to_string(&cmd);
        assert_eq!(result, Ok(Outcome::Success));
        assert!(text.contains("member residual = 0"));
        assert!(text.contains("y'' = -4"));
    }

    #[test]
    fn solve_rejects_pole() {
        let cmd = Cmd::Solve(SolveArgs {
            n: 1,
            a: "0,1".into(),
            x0: "0".into(),
            format: Format::Text,
        });
        let (result, _) = run_to_string(&cmd);
        assert_eq!(exit_code(&result), 2);
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(exit_code(&Ok(Outcome::Success)), 0);
        assert_eq!(exit_code(&Ok(Outcome::VerificationFailed)), 1);
        assert_eq!(exit_code(&Err(CliError::Usage("bad".into()))), 2);
    }

    #[test]
    fn invariants_out_of_range_is_usage_error() {
        let cmd = Cmd::Invariants(InvariantsArgs {
            n: 2,
            j: Some(9),
            all: false,
            format: Format::Text,
        });
        let (result, _) = run_to_string(&cmd);
        assert_eq!(exit_code(&result), 2);
    }

    #[test]
    fn painleve_json_schema_fields() {
        let cmd = Cmd::Painleve(PainleveArgs {
            n: 2,
            depth: None,
            format: Format::Json,
        });
        let (result, text) = run_to_string(&cmd);
        assert_eq!(result, Ok(Outcome::Success));
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["n"], json!(2));
        assert_eq!(value["branches"][0]["resonances"], json!([-1, 1]));
        assert_eq!(value["pattern_rule_holds"], json!(true));
        assert_eq!(value["painleve_pass"], json!(true));
    }

    #[test]
    fn verify_empty_report_is_empty_object() {
        let cmd = Cmd::Verify(VerifyArgs {
            suite: Suite::Lemma1,
            max_n: 0,
            seed: None,
            format: Format::Json,
        });
        let (result, text) = run_to_string(&cmd);
        assert_eq!(result, Ok(Outcome::Success));
        assert_eq!(text.trim(), "{}");
    }
}
