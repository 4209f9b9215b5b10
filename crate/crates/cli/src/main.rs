//! `luroth`: classify a subfield of k(x1, ..., xn) and, in transcendence
//! degree 1, print a certified generator.
//!
//! Exit codes: 0 success, 1 input error, 2 certificate failure, 3 resource limit.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use luroth_core::groebner::Limits;
use luroth_core::luroth::{luroth_pipeline_with, LurothError, PipelineOptions, SubfieldPresentation};
use luroth_core::membership::DEFAULT_SLACK;
use luroth_core::selftest::{check_planted, planted_instance};
use luroth_core::FieldSpec;

use report::{InstanceReport, SelftestReport, SolveReport, StageError};

const EXIT_INPUT: u8 = 1;
const EXIT_CERTIFICATE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

/// Overrides the term cap of the Gröbner engine.
const MAX_TERMS_ENV: &str = "LUROTH_MAX_TERMS";

#[derive(Debug, Parser)]
#[command(name = "luroth", version, about = "Lüroth generators for subfields of rational function fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify k(f1, ..., fr) and certify a generator when trdeg = 1.
    Solve(SolveArgs),
    /// Run seeded instances with a planted generator.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// `Q` or `GF(p)` with p prime.
    #[arg(long)]
    field: String,
    /// Comma-separated variable names.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Comma-separated generator expressions.
    #[arg(long, conflicts_with = "gens_file", required_unless_present = "gens_file")]
    gens: Option<String>,
    /// File with one generator expression per line.
    #[arg(long)]
    gens_file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    slack: u32,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    max_degree: Option<u32>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    count: u64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Selftest(args) => run_selftest(args),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("luroth: input error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn limits(max_terms: Option<usize>, max_degree: Option<u32>) -> Result<Limits, String> {
    let mut l = Limits::default();
    if let Some(t) = max_terms {
        l.max_terms = t;
    }
    if let Some(d) = max_degree {
        l.max_degree = d;
    }
    if let Ok(v) = std::env::var(MAX_TERMS_ENV) {
        l.max_terms = v.trim().parse().map_err(|_| format!("{MAX_TERMS_ENV}={v} is not a count"))?;
    }
    Ok(l)
}

fn generator_texts(args: &SolveArgs) -> Result<Vec<String>, String> {
    let raw: Vec<String> = match (&args.gens, &args.gens_file) {
        (Some(g), _) => g.split(',').map(str::to_string).collect(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?
            .lines()
            .map(str::to_string)
            .collect(),
        (None, None) => return Err("no generators given".into()),
    };
    let gens: Vec<String> = raw.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if gens.is_empty() {
        return Err("no generators given".into());
    }
    Ok(gens)
}

/// Stage name and exit code for a pipeline error.
fn classify_error(e: &LurothError) -> (&'static str, u8) {
    match e {
        LurothError::NoGenerators
        | LurothError::GeneratorContext { .. }
        | LurothError::GeneratorField { .. }
        | LurothError::Parse { .. }
        | LurothError::Variables(_) => ("input", EXIT_INPUT),
        e if e.is_resource_limit() => ("delta", EXIT_LIMIT),
        LurothError::Groebner(_) => ("delta", EXIT_CERTIFICATE),
        LurothError::NoNonconstantRatio | LurothError::ConstantGenerator => ("extract_generator", EXIT_CERTIFICATE),
        LurothError::NotProportional => ("d_eq_cf", EXIT_CERTIFICATE),
        LurothError::Membership(_) => ("membership", EXIT_CERTIFICATE),
        LurothError::Algebra(_) => ("algebra", EXIT_CERTIFICATE),
        LurothError::CertificateFailure(_) => ("certificate", EXIT_CERTIFICATE),
    }
}

fn run_solve(args: SolveArgs) -> ExitCode {
    let field: FieldSpec = match args.field.parse() {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let limits = match limits(args.max_terms, args.max_degree) {
        Ok(l) => l,
        Err(e) => return input_error(e),
    };
    let gens = match generator_texts(&args) {
        Ok(g) => g,
        Err(e) => return input_error(e),
    };
    let vars: Vec<&str> = args.vars.iter().map(|v| v.trim()).collect();
    let pres = match SubfieldPresentation::parse(field, &vars, &gens) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };

    let opts = PipelineOptions {
        limits,
        slack: args.slack,
    };
    let mut report = SolveReport::new(&pres);
    let code = match luroth_pipeline_with(&pres, opts) {
        Ok(res) => {
            report.fill(&pres, &res);
            if res.jacobian_agreement() == Some(false) {
                report.error = Some(StageError {
                    stage: "jacobian",
                    message: "classification disagrees with the Jacobian rank".into(),
                });
                EXIT_CERTIFICATE
            } else {
                0
            }
        }
        Err(e) => {
            let (stage, code) = classify_error(&e);
            if code == EXIT_INPUT {
                return input_error(e);
            }
            report.limits_hit = code == EXIT_LIMIT;
            report.error = Some(StageError {
                stage,
                message: e.to_string(),
            });
            code
        }
    };
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(e) = &report.error {
        eprintln!("luroth: {} failed: {}", e.stage, e.message);
    }
    ExitCode::from(code)
}

fn run_selftest(args: SelftestArgs) -> ExitCode {
    if args.count == 0 {
        return input_error("--count must be at least 1");
    }
    let limits = match limits(None, None) {
        Ok(l) => l,
        Err(e) => return input_error(e),
    };
    let opts = PipelineOptions {
        limits,
        slack: DEFAULT_SLACK,
    };
    // par_iter over a range keeps results in index order
    let outcomes: Vec<_> = (0..args.count)
        .into_par_iter()
        .map(|i| check_planted(&planted_instance(args.seed, i), opts))
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count() as u64;
    if args.json {
        let report = SelftestReport {
            seed: args.seed,
            count: args.count,
            passed,
            instances: outcomes
                .into_iter()
                .map(|o| InstanceReport {
                    index: o.index,
                    passed: o.passed,
                    v: o.v,
                    detail: o.detail,
                })
                .collect(),
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        for o in outcomes.iter().filter(|o| !o.passed) {
            println!("FAIL {}", o.detail.as_deref().unwrap_or("unknown failure"));
        }
        println!("{passed}/{} pass", args.count);
    }
    if passed == args.count {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CERTIFICATE)
    }
}
