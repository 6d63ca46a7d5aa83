//! `icg`: spectra, extremal searches, theorem verification and oracle
//! checks for integral circulant graphs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error, 3 empty graph class.

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use icg_core::oracle::{check_spec_against_oracle, sample_specs, DEFAULT_TOLERANCE};
use icg_core::{
    extremal_search, full_spectrum, proper_divisors, second_min_least, verify_theorem_observed,
    Error, GraphClass, IcgSpec, Objective, SearchLimits, Theorem,
};

use crate::render::{Format, OracleDoc, Rendered, SpectrumDoc, VerifyAllDoc};

/// Largest order whose every divisor subset the oracle command checks.
const EXHAUSTIVE_ORACLE_MAX: u64 = 36;
const DEFAULT_VERIFY_MAX: u64 = 60;
const VERIFY_MAX: u64 = 120;

#[derive(Parser)]
#[command(
    name = "icg",
    version,
    about = "Integral circulant graph spectra and extremal search"
)]
struct Cli {
    /// Worker threads (defaults to one per core)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, degree, least eigenvalue and spread of one graph, e.g. `12:1,3`
    Spectrum {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive optimum over a class of divisor sets
    Search {
        n: u64,
        #[arg(long, value_enum, default_value_t = ClassArg::Connected)]
        class: ClassArg,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::MinLeast)]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Second minimal least eigenvalue (same as `search --class second`)
    Second {
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a result for every order in a range against exhaustive search
    Verify {
        #[arg(value_enum)]
        theorem: TheoremArg,
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long, default_value_t = DEFAULT_VERIFY_MAX)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-order status on standard error
        #[arg(long)]
        progress: bool,
        /// Include wall-clock time in the report (makes output run-dependent)
        #[arg(long)]
        timing: bool,
    },
    /// Compare exact spectra with floating-point cosine sums
    Oracle {
        #[arg(long, default_value_t = EXHAUSTIVE_ORACLE_MAX)]
        n_max: u64,
        /// Random graphs drawn with order above 36
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Required when --n-max exceeds 36
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Connected,
    Coconnected,
    Second,
}

impl From<ClassArg> for GraphClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => GraphClass::All,
            ClassArg::Connected => GraphClass::Connected,
            ClassArg::Coconnected => GraphClass::ConnectedCoconnected,
            ClassArg::Second => GraphClass::ConnectedExcludingBarDp1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    MinLeast,
    MaxSpread,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::MinLeast => Objective::MinLeastEig,
            ObjectiveArg::MaxSpread => Objective::MaxSpread,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Lemma1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    All,
}

impl TheoremArg {
    fn theorems(self) -> Vec<Theorem> {
        match self {
            TheoremArg::Lemma1 => vec![Theorem::Lemma1],
            TheoremArg::Thm2 => vec![Theorem::Thm2],
            TheoremArg::Thm3 => vec![Theorem::Thm3],
            TheoremArg::Thm4 => vec![Theorem::Thm4],
            TheoremArg::Thm5 => vec![Theorem::Thm5],
            TheoremArg::All => Theorem::ALL.to_vec(),
        }
    }
}

/// A failed command: message for standard error and the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn limits_from_env() -> Result<SearchLimits, Failure> {
    match std::env::var("ICG_MAX_SUBSETS") {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map(|max_subsets| SearchLimits { max_subsets })
            .map_err(|_| {
                usage(format!(
                    "ICG_MAX_SUBSETS must be a positive integer, got {raw:?}"
                ))
            }),
        Err(_) => Ok(SearchLimits::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(usage(e.to_string())),
        },
        None => run(cli.command),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(rendered: Rendered, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = rendered.into_string();
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Spectrum { spec, format } => {
            let spec: IcgSpec = spec.parse()?;
            let doc = SpectrumDoc::new(&full_spectrum(&spec));
            emit(render::spectrum(&doc, format), None)?;
            Ok(0)
        }
        Command::Search {
            n,
            class,
            objective,
            format,
        } => search(n, class, objective, format),
        Command::Second { n, format } => {
            search(n, ClassArg::Second, ObjectiveArg::MinLeast, format)
        }
        Command::Verify {
            theorem,
            n_min,
            n_max,
            format,
            out,
            progress,
            timing,
        } => {
            if n_max > VERIFY_MAX {
                return Err(usage(format!("--n-max {n_max} exceeds {VERIFY_MAX}")));
            }
            if n_min > n_max {
                return Err(usage(format!("--n-min {n_min} exceeds --n-max {n_max}")));
            }
            let limits = limits_from_env()?;
            let mut reports = Vec::new();
            for t in theorem.theorems() {
                let started = Instant::now();
                let observe = |n: u64, failures: usize| {
                    if progress {
                        let status = if failures == 0 { "ok" } else { "FAIL" };
                        eprintln!("{t} n={n} {status}");
                    }
                };
                let mut report = verify_theorem_observed(t, n_min, n_max, &limits, &observe)?;
                if timing {
                    report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
                }
                reports.push(report);
            }
            let passed = reports.iter().all(|r| r.passed);
            let rendered = match theorem {
                TheoremArg::All => render::verify_all(&VerifyAllDoc { passed, reports }, format),
                _ => render::verify_one(&reports[0], format),
            };
            emit(rendered, out.as_ref())?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::Oracle {
            n_max,
            samples,
            seed,
            tol,
            format,
        } => oracle(n_max, samples, seed, tol, format),
    }
}

fn search(n: u64, class: ClassArg, objective: ObjectiveArg, format: Format) -> Result<u8, Failure> {
    let limits = limits_from_env()?;
    let record = match (class, objective) {
        (ClassArg::Second, ObjectiveArg::MinLeast) => second_min_least(n, &limits)?,
        _ => extremal_search(n, class.into(), objective.into(), &limits)?,
    };
    emit(render::record(&record, format), None)?;
    Ok(if record.class_empty { 3 } else { 0 })
}

fn oracle(
    n_max: u64,
    samples: usize,
    seed: Option<u64>,
    tol: f64,
    format: Format,
) -> Result<u8, Failure> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    if n_max < 2 {
        return Err(usage("--n-max must be at least 2"));
    }
    let sampled = n_max > EXHAUSTIVE_ORACLE_MAX && samples > 0;
    if sampled && seed.is_none() {
        return Err(usage("--seed is required when --n-max exceeds 36"));
    }

    let mut specs = Vec::new();
    for n in 2..=n_max.min(EXHAUSTIVE_ORACLE_MAX) {
        let divisors = proper_divisors(n)?;
        for mask in 1u64..(1 << divisors.len()) {
            let chosen = divisors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &d)| d);
            specs.push(IcgSpec::new(n, chosen)?);
        }
    }
    if sampled {
        specs.extend(sample_specs(
            seed.expect("checked above"),
            samples,
            EXHAUSTIVE_ORACLE_MAX + 1..=n_max,
        ));
    }

    let mut doc = OracleDoc {
        n_max,
        exhaustive_max: n_max.min(EXHAUSTIVE_ORACLE_MAX),
        samples: if sampled { samples } else { 0 },
        seed,
        tol,
        checked: 0,
        max_residual: 0.0,
        passed: true,
        failure: None,
    };
    for spec in &specs {
        match check_spec_against_oracle(spec, tol) {
            Ok(residual) => {
                doc.checked += 1;
                doc.max_residual = doc.max_residual.max(residual);
            }
            Err(mismatch) => {
                doc.passed = false;
                doc.failure = Some(mismatch);
                break;
            }
        }
    }
    emit(render::oracle(&doc, format), None)?;
    Ok(if doc.passed { 0 } else { 1 })
}
