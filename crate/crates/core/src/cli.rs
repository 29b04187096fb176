//! The `brier` command line.
//!
//! Exit status: 0 success, 1 mathematical failure (uncovered residue, failed
//! check, unresolved modulus, mismatch), 2 usage, hypothesis or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construct::{
    smallest_valid_t, theorem2_construct, theorem3_construct, theorem4_construct, Certificate,
    ConstructionParams, Family,
};
use crate::covering::{build_236_cover, build_power2_cover, verify_cover_bounded, CoveringSystem, DEFAULT_SWEEP_BOUND};
use crate::error::Error;
use crate::verify::{
    reproduce_corollary1_with, verify_certificate, verify_translation_invariance,
    corollary1_assignment,
};
use crate::zsigmondy::{assign_primes, PrimeAssignment, SearchBudget};

/// Environment variable naming the default budget profile (`default`, `quick`, `deep`).
pub const BUDGET_PROFILE_ENV: &str = "BRIER_BUDGET_PROFILE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "brier", version, about = "Covering-system certificates for t·b^t + α")]
pub struct Cli {
    /// Worker threads for prime searches and sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build or check covering systems.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Assign a primitive prime divisor of b^m - 1 to every modulus of a cover.
    Primes(PrimesArgs),
    /// Build a certificate.
    Construct(ConstructArgs),
    /// Check a certificate.
    Verify(VerifyArgs),
    /// Reproduce published examples.
    #[command(subcommand)]
    Reproduce(ReproduceCommand),
}

#[derive(Debug, Subcommand)]
enum CoverCommand {
    Build {
        #[arg(long, value_enum)]
        family: CoverFamily,
        #[arg(long)]
        q: u64,
        /// Top power of two for the power2 family (default q - 1).
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        file: PathBuf,
        /// Largest lcm to sweep.
        #[arg(long, default_value_t = DEFAULT_SWEEP_BOUND)]
        bound: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoverFamily {
    Power2,
    #[value(name = "236")]
    TwoThreeQ,
}

#[derive(Debug, Clone, Args)]
struct BudgetArgs {
    /// Budget profile; overrides the BRIER_BUDGET_PROFILE environment variable.
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    trial_bound: Option<u64>,
    #[arg(long)]
    rho_iterations: Option<u64>,
    #[arg(long)]
    scan_bound: Option<u64>,
    /// Seed for the Pollard rho sequence.
    #[arg(long)]
    seed: Option<u64>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<SearchBudget, Error> {
        let name = self
            .profile
            .clone()
            .or_else(|| std::env::var(BUDGET_PROFILE_ENV).ok())
            .unwrap_or_else(|| "default".into());
        let mut b = SearchBudget::profile(&name)
            .ok_or_else(|| Error::BadParameters(format!("unknown budget profile {name:?}")))?;
        if let Some(v) = self.trial_bound {
            b.trial_division_bound = v;
        }
        if let Some(v) = self.rho_iterations {
            b.rho_iterations = v;
        }
        if let Some(v) = self.scan_bound {
            b.progression_scan_bound = v;
        }
        if let Some(v) = self.seed {
            b.rho_seed = v;
        }
        Ok(b)
    }
}

#[derive(Debug, Args)]
struct PrimesArgs {
    #[arg(long)]
    b: u64,
    #[arg(long)]
    cover: PathBuf,
    /// Emit the resolved entries even when some moduli stay unresolved.
    #[arg(long)]
    allow_partial: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theorem {
    T2,
    T3,
    T4,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    #[arg(long)]
    b: u64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: i64,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<i64>,
    #[arg(long, default_value_t = 5)]
    q: u64,
    /// Prime assignment for the (first) cover instead of searching.
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// Prime assignment for the second cover of t4.
    #[arg(long)]
    assignment2: Option<PathBuf>,
    /// Verify the certificate before emitting it.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    certificate: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also check T + k·M for k = 1..=N.
    #[arg(long, default_value_t = 0)]
    translations: u64,
}

#[derive(Debug, Subcommand)]
enum ReproduceCommand {
    Corollary1 {
        /// Replace the published primes with this assignment.
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// Failure of a subcommand, carrying its exit status.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotFound { .. }
            | Error::PartialAssignment { .. }
            | Error::Mismatch { .. }
            | Error::Incompatible { .. }
            | Error::NotCoprime { .. }
            | Error::DividesBase { .. }
            | Error::IncompleteFactorization { .. } => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Exit(code, e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Exit> {
    let text = fs::read_to_string(path)
        .map_err(|e| Exit(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Exit(EXIT_USAGE, format!("{} is not valid: {e}", path.display())))
}

/// Writes to stdout; a closed pipe is not an error worth a panic.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Exit> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Exit(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))),
        None => {
            say(&(text + "\n"));
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, Exit> {
    match &cli.command {
        Command::Cover(CoverCommand::Build { family, q, m, out }) => {
            let cover = match family {
                CoverFamily::Power2 => build_power2_cover(*q, m.unwrap_or(q.saturating_sub(1)))?,
                CoverFamily::TwoThreeQ => {
                    if m.is_some() {
                        return Err(Exit(EXIT_USAGE, "--m only applies to the power2 family".into()));
                    }
                    build_236_cover(*q)?
                }
            };
            emit(&cover, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Cover(CoverCommand::Verify { file, bound }) => {
            let cover: CoveringSystem = read_json(file)?;
            let report = verify_cover_bounded(&cover, *bound)?;
            emit(&report, None)?;
            Ok(if report.is_cover { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Primes(args) => primes(cli, args),
        Command::Construct(args) => construct(cli, args),
        Command::Verify(args) => verify(args),
        Command::Reproduce(ReproduceCommand::Corollary1 { assignment, format }) => {
            let a = match assignment {
                Some(path) => read_json(path)?,
                None => corollary1_assignment(),
            };
            let report = reproduce_corollary1_with(&a)?;
            match format {
                Format::Table => say(&format!("{:<14} {:>28} {:>28}\n{}", "field", "expected", "computed", report.to_table())),
                Format::Json => emit(&report, None)?,
            }
            Ok(if report.overall { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn primes(cli: &Cli, args: &PrimesArgs) -> Result<i32, Exit> {
    let budget = args.budget.resolve()?;
    let cover: CoveringSystem = read_json(&args.cover)?;
    if cli.verbose {
        eprintln!("searching {} moduli for b = {}", cover.len(), args.b);
    }
    let report = assign_primes(args.b, &cover, &budget)?;
    if report.is_complete() {
        emit(&report.assignment, args.out.as_deref())?;
        return Ok(EXIT_OK);
    }
    for u in &report.unresolved {
        eprintln!("unresolved modulus {}: {}", u.m, u.detail);
    }
    if args.allow_partial {
        emit(&report, args.out.as_deref())?;
        Ok(EXIT_OK)
    } else {
        emit(&report, None)?;
        Err(Error::PartialAssignment {
            unresolved: report.unresolved.iter().map(|u| u.m).collect(),
        }
        .into())
    }
}

fn obtain_assignment(
    cli: &Cli,
    b: u64,
    cover: &CoveringSystem,
    file: Option<&Path>,
    budget: &SearchBudget,
) -> Result<PrimeAssignment, Exit> {
    if let Some(path) = file {
        return read_json(path);
    }
    if cli.verbose {
        eprintln!("searching primes for {} moduli (lcm {})", cover.len(), cover.lcm());
    }
    let report = assign_primes(b, cover, budget)?;
    if !report.is_complete() {
        eprintln!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    }
    Ok(report.complete()?)
}

fn construct(cli: &Cli, args: &ConstructArgs) -> Result<i32, Exit> {
    let family = match args.theorem {
        Theorem::T2 => Family::T2,
        Theorem::T3 => Family::T3,
        Theorem::T4 => Family::T4,
    };
    let mut params = ConstructionParams::new(family, args.b, args.alpha, args.beta, args.q);
    params.budget = args.budget.resolve()?;
    params.validate()?;
    let budget = params.budget;

    let cert: Certificate = match family {
        Family::T2 => {
            let cover = build_power2_cover(args.q, args.q - 1)?;
            let a = obtain_assignment(cli, args.b, &cover, args.assignment.as_deref(), &budget)?;
            theorem2_construct(&params, &cover, &a)?
        }
        Family::T3 => {
            let cover = build_236_cover(args.q)?;
            let a = obtain_assignment(cli, args.b, &cover, args.assignment.as_deref(), &budget)?;
            theorem3_construct(&params, &cover, &a)?
        }
        Family::T4 => {
            let c1 = build_power2_cover(args.q, args.q)?;
            let c2 = build_236_cover(args.q)?;
            let a1 = obtain_assignment(cli, args.b, &c1, args.assignment.as_deref(), &budget)?;
            let a2 = obtain_assignment(cli, args.b, &c2, args.assignment2.as_deref(), &budget)?;
            theorem4_construct(&params, &c1, &c2, &a1, &a2)?
        }
    };
    if cli.verbose {
        eprintln!("T = {}\nM = {}\nsmallest t = {}", cert.t, cert.m, smallest_valid_t(&cert));
    }
    let mut code = EXIT_OK;
    if args.verify {
        let report = verify_certificate(&cert)?;
        eprint!("{}", report.to_table());
        if !report.overall {
            code = EXIT_FAILURE;
        }
    }
    emit(&cert, args.out.as_deref())?;
    Ok(code)
}

fn verify(args: &VerifyArgs) -> Result<i32, Exit> {
    let cert: Certificate = read_json(&args.certificate)
        .map_err(|Exit(_, msg)| Exit(EXIT_USAGE, format!("malformed certificate: {msg}")))?;
    let report = verify_certificate(&cert)?;
    let translation = if args.translations > 0 {
        Some(verify_translation_invariance(&cert, args.translations)?)
    } else {
        None
    };
    match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                report: &'a crate::verify::VerifyReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                translation: Option<&'a crate::verify::VerifyReport>,
            }
            emit(
                &Out {
                    report: &report,
                    translation: translation.as_ref(),
                },
                None,
            )?;
        }
        Format::Table => {
            say(&report.to_table());
            if let Some(t) = &translation {
                say(&format!("translations:\n{}", t.to_table()));
            }
        }
    }
    let ok = report.overall && translation.map_or(true, |t| t.overall);
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}
