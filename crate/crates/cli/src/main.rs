//! Batch CLI for constructing, certifying, and comparing maximally
//! entangled basis families.
//!
//! Exit codes: 0 success (for `certify`: verdict certifiedUMEB,
//! evidenceUMEB, or completeBasis), 1 failedBasicChecks, 2 extendible,
//! 3 inconclusive, 64 unusable or malformed input, 65 domain error,
//! 74 output write failure.

mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use umeb_core::bases::{bravyi33, shift_phase_sv1b, weyl_ub};
use umeb_core::certify::{certify, certify_with_tol, SearchConfig, Verdict};
use umeb_core::construct::{
    example1_double, prop2_compose, theorem1_scale, theorem2_truncate, ScaleParams,
};
use umeb_core::equiv::{inequivalence_witness, pair_product_spectra};
use umeb_core::BasisSet;

use format::{
    compare_file, report_file, sha256_digest, spectra_file, to_canonical_json, write_atomic,
    BasisFile,
};

const EXIT_INPUT: u8 = 64;
const EXIT_DOMAIN: u8 = 65;
const EXIT_OUTPUT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "umeb",
    version,
    about = "Construct and certify maximally entangled basis families"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    #[value(name = "weyl")]
    Weyl,
    #[value(name = "sv1b")]
    Sv1b,
    #[value(name = "bravyi33")]
    Bravyi33,
    #[value(name = "theorem1")]
    Theorem1,
    #[value(name = "example1")]
    Example1,
    #[value(name = "theorem2")]
    Theorem2,
    #[value(name = "prop2")]
    Prop2,
}

#[derive(clap::Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    method: Method,
    /// Row dimension d (weyl, sv1b, theorem2, prop2).
    #[arg(long)]
    d: Option<usize>,
    /// Column dimension d' (sv1b, theorem2, prop2).
    #[arg(long)]
    dprime: Option<usize>,
    /// Truncation depth (theorem2).
    #[arg(long)]
    i: Option<usize>,
    /// Scaling factor (theorem1).
    #[arg(long)]
    q: Option<usize>,
    /// Dimension of the complete phase-shift basis used by the
    /// doubling (example1).
    #[arg(long)]
    p: Option<usize>,
    /// Base family: the builtin name "bravyi33" or a basis file path
    /// (theorem1, example1, prop2).
    #[arg(long)]
    base: Option<String>,
    /// Output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a basis family and write it as a basis file.
    Construct(ConstructArgs),
    /// Certify a basis file and write a report; the exit code encodes
    /// the verdict.
    Certify {
        /// Basis file to certify.
        input: PathBuf,
        /// Random restarts for the numeric unextendibility search.
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        /// Seed for the numeric search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Basic-check tolerance override.
        #[arg(long)]
        tol: Option<f64>,
        /// Output path for the report.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute eigenphase spectra and order classes of all pair
    /// products of a square family.
    Spectra {
        /// Basis file (must have square members).
        input: PathBuf,
        /// Output path for the spectra file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two square families for the spectral-order obstruction
    /// to equivalence.
    Compare {
        /// First basis file.
        a: PathBuf,
        /// Second basis file.
        b: PathBuf,
        /// Output path for the comparison report.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure with a spec'd exit code; verdict-driven nonzero exits are
/// not errors and flow through `Ok`.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn domain(e: umeb_core::Error) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: e.to_string(),
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

/// Parses a basis file and rebuilds the basis set, returning the raw
/// bytes as well so callers can digest them.
fn load_basis(path: &Path) -> Result<(BasisSet, Vec<u8>), Failure> {
    let bytes = read_input(path)?;
    let file: BasisFile = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::input(format!("cannot parse {}: {e}", path.display())))?;
    let basis = file
        .to_basis()
        .map_err(|e| Failure::input(format!("invalid basis file {}: {e}", path.display())))?;
    Ok((basis, bytes))
}

fn load_base_arg(arg: &str) -> Result<BasisSet, Failure> {
    if arg == "bravyi33" {
        return Ok(bravyi33());
    }
    load_basis(Path::new(arg)).map(|(b, _)| b)
}

fn need<T>(opt: Option<T>, method: &str, flag: &str) -> Result<T, Failure> {
    opt.ok_or_else(|| Failure::input(format!("construct {method} requires --{flag}")))
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    write_atomic(path, bytes).map_err(|e| Failure {
        code: EXIT_OUTPUT_IO,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn cmd_construct(args: ConstructArgs) -> Result<u8, Failure> {
    let ConstructArgs {
        method,
        d,
        dprime,
        i,
        q,
        p,
        base,
        out,
    } = args;
    let basis = match method {
        Method::Weyl => weyl_ub(need(d, "weyl", "d")?).map_err(Failure::domain)?,
        Method::Sv1b => shift_phase_sv1b(need(d, "sv1b", "d")?, need(dprime, "sv1b", "dprime")?)
            .map_err(Failure::domain)?,
        Method::Bravyi33 => bravyi33(),
        Method::Theorem1 => {
            let params = ScaleParams {
                q: need(q, "theorem1", "q")?,
                base: load_base_arg(&need(base, "theorem1", "base")?)?,
            };
            theorem1_scale(&params).map_err(Failure::domain)?
        }
        Method::Example1 => {
            let ub = weyl_ub(need(p, "example1", "p")?).map_err(Failure::domain)?;
            let uub = load_base_arg(&need(base, "example1", "base")?)?;
            example1_double(&ub, &uub).map_err(Failure::domain)?
        }
        Method::Theorem2 => theorem2_truncate(
            need(d, "theorem2", "d")?,
            need(dprime, "theorem2", "dprime")?,
            need(i, "theorem2", "i")?,
        )
        .map_err(Failure::domain)?,
        Method::Prop2 => {
            let uub = load_base_arg(&need(base, "prop2", "base")?)?;
            prop2_compose(
                need(d, "prop2", "d")?,
                need(dprime, "prop2", "dprime")?,
                &uub,
            )
            .map_err(Failure::domain)?
        }
    };
    let bytes = to_canonical_json(&BasisFile::from_basis(&basis));
    write_output(&out, &bytes)?;
    Ok(0)
}

fn cmd_certify(
    input: &Path,
    restarts: usize,
    seed: u64,
    tol: Option<f64>,
    out: &Path,
) -> Result<u8, Failure> {
    let (basis, bytes) = load_basis(input)?;
    let digest = sha256_digest(&bytes);
    let cfg = SearchConfig {
        restarts,
        seed,
        ..SearchConfig::default()
    };
    let report = match tol {
        Some(t) => certify_with_tol(&basis, &cfg, t),
        None => certify(&basis, &cfg),
    }
    .map_err(Failure::domain)?;
    let file = report_file(&report, &cfg, digest);
    write_output(out, &to_canonical_json(&file))?;
    Ok(match report.verdict {
        Verdict::CertifiedUmeb | Verdict::EvidenceUmeb | Verdict::CompleteBasis => 0,
        Verdict::FailedBasicChecks => 1,
        Verdict::Extendible => 2,
        Verdict::Inconclusive => 3,
    })
}

fn cmd_spectra(input: &Path, out: &Path) -> Result<u8, Failure> {
    let (basis, bytes) = load_basis(input)?;
    let digest = sha256_digest(&bytes);
    let profile = pair_product_spectra(&basis).map_err(Failure::domain)?;
    let file = spectra_file(&profile, digest);
    write_output(out, &to_canonical_json(&file))?;
    Ok(0)
}

fn cmd_compare(path_a: &Path, path_b: &Path, out: &Path) -> Result<u8, Failure> {
    let (a, bytes_a) = load_basis(path_a)?;
    let (b, bytes_b) = load_basis(path_b)?;
    let report = inequivalence_witness(&a, &b).map_err(Failure::domain)?;
    let file = compare_file(&report, sha256_digest(&bytes_a), sha256_digest(&bytes_b));
    write_output(out, &to_canonical_json(&file))?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Construct(args) => cmd_construct(args),
        Cmd::Certify {
            input,
            restarts,
            seed,
            tol,
            out,
        } => cmd_certify(&input, restarts, seed, tol, &out),
        Cmd::Spectra { input, out } => cmd_spectra(&input, &out),
        Cmd::Compare { a, b, out } => cmd_compare(&a, &b, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                ExitCode::SUCCESS
            } else {
                eprint!("{e}");
                ExitCode::from(EXIT_INPUT)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
