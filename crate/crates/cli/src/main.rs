//! `twoarr`: cohomology presentations and invariants of 2-arrangements.
//!
//! Exit codes: 0 success (or no difference found by `compare`), 2 the input
//! is not an admissible arrangement, 3 usage or parse error, 10 `compare`
//! found a distinguishing invariant.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use twoarr::{Arrangement, CompareOptions, Mode, Verdict};

mod report;

use report::Report;

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_DISTINGUISHED: u8 = 10;

#[derive(Debug, Parser)]
#[command(name = "twoarr", version, about = "Cohomology and link invariants of 2-arrangements")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Real,
    Complex,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check admissibility and list every violated condition.
    Validate { file: PathBuf },
    /// Intersection lattice: flats by rank, covers, Moebius values.
    Lattice { file: PathBuf },
    /// Circuits of the matroid.
    Circuits { file: PathBuf },
    /// Betti numbers and the no-broken-circuit basis.
    Betti {
        file: PathBuf,
        /// Linear order for broken circuits, as comma-separated labels
        /// (names or one-based positions), smallest first.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// Signed relations of the cohomology ring, one per circuit.
    Present {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Real)]
        mode: ModeArg,
        /// Rescale each relation so its first coefficient is positive.
        #[arg(long)]
        normalize_signs: bool,
    },
    /// Multiplication pairing on degree-two relations and its rank.
    Kappa { file: PathBuf },
    /// Pairwise linking signs and triple coefficients (R^4 only).
    Linking { file: PathBuf },
    /// Restrict to one member; prints an arrangement file.
    Restrict {
        file: PathBuf,
        /// Member to restrict to: a name or a one-based position.
        #[arg(long)]
        index: String,
    },
    /// Compare every computed invariant of two arrangements.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Search label permutations (at most 8 members) for a matroid
        /// isomorphism.
        #[arg(long)]
        permutation_search: bool,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Arrangement, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    twoarr::parse_arrangement(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<Arrangement, Failure> {
    let arr = load(path)?;
    let report = twoarr::validate(&arr);
    if report.is_admissible() {
        Ok(arr)
    } else {
        Err(Failure {
            code: EXIT_INVALID,
            message: format!("{}: arrangement is not admissible\n{report}", path.display()),
        })
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let mut code = EXIT_OK;
    let report: Report = match &cli.command {
        Command::Validate { file } => {
            let arr = load(file)?;
            let v = twoarr::validate(&arr);
            if !v.is_admissible() {
                code = EXIT_INVALID;
            }
            report::validate(&arr, &v)
        }
        Command::Lattice { file } => report::lattice(&load_valid(file)?),
        Command::Circuits { file } => report::circuits(&load_valid(file)?),
        Command::Betti { file, order } => {
            let arr = load_valid(file)?;
            let order = match order {
                Some(labels) => labels
                    .iter()
                    .map(|l| arr.index_of(l.trim()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(Failure::usage)?,
                None => (0..arr.len()).collect(),
            };
            let nbc = twoarr::nbc_sets_with_order(&arr, &order).map_err(Failure::usage)?;
            report::betti(&arr, &nbc)
        }
        Command::Present {
            file,
            mode,
            normalize_signs,
        } => {
            let arr = load_valid(file)?;
            let mode = match mode {
                ModeArg::Real => Mode::Real,
                ModeArg::Complex => Mode::Complex,
            };
            let mut pres = twoarr::full_presentation(&arr, mode).map_err(Failure::usage)?;
            if *normalize_signs {
                pres = pres.normalized();
            }
            let nbc_ok = twoarr::nbc_basis_check(&arr).map_err(Failure::usage)?;
            report::present(&pres, nbc_ok)
        }
        Command::Kappa { file } => {
            let arr = load_valid(file)?;
            let k = twoarr::kappa(&arr).map_err(Failure::usage)?;
            report::kappa(&k)
        }
        Command::Linking { file } => {
            let arr = load_valid(file)?;
            let data = twoarr::linking_data(&arr).map_err(Failure::usage)?;
            report::linking(&data)
        }
        Command::Restrict { file, index } => {
            let arr = load_valid(file)?;
            let at = arr.index_of(index).map_err(Failure::usage)?;
            let restricted = twoarr::restrict(&arr, at).map_err(Failure::usage)?;
            out.write_all(twoarr::to_document(&restricted).as_bytes())
                .map_err(Failure::usage)?;
            return Ok(code);
        }
        Command::Compare {
            first,
            second,
            permutation_search,
        } => {
            let a = load_valid(first)?;
            let b = load_valid(second)?;
            let options = CompareOptions {
                permutation_search: *permutation_search,
            };
            let rep = twoarr::compare(&a, &b, options).map_err(Failure::usage)?;
            if rep.verdict == Verdict::Distinguished {
                code = EXIT_DISTINGUISHED;
            }
            report::compare(&rep)
        }
    };
    let rendered = match cli.format {
        Format::Text => report.text,
        Format::Json => twoarr::json::pretty(&report.json),
    };
    out.write_all(rendered.as_bytes()).map_err(Failure::usage)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("twoarr: {}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}
