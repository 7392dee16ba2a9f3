use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use loghankel::families::{Family, NamedFunction, DEFAULT_ORDER};
use loghankel::output::{eval_function, sample_csv, surface_csv, write_atomic};
use loghankel::verify::{run_verification, FamilySelection, VerifyOptions, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_SURFACE_GRID};

/// Verification toolkit for Hankel determinants of logarithmic
/// coefficients on the classes S*_S and K_S.
#[derive(Debug, Parser)]
#[command(name = "loghankel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ss,
    Ks,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Ss => Family::StarlikeSym,
            FamilyArg::Ks => Family::ConvexSym,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilySelectionArg {
    Ss,
    Ks,
    All,
}

impl From<FamilySelectionArg> for FamilySelection {
    fn from(f: FamilySelectionArg) -> Self {
        match f {
            FamilySelectionArg::Ss => FamilySelection::Ss,
            FamilySelectionArg::Ks => FamilySelection::Ks,
            FamilySelectionArg::All => FamilySelection::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FunctionArg {
    F1,
    F2,
    F3,
    F4,
    Koebe,
}

impl From<FunctionArg> for NamedFunction {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::F1 => NamedFunction::F1,
            FunctionArg::F2 => NamedFunction::F2,
            FunctionArg::F3 => NamedFunction::F3,
            FunctionArg::F4 => NamedFunction::F4,
            FunctionArg::Koebe => NamedFunction::Koebe,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every verification claim and print a pass/fail summary.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        family: FamilySelectionArg,
        /// Realizable Schwarz samples per family for the stress test.
        #[arg(long, default_value_t = DEFAULT_SAMPLES as u64, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Grid resolution for the surface maximization.
        #[arg(long, default_value_t = DEFAULT_SURFACE_GRID as u64, value_parser = clap::value_parser!(u64).range(101..))]
        grid: u64,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exact logarithmic coefficients and H21 of a named function.
    Eval {
        #[arg(long, value_enum)]
        function: FunctionArg,
        #[arg(long, default_value_t = DEFAULT_ORDER as u64, value_parser = clap::value_parser!(u64).range(6..))]
        order: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate F (ss) or G (ks) over the region as CSV.
    Surface {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = DEFAULT_SURFACE_GRID as u64, value_parser = clap::value_parser!(u64).range(2..))]
        grid: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write Schur samples, their Schwarz coefficients and H21 as CSV.
    Sample {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = DEFAULT_SAMPLES as u64, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Verify { family, samples, seed, grid, json } => {
            let options = VerifyOptions {
                family: family.into(),
                samples: samples as usize,
                seed,
                surface_grid: grid as usize,
            };
            let report = run_verification(&options)?;
            print!("{}", report.summary());
            if let Some(path) = json {
                write_atomic(&path, &report.to_json())?;
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Eval { function, order, json } => {
            let report = eval_function(function.into(), order as usize)?;
            print!("{}", report.summary());
            if let Some(path) = json {
                write_atomic(&path, &report.to_json())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Surface { family, grid, out } => {
            write_atomic(&out, &surface_csv(family.into(), grid as usize)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample { family, count, seed, out } => {
            write_atomic(&out, &sample_csv(family.into(), count as usize, seed)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
