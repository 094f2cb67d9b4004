//! `chlab`: orbit tables, filtered homology and verification reports for
//! the quotients S³/G.

mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chlab_core::verify::VerifyOptions;
use chlab_core::{Error, GroupSpec, CHECKS};

use render::Format;

/// Exit status when a check or closed-form comparison fails.
const EXIT_VIOLATION: u8 = 1;
/// Exit status for malformed input.
const EXIT_USAGE: u8 = 2;
/// Exit status when a numerical tolerance aborts a computation.
const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "chlab", version)]
#[command(about = "Filtered cylindrical contact homology of S^3/G for finite G in SU(2)")]
struct Cli {
    /// Output format.
    #[arg(short = 'f', long, global = true, value_enum, default_value_t = Format::Markdown)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the Reeb orbits below the action threshold L_N.
    Orbits {
        /// Group spec: C:<n>, D:<n>, T, O or I.
        #[arg(short = 'g', long, value_parser = parse_group)]
        group: GroupSpec,
        /// Threshold level N.
        #[arg(short = 'N', long, default_value_t = 1)]
        levels: u32,
    },
    /// Filtered homology ranks and the closed-form comparison.
    Homology {
        /// Group spec: C:<n>, D:<n>, T, O or I.
        #[arg(short = 'g', long, value_parser = parse_group)]
        group: GroupSpec,
        /// Threshold level N.
        #[arg(short = 'N', long, default_value_t = 1)]
        levels: u32,
    },
    /// Critical points and flow-line counts of the invariant Morse function.
    Morse {
        /// Group spec: C:<n>, D:<n>, T, O or I.
        #[arg(short = 'g', long, value_parser = parse_group)]
        group: GroupSpec,
        /// Include trajectory polylines (JSON only).
        #[arg(long)]
        trajectories: bool,
    },
    /// Run verification suites.
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        which: Check,
        /// Seed for random instances.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest threshold level for monotonicity.
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        /// Fourier truncation order for spectral flow.
        #[arg(long, default_value_t = 32)]
        fourier_modes: usize,
        /// Relative tolerance for the crossing sign comparison.
        #[arg(long, default_value_t = chlab_core::czengine::spectral::SIGN_LEMMA_TOL)]
        tolerance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Monotonicity,
    CzEngine,
    SpectralFlow,
    Axioms,
    SignLemma,
    Morse,
    Seifert,
    Mckay,
    All,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::All => "all",
            other => CHECKS[other as usize],
        }
    }
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("CHLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| format!("CHLAB_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::InvalidInput(_) => EXIT_USAGE,
        e if e.is_numeric() => EXIT_NUMERIC,
        _ => EXIT_VIOLATION,
    }
}

fn run(cli: Cli) -> Result<(String, bool), Error> {
    let format = cli.format;
    match cli.command {
        Command::Orbits { group, levels } => Ok((render::orbits(&group, levels, format)?, true)),
        Command::Homology { group, levels } => render::homology(&group, levels, format),
        Command::Morse {
            group,
            trajectories,
        } => Ok((render::morse(&group, trajectories, format)?, true)),
        Command::Verify {
            which,
            seed,
            nmax,
            fourier_modes,
            tolerance,
        } => {
            let opts = VerifyOptions {
                seed,
                n_max: nmax,
                fourier_modes,
                tolerance,
                ..VerifyOptions::default()
            };
            let reports = chlab_core::run_check(which.name(), &opts)?;
            let ok = reports.iter().all(|r| r.passed());
            Ok((render::reports(&reports, &opts, format), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(exit_code(&Error::InvalidInput("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::NoCrossingFound), EXIT_VIOLATION);
        let numeric = Error::UnwrapFailure {
            step: 3,
            increment: 2.0,
        };
        assert!(numeric.is_numeric());
        assert_eq!(exit_code(&numeric), EXIT_NUMERIC);
    }

    #[test]
    fn check_names_line_up() {
        for (i, c) in Check::value_variants().iter().enumerate() {
            if *c != Check::All {
                assert_eq!(c.name(), CHECKS[i]);
            }
        }
        assert_eq!(Check::value_variants().len(), CHECKS.len() + 1);
    }
}
