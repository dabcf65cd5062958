//! `coprimator`: coprime-order commutator analysis of permutation groups.
//!
//! Exit status 0 on success, 1 when the analysis finds a violated
//! expectation, 2 on usage or input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{render_text, ReportEnvelope, Timing};

#[derive(Debug, Parser)]
#[command(
    name = "coprimator",
    version,
    about = "Coprime-order commutators in finite permutation groups"
)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest group any enumeration may produce.
    #[arg(long, global = true, env = "COPRIMATOR_MAX_ELEMENTS", default_value_t = coprimator_core::group::DEFAULT_ELEMENT_CAP)]
    max_elements: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GroupArg {
    /// Group definition file.
    #[arg(long, value_name = "FILE")]
    group: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gamma,
    Delta,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, nilpotency, solubility, Fitting height and series.
    Analyze {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Size of a star-commutator set and the primes dividing its orders.
    Star {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        k: usize,
        /// Also compute the generated subgroup.
        #[arg(long)]
        subgroup: bool,
    },
    /// Compare the first trivial delta* level with the Fitting height.
    Height {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        k_max: usize,
    },
    /// Write an even permutation as [y, b], |y| odd, |b| dividing 4.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "CYCLES")]
        perm: String,
        /// Write the certificate line to this file.
        #[arg(long, value_name = "OUT")]
        certificate: Option<PathBuf>,
    },
    /// Re-verify certificate lines without rebuilding them.
    WitnessCheck {
        #[arg(long, value_name = "FILE")]
        certificate: PathBuf,
        /// Degree; inferred from each line when omitted.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build and verify witnesses for all of A_n, or one per cycle type.
    WitnessSweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cycle_types_only: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check that every element is a commutator of coprime-order elements.
    Conjecture {
        /// Catalog group name, e.g. `alternating(5)` or `psl27`.
        #[arg(
            long,
            value_name = "NAME",
            conflicts_with = "group",
            required_unless_present = "group"
        )]
        catalog: Option<String>,
        #[arg(long, value_name = "FILE")]
        group: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Built-in groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let json = cli.json;
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if json {
        let env = ReportEnvelope {
            command: outcome.command.to_string(),
            argv: argv[1..].to_vec(),
            input_digest: outcome.digest,
            results: outcome.results,
            timing: Timing {
                elapsed_ms: start.elapsed().as_millis() as u64,
            },
            version: env!("CARGO_PKG_VERSION"),
        };
        println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
    } else {
        print!("{}", render_text(&outcome.results));
    }
    if outcome.violated {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
