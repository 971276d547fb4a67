use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use site_forge::commands::{run, Command, Guards, GUARD_VAR};
use site_forge::report::{Outcome, Report};

/// Finite sites, Karoubi envelopes, topology transfer and homogeneity checks.
///
/// Exit codes: 0 pass, 1 checked and failed (witness printed), 2 usage or
/// parse error, 3 size guard exceeded (raise with SITE_FORGE_GUARD).
#[derive(Parser)]
#[command(name = "site-forge", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a site document.
    Validate {
        file: PathBuf,
        /// Also print the document in canonical form.
        #[arg(long)]
        canonical: bool,
    },
    /// Print the Karoubi envelope of the category as a document.
    Karoubi { file: PathBuf },
    /// Transfer topologies to the Karoubi envelope, with certificates.
    Transfer {
        file: PathBuf,
        /// Only this topology (default: all).
        #[arg(long)]
        topology: Option<String>,
    },
    /// Check the topology axioms.
    CheckTopology {
        file: PathBuf,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Check the right Ore condition.
    CheckOre { file: PathBuf },
    /// List every topology on the category.
    EnumerateTopologies { file: PathBuf },
    /// Check that a declared functor is flat.
    CheckFlat {
        file: PathBuf,
        #[arg(long)]
        functor: String,
    },
    /// Check the Yoneda bijection for the declared presheaves (or the
    /// representables when none are declared).
    YonedaCheck { file: PathBuf },
    /// Check a linear order for homogeneity over finite ordinals.
    CheckHomogeneous {
        /// ordfm:N
        #[arg(long)]
        site: String,
        /// Q, Z or chain:k
        #[arg(long)]
        model: String,
        /// Use the cosieve form with the given cotopology (only `atomic`).
        #[arg(long)]
        cotopology: Option<String>,
    },
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Validate { file, canonical } => Command::Validate { file, canonical },
            Cmd::Karoubi { file } => Command::Karoubi { file },
            Cmd::Transfer { file, topology } => Command::Transfer { file, topology },
            Cmd::CheckTopology { file, topology } => Command::CheckTopology { file, topology },
            Cmd::CheckOre { file } => Command::CheckOre { file },
            Cmd::EnumerateTopologies { file } => Command::EnumerateTopologies { file },
            Cmd::CheckFlat { file, functor } => Command::CheckFlat { file, functor },
            Cmd::YonedaCheck { file } => Command::YonedaCheck { file },
            Cmd::CheckHomogeneous { site, model, cotopology } => Command::CheckHomogeneous { site, model, cotopology },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Command = cli.command.into();
    let report = match Guards::from_value(std::env::var(GUARD_VAR).ok().as_deref()) {
        Ok(guards) => run(&command, &guards),
        Err(message) => Report::error(command.name(), Outcome::Error, "usage", vec![("message", message.into())]),
    };
    if cli.json {
        print!("{}", report.to_json());
    } else if report.outcome == Outcome::Error {
        eprint!("{}", report.to_text());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
