mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use report::RunReport;

/// Exact checks of plane-curve monodromy relations, with JSON reports.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on invalid input.
#[derive(Debug, Parser)]
#[command(name = "monodromy", version)]
struct Cli {
    /// Add wall-clock durations to the report (the output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The graph Γ_d and its realization by vanishing cycles.
    #[command(subcommand)]
    Lonne(LonneCommand),
    /// Relation checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Spin structures and the winding obstruction.
    #[command(subcommand)]
    Spin(SpinCommand),
    /// Stabilizer of the odd spin structure at d = 5.
    Beauville {
        #[arg(long)]
        d: u32,
        /// Fixture document; defaults to the shipped one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Recipes and the eight bounding-pair cases on the degree-5 fixture.
    Johnson {
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Run every acceptance check.
    Report {
        #[arg(long, required = true)]
        all: bool,
    },
}

#[derive(Debug, Subcommand)]
enum LonneCommand {
    Graph {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Realize {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        out: PathBuf,
    },
    Census {
        #[arg(long)]
        d: u32,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    Relations {
        #[arg(long)]
        d: u32,
    },
    Star {
        #[arg(long)]
        g: usize,
    },
    Flap {
        #[arg(long)]
        g: usize,
    },
    Chain {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SpinCommand {
    Census {
        #[arg(long)]
        g: usize,
    },
    Obstruction {
        #[arg(long)]
        d: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Output {
    Report(RunReport),
    Text(String),
}

fn dispatch(cli: &Cli) -> Result<Output> {
    use commands as c;
    let r = match &cli.command {
        Command::Lonne(LonneCommand::Graph { d, format: Format::Dot }) => return Ok(Output::Text(c::graph_dot(*d)?)),
        Command::Lonne(LonneCommand::Graph { d, format: Format::Json }) => c::graph(*d)?,
        Command::Lonne(LonneCommand::Realize { d, out }) => c::realize_to(*d, out)?,
        Command::Lonne(LonneCommand::Census { d }) => c::census(*d)?,
        Command::Verify(VerifyCommand::Relations { d }) => c::relations(*d)?,
        Command::Verify(VerifyCommand::Star { g }) => c::star(*g)?,
        Command::Verify(VerifyCommand::Flap { g }) => c::flap(*g)?,
        Command::Verify(VerifyCommand::Chain { k }) => c::chain(*k)?,
        Command::Spin(SpinCommand::Census { g }) => c::spin(*g)?,
        Command::Spin(SpinCommand::Obstruction { d }) => c::obstruction(*d)?,
        Command::Beauville { d, fixture } => c::beauville(*d, fixture.as_deref())?,
        Command::Johnson { fixture } => c::johnson(fixture.as_deref())?,
        Command::Report { .. } => c::report_all(cli.timing)?,
    };
    Ok(Output::Report(r))
}

/// Invalid input and resource limits exit with 2, internal failures with 1.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<monodromy_core::Error>() {
            return match e {
                monodromy_core::Error::InvalidInput(_) | monodromy_core::Error::Resource(_) => 2,
                monodromy_core::Error::Internal(_) => 1,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(mut r)) => {
            if cli.timing {
                r.duration_ms = Some(start.elapsed().as_millis() as u64);
            }
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(r.to_json().as_bytes());
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
