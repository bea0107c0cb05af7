use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use phonon_designer::{execute, Command, PulseChoice, RegimeChoice, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "designer",
    version,
    about = "Error budget, quantum volume and hardware feasibility datasets"
)]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,
    /// JSON parameter file.
    #[arg(long)]
    params: PathBuf,
    /// Output file (CSV for curves, JSON for reports).
    #[arg(long)]
    out: PathBuf,
    /// Run a single regime instead of mechanical and microwave side by side.
    #[arg(long, value_enum)]
    regime: Option<RegimeArg>,
    #[arg(long)]
    n_min: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    /// Pulse shape for `simulate`; both when omitted.
    #[arg(long, value_enum)]
    pulse: Option<PulseArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CommandArg {
    Optimize,
    Volume,
    Feasibility,
    Simulate,
    Schedule,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegimeArg {
    Mechanical,
    Microwave,
    Custom,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PulseArg {
    Rect,
    Cosine,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: match cli.command {
                CommandArg::Optimize => Command::Optimize,
                CommandArg::Volume => Command::Volume,
                CommandArg::Feasibility => Command::Feasibility,
                CommandArg::Simulate => Command::Simulate,
                CommandArg::Schedule => Command::Schedule,
            },
            params: cli.params,
            out: cli.out,
            regime: cli.regime.map(|r| match r {
                RegimeArg::Mechanical => RegimeChoice::Mechanical,
                RegimeArg::Microwave => RegimeChoice::Microwave,
                RegimeArg::Custom => RegimeChoice::Custom,
            }),
            n_min: cli.n_min,
            n_max: cli.n_max,
            pulse: cli.pulse.map(|p| match p {
                PulseArg::Rect => PulseChoice::Rect,
                PulseArg::Cosine => PulseChoice::Cosine,
            }),
        }
    }
}

fn main() -> ExitCode {
    let cfg: RunConfig = Cli::parse().into();
    match execute(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            if !outcome.summary.ends_with('\n') {
                println!();
            }
            for a in &outcome.artifacts {
                println!("wrote {}", a.path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
