use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mmlink::{load_scenario, run_file, CliError, Command, RunOptions};

#[derive(Parser)]
#[command(
    name = "mmlink",
    version,
    about = "Millimetre-wave link budgets, BER curves and coverage sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML).
    scenario: PathBuf,
    /// Directory for CSV and SVG output; overrides `[output].dir`.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Monte Carlo worker threads; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    /// Append scalar results to this file as CSV rows.
    #[arg(long)]
    record: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Free-space path loss.
    Fspl(Common),
    /// Effective isotropic radiated power.
    Eirp(Common),
    /// Received signal level.
    Rsl(Common),
    /// Barnett-Vignant fade margin.
    FadeMargin(Common),
    /// Direct plus reflected ray power ratio.
    TwoRay(Common),
    /// Analytic BER and required SNR.
    BerTheory(Common),
    /// Monte Carlo BER.
    BerSim(Common),
    /// Shannon capacity at a distance or over a distance sweep.
    Capacity(Common),
    /// Coverage radius per modulation.
    Coverage(Common),
    /// Run the scenario's sweep.
    Sweep(Common),
    /// Print the scenario in canonical form.
    Canonical { scenario: PathBuf },
}

fn execute(cmd: Cmd) -> Result<(), CliError> {
    let (command, common) = match cmd {
        Cmd::Canonical { scenario } => {
            print!("{}", load_scenario(&scenario)?.to_canonical());
            return Ok(());
        }
        Cmd::Fspl(c) => (Command::Fspl, c),
        Cmd::Eirp(c) => (Command::Eirp, c),
        Cmd::Rsl(c) => (Command::Rsl, c),
        Cmd::FadeMargin(c) => (Command::FadeMargin, c),
        Cmd::TwoRay(c) => (Command::TwoRay, c),
        Cmd::BerTheory(c) => (Command::BerTheory, c),
        Cmd::BerSim(c) => (Command::BerSim, c),
        Cmd::Capacity(c) => (Command::Capacity, c),
        Cmd::Coverage(c) => (Command::Coverage, c),
        Cmd::Sweep(c) => (Command::Sweep, c),
    };
    if common.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let opts = RunOptions {
        out_dir: common.out_dir,
        stem: String::new(),
        workers: common.workers,
        record: common.record,
    };
    let outcome = run_file(command, &common.scenario, &opts)?;
    for line in &outcome.summary {
        println!("{line}");
    }
    for file in &outcome.files {
        eprintln!("wrote {}", file.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
