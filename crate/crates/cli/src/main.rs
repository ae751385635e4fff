//! `rotowave` — dispersion sweeps, linearized-fluid simulations and the
//! verification suite from the command line.
//!
//! Exit codes: 0 success, 1 verification-check failure, 2 usage or
//! config error.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rotowave_core::dispersion::{frequency_branches, phase_velocity};
use rotowave_core::planewave::{build_eigenmode, linearity_parameter};
use rotowave_core::simulator::{run, FieldState};
use rotowave_core::suite::{all_passed, run_suite, CheckStatus, Scope};
use rotowave_core::sweep::compute_rows;

#[derive(Parser)]
#[command(
    name = "rotowave",
    version,
    about = "Inertial-acoustic waves in a rotating compressible fluid: analytic dispersion, spectral simulation, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the dispersion relation over angles and wave numbers into a CSV table.
    Dispersion {
        /// JSON sweep config (alpha, c, theta_list, k_range).
        #[arg(long)]
        config: PathBuf,
        /// Output directory for dispersion.csv.
        #[arg(long)]
        out: PathBuf,
    },
    /// Integrate the linearized equations from an eigenmode initial condition.
    Simulate {
        /// JSON simulation config (alpha, c, grid, mode, dt_factor, n_steps, record_every, probe).
        #[arg(long)]
        config: PathBuf,
        /// Output directory for probe.csv, energy.csv and snapshots.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the verification suite and optionally write a JSON report.
    Verify {
        /// Which checks to run.
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScopeArg {
    Dispersion,
    Simulator,
    All,
}

impl ScopeArg {
    fn as_str(&self) -> &'static str {
        match self {
            ScopeArg::Dispersion => "dispersion",
            ScopeArg::Simulator => "simulator",
            ScopeArg::All => "all",
        }
    }
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Dispersion => Scope::Dispersion,
            ScopeArg::Simulator => Scope::Simulator,
            ScopeArg::All => Scope::All,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dispersion { config, out } => cmd_dispersion(&config, &out),
        Command::Simulate { config, out } => cmd_simulate(&config, &out),
        Command::Verify { scope, report } => return cmd_verify(scope, report.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_dispersion(config: &std::path::Path, out: &std::path::Path) -> Result<()> {
    let spec = config::load_sweep_spec(config)?;
    let rows = compute_rows(&spec)?;
    std::fs::create_dir_all(out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;
    let path = out.join("dispersion.csv");
    output::write_dispersion_csv(&path, &rows)?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn cmd_simulate(config: &std::path::Path, out: &std::path::Path) -> Result<()> {
    let setup = config::load_simulation(config)?;
    let params = setup.config.params;
    let gamma = frequency_branches(&params, setup.kvec)?.get(setup.branch);
    let mode = build_eigenmode(&params, setup.kvec, setup.branch)
        .context("config field mode: singular polarization")?;
    let initial = FieldState::from_mode(&setup.config.grid, &mode, setup.amplitude);

    // Nonlinearity diagnostic: fastest fluid particle over the phase speed.
    let vph = phase_velocity(setup.kvec, gamma)?.magnitude();
    let epsilon = linearity_parameter(initial.max_speed(), vph)?;
    println!("mode gamma = {gamma}");
    println!("epsilon = {epsilon}");
    if epsilon >= 0.1 {
        println!("warning: epsilon >= 0.1, the linearized equations are questionable at this amplitude");
    }

    let record = run(&setup.config, &initial)?;
    std::fs::create_dir_all(out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;
    output::write_probe_csv(&out.join("probe.csv"), &record)?;
    output::write_energy_csv(&out.join("energy.csv"), &record)?;
    output::write_snapshots(out, &setup.config.grid, &record)?;
    println!(
        "wrote probe.csv, energy.csv and {} snapshots to {}",
        record.snapshots.len(),
        out.display()
    );
    Ok(())
}

fn cmd_verify(scope: ScopeArg, report: Option<&std::path::Path>) -> ExitCode {
    let results = run_suite(scope.into());
    for r in &results {
        println!(
            "{} {:<42} measured {:>13.6e}  tolerance {:>9.3e}",
            match r.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            },
            r.name,
            r.measured,
            r.tolerance
        );
    }
    if let Some(path) = report {
        if let Err(err) = output::write_report_json(path, scope.as_str(), &results) {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    }
    if all_passed(&results) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
