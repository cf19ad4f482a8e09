use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use swe1d::config::{load_config_file, parse_bottom, ConfigOverlay};
use swe1d::run::{run_case, run_sweep};
use swe1d::{FlowCase, Scheme, SolverError};

#[derive(Parser)]
#[command(
    name = "swe1d",
    about = "Finite volume workbench for 1D shallow water flows over a bump",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one benchmark case and write a CSV of the final state.
    Run(RunArgs),
    /// Run a predefined study matrix.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Optional key=value file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Benchmark case: a, b, c, or lake.
    #[arg(long)]
    case: Option<String>,
    /// Scheme: still, moving, or oracle1.
    #[arg(long)]
    scheme: Option<String>,
    /// Interior cell count (minimum 25).
    #[arg(long)]
    cells: Option<usize>,
    /// Depth perturbation amplitude over [5.75, 6.25].
    #[arg(long)]
    amp: Option<f64>,
    /// Final time.
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// CFL number in (0, 1].
    #[arg(long)]
    cfl: Option<f64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the unperturbed background state next to the output.
    #[arg(long)]
    emit_reference: bool,
    /// Interface bottom values: reconstructed or sampled.
    #[arg(long)]
    bottom: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    /// Study matrix: wellbalance, convergence, or paper-figs.
    #[arg(long)]
    study: String,
    /// Directory the study writes its artifacts into.
    #[arg(long, default_value = "sweep-out")]
    out_dir: PathBuf,
}

fn cli_overlay(args: &RunArgs) -> Result<ConfigOverlay, SolverError> {
    let case = match &args.case {
        Some(tag) => Some(FlowCase::parse(tag).ok_or_else(|| {
            SolverError::InvalidConfig(format!("unknown case {tag}; expected a, b, c, or lake"))
        })?),
        None => None,
    };
    let scheme = match &args.scheme {
        Some(tag) => Some(Scheme::parse(tag).ok_or_else(|| {
            SolverError::InvalidConfig(format!(
                "unknown scheme {tag}; expected still, moving, or oracle1"
            ))
        })?),
        None => None,
    };
    let bottom = match &args.bottom {
        Some(tag) => Some(parse_bottom(tag).ok_or_else(|| {
            SolverError::InvalidConfig(format!(
                "unknown bottom mode {tag}; expected reconstructed or sampled"
            ))
        })?),
        None => None,
    };
    Ok(ConfigOverlay {
        case,
        scheme,
        n_cells: args.cells,
        amplitude: args.amp,
        t_end: args.t_end,
        cfl: args.cfl,
        out: args.out.clone(),
        emit_reference: if args.emit_reference { Some(true) } else { None },
        bottom,
    })
}

fn execute(cli: Cli) -> Result<(), SolverError> {
    match cli.command {
        Command::Run(args) => {
            let file = match &args.config {
                Some(path) => load_config_file(path)?,
                None => ConfigOverlay::default(),
            };
            let config = file.merged_under(cli_overlay(&args)?).resolve()?;
            let artifacts = run_case(&config)?;
            println!("wrote {}", artifacts.out.display());
            if let Some(path) = &artifacts.reference_out {
                println!("wrote {}", path.display());
            }
            println!(
                "steps={} max_dh={:.3e} at x={:.4} spurious_dh={:.3e} l1_dh={:.3e}",
                artifacts.log.steps,
                artifacts.report.max_dh,
                artifacts.report.argmax_x,
                artifacts.report.spurious_dh,
                artifacts.report.l1_dh,
            );
            let diag = artifacts.log.diagnostics;
            if diag.total() > 0 {
                eprintln!(
                    "warning: balance fallbacks taken (reference={} profile={} transform={} source={})",
                    diag.reference_fallbacks,
                    diag.profile_fallbacks,
                    diag.transform_fallbacks,
                    diag.source_fallbacks
                );
            }
            Ok(())
        }
        Command::Sweep(args) => {
            for line in run_sweep(&args.study, &args.out_dir)? {
                println!("{line}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
