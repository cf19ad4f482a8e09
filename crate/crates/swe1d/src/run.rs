//! End-to-end benchmark pipeline: build, perturb, integrate, measure, emit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::bathymetry::Bathymetry;
use crate::config::RunConfig;
use crate::convergence::convergence_study;
use crate::error::SolverError;
use crate::profile::steady_profile;
use crate::report::{deviation, pulse_window, DeviationReport};
use crate::state::apply_perturbation;
use crate::timestep::{Scheme, Simulation, StepLog};

/// Everything a finished run leaves behind.
pub struct RunArtifacts {
    pub report: DeviationReport,
    pub log: StepLog,
    pub out: PathBuf,
    pub reference_out: Option<PathBuf>,
}

/// Runs one configured case and writes its CSV artifact(s).
pub fn run_case(config: &RunConfig) -> Result<RunArtifacts, SolverError> {
    config.validate()?;
    let spec = config.case_spec();
    let grid = spec.grid()?;
    let bathy = Bathymetry::bump(&grid, config.bottom);
    let profile = steady_profile(&spec, &grid)?;
    let reference = profile.initial_state(&bathy)?;
    let mut state = reference.clone();
    apply_perturbation(&mut state, &grid, spec.amplitude, spec.interval);

    let mut sim = Simulation::new(
        &grid,
        &bathy,
        spec.boundary(),
        config.scheme,
        spec.cfl,
        profile.regimes.clone(),
    )?;
    let (final_state, log) = sim.integrate(state, spec.t_end)?;

    let window = pulse_window(&profile, &grid, spec.interval, spec.t_end)?;
    let report = deviation(&final_state, &reference, &grid, &bathy, window)?;

    std::fs::write(&config.out, render_csv(config, &report, &log))?;
    let reference_out = if config.emit_reference {
        let path = sibling_path(&config.out, "reference");
        let ref_report = deviation(&reference, &reference, &grid, &bathy, window)?;
        std::fs::write(&path, render_csv(config, &ref_report, &log))?;
        Some(path)
    } else {
        None
    };
    Ok(RunArtifacts {
        report,
        log,
        out: config.out.clone(),
        reference_out,
    })
}

/// `dir/name.csv` -> `dir/name.tag.csv`.
fn sibling_path(out: &Path, tag: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("out");
    out.with_file_name(format!("{stem}.{tag}.csv"))
}

/// CSV text: `#` header lines carrying the configuration echo and scalar
/// metrics, then one row per cell. Fixed formatting keeps identical runs
/// byte-identical.
pub fn render_csv(config: &RunConfig, report: &DeviationReport, log: &StepLog) -> String {
    let mut out = String::new();
    out.push_str("# swe1d run\n");
    let _ = writeln!(out, "# {}", config.echo());
    let _ = writeln!(
        out,
        "# steps={} min_depth={:.16e} reference_fallbacks={} profile_fallbacks={} transform_fallbacks={} source_fallbacks={}",
        log.steps,
        log.min_depth,
        log.diagnostics.reference_fallbacks,
        log.diagnostics.profile_fallbacks,
        log.diagnostics.transform_fallbacks,
        log.diagnostics.source_fallbacks,
    );
    let _ = writeln!(
        out,
        "# window_lo={:.16e} window_hi={:.16e} window_pad={:.16e} max_dh={:.16e} argmax_x={:.16e} spurious_dh={:.16e} l1_dh={:.16e} l1_dm={:.16e}",
        report.window.0,
        report.window.1,
        crate::report::WINDOW_PAD,
        report.max_dh,
        report.argmax_x,
        report.spurious_dh,
        report.l1_dh,
        report.l1_dm,
    );
    out.push_str("x,h,hu,b,surface,dh,dm\n");
    for i in 0..report.x.len() {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            report.x[i],
            report.h[i],
            report.hu[i],
            report.b[i],
            report.h[i] + report.b[i],
            report.dh[i],
            report.dm[i],
        );
    }
    out
}

fn overlay_for(
    case: crate::cases::FlowCase,
    scheme: Scheme,
    n_cells: Option<usize>,
    amplitude: f64,
    out: PathBuf,
) -> crate::config::ConfigOverlay {
    crate::config::ConfigOverlay {
        case: Some(case),
        scheme: Some(scheme),
        n_cells,
        amplitude: Some(amplitude),
        out: Some(out),
        ..Default::default()
    }
}

/// Runs one of the predefined study matrices into `out_dir`; returns the
/// summary lines it printed to the artifacts.
pub fn run_sweep(study: &str, out_dir: &Path) -> Result<Vec<String>, SolverError> {
    std::fs::create_dir_all(out_dir)?;
    let mut lines = Vec::new();
    match study {
        "wellbalance" => {
            use crate::cases::FlowCase::*;
            for case in [Subcritical, Transcritical, TranscriticalShock, LakeAtRest] {
                for scheme in [Scheme::StillWater, Scheme::MovingWater] {
                    let out = out_dir
                        .join(format!("steady-{}-{}.csv", case.tag(), scheme.tag()));
                    let config = overlay_for(case, scheme, None, 0.0, out).resolve()?;
                    let art = run_case(&config)?;
                    lines.push(format!(
                        "case={} scheme={} max_dh={:.3e} l1_dh={:.3e} steps={}",
                        case.tag(),
                        scheme.tag(),
                        art.report.max_dh,
                        art.report.l1_dh,
                        art.log.steps,
                    ));
                }
            }
        }
        "convergence" => {
            let ns = [50, 100, 200, 400];
            for scheme in [Scheme::StillWater, Scheme::MovingWater, Scheme::FirstOrder] {
                let table = convergence_study(scheme, &ns, 3200)?;
                std::fs::write(
                    out_dir.join(format!("order-{}.csv", scheme.tag())),
                    table.render(),
                )?;
                lines.push(format!(
                    "scheme={} slope={:.3}",
                    scheme.tag(),
                    table.slope
                ));
            }
        }
        "paper-figs" => {
            use crate::cases::FlowCase::Subcritical;
            let matrix: [(usize, f64); 4] =
                [(100, 0.05), (1000, 0.05), (100, 0.001), (200, 0.001)];
            for (n, amp) in matrix {
                for scheme in [Scheme::StillWater, Scheme::MovingWater] {
                    let out = out_dir.join(format!(
                        "pulse-a-{}-n{}-amp{}.csv",
                        scheme.tag(),
                        n,
                        amp
                    ));
                    let config =
                        overlay_for(Subcritical, scheme, Some(n), amp, out).resolve()?;
                    let art = run_case(&config)?;
                    lines.push(format!(
                        "case=a scheme={} cells={} amp={} spurious_dh={:.3e} max_dh={:.3e}",
                        scheme.tag(),
                        n,
                        amp,
                        art.report.spurious_dh,
                        art.report.max_dh,
                    ));
                }
            }
        }
        other => {
            return Err(SolverError::InvalidConfig(format!(
                "unknown study {other}; expected wellbalance, convergence, or paper-figs"
            )))
        }
    }
    Ok(lines)
}
