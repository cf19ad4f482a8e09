//! Self-convergence study on a smooth perturbed flow.
//!
//! The bottom here is a Gaussian, not the benchmark bump: the bump's slope
//! kinks cap the observable order, and the study's purpose is to measure the
//! schemes' order on smooth data. The time step shrinks faster than dx so
//! the third-order integrator cannot cap the measured spatial slope before
//! it reaches the target range.

use crate::bathymetry::Bathymetry;
use crate::cases::BoundarySpec;
use crate::equilibrium::{depth_profile_at_nodes, EquilibriumVars, FlowRegime};
use crate::error::SolverError;
use crate::grid::{Grid, NUM_GHOST};
use crate::quadrature::{mean_of_nodes, mean_over};
use crate::state::ConservedState;
use crate::timestep::{Scheme, Simulation};

/// Background equilibrium of the study, subcritical over the whole bottom.
const STUDY_M: f64 = 4.42;
const STUDY_E: f64 = 22.06605;
/// Depth perturbation: amplitude, center, standard deviation.
const PULSE_AMP: f64 = 0.05;
const PULSE_CENTER: f64 = 6.0;
const PULSE_SIGMA: f64 = 0.4;
const STUDY_T_END: f64 = 0.5;
/// CFL at the anchor resolution; finer grids scale it by (50/N)^(1/3) so
/// dt shrinks like dx^(4/3) and the temporal error sits below slope 4.
const ANCHOR_CELLS: f64 = 50.0;
const ANCHOR_CFL: f64 = 0.6;

fn gauss_bottom(x: f64) -> f64 {
    0.2 * (-(x - 10.0) * (x - 10.0)).exp()
}

fn gauss_bottom_slope(x: f64) -> f64 {
    -2.0 * (x - 10.0) * gauss_bottom(x)
}

fn pulse(x: f64) -> f64 {
    let z = (x - PULSE_CENTER) / PULSE_SIGMA;
    PULSE_AMP * (-0.5 * z * z).exp()
}

fn study_cfl(n: usize) -> f64 {
    ANCHOR_CFL * (ANCHOR_CELLS / n as f64).cbrt()
}

/// Final depth field of the study flow at resolution `n`.
fn run_study(scheme: Scheme, n: usize) -> Result<Vec<f64>, SolverError> {
    let grid = Grid::new(0.0, 25.0, n)?;
    let bathy = Bathymetry::from_fn(
        &grid,
        crate::bathymetry::BottomMode::Reconstructed,
        gauss_bottom,
        gauss_bottom_slope,
    );
    let v = EquilibriumVars::new(STUDY_M, STUDY_E);
    let mut h = Vec::with_capacity(n);
    let mut hu = Vec::with_capacity(n);
    for i in 0..n {
        let j = i + NUM_GHOST;
        let (lo, hi) = grid.ext_bounds(j);
        let depths = depth_profile_at_nodes(v, FlowRegime::Subcritical, &bathy.at_nodes[j])?;
        h.push(mean_of_nodes(&depths) + mean_over(lo, hi, pulse));
        hu.push(STUDY_M);
    }
    let state = ConservedState::new(h, hu)?;
    let bc = BoundarySpec {
        inflow_discharge: STUDY_M,
        outflow_depth: 2.0,
    };
    let regimes = vec![FlowRegime::Subcritical; grid.n_ext()];
    let mut sim = Simulation::new(&grid, &bathy, bc, scheme, study_cfl(n), regimes)?;
    let (out, _) = sim.integrate(state, STUDY_T_END)?;
    Ok(out.h)
}

#[derive(Debug, Clone, Copy)]
pub struct OrderRow {
    pub n: usize,
    pub l1: f64,
    /// Rate against the previous row; empty on the first.
    pub rate: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct OrderTable {
    pub scheme: Scheme,
    pub rows: Vec<OrderRow>,
    /// Least-squares slope of ln(error) against ln(dx).
    pub slope: f64,
}

impl OrderTable {
    pub fn render(&self) -> String {
        let mut out = format!("# scheme={} slope={:.3}\n", self.scheme.tag(), self.slope);
        out.push_str("n,l1,rate\n");
        for row in &self.rows {
            match row.rate {
                Some(r) => out.push_str(&format!("{},{:.6e},{:.3}\n", row.n, row.l1, r)),
                None => out.push_str(&format!("{},{:.6e},\n", row.n, row.l1)),
            }
        }
        out
    }
}

/// L1 errors of `scheme` at the listed resolutions against its own solution
/// at `n_ref`, projected down by exact cell-average restriction.
pub fn convergence_study(
    scheme: Scheme,
    ns: &[usize],
    n_ref: usize,
) -> Result<OrderTable, SolverError> {
    if ns.len() < 4 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SolverError::InvalidConfig(
            "need at least four ascending resolutions".into(),
        ));
    }
    if n_ref <= *ns.last().unwrap() || ns.iter().any(|&n| n_ref % n != 0) {
        return Err(SolverError::InvalidConfig(format!(
            "reference resolution {n_ref} must be a strict multiple of every entry"
        )));
    }
    let fine = run_study(scheme, n_ref)?;
    let mut rows: Vec<OrderRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let coarse = run_study(scheme, n)?;
        let factor = n_ref / n;
        let mut l1 = 0.0;
        for i in 0..n {
            let mean: f64 =
                fine[i * factor..(i + 1) * factor].iter().sum::<f64>() / factor as f64;
            l1 += (coarse[i] - mean).abs();
        }
        // dx / domain length = 1 / n.
        l1 /= n as f64;
        let rate = rows.last().map(|prev: &OrderRow| {
            (prev.l1 / l1).ln() / (n as f64 / prev.n as f64).ln()
        });
        rows.push(OrderRow { n, l1, rate });
    }
    // Least squares of ln(e) = slope * ln(dx) + c.
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((25.0 / r.n as f64).ln(), r.l1.ln()))
        .collect();
    let count = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    Ok(OrderTable { scheme, rows, slope })
}
