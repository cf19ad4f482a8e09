//! Scheme balancing water at rest: surface-based reconstruction with the
//! bottom rebuilt by the same frozen stencil operator, dissipation on the
//! surface, and a split source whose pieces cancel the flux divergence
//! exactly on a flat surface.

use crate::bathymetry::{Bathymetry, BottomMode};
use crate::boundary::ExtendedState;
use crate::cases::BoundarySpec;
use crate::error::SolverError;
use crate::grid::{Grid, NUM_GHOST};
use crate::quadrature::{GAUSS_NODES, GAUSS_WEIGHTS};
use crate::schemes::{max_wave_speed, momentum_flux, wave_speed, Tendency};
use crate::state::ConservedState;
use crate::weno::{apply_frozen, frozen_weights, quartic_slope_coeffs, quartic_value_coeffs};
use crate::GRAVITY;

/// Dissipation speed used by the interface flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMode {
    /// One speed per tendency evaluation, the maximum over all cells.
    Global,
    /// Per-interface speed from the two face states.
    Local,
}

/// Interface flux with dissipation acting on (surface, discharge) rather
/// than (depth, discharge); a flat surface therefore produces no mass flux
/// regardless of the bottom jump underneath.
pub fn lf_flux(
    h_minus: f64,
    q_minus: f64,
    surface_minus: f64,
    h_plus: f64,
    q_plus: f64,
    surface_plus: f64,
    alpha: f64,
) -> (f64, f64) {
    let f1 = 0.5 * (q_minus + q_plus - alpha * (surface_plus - surface_minus));
    let f2 = 0.5
        * (momentum_flux(h_minus, q_minus) + momentum_flux(h_plus, q_plus)
            - alpha * (q_plus - q_minus));
    (f1, f2)
}

/// Momentum source integrated over one cell.
///
/// `b_hat` and `b_sq_hat` carry the face averages of the bottom and its
/// square, `slope_at_nodes` the bottom slope at the five quadrature nodes.
/// The interior integral runs over the quartic surface reconstruction, the
/// same polynomial family the face values come from, which is what makes the
/// cancellation against the flux divergence exact on a flat surface.
pub fn source_still(
    s_window: &[f64; 5],
    b_hat: (f64, f64),
    b_sq_hat: (f64, f64),
    slope_at_nodes: &[f64; 5],
    dx: f64,
) -> f64 {
    let s_bar = s_window[2];
    let mut integral = 0.0;
    for q in 0..5 {
        let coeffs = quartic_value_coeffs(0.5 * GAUSS_NODES[q]);
        let mut s_val = 0.0;
        for k in 0..5 {
            s_val += coeffs[k] * s_window[k];
        }
        integral += GAUSS_WEIGHTS[q] * GRAVITY * (s_val - s_bar) * slope_at_nodes[q];
    }
    integral *= 0.5 * dx;
    0.5 * GRAVITY * (b_sq_hat.1 - b_sq_hat.0) - GRAVITY * s_bar * (b_hat.1 - b_hat.0) - integral
}

/// Semi-discrete tendency of the still-water balanced scheme with one
/// global dissipation speed.
pub fn rhs_still(
    state: &ConservedState,
    bathy: &Bathymetry,
    bc: &BoundarySpec,
    grid: &Grid,
) -> Result<Tendency, SolverError> {
    rhs_still_with(state, bathy, bc, grid, AlphaMode::Global)
}

/// Semi-discrete tendency with the dissipation speed mode exposed. Balance
/// does not depend on the mode: still-water face jumps vanish before the
/// speed multiplies them.
pub fn rhs_still_with(
    state: &ConservedState,
    bathy: &Bathymetry,
    bc: &BoundarySpec,
    grid: &Grid,
    alpha_mode: AlphaMode,
) -> Result<Tendency, SolverError> {
    let n = grid.n_cells;
    let m = grid.n_ext();
    let dx = grid.dx();
    let ext = ExtendedState::filled(state, bc)?;
    let alpha_global = max_wave_speed(state)?;

    let mut s_bar = vec![0.0; m];
    for j in 0..m {
        s_bar[j] = ext.h[j] + bathy.cell_avg[j];
    }

    // Face values per extended cell: cell j's own right and left faces. The
    // stencil weights come from the surface window and are reused for the
    // bottom, always through the frozen operator even when interface samples
    // exist: subtracting a sampled bottom from a reconstructed surface would
    // put the face depths off the reconstruction family and lose the exact
    // cancellation at rest.
    let mut s_r = vec![0.0; m];
    let mut s_l = vec![0.0; m];
    let mut q_r = vec![0.0; m];
    let mut q_l = vec![0.0; m];
    let mut b_r = vec![0.0; m];
    let mut b_l = vec![0.0; m];
    for j in 2..m - 2 {
        let sw = [
            s_bar[j - 2],
            s_bar[j - 1],
            s_bar[j],
            s_bar[j + 1],
            s_bar[j + 2],
        ];
        let fw = frozen_weights(&sw);
        (s_r[j], s_l[j]) = apply_frozen(&fw, &sw);
        let bw = [
            bathy.cell_avg[j - 2],
            bathy.cell_avg[j - 1],
            bathy.cell_avg[j],
            bathy.cell_avg[j + 1],
            bathy.cell_avg[j + 2],
        ];
        (b_r[j], b_l[j]) = apply_frozen(&fw, &bw);
        let qw = ext.window_hu(j);
        (q_r[j], q_l[j]) = apply_frozen(&frozen_weights(&qw), &qw);

        for (face, b_face) in [(s_r[j], b_r[j]), (s_l[j], b_l[j])] {
            let depth = face - b_face;
            if !(depth > 0.0) {
                return Err(SolverError::NonPositiveDepth {
                    cell: j,
                    depth,
                    context: "still-scheme face reconstruction (extended index)",
                });
            }
        }
    }

    let mut flux1 = vec![0.0; n + 1];
    let mut flux2 = vec![0.0; n + 1];
    for k in 0..=n {
        let jl = NUM_GHOST + k - 1;
        let jr = NUM_GHOST + k;
        let h_minus = s_r[jl] - b_r[jl];
        let h_plus = s_l[jr] - b_l[jr];
        let alpha = match alpha_mode {
            AlphaMode::Global => alpha_global,
            AlphaMode::Local => {
                wave_speed(h_minus, q_r[jl]).max(wave_speed(h_plus, q_l[jr]))
            }
        };
        (flux1[k], flux2[k]) = lf_flux(
            h_minus,
            q_r[jl],
            s_r[jl],
            h_plus,
            q_l[jr],
            s_l[jr],
            alpha,
        );
    }

    let mut out = Tendency::zeros(n);
    for i in 0..n {
        let j = NUM_GHOST + i;
        let b_hat = (
            0.5 * (b_r[j - 1] + b_l[j]),
            0.5 * (b_r[j] + b_l[j + 1]),
        );
        let b_sq_hat = (
            0.5 * (b_r[j - 1] * b_r[j - 1] + b_l[j] * b_l[j]),
            0.5 * (b_r[j] * b_r[j] + b_l[j + 1] * b_l[j + 1]),
        );
        let sw = [
            s_bar[j - 2],
            s_bar[j - 1],
            s_bar[j],
            s_bar[j + 1],
            s_bar[j + 2],
        ];
        let slopes = match bathy.mode {
            BottomMode::Sampled => bathy.slope_at_nodes[j],
            BottomMode::Reconstructed => {
                let bw = [
                    bathy.cell_avg[j - 2],
                    bathy.cell_avg[j - 1],
                    bathy.cell_avg[j],
                    bathy.cell_avg[j + 1],
                    bathy.cell_avg[j + 2],
                ];
                let mut slopes = [0.0; 5];
                for (q, slot) in slopes.iter_mut().enumerate() {
                    let coeffs = quartic_slope_coeffs(0.5 * GAUSS_NODES[q]);
                    let mut acc = 0.0;
                    for k in 0..5 {
                        acc += coeffs[k] * bw[k];
                    }
                    *slot = acc / dx;
                }
                slopes
            }
        };
        let g2 = source_still(&sw, b_hat, b_sq_hat, &slopes, dx);
        out.dh[i] = -(flux1[i + 1] - flux1[i]) / dx;
        out.dhu[i] = (-(flux2[i + 1] - flux2[i]) + g2) / dx;
    }
    Ok(out)
}
