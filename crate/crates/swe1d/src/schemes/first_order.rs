//! First-order reference scheme: cell-average Lax-Friedrichs fluxes with a
//! pointwise bottom-slope source. Not balanced for any equilibrium; it
//! serves as the baseline the balanced schemes are measured against.

use crate::bathymetry::Bathymetry;
use crate::boundary::ExtendedState;
use crate::cases::BoundarySpec;
use crate::error::SolverError;
use crate::grid::{Grid, NUM_GHOST};
use crate::schemes::{momentum_flux, wave_speed, Tendency};
use crate::state::ConservedState;
use crate::GRAVITY;

/// Semi-discrete tendency of the first-order scheme.
pub fn rhs_first_order(
    state: &ConservedState,
    bathy: &Bathymetry,
    bc: &BoundarySpec,
    grid: &Grid,
) -> Result<Tendency, SolverError> {
    let n = grid.n_cells;
    let dx = grid.dx();
    let ext = ExtendedState::filled(state, bc)?;

    let mut flux1 = vec![0.0; n + 1];
    let mut flux2 = vec![0.0; n + 1];
    for k in 0..=n {
        let jl = NUM_GHOST + k - 1;
        let jr = NUM_GHOST + k;
        let (h_l, q_l) = (ext.h[jl], ext.hu[jl]);
        let (h_r, q_r) = (ext.h[jr], ext.hu[jr]);
        let alpha = wave_speed(h_l, q_l).max(wave_speed(h_r, q_r));
        flux1[k] = 0.5 * (q_l + q_r - alpha * (h_r - h_l));
        flux2[k] =
            0.5 * (momentum_flux(h_l, q_l) + momentum_flux(h_r, q_r) - alpha * (q_r - q_l));
    }

    let mut out = Tendency::zeros(n);
    for i in 0..n {
        let j = NUM_GHOST + i;
        let source = -GRAVITY * ext.h[j] * (bathy.interface[j + 1] - bathy.interface[j]);
        out.dh[i] = -(flux1[i + 1] - flux1[i]) / dx;
        out.dhu[i] = (-(flux2[i + 1] - flux2[i]) + source) / dx;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bathymetry::BottomMode;

    #[test]
    fn constant_state_on_flat_bottom_is_steady() {
        let grid = Grid::new(0.0, 25.0, 30).unwrap();
        let bathy = Bathymetry::flat(&grid, BottomMode::Reconstructed);
        let state = ConservedState::new(vec![2.0; 30], vec![4.42; 30]).unwrap();
        let bc = BoundarySpec {
            inflow_discharge: 4.42,
            outflow_depth: 2.0,
        };
        let rhs = rhs_first_order(&state, &bathy, &bc, &grid).unwrap();
        assert_eq!(rhs.max_abs(), 0.0);
    }

    #[test]
    fn lake_at_rest_is_not_preserved() {
        // The depth-based dissipation fights the source over the bump; the
        // residual is what the balanced schemes eliminate.
        let grid = Grid::new(0.0, 25.0, 100).unwrap();
        let bathy = Bathymetry::bump(&grid, BottomMode::Reconstructed);
        let h: Vec<f64> = (0..100)
            .map(|i| 1.0 - bathy.cell_avg[i + NUM_GHOST])
            .collect();
        let state = ConservedState::new(h, vec![0.0; 100]).unwrap();
        let bc = BoundarySpec {
            inflow_discharge: 0.0,
            outflow_depth: 1.0,
        };
        let rhs = rhs_first_order(&state, &bathy, &bc, &grid).unwrap();
        assert!(rhs.max_abs() > 1e-4, "max tendency {}", rhs.max_abs());
    }
}
