//! Ghost-cell frame around the interior state.

use crate::cases::BoundarySpec;
use crate::equilibrium::froude;
use crate::error::SolverError;
use crate::grid::NUM_GHOST;
use crate::state::ConservedState;

/// Interior averages flanked by filled ghost cells; index `j` maps to
/// interior cell `j - NUM_GHOST`.
#[derive(Debug, Clone)]
pub struct ExtendedState {
    pub h: Vec<f64>,
    pub hu: Vec<f64>,
}

impl ExtendedState {
    /// Fills ghosts from the boundary rules: the inflow side pins the
    /// discharge and extrapolates the depth, the outflow side pins the depth
    /// only while the last interior cell is subcritical, extrapolating
    /// everything otherwise. Constant interior data extends exactly, so a
    /// flat equilibrium is never disturbed from the frame.
    pub fn filled(state: &ConservedState, bc: &BoundarySpec) -> Result<Self, SolverError> {
        let n = state.n_cells();
        if n < NUM_GHOST {
            return Err(SolverError::InvalidConfig(format!(
                "need at least {NUM_GHOST} interior cells, got {n}"
            )));
        }
        let m = n + 2 * NUM_GHOST;
        let mut h = vec![0.0; m];
        let mut hu = vec![0.0; m];
        h[NUM_GHOST..NUM_GHOST + n].copy_from_slice(&state.h);
        hu[NUM_GHOST..NUM_GHOST + n].copy_from_slice(&state.hu);

        let h_in = state.h[0];
        for j in 0..NUM_GHOST {
            h[j] = h_in;
            hu[j] = bc.inflow_discharge;
        }

        let h_last = state.h[n - 1];
        let q_last = state.hu[n - 1];
        let subcritical_outflow = froude(h_last, q_last) < 1.0;
        let h_out = if subcritical_outflow { bc.outflow_depth } else { h_last };
        for j in NUM_GHOST + n..m {
            h[j] = h_out;
            hu[j] = q_last;
        }

        for (j, &depth) in h.iter().enumerate() {
            if !(depth > 0.0) {
                return Err(SolverError::NonPositiveDepth {
                    cell: j,
                    depth,
                    context: "ghost fill",
                });
            }
        }
        Ok(Self { h, hu })
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// Five-cell windows centered on extended cell `j`.
    pub fn window_h(&self, j: usize) -> [f64; 5] {
        [
            self.h[j - 2],
            self.h[j - 1],
            self.h[j],
            self.h[j + 1],
            self.h[j + 2],
        ]
    }

    pub fn window_hu(&self, j: usize) -> [f64; 5] {
        [
            self.hu[j - 2],
            self.hu[j - 1],
            self.hu[j],
            self.hu[j + 1],
            self.hu[j + 2],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(q: f64, h: f64) -> BoundarySpec {
        BoundarySpec {
            inflow_discharge: q,
            outflow_depth: h,
        }
    }

    #[test]
    fn subcritical_outflow_pins_the_depth() {
        let state = ConservedState::new(vec![2.0; 10], vec![4.42; 10]).unwrap();
        let ext = ExtendedState::filled(&state, &bc(4.42, 2.0)).unwrap();
        assert_eq!(ext.len(), 16);
        for j in 0..NUM_GHOST {
            assert_eq!(ext.hu[j], 4.42);
            assert_eq!(ext.h[j], 2.0);
        }
        for j in 13..16 {
            assert_eq!(ext.h[j], 2.0);
            assert_eq!(ext.hu[j], 4.42);
        }
    }

    #[test]
    fn supercritical_outflow_extrapolates() {
        // Froude well above one at the last cell: the imposed depth must be
        // ignored in favor of the interior value.
        let state = ConservedState::new(vec![0.4; 10], vec![1.53; 10]).unwrap();
        let ext = ExtendedState::filled(&state, &bc(1.53, 0.66)).unwrap();
        for j in 13..16 {
            assert_eq!(ext.h[j], 0.4);
            assert_eq!(ext.hu[j], 1.53);
        }
    }

    #[test]
    fn constant_data_extends_exactly() {
        let state = ConservedState::new(vec![1.0; 8], vec![0.0; 8]).unwrap();
        let ext = ExtendedState::filled(&state, &bc(0.0, 1.0)).unwrap();
        assert!(ext.h.iter().all(|&v| v == 1.0));
        assert!(ext.hu.iter().all(|&v| v == 0.0));
    }
}
