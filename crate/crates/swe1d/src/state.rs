//! Cell-averaged conserved quantities.

use crate::error::SolverError;
use crate::grid::Grid;

/// Depth and discharge averages on the interior cells.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedState {
    pub h: Vec<f64>,
    pub hu: Vec<f64>,
}

impl ConservedState {
    pub fn new(h: Vec<f64>, hu: Vec<f64>) -> Result<Self, SolverError> {
        assert_eq!(h.len(), hu.len(), "component lengths must agree");
        let state = Self { h, hu };
        state.check_positive("initial data")?;
        Ok(state)
    }

    pub fn n_cells(&self) -> usize {
        self.h.len()
    }

    pub fn min_depth(&self) -> f64 {
        self.h.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Fails on the first non-positive depth.
    pub fn check_positive(&self, context: &'static str) -> Result<(), SolverError> {
        for (cell, &depth) in self.h.iter().enumerate() {
            if !(depth > 0.0) {
                return Err(SolverError::NonPositiveDepth {
                    cell,
                    depth,
                    context,
                });
            }
        }
        Ok(())
    }

    /// Total water volume; the schemes conserve it up to boundary fluxes.
    pub fn mass(&self, dx: f64) -> f64 {
        self.h.iter().sum::<f64>() * dx
    }
}

/// Adds `amplitude` to the depth average of every cell whose center lies in
/// the closed `interval`. Discharge is untouched. Returns how many cells
/// changed.
pub fn apply_perturbation(
    state: &mut ConservedState,
    grid: &Grid,
    amplitude: f64,
    interval: (f64, f64),
) -> usize {
    let mut touched = 0;
    for i in 0..state.n_cells() {
        let x = grid.center(i);
        if x >= interval.0 && x <= interval.1 {
            state.h[i] += amplitude;
            touched += 1;
        }
    }
    touched
}
