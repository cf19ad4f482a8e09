//! Semi-discrete right-hand sides: two balanced high-order schemes and a
//! naive first-order baseline.

pub mod first_order;
pub mod moving;
pub mod still;

use crate::error::SolverError;
use crate::state::ConservedState;
use crate::GRAVITY;

/// Time derivative of the interior cell averages.
#[derive(Debug, Clone)]
pub struct Tendency {
    pub dh: Vec<f64>,
    pub dhu: Vec<f64>,
}

impl Tendency {
    pub fn zeros(n: usize) -> Self {
        Self {
            dh: vec![0.0; n],
            dhu: vec![0.0; n],
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.dh
            .iter()
            .chain(self.dhu.iter())
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }
}

/// Momentum flux of the state (h, q).
pub fn momentum_flux(h: f64, q: f64) -> f64 {
    q * q / h + 0.5 * GRAVITY * h * h
}

/// Signal speed |u| + sqrt(g h) of one state.
pub fn wave_speed(h: f64, q: f64) -> f64 {
    (q / h).abs() + (GRAVITY * h).sqrt()
}

/// Largest signal speed over the interior cells.
pub fn max_wave_speed(state: &ConservedState) -> Result<f64, SolverError> {
    state.check_positive("wave speed scan")?;
    let mut top = 0.0f64;
    for (&h, &q) in state.h.iter().zip(&state.hu) {
        top = top.max(wave_speed(h, q));
    }
    Ok(top)
}
