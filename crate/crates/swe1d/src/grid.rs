//! Uniform cell layout with a fixed ghost frame.

use crate::error::SolverError;

/// Ghost cells on each side; the reconstruction stencil needs three.
pub const NUM_GHOST: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self, SolverError> {
        if !(x_max > x_min) || n_cells == 0 {
            return Err(SolverError::InvalidConfig(format!(
                "grid needs x_max > x_min and at least one cell, got [{x_min}, {x_max}] with {n_cells}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    /// Center of interior cell `i` (0-based).
    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }

    /// Interface `i` sits left of cell `i`; valid for 0..=n_cells.
    pub fn interface(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    /// Total cell count including both ghost frames.
    pub fn n_ext(&self) -> usize {
        self.n_cells + 2 * NUM_GHOST
    }

    /// Center of extended cell `j`; interior cell `i` sits at `j = i + NUM_GHOST`.
    pub fn ext_center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 - NUM_GHOST as f64 + 0.5) * self.dx()
    }

    /// Cell bounds of extended cell `j`.
    pub fn ext_bounds(&self, j: usize) -> (f64, f64) {
        let dx = self.dx();
        let lo = self.x_min + (j as f64 - NUM_GHOST as f64) * dx;
        (lo, lo + dx)
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_layout() {
        let g = Grid::new(0.0, 25.0, 100).unwrap();
        assert_eq!(g.dx(), 0.25);
        assert_eq!(g.center(0), 0.125);
        assert_eq!(g.interface(40), 10.0);
        assert_eq!(g.n_ext(), 106);
        assert_eq!(g.ext_center(NUM_GHOST), g.center(0));
        assert_eq!(g.ext_center(0), -0.625);
    }

    #[test]
    fn rejects_degenerate_domains() {
        assert!(Grid::new(1.0, 1.0, 10).is_err());
        assert!(Grid::new(0.0, 25.0, 0).is_err());
    }
}
