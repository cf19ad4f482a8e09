//! Channel bottom description and its discrete samples.

use crate::grid::Grid;
use crate::quadrature::{mean_of_nodes, nodes_in};

/// Parabolic obstacle centered at x = 10, zero elsewhere.
pub fn bump_elevation(x: f64) -> f64 {
    if (8.0..=12.0).contains(&x) {
        0.2 - 0.05 * (x - 10.0) * (x - 10.0)
    } else {
        0.0
    }
}

/// Slope of [`bump_elevation`]; the kinks at x = 8 and x = 12 take the inner value.
pub fn bump_slope(x: f64) -> f64 {
    if (8.0..=12.0).contains(&x) {
        -0.1 * (x - 10.0)
    } else {
        0.0
    }
}

/// How interface bottom values are produced inside the schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BottomMode {
    /// Interface values come from the frozen reconstruction coefficients of
    /// the flow variables applied to the bottom cell averages; the two sides
    /// of an interface generally disagree by the reconstruction error.
    Reconstructed,
    /// Interface values are point samples of the analytic bottom, identical
    /// on both sides.
    Sampled,
}

/// Bottom data sampled once per grid, ghost cells included.
///
/// Every array covers the extended index range of [`Grid::n_ext`]; interior
/// cell `i` lives at index `i + NUM_GHOST`.
#[derive(Debug, Clone)]
pub struct Bathymetry {
    pub mode: BottomMode,
    /// Quadrature cell averages.
    pub cell_avg: Vec<f64>,
    /// Point values at cell centers.
    pub center: Vec<f64>,
    /// Point values at the five quadrature nodes of each cell.
    pub at_nodes: Vec<[f64; 5]>,
    /// Analytic slope at the quadrature nodes of each cell.
    pub slope_at_nodes: Vec<[f64; 5]>,
    /// Point values at interfaces; entry `j` is the left face of extended cell `j`.
    pub interface: Vec<f64>,
}

impl Bathymetry {
    pub fn from_fn(
        grid: &Grid,
        mode: BottomMode,
        elevation: impl Fn(f64) -> f64,
        slope: impl Fn(f64) -> f64,
    ) -> Self {
        let m = grid.n_ext();
        let mut cell_avg = Vec::with_capacity(m);
        let mut center = Vec::with_capacity(m);
        let mut at_nodes = Vec::with_capacity(m);
        let mut slope_at_nodes = Vec::with_capacity(m);
        let mut interface = Vec::with_capacity(m + 1);
        for j in 0..m {
            let (lo, hi) = grid.ext_bounds(j);
            let xs = nodes_in(lo, hi);
            let bs = xs.map(&elevation);
            cell_avg.push(mean_of_nodes(&bs));
            center.push(elevation(grid.ext_center(j)));
            at_nodes.push(bs);
            slope_at_nodes.push(xs.map(&slope));
            interface.push(elevation(lo));
            if j == m - 1 {
                interface.push(elevation(hi));
            }
        }
        Self {
            mode,
            cell_avg,
            center,
            at_nodes,
            slope_at_nodes,
            interface,
        }
    }

    pub fn bump(grid: &Grid, mode: BottomMode) -> Self {
        Self::from_fn(grid, mode, bump_elevation, bump_slope)
    }

    pub fn flat(grid: &Grid, mode: BottomMode) -> Self {
        Self::from_fn(grid, mode, |_| 0.0, |_| 0.0)
    }

    /// Largest bottom value seen by any quadrature node.
    pub fn max_node_value(&self) -> f64 {
        self.at_nodes
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
