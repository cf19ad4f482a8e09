use crate::equilibrium::FlowRegime;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("depth {depth:.6e} at cell {cell} is not positive ({context})")]
    NonPositiveDepth {
        cell: usize,
        depth: f64,
        context: &'static str,
    },

    #[error("depth {depth:.6e} at cell {cell} lost positivity in RK stage {stage}")]
    StageDepthLoss { stage: u8, cell: usize, depth: f64 },

    #[error("no {regime:?} depth: energy head falls {deficit:.6e} short of the critical minimum")]
    NoRoot { regime: FlowRegime, deficit: f64 },

    #[error("the supercritical depth is undefined for zero discharge")]
    SupercriticalZeroDischarge,

    #[error("momentum-flux mismatch does not change sign on ({lo}, {hi}); no steady jump there")]
    NoShockBracket { lo: f64, hi: f64 },

    #[error("upstream and downstream energies are equal; the profile has no jump")]
    EqualEnergies,

    #[error("grid mismatch: {expected} cells expected, {found} found")]
    GridMismatch { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
