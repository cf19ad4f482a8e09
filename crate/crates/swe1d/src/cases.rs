//! Benchmark channel catalog: one parabolic obstacle, four background flows.

use crate::bathymetry::BottomMode;
use crate::equilibrium::{critical_depth, energy};
use crate::error::SolverError;
use crate::grid::Grid;
use crate::GRAVITY;

/// Background flow over the obstacle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowCase {
    /// Subcritical everywhere; discharge 4.42, head 22.06605, outflow depth 2.
    Subcritical,
    /// Critical at the crest, supercritical downstream; discharge 1.53.
    Transcritical,
    /// Supercritical pocket behind the crest closed by a stationary jump;
    /// discharge 0.18, outflow depth 0.33.
    TranscriticalShock,
    /// Water at rest with surface elevation 1.
    LakeAtRest,
}

impl FlowCase {
    pub fn parse(tag: &str) -> Option<Self> {
        match tag {
            "a" => Some(Self::Subcritical),
            "b" => Some(Self::Transcritical),
            "c" => Some(Self::TranscriticalShock),
            "lake" => Some(Self::LakeAtRest),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::Subcritical => "a",
            Self::Transcritical => "b",
            Self::TranscriticalShock => "c",
            Self::LakeAtRest => "lake",
        }
    }

    pub fn discharge(&self) -> f64 {
        match self {
            Self::Subcritical => 4.42,
            Self::Transcritical => 1.53,
            Self::TranscriticalShock => 0.18,
            Self::LakeAtRest => 0.0,
        }
    }

    /// Depth held at the outflow while the flow there is subcritical.
    pub fn outflow_depth(&self) -> f64 {
        match self {
            Self::Subcritical => 2.0,
            Self::Transcritical => 0.66,
            Self::TranscriticalShock => 0.33,
            Self::LakeAtRest => 1.0,
        }
    }

    /// Head of the background flow upstream of any jump. The transcritical
    /// background is pinned by criticality at the crest; no other head gives
    /// a smooth branch change there.
    pub fn upstream_energy(&self) -> f64 {
        let crest = 0.2;
        match self {
            Self::Subcritical => 22.06605,
            Self::Transcritical => {
                1.5 * GRAVITY * critical_depth(self.discharge()) + GRAVITY * crest
            }
            Self::TranscriticalShock => {
                1.5 * GRAVITY * critical_depth(self.discharge()) + GRAVITY * crest
            }
            Self::LakeAtRest => GRAVITY * 1.0,
        }
    }

    /// Head downstream of the stationary jump; equals the upstream head for
    /// the jump-free cases.
    pub fn downstream_energy(&self) -> f64 {
        match self {
            Self::TranscriticalShock => energy(0.33, 0.18, 0.0),
            _ => self.upstream_energy(),
        }
    }

    pub fn default_t_end(&self) -> f64 {
        match self {
            Self::TranscriticalShock => 3.0,
            _ => 1.5,
        }
    }

    pub fn default_cells(&self) -> usize {
        match self {
            Self::TranscriticalShock => 200,
            _ => 100,
        }
    }
}

/// Ghost-cell boundary data: discharge pinned upstream, depth pinned
/// downstream while the outflow is subcritical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySpec {
    pub inflow_discharge: f64,
    pub outflow_depth: f64,
}

/// Everything one benchmark run needs.
#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub case: FlowCase,
    pub n_cells: usize,
    pub amplitude: f64,
    pub interval: (f64, f64),
    pub t_end: f64,
    pub cfl: f64,
    pub bottom: BottomMode,
}

impl CaseSpec {
    pub fn new(case: FlowCase) -> Self {
        Self {
            case,
            n_cells: case.default_cells(),
            amplitude: 0.0,
            interval: (5.75, 6.25),
            t_end: case.default_t_end(),
            cfl: 0.6,
            bottom: BottomMode::Reconstructed,
        }
    }

    pub fn domain() -> (f64, f64) {
        (0.0, 25.0)
    }

    pub fn grid(&self) -> Result<Grid, SolverError> {
        let (lo, hi) = Self::domain();
        Grid::new(lo, hi, self.n_cells)
    }

    pub fn boundary(&self) -> BoundarySpec {
        BoundarySpec {
            inflow_discharge: self.case.discharge(),
            outflow_depth: self.case.outflow_depth(),
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let (lo, hi) = Self::domain();
        if self.interval.0 > self.interval.1 || self.interval.0 < lo || self.interval.1 > hi {
            return Err(SolverError::InvalidConfig(format!(
                "perturbation interval [{}, {}] must lie inside [{lo}, {hi}]",
                self.interval.0, self.interval.1
            )));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(SolverError::InvalidConfig(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.t_end >= 0.0) {
            return Err(SolverError::InvalidConfig(format!(
                "t_end must be nonnegative, got {}",
                self.t_end
            )));
        }
        if self.case.outflow_depth() <= 0.0 {
            return Err(SolverError::InvalidConfig(
                "outflow depth must be positive".into(),
            ));
        }
        Ok(())
    }
}
