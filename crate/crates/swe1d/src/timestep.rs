//! Third-order TVD Runge-Kutta integration with CFL-sized steps.

use crate::bathymetry::Bathymetry;
use crate::cases::BoundarySpec;
use crate::equilibrium::{froude, FlowRegime};
use crate::error::SolverError;
use crate::grid::{Grid, NUM_GHOST};
use crate::schemes::first_order::rhs_first_order;
use crate::schemes::moving::{rhs_moving, MovingDiagnostics};
use crate::schemes::still::rhs_still;
use crate::schemes::{max_wave_speed, Tendency};
use crate::state::ConservedState;

/// Spatial discretizations the integrator can drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// High-order scheme balanced for water at rest only.
    StillWater,
    /// High-order scheme balanced for moving-water equilibria.
    MovingWater,
    /// First-order Lax-Friedrichs baseline.
    FirstOrder,
}

impl Scheme {
    pub fn parse(tag: &str) -> Option<Self> {
        match tag {
            "still" => Some(Self::StillWater),
            "moving" => Some(Self::MovingWater),
            "oracle1" => Some(Self::FirstOrder),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::StillWater => "still",
            Self::MovingWater => "moving",
            Self::FirstOrder => "oracle1",
        }
    }
}

/// Froude hysteresis: a cell flips branch only when its Froude number
/// clears 1 by this margin, so round-off near criticality cannot make the
/// depth solves chatter between roots.
const REGIME_FLIP_MARGIN: f64 = 1e-9;

/// CFL-sized time step from the fastest signal in the current state.
pub fn compute_dt(state: &ConservedState, grid: &Grid, cfl: f64) -> Result<f64, SolverError> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(SolverError::InvalidConfig(format!(
            "cfl must lie in (0, 1], got {cfl}"
        )));
    }
    let alpha = max_wave_speed(state)?;
    if !(alpha > 0.0) {
        return Err(SolverError::InvalidConfig(format!(
            "wave speed {alpha} admits no positive time step"
        )));
    }
    Ok(cfl * grid.dx() / alpha)
}

/// One scalar Runge-Kutta step; pins the stage combination used by the
/// vector stepper so its order can be checked against closed-form solutions.
pub fn rk3_scalar(mut f: impl FnMut(f64) -> f64, u0: f64, dt: f64) -> f64 {
    let l1 = f(u0);
    let u1 = u0 + dt * l1;
    let l2 = f(u1);
    let u2 = u0 + 0.25 * dt * (l1 + l2);
    let l3 = f(u2);
    u0 + dt * ((l1 + l2) / 6.0 + 2.0 * l3 / 3.0)
}

/// Counters accumulated over one [`Simulation::integrate`] call.
#[derive(Debug, Clone, Copy, Default)]
pub struct StepLog {
    pub steps: usize,
    /// Smallest cell-average depth seen after any completed step.
    pub min_depth: f64,
    pub diagnostics: MovingDiagnostics,
}

/// A grid, a bottom, boundary data, and a scheme, ready to advance states.
/// Owns the per-cell branch bookkeeping the moving-water scheme needs.
pub struct Simulation<'a> {
    pub grid: &'a Grid,
    pub bathy: &'a Bathymetry,
    pub bc: BoundarySpec,
    pub scheme: Scheme,
    pub cfl: f64,
    /// Branch per extended cell; ignored by the other schemes.
    pub regimes: Vec<FlowRegime>,
    pub diagnostics: MovingDiagnostics,
}

impl<'a> Simulation<'a> {
    pub fn new(
        grid: &'a Grid,
        bathy: &'a Bathymetry,
        bc: BoundarySpec,
        scheme: Scheme,
        cfl: f64,
        regimes: Vec<FlowRegime>,
    ) -> Result<Self, SolverError> {
        if regimes.len() != grid.n_ext() {
            return Err(SolverError::GridMismatch {
                expected: grid.n_ext(),
                found: regimes.len(),
            });
        }
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(SolverError::InvalidConfig(format!(
                "cfl must lie in (0, 1], got {cfl}"
            )));
        }
        Ok(Self {
            grid,
            bathy,
            bc,
            scheme,
            cfl,
            regimes,
            diagnostics: MovingDiagnostics::default(),
        })
    }

    fn rhs(&mut self, state: &ConservedState) -> Result<Tendency, SolverError> {
        match self.scheme {
            Scheme::StillWater => rhs_still(state, self.bathy, &self.bc, self.grid),
            Scheme::MovingWater => {
                let (tendency, diag) =
                    rhs_moving(state, self.bathy, &self.bc, self.grid, &self.regimes)?;
                self.diagnostics.absorb(diag);
                Ok(tendency)
            }
            Scheme::FirstOrder => rhs_first_order(state, self.bathy, &self.bc, self.grid),
        }
    }

    /// One TVD-RK3 step. The update is accumulated in increment form,
    /// u + dt * (combination of stage tendencies), so a state with zero
    /// tendency is reproduced bitwise.
    pub fn rk3_step(
        &mut self,
        state: &ConservedState,
        dt: f64,
    ) -> Result<ConservedState, SolverError> {
        let n = state.n_cells();
        let combine = |coeffs: &[(f64, &Tendency)]| -> (Vec<f64>, Vec<f64>) {
            let mut h = Vec::with_capacity(n);
            let mut hu = Vec::with_capacity(n);
            for i in 0..n {
                let mut dh = 0.0;
                let mut dhu = 0.0;
                for (c, l) in coeffs {
                    dh += c * l.dh[i];
                    dhu += c * l.dhu[i];
                }
                h.push(state.h[i] + dt * dh);
                hu.push(state.hu[i] + dt * dhu);
            }
            (h, hu)
        };
        let staged = |stage: u8, (h, hu): (Vec<f64>, Vec<f64>)| -> Result<ConservedState, SolverError> {
            for (cell, &depth) in h.iter().enumerate() {
                if !(depth > 0.0) {
                    return Err(SolverError::StageDepthLoss { stage, cell, depth });
                }
            }
            Ok(ConservedState { h, hu })
        };

        let l1 = self.rhs(state)?;
        let u1 = staged(1, combine(&[(1.0, &l1)]))?;
        let l2 = self.rhs(&u1)?;
        let u2 = staged(2, combine(&[(0.25, &l1), (0.25, &l2)]))?;
        let l3 = self.rhs(&u2)?;
        staged(
            3,
            combine(&[(1.0 / 6.0, &l1), (1.0 / 6.0, &l2), (2.0 / 3.0, &l3)]),
        )
    }

    /// Re-evaluates each interior cell's branch with hysteresis; ghost cells
    /// copy the nearest interior cell.
    pub fn update_regimes(&mut self, state: &ConservedState) {
        let n = state.n_cells();
        for i in 0..n {
            let j = i + NUM_GHOST;
            let fr = froude(state.h[i], state.hu[i]);
            self.regimes[j] = match self.regimes[j] {
                FlowRegime::Subcritical if fr > 1.0 + REGIME_FLIP_MARGIN => {
                    FlowRegime::Supercritical
                }
                FlowRegime::Supercritical if fr < 1.0 - REGIME_FLIP_MARGIN => {
                    FlowRegime::Subcritical
                }
                keep => keep,
            };
        }
        for j in 0..NUM_GHOST {
            self.regimes[j] = self.regimes[NUM_GHOST];
            self.regimes[n + 2 * NUM_GHOST - 1 - j] = self.regimes[n + NUM_GHOST - 1];
        }
    }

    /// Advances to `t_end` exactly, clipping the final step.
    pub fn integrate(
        &mut self,
        initial: ConservedState,
        t_end: f64,
    ) -> Result<(ConservedState, StepLog), SolverError> {
        if !(t_end >= 0.0) {
            return Err(SolverError::InvalidConfig(format!(
                "t_end must be nonnegative, got {t_end}"
            )));
        }
        let mut state = initial;
        let mut log = StepLog {
            min_depth: state.min_depth(),
            ..StepLog::default()
        };
        let mut t = 0.0;
        while t < t_end {
            let mut dt = compute_dt(&state, self.grid, self.cfl)?;
            let clipped = t + dt >= t_end;
            if clipped {
                dt = t_end - t;
            }
            if !(dt > 0.0) {
                break;
            }
            state = self.rk3_step(&state, dt)?;
            t = if clipped { t_end } else { t + dt };
            log.steps += 1;
            log.min_depth = log.min_depth.min(state.min_depth());
            if self.scheme == Scheme::MovingWater {
                self.update_regimes(&state);
            }
        }
        log.diagnostics = self.diagnostics;
        Ok((state, log))
    }
}
