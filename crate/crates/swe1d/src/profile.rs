//! Exact background steady profiles for the benchmark cases.

use crate::bathymetry::{bump_elevation, Bathymetry};
use crate::cases::{CaseSpec, FlowCase};
use crate::equilibrium::{
    depth_profile_at_nodes, solve_height, EquilibriumVars, FlowRegime,
};
use crate::error::SolverError;
use crate::grid::{Grid, NUM_GHOST};
use crate::quadrature::{mean_of_nodes, mean_over};
use crate::state::ConservedState;
use crate::GRAVITY;

/// A steady flow over the channel: constant discharge, piecewise constant
/// head with at most one jump, and a branch assignment per cell.
#[derive(Debug, Clone)]
pub struct SteadyProfile {
    pub m: f64,
    pub e_up: f64,
    pub e_down: f64,
    /// Stationary jump position, if the profile has one.
    pub shock: Option<f64>,
    /// Branch per extended cell.
    pub regimes: Vec<FlowRegime>,
    grid: Grid,
}

impl SteadyProfile {
    /// Single-head profile on one branch everywhere.
    pub fn uniform(v: EquilibriumVars, regime: FlowRegime, grid: &Grid) -> Self {
        Self {
            m: v.m,
            e_up: v.e,
            e_down: v.e,
            shock: None,
            regimes: vec![regime; grid.n_ext()],
            grid: grid.clone(),
        }
    }

    pub fn energy_at(&self, x: f64) -> f64 {
        match self.shock {
            Some(xs) if x > xs => self.e_down,
            _ => self.e_up,
        }
    }

    /// Branch of the extended cell holding `x`.
    pub fn regime_at(&self, x: f64) -> FlowRegime {
        let dx = self.grid.dx();
        let j = ((x - self.grid.x_min) / dx + NUM_GHOST as f64).floor();
        let j = (j.max(0.0) as usize).min(self.regimes.len() - 1);
        self.regimes[j]
    }

    pub fn height_at(&self, x: f64) -> Result<f64, SolverError> {
        let v = EquilibriumVars::new(self.m, self.energy_at(x));
        solve_height(v, bump_elevation(x), self.regime_at(x))
    }

    pub fn velocity_at(&self, x: f64) -> Result<f64, SolverError> {
        Ok(self.m / self.height_at(x)?)
    }

    /// Branches restricted to the interior cells.
    pub fn interior_regimes(&self) -> Vec<FlowRegime> {
        self.regimes[NUM_GHOST..NUM_GHOST + self.grid.n_cells].to_vec()
    }

    /// Cell averages of the profile on the interior cells.
    ///
    /// Regular cells average the five-node depth profile, the same solves
    /// initialization and the reference recovery share. A cell holding the
    /// jump is averaged piecewise with full quadrature on each side.
    pub fn initial_state(&self, bathy: &Bathymetry) -> Result<ConservedState, SolverError> {
        let n = self.grid.n_cells;
        let mut h = Vec::with_capacity(n);
        for i in 0..n {
            let j = i + NUM_GHOST;
            let (lo, hi) = self.grid.ext_bounds(j);
            let split = self.shock.filter(|&xs| lo < xs && xs < hi);
            let avg = match split {
                Some(xs) => {
                    let up = EquilibriumVars::new(self.m, self.e_up);
                    let down = EquilibriumVars::new(self.m, self.e_down);
                    let left = mean_over(lo, xs, |x| {
                        solve_height(up, bump_elevation(x), FlowRegime::Supercritical)
                            .expect("upstream head is realizable on the jump cell")
                    });
                    let right = mean_over(xs, hi, |x| {
                        solve_height(down, bump_elevation(x), FlowRegime::Subcritical)
                            .expect("downstream head is realizable on the jump cell")
                    });
                    ((xs - lo) * left + (hi - xs) * right) / (hi - lo)
                }
                None => {
                    let v = EquilibriumVars::new(self.m, self.energy_at(self.grid.ext_center(j)));
                    let hs = depth_profile_at_nodes(v, self.regimes[j], &bathy.at_nodes[j])?;
                    mean_of_nodes(&hs)
                }
            };
            h.push(avg);
        }
        let hu = vec![self.m; n];
        ConservedState::new(h, hu)
    }
}

/// Background profile of a benchmark case on the given grid.
pub fn steady_profile(spec: &CaseSpec, grid: &Grid) -> Result<SteadyProfile, SolverError> {
    let m = spec.case.discharge();
    let e_up = spec.case.upstream_energy();
    let e_down = spec.case.downstream_energy();
    let crest = 10.0;

    let shock = match spec.case {
        FlowCase::TranscriticalShock => Some(shock_position(m, e_up, e_down, bump_elevation)?),
        _ => None,
    };

    let regimes = (0..grid.n_ext())
        .map(|j| {
            let x = grid.ext_center(j);
            match spec.case {
                FlowCase::Subcritical | FlowCase::LakeAtRest => FlowRegime::Subcritical,
                FlowCase::Transcritical => {
                    if x > crest {
                        FlowRegime::Supercritical
                    } else {
                        FlowRegime::Subcritical
                    }
                }
                FlowCase::TranscriticalShock => {
                    let xs = shock.expect("jump case always has a jump position");
                    if x > crest && x < xs {
                        FlowRegime::Supercritical
                    } else {
                        FlowRegime::Subcritical
                    }
                }
            }
        })
        .collect();

    Ok(SteadyProfile {
        m,
        e_up,
        e_down,
        shock,
        regimes,
        grid: grid.clone(),
    })
}

/// Position on the downstream face where the momentum flux of the fast
/// upstream branch meets that of the slow downstream branch, so a stationary
/// jump can sit there.
pub fn shock_position(
    m: f64,
    e_up: f64,
    e_down: f64,
    elevation: impl Fn(f64) -> f64,
) -> Result<f64, SolverError> {
    if e_up == e_down {
        return Err(SolverError::EqualEnergies);
    }
    let up = EquilibriumVars::new(m, e_up);
    let down = EquilibriumVars::new(m, e_down);
    let momentum_flux = |h: f64| m * m / h + 0.5 * GRAVITY * h * h;
    let mismatch = |x: f64| -> Option<f64> {
        let b = elevation(x);
        let fast = solve_height(up, b, FlowRegime::Supercritical).ok()?;
        let slow = solve_height(down, b, FlowRegime::Subcritical).ok()?;
        Some(momentum_flux(fast) - momentum_flux(slow))
    };

    // Walk the downstream face until the mismatch changes sign; both roots
    // must exist on the probed subinterval.
    let (search_lo, search_hi) = (10.0, 12.0);
    let probes = 400;
    let step = (search_hi - search_lo) / probes as f64;
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for k in 1..=probes {
        let x = search_lo + k as f64 * step;
        if let Some(g) = mismatch(x) {
            if let Some((xp, gp)) = prev {
                if gp == 0.0 {
                    return Ok(xp);
                }
                if gp * g <= 0.0 {
                    bracket = Some((xp, x));
                    break;
                }
            }
            prev = Some((x, g));
        } else {
            prev = None;
        }
    }
    let Some((mut lo, mut hi)) = bracket else {
        return Err(SolverError::NoShockBracket {
            lo: search_lo,
            hi: search_hi,
        });
    };

    let g_lo = mismatch(lo).expect("bracket end was probed successfully");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let g_mid = mismatch(mid).expect("midpoint lies inside a realizable bracket");
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if (g_mid > 0.0) == (g_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let xs = 0.5 * (lo + hi);
    let residual = mismatch(xs).expect("converged position is realizable");
    if residual.abs() > 1e-10 {
        return Err(SolverError::NoShockBracket {
            lo: search_lo,
            hi: search_hi,
        });
    }
    Ok(xs)
}
