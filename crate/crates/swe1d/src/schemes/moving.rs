//! Scheme balancing moving-water equilibria: depth and discharge are
//! reconstructed as deviations from each cell's recovered equilibrium
//! profile, limited in the equilibrium variables toward per-cell references,
//! interface values rebuilt over a common bottom, and a source whose
//! quadrature is extrapolated from whole-cell and half-cell relief sums.

use crate::bathymetry::{Bathymetry, BottomMode};
use crate::boundary::ExtendedState;
use crate::cases::BoundarySpec;
use crate::equilibrium::{
    conservative_from_equilibrium, energy, profile_mean_depth, reference_equilibrium,
    solve_height, solve_height_from, EquilibriumVars, FlowRegime,
};
use crate::error::SolverError;
use crate::grid::{Grid, NUM_GHOST};
use crate::schemes::{momentum_flux, wave_speed, Tendency};
use crate::state::ConservedState;
use crate::weno::{apply_frozen, frozen_weights, quartic_value_coeffs, StencilWeights};
use crate::GRAVITY;

/// Counts of the guarded paths taken during one tendency assembly. All four
/// stay at zero on equilibrium data; nonzero values flag cells where the
/// balance machinery degraded to a consistent but unbalanced formula.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MovingDiagnostics {
    /// Cells whose reference recovery fell back to the pointwise head.
    pub reference_fallbacks: usize,
    /// Cells whose reference profile has no depth somewhere on the stencil
    /// and whose raw values came from plain component reconstruction.
    pub profile_fallbacks: usize,
    /// Interface or cell states that could not be rebuilt at the requested
    /// bottom and used a shallower bottom or the raw reconstruction instead.
    pub transform_fallbacks: usize,
    /// Relief sums evaluated without their equilibrium correction because
    /// the reference head admits no depth at one of the endpoints.
    pub source_fallbacks: usize,
}

impl MovingDiagnostics {
    pub fn absorb(&mut self, other: MovingDiagnostics) {
        self.reference_fallbacks += other.reference_fallbacks;
        self.profile_fallbacks += other.profile_fallbacks;
        self.transform_fallbacks += other.transform_fallbacks;
        self.source_fallbacks += other.source_fallbacks;
    }

    pub fn total(&self) -> usize {
        self.reference_fallbacks
            + self.profile_fallbacks
            + self.transform_fallbacks
            + self.source_fallbacks
    }
}

/// Pulls one component toward the reference by the doubled spread of the
/// neighboring references. Data sitting on one equilibrium has zero spread
/// and snaps to the reference exactly; smooth data keeps the raw value
/// because its face deviation is about a quarter of the bound.
fn limit_component(raw: f64, prev: f64, own: f64, next: f64) -> f64 {
    let bound = 2.0 * (prev - own).abs().max((next - own).abs());
    let d = raw - own;
    if d.abs() <= bound {
        raw
    } else {
        own + bound * d.signum()
    }
}

/// Component-wise limiter on the equilibrium variables of one cell.
pub fn limit_toward_reference(
    raw: EquilibriumVars,
    prev: EquilibriumVars,
    own: EquilibriumVars,
    next: EquilibriumVars,
) -> EquilibriumVars {
    EquilibriumVars::new(
        limit_component(raw.m, prev.m, own.m, next.m),
        limit_component(raw.e, prev.e, own.e, next.e),
    )
}

/// Conserved states on both sides of an interface, rebuilt over the common
/// bottom min(b_minus, b_plus). Equal inputs produce bitwise equal outputs,
/// which is what removes the dissipation on an equilibrium.
pub fn interface_states(
    v_minus: EquilibriumVars,
    v_plus: EquilibriumVars,
    b_minus: f64,
    b_plus: f64,
    regime_minus: FlowRegime,
    regime_plus: FlowRegime,
) -> Result<((f64, f64), (f64, f64)), SolverError> {
    let b_hat = b_minus.min(b_plus);
    let u_minus = conservative_from_equilibrium(v_minus, b_hat, regime_minus)?;
    let u_plus = conservative_from_equilibrium(v_plus, b_hat, regime_plus)?;
    Ok((u_minus, u_plus))
}

/// Momentum source of the bottom step from b_l to b_r seen by the states
/// u_l, u_r, corrected so that inputs on the reference equilibrium yield the
/// momentum-flux difference exactly.
///
/// The two hydrostatic products share one code path, so on the equilibrium
/// they cancel bitwise and the returned value is exactly
/// f2(u_r) - f2(u_l).
pub fn source_interior(
    u_l: (f64, f64),
    u_r: (f64, f64),
    b_l: f64,
    b_r: f64,
    v_ref: EquilibriumVars,
    regime: FlowRegime,
) -> Result<f64, SolverError> {
    let h_star_l = solve_height(v_ref, b_l, regime)?;
    let h_star_r = solve_height(v_ref, b_r, regime)?;
    let flux_diff = momentum_flux(h_star_r, v_ref.m) - momentum_flux(h_star_l, v_ref.m);
    let relief_ref = 0.5 * GRAVITY * (h_star_l + h_star_r) * (b_r - b_l);
    let relief_raw = 0.5 * GRAVITY * (u_l.0 + u_r.0) * (b_r - b_l);
    Ok(flux_diff + (relief_ref - relief_raw))
}

/// Hydrostatic form used when the reference head admits no depth at an
/// endpoint; consistent but not balanced.
fn source_hydrostatic(u_l: (f64, f64), u_r: (f64, f64), b_l: f64, b_r: f64) -> f64 {
    -0.5 * GRAVITY * (u_l.0 + u_r.0) * (b_r - b_l)
}

/// Raw and limited reconstruction data of one extended cell.
#[derive(Debug, Clone, Copy)]
struct CellRecon {
    v_left: EquilibriumVars,
    v_center: EquilibriumVars,
    v_right: EquilibriumVars,
    raw_left: (f64, f64),
    raw_center: (f64, f64),
    raw_right: (f64, f64),
    b_left: f64,
    b_right: f64,
}

/// Face and center values of one cell before the limiter.
struct RawFaces {
    h_left: f64,
    h_center: f64,
    h_right: f64,
    q_left: f64,
    q_center: f64,
    q_right: f64,
    b_left: f64,
    b_right: f64,
}

/// Face bottoms of cell j; the reconstructed form shares the depth stencil
/// weights so a discontinuity biases both reconstructions the same way.
fn face_bottoms(bathy: &Bathymetry, j: usize, fw: &StencilWeights) -> (f64, f64) {
    match bathy.mode {
        BottomMode::Reconstructed => {
            let bw = [
                bathy.cell_avg[j - 2],
                bathy.cell_avg[j - 1],
                bathy.cell_avg[j],
                bathy.cell_avg[j + 1],
                bathy.cell_avg[j + 2],
            ];
            apply_frozen(fw, &bw)
        }
        BottomMode::Sampled => (bathy.interface[j + 1], bathy.interface[j]),
    }
}

/// Raw values of cell j built around its reference profile: the profile
/// supplies the face and center depths of the recovered equilibrium, WENO
/// adds the reconstructed deviation of the data from that profile. Averages
/// lying on one equilibrium have zero deviations, so the raw values sit on
/// the profile no matter how the bottom bends inside the stencil. Returns
/// None where the profile has no depth at some requested bottom.
fn profile_faces(
    j: usize,
    ext: &ExtendedState,
    bathy: &Bathymetry,
    v_own: EquilibriumVars,
    regimes: &[FlowRegime],
    center_coeffs: &[f64; 5],
) -> Option<RawFaces> {
    let mut dh = [0.0; 5];
    let mut dq = [0.0; 5];
    for (k, i) in (j - 2..=j + 2).enumerate() {
        let mean = profile_mean_depth(v_own, regimes[i], &bathy.at_nodes[i], ext.h[i]).ok()?;
        dh[k] = ext.h[i] - mean;
        dq[k] = ext.hu[i] - v_own.m;
    }
    let fw = frozen_weights(&dh);
    let (dh_r, dh_l) = apply_frozen(&fw, &dh);
    let (dq_r, dq_l) = apply_frozen(&frozen_weights(&dq), &dq);
    let (b_r, b_l) = face_bottoms(bathy, j, &fw);
    let mut dh_c = 0.0;
    let mut dq_c = 0.0;
    for k in 0..5 {
        dh_c += center_coeffs[k] * dh[k];
        dq_c += center_coeffs[k] * dq[k];
    }
    let guess = ext.h[j];
    let regime = regimes[j];
    let p_l = solve_height_from(v_own, b_l, regime, guess).ok()?;
    let p_c = solve_height_from(v_own, bathy.center[j], regime, guess).ok()?;
    let p_r = solve_height_from(v_own, b_r, regime, guess).ok()?;
    Some(RawFaces {
        h_left: p_l + dh_l,
        h_center: p_c + dh_c,
        h_right: p_r + dh_r,
        q_left: v_own.m + dq_l,
        q_center: v_own.m + dq_c,
        q_right: v_own.m + dq_r,
        b_left: b_l,
        b_right: b_r,
    })
}

/// Plain component reconstruction of cell j, used where no reference profile
/// spans the stencil.
fn plain_faces(
    j: usize,
    ext: &ExtendedState,
    bathy: &Bathymetry,
    center_coeffs: &[f64; 5],
) -> RawFaces {
    let hw = ext.window_h(j);
    let qw = ext.window_hu(j);
    let fw = frozen_weights(&hw);
    let (h_r, h_l) = apply_frozen(&fw, &hw);
    let (q_r, q_l) = apply_frozen(&frozen_weights(&qw), &qw);
    let (b_r, b_l) = face_bottoms(bathy, j, &fw);
    let mut h_c = 0.0;
    let mut q_c = 0.0;
    for k in 0..5 {
        h_c += center_coeffs[k] * hw[k];
        q_c += center_coeffs[k] * qw[k];
    }
    RawFaces {
        h_left: h_l,
        h_center: h_c,
        h_right: h_r,
        q_left: q_l,
        q_center: q_c,
        q_right: q_r,
        b_left: b_l,
        b_right: b_r,
    }
}

/// Rebuilds conserved variables from v at `b_hat`, walking down the cascade
/// b_hat -> b_own -> raw reconstruction when the head is unrealizable.
fn transform_cascade(
    v: EquilibriumVars,
    b_hat: f64,
    b_own: f64,
    raw: (f64, f64),
    regime: FlowRegime,
    diag: &mut MovingDiagnostics,
) -> (f64, f64) {
    if let Ok(u) = conservative_from_equilibrium(v, b_hat, regime) {
        return u;
    }
    diag.transform_fallbacks += 1;
    if b_own != b_hat {
        if let Ok(u) = conservative_from_equilibrium(v, b_own, regime) {
            return u;
        }
    }
    raw
}

/// Semi-discrete tendency of the moving-water balanced scheme. `regimes`
/// assigns every extended cell the branch its depth roots are taken from.
pub fn rhs_moving(
    state: &ConservedState,
    bathy: &Bathymetry,
    bc: &BoundarySpec,
    grid: &Grid,
    regimes: &[FlowRegime],
) -> Result<(Tendency, MovingDiagnostics), SolverError> {
    let n = grid.n_cells;
    let m = grid.n_ext();
    let dx = grid.dx();
    if regimes.len() != m {
        return Err(SolverError::GridMismatch {
            expected: m,
            found: regimes.len(),
        });
    }
    let ext = ExtendedState::filled(state, bc)?;
    let mut diag = MovingDiagnostics::default();

    // Reference equilibrium per extended cell, warm-started along the sweep.
    let mut refs = Vec::with_capacity(m);
    let mut e_guess = None;
    for j in 0..m {
        let solved = reference_equilibrium(
            ext.h[j],
            ext.hu[j],
            &bathy.at_nodes[j],
            bathy.center[j],
            regimes[j],
            e_guess,
        );
        if solved.fallback {
            diag.reference_fallbacks += 1;
            e_guess = None;
        } else {
            e_guess = Some(solved.v.e);
        }
        refs.push(solved.v);
    }

    let center_coeffs = quartic_value_coeffs(0.0);
    let mut recon: Vec<Option<CellRecon>> = vec![None; m];
    for j in 2..m - 2 {
        let faces = match profile_faces(j, &ext, bathy, refs[j], regimes, &center_coeffs) {
            Some(f) => f,
            None => {
                diag.profile_fallbacks += 1;
                plain_faces(j, &ext, bathy, &center_coeffs)
            }
        };
        for depth in [faces.h_left, faces.h_center, faces.h_right] {
            if !(depth > 0.0) {
                return Err(SolverError::NonPositiveDepth {
                    cell: j,
                    depth,
                    context: "moving-scheme reconstruction (extended index)",
                });
            }
        }
        let raw = |h: f64, q: f64, b: f64| EquilibriumVars::new(q, energy(h, q, b));
        let prev = refs[j - 1];
        let own = refs[j];
        let next = refs[j + 1];
        recon[j] = Some(CellRecon {
            v_left: limit_toward_reference(
                raw(faces.h_left, faces.q_left, faces.b_left),
                prev,
                own,
                next,
            ),
            v_center: limit_toward_reference(
                raw(faces.h_center, faces.q_center, bathy.center[j]),
                prev,
                own,
                next,
            ),
            v_right: limit_toward_reference(
                raw(faces.h_right, faces.q_right, faces.b_right),
                prev,
                own,
                next,
            ),
            raw_left: (faces.h_left, faces.q_left),
            raw_center: (faces.h_center, faces.q_center),
            raw_right: (faces.h_right, faces.q_right),
            b_left: faces.b_left,
            b_right: faces.b_right,
        });
    }

    // Interface fluxes on the rebuilt pairs; keep the per-cell face states
    // for the flux-correction terms.
    let mut flux1 = vec![0.0; n + 1];
    let mut flux2 = vec![0.0; n + 1];
    let mut hat_minus = vec![(0.0, 0.0); n + 1];
    let mut hat_plus = vec![(0.0, 0.0); n + 1];
    for k in 0..=n {
        let jl = NUM_GHOST + k - 1;
        let jr = NUM_GHOST + k;
        let left = recon[jl].as_ref().expect("left cell reconstructed");
        let right = recon[jr].as_ref().expect("right cell reconstructed");
        let b_hat = left.b_right.min(right.b_left);
        let u_minus = transform_cascade(
            left.v_right,
            b_hat,
            left.b_right,
            left.raw_right,
            regimes[jl],
            &mut diag,
        );
        let u_plus = transform_cascade(
            right.v_left,
            b_hat,
            right.b_left,
            right.raw_left,
            regimes[jr],
            &mut diag,
        );
        let alpha = wave_speed(u_minus.0, u_minus.1).max(wave_speed(u_plus.0, u_plus.1));
        flux1[k] = 0.5 * (u_minus.1 + u_plus.1 - alpha * (u_plus.0 - u_minus.0));
        flux2[k] = 0.5
            * (momentum_flux(u_minus.0, u_minus.1) + momentum_flux(u_plus.0, u_plus.1)
                - alpha * (u_plus.1 - u_minus.1));
        hat_minus[k] = u_minus;
        hat_plus[k] = u_plus;
    }

    let mut out = Tendency::zeros(n);
    for i in 0..n {
        let j = NUM_GHOST + i;
        let cell = recon[j].as_ref().expect("interior cell reconstructed");
        let regime = regimes[j];
        let v_ref = refs[j];
        let b_c = bathy.center[j];
        let tilde_l = transform_cascade(
            cell.v_left,
            cell.b_left,
            cell.b_left,
            cell.raw_left,
            regime,
            &mut diag,
        );
        let tilde_c =
            transform_cascade(cell.v_center, b_c, b_c, cell.raw_center, regime, &mut diag);
        let tilde_r = transform_cascade(
            cell.v_right,
            cell.b_right,
            cell.b_right,
            cell.raw_right,
            regime,
            &mut diag,
        );

        let mut relief = |u_l: (f64, f64), u_r: (f64, f64), b_l: f64, b_r: f64| {
            source_interior(u_l, u_r, b_l, b_r, v_ref, regime).unwrap_or_else(|_| {
                diag.source_fallbacks += 1;
                source_hydrostatic(u_l, u_r, b_l, b_r)
            })
        };
        let s1 = relief(tilde_l, tilde_r, cell.b_left, cell.b_right);
        let s2 = relief(tilde_l, tilde_c, cell.b_left, b_c)
            + relief(tilde_c, tilde_r, b_c, cell.b_right);

        let hat_l = hat_plus[i];
        let hat_r = hat_minus[i + 1];
        let corr1 = (tilde_l.1 - hat_l.1) + (hat_r.1 - tilde_r.1);
        let corr2 = (momentum_flux(tilde_l.0, tilde_l.1) - momentum_flux(hat_l.0, hat_l.1))
            + (momentum_flux(hat_r.0, hat_r.1) - momentum_flux(tilde_r.0, tilde_r.1));

        out.dh[i] = (-(flux1[i + 1] - flux1[i]) + corr1) / dx;
        out.dhu[i] = (-(flux2[i + 1] - flux2[i]) + (4.0 * s2 - s1) / 3.0 + corr2) / dx;
    }
    Ok((out, diag))
}
