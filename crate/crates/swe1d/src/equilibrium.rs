//! Steady flowing water: discharge and energy head as flow variables.
//!
//! A smooth steady state has constant discharge m = h u and constant head
//! E = u^2 / 2 + g (h + b). For fixed (m, E) and bottom b the head relation
//! is a cubic in the depth with at most two positive roots, one on each side
//! of the critical depth; the pair (m, E) plus a side therefore determines
//! the depth uniquely wherever it exists.

use crate::error::SolverError;
use crate::quadrature::{mean_of_nodes, GAUSS_WEIGHTS};
use crate::GRAVITY;

/// Discharge and energy head of a steady flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumVars {
    pub m: f64,
    pub e: f64,
}

impl EquilibriumVars {
    pub fn new(m: f64, e: f64) -> Self {
        Self { m, e }
    }
}

/// Which side of the critical depth a root is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowRegime {
    Subcritical,
    Supercritical,
}

/// Energy head of the state (h, m) over bottom b.
pub fn energy(h: f64, m: f64, b: f64) -> f64 {
    debug_assert!(h > 0.0);
    0.5 * m * m / (h * h) + GRAVITY * (h + b)
}

/// Froude number |u| / sqrt(g h).
pub fn froude(h: f64, m: f64) -> f64 {
    debug_assert!(h > 0.0);
    m.abs() / (h * (GRAVITY * h).sqrt())
}

/// Depth at which the flow with discharge m turns critical (Froude 1).
pub fn critical_depth(m: f64) -> f64 {
    (m * m / GRAVITY).cbrt()
}

/// Smallest head that admits a depth for discharge m over bottom b.
pub fn minimum_energy(m: f64, b: f64) -> f64 {
    1.5 * GRAVITY * critical_depth(m) + GRAVITY * b
}

// Heads within this relative band of the critical minimum collapse to the
// critical depth on both branches. Near the minimum the depth moves like the
// square root of the head margin, so leaving round-off-sized margins alive
// would split the two branch roots by orders of magnitude more than the
// round-off itself.
const REALIZABILITY_BAND: f64 = 1e-11;

/// Depth with the given discharge, head, and bottom on the requested side of
/// the critical depth.
pub fn solve_height(
    v: EquilibriumVars,
    b: f64,
    regime: FlowRegime,
) -> Result<f64, SolverError> {
    solve_height_impl(v, b, regime, None)
}

/// Same as [`solve_height`] with a caller-provided starting depth. The guess
/// only steers the iteration; the result is the same root.
pub fn solve_height_from(
    v: EquilibriumVars,
    b: f64,
    regime: FlowRegime,
    guess: f64,
) -> Result<f64, SolverError> {
    solve_height_impl(v, b, regime, Some(guess))
}

fn solve_height_impl(
    v: EquilibriumVars,
    b: f64,
    regime: FlowRegime,
    guess: Option<f64>,
) -> Result<f64, SolverError> {
    let head = v.e - GRAVITY * b;
    let tol = 1e-15 * v.e.abs().max(1.0);

    if v.m == 0.0 {
        // Still water: the head relation degenerates to g h = head.
        return match regime {
            FlowRegime::Subcritical if head > 0.0 => Ok(head / GRAVITY),
            FlowRegime::Subcritical => Err(SolverError::NoRoot {
                regime,
                deficit: -head,
            }),
            FlowRegime::Supercritical => Err(SolverError::SupercriticalZeroDischarge),
        };
    }

    let m2 = v.m * v.m;
    let hc = critical_depth(v.m);
    let head_min = 1.5 * GRAVITY * hc;
    let deficit = head_min - head;
    let band = REALIZABILITY_BAND * v.e.abs().max(1.0);
    if deficit > band {
        return Err(SolverError::NoRoot { regime, deficit });
    }
    if deficit >= -band {
        return Ok(hc);
    }

    // phi is convex with its minimum at hc; the bracket ends carry opposite
    // signs by construction.
    let phi = |h: f64| 0.5 * m2 / (h * h) + GRAVITY * h - head;
    let dphi = |h: f64| GRAVITY - m2 / (h * h * h);
    let (mut lo, mut hi) = match regime {
        FlowRegime::Subcritical => (hc, head / GRAVITY),
        FlowRegime::Supercritical => (v.m.abs() / (2.0 * head).sqrt(), hc),
    };

    let mut h = match guess {
        Some(g) if g > lo && g < hi => g,
        _ => match regime {
            FlowRegime::Subcritical => hi,
            FlowRegime::Supercritical => lo,
        },
    };

    for _ in 0..200 {
        let f = phi(h);
        if f.abs() <= tol {
            return Ok(h);
        }
        // Keep the sign-invariant: phi < 0 between the root and hc.
        match regime {
            FlowRegime::Subcritical => {
                if f < 0.0 {
                    lo = h;
                } else {
                    hi = h;
                }
            }
            FlowRegime::Supercritical => {
                if f < 0.0 {
                    hi = h;
                } else {
                    lo = h;
                }
            }
        }
        let mut next = h - f / dphi(h);
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if next == h {
            return Ok(h);
        }
        h = next;
    }
    Ok(h)
}

/// (h, hu) of the steady flow (v, regime) over bottom b.
pub fn conservative_from_equilibrium(
    v: EquilibriumVars,
    b: f64,
    regime: FlowRegime,
) -> Result<(f64, f64), SolverError> {
    let h = solve_height(v, b, regime)?;
    Ok((h, v.m))
}

/// Pointwise change of variables; total, since any positive depth has a head.
pub fn equilibrium_from_conservative(h: f64, hu: f64, b: f64) -> EquilibriumVars {
    EquilibriumVars::new(hu, energy(h, hu, b))
}

/// Depths of the flow (v, regime) at the five quadrature nodes of a cell,
/// swept left to right with warm starts. Initialization and the reference
/// recovery below both use this routine, so a state sampled from an
/// equilibrium reproduces its head bitwise.
pub fn depth_profile_at_nodes(
    v: EquilibriumVars,
    regime: FlowRegime,
    b_nodes: &[f64; 5],
) -> Result<[f64; 5], SolverError> {
    let mut out = [0.0; 5];
    let mut guess = None;
    for (o, &b) in out.iter_mut().zip(b_nodes) {
        let h = match guess {
            Some(g) => solve_height_from(v, b, regime, g)?,
            None => solve_height(v, b, regime)?,
        };
        *o = h;
        guess = Some(h);
    }
    Ok(out)
}

/// Cell-average depth of the flow (v, regime) over the node bottoms. The
/// accumulation matches [`crate::quadrature::mean_of_nodes`], so averages of
/// sampled equilibria round-trip to round-off.
pub fn profile_mean_depth(
    v: EquilibriumVars,
    regime: FlowRegime,
    b_nodes: &[f64; 5],
    guess: f64,
) -> Result<f64, SolverError> {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut start = guess;
    for (&b, w) in b_nodes.iter().zip(GAUSS_WEIGHTS) {
        let h = solve_height_from(v, b, regime, start)?;
        num += w * h;
        den += w;
        start = h;
    }
    Ok(num / den)
}

/// Result of the cell-average head recovery.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceSolve {
    pub v: EquilibriumVars,
    /// True when no head on the requested side reproduces the cell average
    /// and the pointwise head at the cell center was used instead.
    pub fallback: bool,
}

/// Head whose depth profile averages to `h_bar` over the cell.
///
/// The discharge component is exact: the second conserved component of any
/// steady flow is constant, so its cell average is the discharge itself. The
/// head solves mean_q h(E, b_q) = h_bar over the quadrature nodes; the mean
/// is monotone in E on either side of critical, so a bracketed Newton
/// iteration converges to round-off whenever the target is attainable.
pub fn reference_equilibrium(
    h_bar: f64,
    hu_bar: f64,
    b_nodes: &[f64; 5],
    b_center: f64,
    regime: FlowRegime,
    e_guess: Option<f64>,
) -> ReferenceSolve {
    let m = hu_bar;
    let regime = if m == 0.0 {
        FlowRegime::Subcritical
    } else {
        regime
    };
    let fallback = ReferenceSolve {
        v: EquilibriumVars::new(m, energy(h_bar, m, b_center)),
        fallback: true,
    };

    // A flat cell needs no iteration: all nodes share one depth, so the mean
    // pins that depth to h_bar and the head follows in closed form.
    if b_nodes.iter().all(|&b| b == b_nodes[0]) {
        let b = b_nodes[0];
        if m == 0.0 {
            return ReferenceSolve {
                v: EquilibriumVars::new(0.0, energy(h_bar, 0.0, b)),
                fallback: false,
            };
        }
        let on_side = match regime {
            FlowRegime::Subcritical => h_bar >= critical_depth(m),
            FlowRegime::Supercritical => h_bar <= critical_depth(m),
        };
        if on_side {
            return ReferenceSolve {
                v: EquilibriumVars::new(m, energy(h_bar, m, b)),
                fallback: false,
            };
        }
        return fallback;
    }

    let b_max = b_nodes.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    // Still water: the node depths are affine in the head, so the mean
    // inverts in closed form. The general bracket below cannot start here
    // because its floor evaluation would place a zero depth on the highest
    // node.
    if m == 0.0 {
        let e = GRAVITY * (h_bar + mean_of_nodes(b_nodes));
        if e - GRAVITY * b_max <= 0.0 {
            return fallback;
        }
        return ReferenceSolve {
            v: EquilibriumVars::new(0.0, e),
            fallback: false,
        };
    }

    let e_floor = minimum_energy(m, b_max);
    let tol = 1e-15 * h_bar.abs().max(1.0);

    // Mean depth and its E-derivative at fixed head.
    let mean = |e: f64| -> Option<(f64, f64)> {
        let v = EquilibriumVars::new(m, e);
        let hs = depth_profile_at_nodes(v, regime, b_nodes).ok()?;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut dnum = 0.0;
        for (h, w) in hs.iter().zip(GAUSS_WEIGHTS) {
            let fr = froude(*h, m);
            num += w * h;
            // dh/dE at fixed m; unbounded at critical nodes, the Newton
            // safeguard below absorbs that.
            dnum += w / (GRAVITY * (1.0 - fr * fr));
            den += w;
        }
        Some((num / den, dnum / den))
    };

    let Some((mean_floor, _)) = mean(e_floor) else {
        return fallback;
    };
    let g_floor = mean_floor - h_bar;
    // On the subcritical side the mean grows with E from its floor value; on
    // the supercritical side it shrinks. Targets outside the reachable range
    // have no head on this side.
    let attainable = match regime {
        FlowRegime::Subcritical => g_floor <= tol,
        FlowRegime::Supercritical => g_floor >= -tol,
    };
    if !attainable {
        return fallback;
    }
    if g_floor.abs() <= tol {
        return ReferenceSolve {
            v: EquilibriumVars::new(m, e_floor),
            fallback: false,
        };
    }

    // Grow the far end of the bracket until the residual changes sign.
    let mut e_lo = e_floor;
    let mut gap = (energy(h_bar, m, b_max) - e_floor).abs().max(1.0);
    let mut e_hi = e_floor + gap;
    let mut g_hi;
    loop {
        match mean(e_hi) {
            Some((mh, _)) => g_hi = mh - h_bar,
            None => return fallback,
        }
        let bracketed = match regime {
            FlowRegime::Subcritical => g_hi >= 0.0,
            FlowRegime::Supercritical => g_hi <= 0.0,
        };
        if bracketed {
            break;
        }
        e_lo = e_hi;
        gap *= 2.0;
        e_hi = e_floor + gap;
        if !gap.is_finite() {
            return fallback;
        }
    }

    let mut e = match e_guess {
        Some(g) if g > e_lo && g < e_hi => g,
        _ => 0.5 * (e_lo + e_hi),
    };
    for _ in 0..200 {
        let Some((mh, dh)) = mean(e) else {
            return fallback;
        };
        let g = mh - h_bar;
        if g.abs() <= tol {
            return ReferenceSolve {
                v: EquilibriumVars::new(m, e),
                fallback: false,
            };
        }
        let g_is_low = match regime {
            FlowRegime::Subcritical => g < 0.0,
            FlowRegime::Supercritical => g > 0.0,
        };
        if g_is_low {
            e_lo = e;
        } else {
            e_hi = e;
        }
        let mut next = e - g / dh;
        if !next.is_finite() || next <= e_lo || next >= e_hi {
            next = 0.5 * (e_lo + e_hi);
        }
        if next == e {
            return ReferenceSolve {
                v: EquilibriumVars::new(m, e),
                fallback: false,
            };
        }
        e = next;
    }
    ReferenceSolve {
        v: EquilibriumVars::new(m, e),
        fallback: false,
    }
}
