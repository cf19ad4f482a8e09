//! Fifth-order WENO edge reconstruction from five cell averages.
//!
//! The nonlinear weights are exposed as a realized 5-point linear functional
//! per edge, [`StencilWeights`]. Re-applying those coefficients to a second
//! field (the bottom topography) reconstructs it with exactly the operator
//! the flow data selected, which is what keeps surface and bottom edge
//! values compatible inside the balanced schemes.

/// Regularization added to the smoothness indicators.
pub const WENO_EPSILON: f64 = 1e-6;

/// Edge values of the three quadratic candidate stencils, as coefficients on
/// the window [i-2 ..= i+2]; rows are the left-, center-, and right-shifted
/// stencils for the right edge of the window's middle cell.
const CANDIDATE_RIGHT: [[f64; 5]; 3] = [
    [1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0, 0.0, 0.0],
    [0.0, -1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0, 0.0],
    [0.0, 0.0, 1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0],
];

/// Ideal stencil weights reproducing the five-point upwind edge value.
const IDEAL: [f64; 3] = [0.1, 0.6, 0.3];

/// The 5-point linear functionals a WENO pass realizes on one window; `right`
/// gives the value at the window's right face, `left` at its left face, both
/// seen from inside the middle cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilWeights {
    pub right: [f64; 5],
    pub left: [f64; 5],
}

fn sq(x: f64) -> f64 {
    x * x
}

/// Realized coefficients for the right-face value of the middle cell.
fn right_face_coeffs(w: &[f64; 5]) -> [f64; 5] {
    let beta = [
        13.0 / 12.0 * sq(w[0] - 2.0 * w[1] + w[2]) + 0.25 * sq(w[0] - 4.0 * w[1] + 3.0 * w[2]),
        13.0 / 12.0 * sq(w[1] - 2.0 * w[2] + w[3]) + 0.25 * sq(w[1] - w[3]),
        13.0 / 12.0 * sq(w[2] - 2.0 * w[3] + w[4]) + 0.25 * sq(3.0 * w[2] - 4.0 * w[3] + w[4]),
    ];
    let alpha = [
        IDEAL[0] / sq(WENO_EPSILON + beta[0]),
        IDEAL[1] / sq(WENO_EPSILON + beta[1]),
        IDEAL[2] / sq(WENO_EPSILON + beta[2]),
    ];
    let total = alpha[0] + alpha[1] + alpha[2];
    let omega = [alpha[0] / total, alpha[1] / total, alpha[2] / total];
    let mut out = [0.0; 5];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = omega[0] * CANDIDATE_RIGHT[0][k]
            + omega[1] * CANDIDATE_RIGHT[1][k]
            + omega[2] * CANDIDATE_RIGHT[2][k];
    }
    out
}

/// Coefficients realized by the WENO pass on this window, one set per face.
/// The left face is the right face of the mirrored window, so a symmetric
/// window yields mirrored coefficient sets.
pub fn frozen_weights(window: &[f64; 5]) -> StencilWeights {
    let right = right_face_coeffs(window);
    let mirrored = [window[4], window[3], window[2], window[1], window[0]];
    let m = right_face_coeffs(&mirrored);
    StencilWeights {
        right,
        left: [m[4], m[3], m[2], m[1], m[0]],
    }
}

/// Applies both coefficient sets to a window of values; returns the (right
/// face, left face) pair. The summation order is fixed so that applying
/// weights to their generating window reproduces the reconstruction bitwise.
pub fn apply_frozen(weights: &StencilWeights, values: &[f64; 5]) -> (f64, f64) {
    (
        dot5(&weights.right, values),
        dot5(&weights.left, values),
    )
}

fn dot5(c: &[f64; 5], v: &[f64; 5]) -> f64 {
    c[0] * v[0] + c[1] * v[1] + c[2] * v[2] + c[3] * v[3] + c[4] * v[4]
}

/// Edge values of the middle cell from five cell averages: (right face, left
/// face). Defined as the frozen coefficients applied to their own window.
pub fn weno5_reconstruct(window: &[f64; 5]) -> (f64, f64) {
    apply_frozen(&frozen_weights(window), window)
}

/// Coefficient of `xi^k` in the quartic basis polynomial attached to window
/// position `j` (rows j = 0..4 for cells i-2 ..= i+2). The quartic
/// `p(xi) = sum_j window[j] * L_j(xi)` on the middle cell, `xi` in
/// [-1/2, 1/2], is the unique degree-4 polynomial whose sliding cell
/// averages over all five window cells match the window; the rows sum to the
/// constant polynomial 1.
const QUARTIC: [[f64; 5]; 5] = [
    [3.0 / 640.0, 5.0 / 48.0, -1.0 / 16.0, -1.0 / 12.0, 1.0 / 24.0],
    [-29.0 / 480.0, -17.0 / 24.0, 3.0 / 4.0, 1.0 / 6.0, -1.0 / 6.0],
    [1067.0 / 960.0, 0.0, -11.0 / 8.0, 0.0, 1.0 / 4.0],
    [-29.0 / 480.0, 17.0 / 24.0, 3.0 / 4.0, -1.0 / 6.0, -1.0 / 6.0],
    [3.0 / 640.0, -5.0 / 48.0, -1.0 / 16.0, 1.0 / 12.0, 1.0 / 24.0],
];

/// Window coefficients of the quartic's value at local coordinate `xi`.
pub fn quartic_value_coeffs(xi: f64) -> [f64; 5] {
    let mut out = [0.0; 5];
    for (o, row) in out.iter_mut().zip(QUARTIC) {
        *o = row[0] + xi * (row[1] + xi * (row[2] + xi * (row[3] + xi * row[4])));
    }
    out
}

/// Window coefficients of the quartic's derivative in `xi` (multiply by
/// 1/dx for a spatial slope).
pub fn quartic_slope_coeffs(xi: f64) -> [f64; 5] {
    let mut out = [0.0; 5];
    for (o, row) in out.iter_mut().zip(QUARTIC) {
        *o = row[1] + xi * (2.0 * row[2] + xi * (3.0 * row[3] + xi * 4.0 * row[4]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::mean_over;

    #[test]
    fn constants_pass_through() {
        for c in [0.0, 1.0, -3.5, 2.0e8] {
            let (r, l) = weno5_reconstruct(&[c; 5]);
            assert!((r - c).abs() <= 1e-14 * c.abs().max(1.0));
            assert!((l - c).abs() <= 1e-14 * c.abs().max(1.0));
        }
    }

    #[test]
    fn linear_data_is_exact() {
        // Cell averages of f(x) = 2x + 1 on unit cells centered at 0..4;
        // middle cell faces sit at 2.5 and 1.5.
        let window = [1.0, 3.0, 5.0, 7.0, 9.0];
        let (r, l) = weno5_reconstruct(&window);
        assert!((r - 6.0).abs() < 1e-13, "right face {r}");
        assert!((l - 4.0).abs() < 1e-13, "left face {l}");
    }

    #[test]
    fn coefficients_sum_to_one() {
        let windows = [
            [1.0, 2.0, 0.5, 3.0, -1.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [5.0, 5.0, 5.0, 5.1, 5.0],
        ];
        for w in windows {
            let fw = frozen_weights(&w);
            for side in [fw.right, fw.left] {
                let s: f64 = side.iter().sum();
                assert!((s - 1.0).abs() < 1e-14, "sum {s}");
            }
        }
    }

    #[test]
    fn frozen_application_is_linear_and_reproducing() {
        let w = [1.3, 0.2, -0.7, 2.2, 0.9];
        let fw = frozen_weights(&w);
        let direct = weno5_reconstruct(&w);
        assert_eq!(apply_frozen(&fw, &w), direct);

        let x = [0.4, 1.0, -2.0, 0.3, 0.0];
        let y = [2.0, -1.0, 0.5, 0.5, 3.0];
        let mut combo = [0.0; 5];
        for k in 0..5 {
            combo[k] = 2.0 * x[k] - 3.0 * y[k];
        }
        let (cr, cl) = apply_frozen(&fw, &combo);
        let (xr, xl) = apply_frozen(&fw, &x);
        let (yr, yl) = apply_frozen(&fw, &y);
        assert!((cr - (2.0 * xr - 3.0 * yr)).abs() < 1e-13);
        assert!((cl - (2.0 * xl - 3.0 * yl)).abs() < 1e-13);
    }

    #[test]
    fn flat_surface_survives_paired_reconstruction() {
        // Depth and bottom vary while their sum is constant; the bottom is
        // reconstructed with the coefficients frozen on the surface data, so
        // the reconstructed sum must stay on the constant.
        let b = [0.0, 0.02, 0.11, 0.19, 0.2];
        let c = 1.0;
        let s = [c; 5];
        let fw = frozen_weights(&s);
        let (sr, sl) = apply_frozen(&fw, &s);
        let (br, bl) = apply_frozen(&fw, &b);
        let hr = sr - br;
        let hl = sl - bl;
        assert!((hr + br - c).abs() < 1e-13);
        assert!((hl + bl - c).abs() < 1e-13);
    }

    #[test]
    fn smooth_faces_converge_at_fifth_order() {
        let mut errors = Vec::new();
        let ns = [40usize, 80, 160, 320];
        for &n in &ns {
            let dx = 1.0 / n as f64;
            let avg = |i: i64| mean_over(i as f64 * dx, (i + 1) as f64 * dx, f64::sin);
            let mut worst: f64 = 0.0;
            for i in 2..(n as i64 - 2) {
                let w = [avg(i - 2), avg(i - 1), avg(i), avg(i + 1), avg(i + 2)];
                let (r, l) = weno5_reconstruct(&w);
                let exact_r = ((i + 1) as f64 * dx).sin();
                let exact_l = (i as f64 * dx).sin();
                worst = worst.max((r - exact_r).abs()).max((l - exact_l).abs());
            }
            errors.push(worst);
        }
        let mut slopes = Vec::new();
        for k in 1..errors.len() {
            slopes.push((errors[k - 1] / errors[k]).log2());
        }
        let mean_slope = slopes.iter().sum::<f64>() / slopes.len() as f64;
        assert!(mean_slope >= 4.7, "order {mean_slope}, errors {errors:?}");
    }

    #[test]
    fn quartic_matches_averages_and_exact_values() {
        // Window of exact cell averages of f(x) = x^4 on unit cells centered
        // at -2..2: average over [c-1/2, c+1/2] is c^4 + c^2/2 + 1/80.
        let avg = |c: f64| c.powi(4) + 0.5 * c * c + 0.0125;
        let w = [avg(-2.0), avg(-1.0), avg(0.0), avg(1.0), avg(2.0)];
        for xi in [-0.5, -0.21, 0.0, 0.37, 0.5] {
            let v = dot5(&quartic_value_coeffs(xi), &w);
            assert!((v - xi.powi(4)).abs() < 1e-12, "value at {xi}: {v}");
            let d = dot5(&quartic_slope_coeffs(xi), &w);
            assert!((d - 4.0 * xi.powi(3)).abs() < 1e-12, "slope at {xi}: {d}");
        }
        // Partition of unity: constant windows give the constant everywhere.
        let ones = dot5(&quartic_value_coeffs(0.3), &[1.0; 5]);
        assert!((ones - 1.0).abs() < 1e-14);
    }
}
