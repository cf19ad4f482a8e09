//! Five-point Gauss-Legendre quadrature on cell intervals.
//!
//! Five points integrate polynomials up to degree nine exactly, which covers
//! every reconstruction polynomial used elsewhere in the crate.

/// Nodes on the reference interval [-1, 1].
pub const GAUSS_NODES: [f64; 5] = [
    -0.906179845938663_9928,
    -0.538469310105683_091,
    0.0,
    0.538469310105683_091,
    0.906179845938663_9928,
];

/// Weights paired with [`GAUSS_NODES`]; they sum to 2.
pub const GAUSS_WEIGHTS: [f64; 5] = [
    0.236926885056189_0875,
    0.478628670499366_468,
    0.568888888888888_8889,
    0.478628670499366_468,
    0.236926885056189_0875,
];

/// Physical coordinates of the quadrature nodes inside [lo, hi].
pub fn nodes_in(lo: f64, hi: f64) -> [f64; 5] {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut out = [0.0; 5];
    for (o, n) in out.iter_mut().zip(GAUSS_NODES) {
        *o = mid + half * n;
    }
    out
}

/// Mean value of `f` over [lo, hi].
///
/// The weight sum is divided out rather than assumed, so constants are
/// reproduced to round-off no matter how the weight constants round.
pub fn mean_over(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let xs = nodes_in(lo, hi);
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, w) in xs.iter().zip(GAUSS_WEIGHTS) {
        num += w * f(*x);
        den += w;
    }
    num / den
}

/// Integral of `f` over [lo, hi].
pub fn integral_over(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let xs = nodes_in(lo, hi);
    let half = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for (x, w) in xs.iter().zip(GAUSS_WEIGHTS) {
        acc += w * f(*x);
    }
    half * acc
}

/// Weighted mean of precomputed node values, matching [`mean_over`] bitwise.
pub fn mean_of_nodes(values: &[f64; 5]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (v, w) in values.iter().zip(GAUSS_WEIGHTS) {
        num += w * v;
        den += w;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_mean_is_exact() {
        let c = 0.19973958333333334;
        let got = mean_over(3.0, 3.25, |_| c);
        assert!((got - c).abs() <= 1e-15 * c.abs());
    }

    #[test]
    fn integrates_degree_nine_exactly() {
        // int_0^1 x^9 dx = 1/10
        let got = integral_over(0.0, 1.0, |x| x.powi(9));
        assert!((got - 0.1).abs() < 1e-15, "got {got}");
    }

    #[test]
    fn quadratic_bump_cell_average() {
        // Mean of 0.2 - 0.05 (x-10)^2 over [9.875, 10.125], closed form
        // 0.2 - 0.05/3 * (0.125)^2 * ... worked out to 51.1/256 / ... below.
        let exact = 0.2 - 0.05 * 2.0 * 0.125f64.powi(3) / (3.0 * 0.25);
        let got = mean_over(9.875, 10.125, |x| 0.2 - 0.05 * (x - 10.0) * (x - 10.0));
        assert!((got - exact).abs() < 1e-15);
    }
}
