//! Tensorized Gauss-Legendre quadrature over axis-aligned boxes.

use crate::error::{Error, Result};

/// Relative tolerance target for adaptive order checks.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Newton iteration on the Legendre polynomial with the standard cosine
/// initial guesses; accurate to machine precision for the orders used
/// here (n <= 128).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence: evaluates P_n(x) and P_n'(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Integrate `f` over the box `[lo, hi]` with an `order`-point tensor rule.
pub fn integrate_box<F: Fn(&[f64]) -> f64>(f: &F, lo: &[f64], hi: &[f64], order: usize) -> f64 {
    let d = lo.len();
    debug_assert_eq!(d, hi.len());
    if d == 0 {
        return f(&[]);
    }
    let (nodes, weights) = gauss_legendre(order);
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0; d];
    let half: Vec<f64> = (0..d).map(|a| 0.5 * (hi[a] - lo[a])).collect();
    let mid: Vec<f64> = (0..d).map(|a| 0.5 * (hi[a] + lo[a])).collect();
    let jac: f64 = half.iter().product();
    let mut total = 0.0;
    loop {
        let mut w = jac;
        for a in 0..d {
            x[a] = mid[a] + half[a] * nodes[idx[a]];
            w *= weights[idx[a]];
        }
        total += w * f(&x);
        // odometer over the tensor grid
        let mut a = 0;
        loop {
            if a == d {
                return total;
            }
            idx[a] += 1;
            if idx[a] < order {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

/// Integrate with a convergence check: the result at `order` is compared
/// against `order + 8`; disagreement beyond the relative tolerance is a
/// quadrature failure carrying the achieved error estimate.
pub fn integrate_box_checked<F: Fn(&[f64]) -> f64>(
    f: &F,
    lo: &[f64],
    hi: &[f64],
    order: usize,
    rel_tol: f64,
) -> Result<f64> {
    let coarse = integrate_box(f, lo, hi, order);
    let fine = integrate_box(f, lo, hi, order + 8);
    let err = (fine - coarse).abs();
    let target = rel_tol * fine.abs().max(1.0);
    if err > target {
        return Err(Error::QuadratureNotConverged {
            achieved: err,
            target,
        });
    }
    Ok(fine)
}
