//! Gauss–Legendre rules and an adaptive panel integrator.

use crate::error::{Error, Result};
use crate::numeric::NeumaierSum;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_p_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_p_and_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_p_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Fixed Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_on<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut acc = NeumaierSum::default();
    for (x, w) in nodes.iter().zip(weights) {
        acc.add(w * f(mid + half * x));
    }
    half * acc.value()
}

/// Adaptive integration by panel bisection with a 20-point rule.
///
/// A panel is accepted when its estimate and the sum over its two halves
/// agree within `rel_tol` times the running total (or `abs_floor`).
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, max_panels: usize) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(20);
    let whole = gauss_on(&f, a, b, &nodes, &weights);
    let scale = whole.abs().max(f64::MIN_POSITIVE);
    let mut stack = vec![(a, b, whole, 0usize)];
    let mut total = NeumaierSum::default();
    let mut panels = 1usize;
    let mut worst = 0.0f64;
    while let Some((lo, hi, estimate, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = gauss_on(&f, lo, mid, &nodes, &weights);
        let right = gauss_on(&f, mid, hi, &nodes, &weights);
        let refined = left + right;
        let err = (refined - estimate).abs();
        let span = (hi - lo) / (b - a);
        if err <= rel_tol * scale * span.max(1e-3) || depth >= 50 {
            worst = worst.max(err);
            total.add(refined);
            continue;
        }
        panels += 2;
        if panels > max_panels {
            return Err(Error::QuadratureNonConvergence { estimate: err, panels });
        }
        stack.push((lo, mid, left, depth + 1));
        stack.push((mid, hi, right, depth + 1));
    }
    if !total.value().is_finite() {
        return Err(Error::QuadratureNonConvergence { estimate: worst, panels });
    }
    Ok(total.value())
}
