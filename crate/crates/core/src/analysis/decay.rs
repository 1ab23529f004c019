use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{extrapolate_to_zero, linear_fit};
use crate::partition::{DecreasingStream, Length, PartitionFamily};

/// Enumeration budget for fits and probes.
pub const DEFAULT_J_BUDGET: usize = 1_000_000;

/// Power-law fit `a_j ~ C_hat j^alpha_hat` over a window of indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    #[serde(rename = "C_hat")]
    pub c_hat: f64,
    pub alpha_hat: f64,
    pub window: (usize, usize),
    /// Largest relative deviation of `a_j` from the fitted law at the probes.
    pub residual: f64,
    /// Extrapolated limit of `sqrt(j) a_j`, reported when the fitted
    /// exponent is close to `-1/2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_extrapolated: Option<f64>,
}

/// Probe indices `floor(j_lo 2^{k/4})` inside the window.
pub fn dyadic_points(j_lo: usize, j_hi: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 0.. {
        let j = (j_lo as f64 * (k as f64 / 4.0).exp2()).floor() as usize;
        if j > j_hi {
            break;
        }
        if out.last() != Some(&j) {
            out.push(j);
        }
    }
    out
}

/// Fits the sampled points `(j, a_j)`.
pub fn fit_samples(window: (usize, usize), samples: &[(usize, f64)]) -> Result<DecayFit> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument("need at least two probe points".into()));
    }
    let x: Vec<f64> = samples.iter().map(|(j, _)| (*j as f64).ln()).collect();
    let y: Vec<f64> = samples.iter().map(|(_, a)| a.ln()).collect();
    let (intercept, slope) = linear_fit(&x, &y);
    let c_hat = intercept.exp();
    let residual = samples
        .iter()
        .map(|&(j, a)| (a / (c_hat * (j as f64).powf(slope)) - 1.0).abs())
        .fold(0.0, f64::max);
    let c_extrapolated = ((slope + 0.5).abs() < 0.05 && samples.len() >= 3).then(|| {
        let tail = &samples[samples.len() - 3..];
        let h: Vec<f64> = tail.iter().map(|(j, _)| 1.0 / (*j as f64).sqrt()).collect();
        let c: Vec<f64> = tail.iter().map(|(j, a)| (*j as f64).sqrt() * a).collect();
        extrapolate_to_zero(&h, &c).0
    });
    Ok(DecayFit { c_hat, alpha_hat: slope, window, residual, c_extrapolated })
}

/// Least-squares fit of `ln a_j` against `ln j` on dyadic probes in `window`.
pub fn decay_fit<F: PartitionFamily + ?Sized>(family: &F, window: (usize, usize)) -> Result<DecayFit> {
    let (j_lo, j_hi) = window;
    if j_lo == 0 || j_lo >= j_hi {
        return Err(Error::InvalidArgument(format!("window must satisfy 1 <= j_lo < j_hi, got {window:?}")));
    }
    if j_hi > DEFAULT_J_BUDGET {
        return Err(Error::InvalidArgument(format!("j_hi = {j_hi} exceeds the enumeration budget {DEFAULT_J_BUDGET}")));
    }
    let points = dyadic_points(j_lo, j_hi);
    let mut samples = Vec::with_capacity(points.len());
    let mut wanted = points.iter().peekable();
    for item in DecreasingStream::new(family) {
        let item = item?;
        if wanted.peek() == Some(&&item.index) {
            wanted.next();
            samples.push((item.index, item.value.to_f64()));
            if wanted.peek().is_none() {
                break;
            }
        }
    }
    fit_samples(window, &samples)
}
