use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::extrapolate_to_zero;
use crate::partition::{DecreasingStream, FamilyKind, Length, PartitionFamily};
use crate::specfun::{tau_bound_regular, EULER_GAMMA};

/// `(log 2 + gamma) / 2`
pub fn gamma_limit_target() -> f64 {
    0.5 * (std::f64::consts::LN_2 + EULER_GAMMA)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaProbe {
    /// `(p, (1 - 2^{1-p}) zeta(p-1) - 1/(2(p-2)))`
    pub values: Vec<(f64, f64)>,
    pub extrapolated: f64,
    /// Size of the last Neville correction.
    pub error_estimate: f64,
    pub target: f64,
}

/// Default exponents `2 + 2^{-k}`, `k = 1..=8`.
pub fn default_gamma_exponents() -> Vec<f64> {
    (1..=8).map(|k| 2.0 + (-(k as f64)).exp2()).collect()
}

/// Evaluates the regularized zeta bound at each `p` in `(2, 3]` and
/// extrapolates to `p -> 2`.
pub fn gamma_limit_probe(p_list: &[f64]) -> Result<GammaProbe> {
    if p_list.is_empty() {
        return Err(Error::InvalidArgument("no exponents given".into()));
    }
    let mut values = Vec::with_capacity(p_list.len());
    for &p in p_list {
        if !(p > 2.0 && p <= 3.0) {
            return Err(Error::ArgumentOutOfDomain { what: "gamma_limit_probe", value: p, domain: "2 < p <= 3" });
        }
        values.push((p, tau_bound_regular(p)?));
    }
    let h: Vec<f64> = values.iter().map(|(p, _)| p - 2.0).collect();
    let v: Vec<f64> = values.iter().map(|(_, v)| *v).collect();
    let (extrapolated, error_estimate) = if values.len() == 1 { (v[0], f64::INFINITY) } else { extrapolate_to_zero(&h, &v) };
    Ok(GammaProbe { values, extrapolated, error_estimate, target: gamma_limit_target() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiminfWindow {
    pub window: (usize, usize),
    /// `min sqrt(j) a_j` over the window.
    pub inf: f64,
    pub argmin: usize,
}

/// Exact infimum of `sqrt(j) a_j` over each window, from one enumeration.
pub fn liminf_probe<F: PartitionFamily + ?Sized>(family: &F, windows: &[(usize, usize)]) -> Result<Vec<LiminfWindow>> {
    if family.meta().kind != FamilyKind::Odd {
        return Err(Error::InvalidArgument(format!("`{}` is not an odd family", family.meta().name)));
    }
    if let Some(w) = windows.iter().find(|(lo, hi)| *lo == 0 || lo > hi) {
        return Err(Error::InvalidArgument(format!("invalid window {w:?}")));
    }
    let j_max = windows.iter().map(|w| w.1).max().unwrap_or(0);
    if j_max > super::decay::DEFAULT_J_BUDGET {
        return Err(Error::InvalidArgument(format!("window end {j_max} exceeds the enumeration budget")));
    }
    let mut out: Vec<LiminfWindow> =
        windows.iter().map(|&window| LiminfWindow { window, inf: f64::INFINITY, argmin: 0 }).collect();
    for item in DecreasingStream::new(family).take(j_max) {
        let item = item?;
        let c = (item.index as f64).sqrt() * item.value.to_f64();
        for w in out.iter_mut().filter(|w| w.window.0 <= item.index && item.index <= w.window.1) {
            if c < w.inf {
                w.inf = c;
                w.argmin = item.index;
            }
        }
    }
    Ok(out)
}
