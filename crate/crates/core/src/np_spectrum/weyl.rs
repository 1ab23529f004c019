use std::f64::consts::PI;

use serde::Serialize;

use super::shape::SpheroidShape;
use crate::analysis::{decay_fit, DecayFit};
use crate::error::Result;
use crate::families::SpheroidFamily;
use crate::specfun::integrate_adaptive;

const WILLMORE_REL_TOL: f64 = 1e-12;
const MAX_PANELS: usize = 20_000;

/// Willmore energy `int H^2 dA` of the spheroid with semi-axes
/// `(scale * a, scale * a, scale * c)`.
pub fn willmore_energy_scaled(shape: &SpheroidShape, scale: f64) -> Result<f64> {
    if shape.is_sphere() {
        return Ok(4.0 * PI);
    }
    let (a0, c0) = shape.semi_axes();
    let (a, c) = (scale * a0, scale * c0);
    // meridian r = a sin t, z = c cos t
    let integrand = |t: f64| {
        let (s, co) = t.sin_cos();
        let d = a * a * co * co + c * c * s * s;
        let sd = d.sqrt();
        let k_meridian = a * c / (d * sd);
        let k_parallel = c / (a * sd);
        let h = 0.5 * (k_meridian + k_parallel);
        h * h * 2.0 * PI * a * s * sd
    };
    integrate_adaptive(integrand, 0.0, PI, WILLMORE_REL_TOL, MAX_PANELS)
}

/// Willmore energy of the spheroid; scale free and at least `4 pi`.
pub fn willmore_energy(shape: &SpheroidShape) -> Result<f64> {
    willmore_energy_scaled(shape, 1.0)
}

/// Euler characteristic of a spheroid.
pub const EULER_CHARACTERISTIC: i32 = 2;

/// `sqrt((3 W - 2 pi chi) / (128 pi))`
pub fn weyl_constant(willmore: f64) -> f64 {
    ((3.0 * willmore - 2.0 * PI * f64::from(EULER_CHARACTERISTIC)) / (128.0 * PI)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylReport {
    pub xi0: f64,
    pub willmore: f64,
    pub chi: i32,
    /// Leading coefficient of the raw spectrum, `lambda_j ~ coeff j^{-1/2}`.
    pub coeff: f64,
    /// Coefficient after doubling every eigenvalue.
    pub coeff_doubled: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<DecayFit>,
}

pub fn weyl_coefficient(shape: &SpheroidShape) -> Result<WeylReport> {
    let willmore = willmore_energy(shape)?;
    let coeff = weyl_constant(willmore);
    Ok(WeylReport {
        xi0: shape.xi0(),
        willmore,
        chi: EULER_CHARACTERISTIC,
        coeff,
        coeff_doubled: 2.0 * coeff,
        fit: None,
    })
}

/// [`weyl_coefficient`] plus an empirical fit of the doubled spectrum over
/// `window`, using spectral rows up to `n_max`.
pub fn weyl_report_with_fit(shape: &SpheroidShape, window: (usize, usize), n_max: usize) -> Result<WeylReport> {
    let mut report = weyl_coefficient(shape)?;
    let family = SpheroidFamily::new(*shape, true, n_max)?;
    report.fit = Some(decay_fit(&family, window)?);
    Ok(report)
}
