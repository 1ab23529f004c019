use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::specfun::{LegendreColumn, PrecisionMode, WorkingFloat, PRECISION_LOSS_THRESHOLD};

/// A prolate spheroid described by its scale-free radial coordinate `xi0`.
/// `xi0 = +inf` is the round sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpheroidShape {
    xi0: f64,
    precision: PrecisionMode,
}

impl SpheroidShape {
    /// Fails below the precision floor of `mode`.
    pub fn new(xi0: f64, precision: PrecisionMode) -> Result<Self> {
        if !(xi0 > 1.0) || xi0.is_nan() {
            return Err(Error::ArgumentOutOfDomain { what: "xi0", value: xi0, domain: "xi0 > 1" });
        }
        if xi0 < precision.argument_floor() {
            let domain = match precision {
                PrecisionMode::Double => "xi0 >= 1.02 in double precision (extended mode reaches 1.0005)",
                PrecisionMode::Extended => "xi0 >= 1.0005",
            };
            return Err(Error::ArgumentOutOfDomain { what: "xi0", value: xi0, domain });
        }
        Ok(SpheroidShape { xi0, precision })
    }

    pub fn sphere() -> Self {
        SpheroidShape { xi0: f64::INFINITY, precision: PrecisionMode::Double }
    }

    pub fn xi0(&self) -> f64 {
        self.xi0
    }

    pub fn precision(&self) -> PrecisionMode {
        self.precision
    }

    pub fn is_sphere(&self) -> bool {
        self.xi0.is_infinite()
    }

    pub fn eccentricity(&self) -> f64 {
        1.0 / self.xi0
    }

    /// Long over short semi-axis.
    pub fn aspect_ratio(&self) -> f64 {
        if self.is_sphere() {
            1.0
        } else {
            1.0 / (1.0 - 1.0 / (self.xi0 * self.xi0)).sqrt()
        }
    }

    /// Semi-axes `(a, c)` normalized to `c = 1`; `a` is the equatorial radius.
    pub fn semi_axes(&self) -> (f64, f64) {
        (1.0 / self.aspect_ratio(), 1.0)
    }
}

/// An NP eigenvalue `lambda_{n,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeEigenvalue {
    pub n: usize,
    pub m: i64,
    pub lambda: f64,
}

fn sphere_value(n: usize) -> f64 {
    0.5 / (2 * n + 1) as f64
}

/// Eigenvalues `lambda_{n,m}` for one `m` and `n = m..=n_max`.
fn column_values(shape: &SpheroidShape, n_max: usize, m: usize) -> Result<Vec<f64>> {
    if shape.is_sphere() {
        return Ok((m..=n_max).map(sphere_value).collect());
    }
    match shape.precision {
        PrecisionMode::Double => column_in::<f64>(shape.xi0, n_max, m),
        PrecisionMode::Extended => column_in::<twofloat::TwoFloat>(shape.xi0, n_max, m),
    }
}

fn column_in<T: WorkingFloat>(x: f64, n_max: usize, m: usize) -> Result<Vec<f64>> {
    let column = LegendreColumn::<T>::compute(n_max, m, x)?;
    let (n, residual) = column.max_wronskian_residual();
    if !(residual <= PRECISION_LOSS_THRESHOLD) {
        return Err(Error::PrecisionLoss { n, m, x, residual });
    }
    (m..=n_max)
        .map(|n| {
            let lambda = if n == 0 { 0.5 } else { column.half_plus_ratio(n) };
            if !(lambda > 0.0) {
                return Err(Error::NonPositiveEigenvalue { n, m, value: lambda });
            }
            if lambda > 0.5 || (n > 0 && lambda == 0.5) {
                return Err(Error::GateFailure(format!("lambda_({n},{m}) = {lambda} is not below 1/2")));
            }
            Ok(lambda)
        })
        .collect()
}

/// `lambda_{n,m}(xi0)`, the NP eigenvalue of degree `n` and azimuthal order `m`:
/// `1/2 - (-1)^m (n-m)!/(n+m)! (xi0^2-1) P_n^m'(xi0) Q_n^m(xi0)`.
pub fn np_eigenvalue(shape: &SpheroidShape, n: usize, m: i64) -> Result<f64> {
    let m_abs = m.unsigned_abs() as usize;
    if m_abs > n {
        return Err(Error::InvalidArgument(format!("|m| = {m_abs} exceeds n = {n}")));
    }
    Ok(*column_values(shape, n, m_abs)?.last().expect("non-empty column"))
}

/// All `lambda_{n,m}` with `0 <= m <= n <= n_max`, computed column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    shape: SpheroidShape,
    n_max: usize,
    /// `columns[m][n - m]`
    columns: Vec<Vec<f64>>,
}

impl SpectrumTable {
    pub fn compute(shape: SpheroidShape, n_max: usize, exec: Execution) -> Result<Self> {
        let columns = exec.try_map_indices(n_max + 1, |m| column_values(&shape, n_max, m))?;
        Ok(SpectrumTable { shape, n_max, columns })
    }

    pub fn shape(&self) -> &SpheroidShape {
        &self.shape
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn eigenvalue(&self, n: usize, m: i64) -> Option<f64> {
        let m = m.unsigned_abs() as usize;
        (m <= n && n <= self.n_max).then(|| self.columns[m][n - m])
    }

    /// The `2n+1` eigenvalues of degree `n` ordered `m = -n..=n`.
    pub fn degree(&self, n: usize) -> Option<Vec<ModeEigenvalue>> {
        (n <= self.n_max).then(|| {
            (-(n as i64)..=n as i64)
                .map(|m| ModeEigenvalue { n, m, lambda: self.columns[m.unsigned_abs() as usize][n - m.unsigned_abs() as usize] })
                .collect()
        })
    }

    /// Degree-`n` values sorted in decreasing order.
    pub fn sorted_row(&self, n: usize) -> Option<Vec<f64>> {
        self.degree(n).map(|modes| {
            let mut v: Vec<f64> = modes.iter().map(|e| e.lambda).collect();
            v.sort_by(|a, b| b.total_cmp(a));
            v
        })
    }

    /// Largest deviation of a degree sum from 1/2.
    pub fn max_trace_deviation(&self) -> (usize, f64) {
        (0..=self.n_max)
            .map(|n| {
                let row = self.sorted_row(n).expect("in range");
                (n, (crate::numeric::neumaier_sum(row) - 0.5).abs())
            })
            .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a })
    }
}
