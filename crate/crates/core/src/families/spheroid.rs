use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::np_spectrum::{SpectrumTable, SpheroidShape};
use crate::numeric::neumaier_sum;
use crate::partition::{Arithmetic, FamilyKind, FamilyMeta, PartitionFamily, PartitionRow, Real};

/// Default highest spectral degree.
pub const DEFAULT_N_MAX: usize = 200;
/// Row-sum tolerance of spectral rows.
pub const SPECTRAL_ROW_TOL: f64 = 1e-10;
/// Trace identity tolerance enforced at construction.
pub const TRACE_TOL: f64 = 1e-8;

/// NP eigenvalues of one spheroid, one row per degree `n`, sorted in
/// decreasing order. Raw rows partition `[0, 1/2]`; doubled rows `[0, 1]`.
///
/// All degrees up to `n_max` are computed at construction; higher rows are
/// refused with `RowLimit`.
#[derive(Debug, Clone)]
pub struct SpheroidFamily {
    meta: FamilyMeta,
    shape: SpheroidShape,
    doubled: bool,
    rows: Vec<Vec<f64>>,
}

impl SpheroidFamily {
    pub fn new(shape: SpheroidShape, doubled: bool, n_max: usize) -> Result<Self> {
        Self::with_execution(shape, doubled, n_max, Execution::default())
    }

    pub fn with_execution(shape: SpheroidShape, doubled: bool, n_max: usize, exec: Execution) -> Result<Self> {
        let table = SpectrumTable::compute(shape, n_max, exec)?;
        let factor = if doubled { 2.0 } else { 1.0 };
        let mut rows = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let row: Vec<f64> = table.sorted_row(n).expect("in range").into_iter().map(|v| factor * v).collect();
            let sum = neumaier_sum(row.iter().copied()) / factor;
            if (sum - 0.5).abs() > TRACE_TOL {
                return Err(Error::TraceIdentityViolation { order: n, sum, target: 0.5, tol: TRACE_TOL });
            }
            if let Some(prev) = rows.last().map(|r: &Vec<f64>| r[0]) {
                if row[0] > prev {
                    return Err(Error::FamilyConstruction(format!(
                        "largest eigenvalue increases from degree {} to {n}",
                        n - 1
                    )));
                }
            }
            rows.push(row);
        }
        let name = if doubled { "spheroid2" } else { "spheroid" };
        let meta = FamilyMeta::new(name, FamilyKind::Odd, Arithmetic::Float)
            .with_param("xi0", shape.xi0())
            .with_param("nmax", n_max);
        Ok(SpheroidFamily { meta, shape, doubled, rows })
    }

    pub fn shape(&self) -> &SpheroidShape {
        &self.shape
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    fn target(&self) -> f64 {
        if self.doubled {
            1.0
        } else {
            0.5
        }
    }

    fn stored(&self, order: usize) -> Result<&Vec<f64>> {
        self.rows.get(order).ok_or(Error::RowLimit { order, n_max: self.n_max() })
    }
}

impl PartitionFamily for SpheroidFamily {
    type Value = Real;

    fn meta(&self) -> &FamilyMeta {
        &self.meta
    }

    fn max_order(&self) -> Option<usize> {
        Some(self.n_max())
    }

    fn row(&self, order: usize) -> Result<PartitionRow<Real>> {
        let row = self.stored(order)?;
        Ok(PartitionRow::new(order, row.iter().copied().map(Real).collect(), Real(self.target())))
    }

    fn upper_bound(&self, order: usize) -> Result<Real> {
        Ok(Real(self.stored(order)?[0]))
    }

    fn row_tolerance(&self) -> f64 {
        SPECTRAL_ROW_TOL
    }
}

/// Sorted degree-`n` row of a spheroid, raw or doubled.
pub fn spheroid_row(shape: SpheroidShape, n: usize, doubled: bool) -> Result<PartitionRow<Real>> {
    SpheroidFamily::with_execution(shape, doubled, n, Execution::Sequential)?.row(n)
}
