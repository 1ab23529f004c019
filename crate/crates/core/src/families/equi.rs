use crate::error::Result;
use crate::partition::{Arithmetic, Exact, FamilyKind, FamilyMeta, PartitionFamily, PartitionRow};
use crate::specfun::hurwitz_zeta;

/// Row `N` is `2N+1` copies of `1/(2N+1)`.
#[derive(Debug, Clone)]
pub struct EquiFamily {
    meta: FamilyMeta,
}

impl EquiFamily {
    pub fn new() -> Self {
        EquiFamily { meta: FamilyMeta::new("equi", FamilyKind::Odd, Arithmetic::Exact) }
    }
}

impl Default for EquiFamily {
    fn default() -> Self {
        Self::new()
    }
}

pub fn equi_row(order: usize) -> PartitionRow<Exact> {
    let count = 2 * order + 1;
    PartitionRow::new(order, vec![Exact::reciprocal(count as u64); count], Exact::from_ratio(1, 1))
}

/// `sum_{N >= from} (2N+1)^{1-p} = 2^{1-p} zeta(p-1, from + 1/2)`.
pub(crate) fn odd_power_tail(from: usize, p: f64) -> Option<f64> {
    hurwitz_zeta(p - 1.0, from as f64 + 0.5).ok().map(|h| (1.0 - p).exp2() * h)
}

impl PartitionFamily for EquiFamily {
    type Value = Exact;

    fn meta(&self) -> &FamilyMeta {
        &self.meta
    }

    fn row(&self, order: usize) -> Result<PartitionRow<Exact>> {
        Ok(equi_row(order))
    }

    fn upper_bound(&self, order: usize) -> Result<Exact> {
        Ok(Exact::reciprocal((2 * order + 1) as u64))
    }

    fn ub_power_tail(&self, from: usize, p: f64) -> Option<f64> {
        odd_power_tail(from, p)
    }

    fn row_power_sum(&self, order: usize, p: f64) -> Result<f64> {
        Ok(((2 * order + 1) as f64).powf(1.0 - p))
    }
}
