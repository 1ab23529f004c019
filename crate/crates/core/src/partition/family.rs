use serde::Serialize;

use super::length::{Arithmetic, Length};
use super::row::{validate_row, FamilyKind, PartitionRow};
use crate::error::{Error, Result};

/// Entries of one row as `(value, position)`, by decreasing value and then
/// increasing 1-based position.
pub type DescendingRow<'a, V> = Box<dyn Iterator<Item = (V, usize)> + 'a>;

/// Descriptive data attached to every family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMeta {
    pub name: String,
    pub kind: FamilyKind,
    pub arithmetic: Arithmetic,
    pub params: Vec<(String, String)>,
}

impl FamilyMeta {
    pub fn new(name: impl Into<String>, kind: FamilyKind, arithmetic: Arithmetic) -> Self {
        FamilyMeta { name: name.into(), kind, arithmetic, params: Vec::new() }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    /// `name` or `name:k=v,...` as used in reports.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.clone()
        } else {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}:{}", self.name, p.join(","))
        }
    }
}

/// An infinite partition diagram.
///
/// `upper_bound(N)` must bound the largest length of every row with order
/// at least `N`, be non-increasing and tend to zero. That contract is what
/// makes a complete decreasing enumeration possible: once the bound at the
/// next unexpanded row drops below a candidate, nothing larger can appear.
pub trait PartitionFamily: Send + Sync {
    type Value: Length;

    fn meta(&self) -> &FamilyMeta;

    /// Order of the first row (0 for odd families, 1 for Farey rows).
    fn first_order(&self) -> usize {
        0
    }

    /// Largest order the family can produce, if bounded.
    fn max_order(&self) -> Option<usize> {
        None
    }

    fn row(&self, order: usize) -> Result<PartitionRow<Self::Value>>;

    fn upper_bound(&self, order: usize) -> Result<Self::Value>;

    /// Closed form of `sum_{N >= from} count(N) * ub(N)^p`, when available.
    fn ub_power_tail(&self, _from: usize, _p: f64) -> Option<f64> {
        None
    }

    /// `sum_k L_{N,k}^p` over a validated row.
    fn row_power_sum(&self, order: usize, p: f64) -> Result<f64> {
        let row = validate_row(self.row(order)?, self.meta().kind, self.row_tolerance())?;
        Ok(crate::numeric::neumaier_sum(row.lengths.iter().map(|l| l.to_f64().powf(p))))
    }

    /// The row in enumeration order. The default validates and sorts the
    /// whole row; families with very long rows may override it to yield
    /// entries lazily, and are then responsible for their own validity.
    fn descending_row(&self, order: usize) -> Result<DescendingRow<'_, Self::Value>> {
        let row = validate_row(self.row(order)?, self.meta().kind, self.row_tolerance())?;
        let mut entries: Vec<(Self::Value, usize)> =
            row.lengths.into_iter().enumerate().map(|(k, v)| (v, k + 1)).collect();
        entries.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Ok(Box::new(entries.into_iter()))
    }

    /// Tolerance used when validating produced rows.
    fn row_tolerance(&self) -> f64 {
        0.0
    }
}

/// Construction-time check of the family contract on a set of sample orders:
/// valid rows, row maxima under the bound, a non-increasing bound, and a
/// bound that actually decreases across the samples.
pub fn check_family<F: PartitionFamily + ?Sized>(family: &F, samples: &[usize]) -> Result<()> {
    let mut orders: Vec<usize> = samples
        .iter()
        .copied()
        .filter(|&n| n >= family.first_order() && family.max_order().is_none_or(|m| n <= m))
        .collect();
    orders.sort_unstable();
    orders.dedup();
    if orders.len() < 2 {
        return Err(Error::FamilyConstruction("need at least two sample orders".into()));
    }
    let kind = family.meta().kind;
    let mut bounds = Vec::with_capacity(orders.len());
    for &n in &orders {
        let row = validate_row(family.row(n)?, kind, family.row_tolerance())?;
        let ub = family.upper_bound(n)?;
        if let Some(max) = row.max() {
            if *max > ub {
                return Err(Error::UbViolation { order: n, max: max.to_f64(), bound: ub.to_f64() });
            }
        }
        bounds.push(ub);
    }
    for (w, o) in bounds.windows(2).zip(orders.windows(2)) {
        if w[1] > w[0] {
            return Err(Error::FamilyConstruction(format!(
                "upper bound increases between rows {} and {}",
                o[0], o[1]
            )));
        }
    }
    if bounds.last() >= bounds.first() {
        return Err(Error::FamilyConstruction(
            "upper bound does not decrease across the sampled rows".into(),
        ));
    }
    Ok(())
}
