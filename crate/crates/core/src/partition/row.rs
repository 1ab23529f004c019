use serde::{Deserialize, Serialize};

use super::length::Length;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// Row `N` has exactly `2N + 1` pieces.
    Odd,
    General,
}

/// One row of a partition diagram: positive lengths summing to `target_sum`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionRow<V> {
    pub order: usize,
    pub lengths: Vec<V>,
    pub target_sum: V,
}

impl<V: Length> PartitionRow<V> {
    pub fn new(order: usize, lengths: Vec<V>, target_sum: V) -> Self {
        PartitionRow { order, lengths, target_sum }
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn max(&self) -> Option<&V> {
        self.lengths.iter().max()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.lengths.iter().map(Length::to_f64).collect()
    }
}

/// Checks positivity, odd cardinality and the row sum. The row is returned
/// unchanged; nothing is renormalized.
pub fn validate_row<V: Length>(row: PartitionRow<V>, kind: FamilyKind, tol: f64) -> Result<PartitionRow<V>> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("row tolerance must be >= 0, got {tol}")));
    }
    if let Some(k) = row.lengths.iter().position(|l| !l.is_positive()) {
        return Err(Error::NonPositiveLength { order: row.order, position: k + 1 });
    }
    if kind == FamilyKind::Odd && row.len() != 2 * row.order + 1 {
        return Err(Error::WrongCardinality {
            order: row.order,
            expected: 2 * row.order + 1,
            found: row.len(),
        });
    }
    if row.is_empty() {
        return Err(Error::WrongCardinality { order: row.order, expected: 1, found: 0 });
    }
    let deviation = V::sum_deviation(&row.lengths, &row.target_sum);
    if deviation > tol {
        return Err(Error::SumMismatch { order: row.order, deviation, tol });
    }
    Ok(row)
}

/// Hölder gap of a row: `sum_k L_k^p - count^(1-p) * T^p`.
///
/// Evaluated through the deviations `d_k = count * L_k / T - 1` as
/// `count^(1-p) T^p [mean((1+d)^p - 1 - p d) + p mean(d)]`; each convexity
/// term is non-negative, so the result is non-negative for every valid row
/// and exactly zero for an equi-row.
pub fn row_holder_margin<V: Length>(row: &PartitionRow<V>, p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent { p, reason: "Hölder margin requires p > 1" });
    }
    let count = row.len();
    if count == 0 {
        return Err(Error::WrongCardinality { order: row.order, expected: 1, found: 0 });
    }
    let n = count as f64;
    let mut convexity = crate::numeric::NeumaierSum::default();
    let mut linear = crate::numeric::NeumaierSum::default();
    for l in &row.lengths {
        let d = l.scaled_deviation(count, &row.target_sum);
        convexity.add(convexity_term(d, p));
        linear.add(d);
    }
    let bracket = convexity.value() / n + p * linear.value() / n;
    let scale = n.powf(1.0 - p) * row.target_sum.to_f64().powf(p);
    Ok((scale * bracket).max(0.0))
}

/// `(1+d)^p - 1 - p d`, clamped at zero (it is non-negative for p > 1).
fn convexity_term(d: f64, p: f64) -> f64 {
    if d == 0.0 {
        return 0.0;
    }
    let value = if d.abs() < 1e-2 {
        // binomial series from the quadratic term on
        let mut coeff = p * (p - 1.0) / 2.0;
        let mut power = d * d;
        let mut sum = 0.0;
        let mut k = 2.0;
        while k < 60.0 {
            let term = coeff * power;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
            coeff *= (p - k) / (k + 1.0);
            power *= d;
            k += 1.0;
        }
        sum
    } else {
        (p * d.ln_1p()).exp_m1() - p * d
    };
    value.max(0.0)
}
