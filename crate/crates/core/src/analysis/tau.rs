use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::BuiltFamily;
use crate::numeric::NeumaierSum;
use crate::partition::{FamilyKind, Length, PartitionFamily};
use crate::specfun::{hurwitz_zeta, tau_zeta_bound};

/// Two-sided enclosure of `tau(p) = sum_{N,k} L_{N,k}^p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauBracket {
    pub p: f64,
    pub lower: f64,
    /// `+inf` when the family offers no closed-form bound on its tail.
    pub upper: f64,
    pub rows_used: usize,
    /// `T^p (1 - 2^{1-p}) zeta(p - 1)` for rows summing to `T`.
    pub bound_ref: f64,
}

impl TauBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// Brackets `tau(p)` for each exponent in `ps` from one pass over the first
/// `rows` rows. The lower tail is the Hölder bound `T^p (2N+1)^{1-p}` per row,
/// the upper tail `sum (2N+1) ub(N)^p`.
pub fn tau_brackets<F: PartitionFamily + ?Sized>(family: &F, ps: &[f64], rows: usize) -> Result<Vec<TauBracket>> {
    for &p in ps {
        if !(p > 2.0) || !p.is_finite() {
            return Err(Error::InvalidExponent { p, reason: "tau(p) may diverge for p <= 2" });
        }
    }
    if rows == 0 {
        return Err(Error::InvalidArgument("rows must be at least 1".into()));
    }
    if family.meta().kind != FamilyKind::Odd {
        return Err(Error::InvalidArgument(format!("`{}` is not an odd family", family.meta().name)));
    }
    let first = family.first_order();
    let target = family.row(first)?.target_sum.to_f64();
    let mut partial: Vec<NeumaierSum> = vec![NeumaierSum::default(); ps.len()];
    for order in first..first + rows {
        for (acc, &p) in partial.iter_mut().zip(ps) {
            acc.add(family.row_power_sum(order, p)?);
        }
    }
    let from = first + rows;
    ps.iter()
        .zip(&partial)
        .map(|(&p, acc)| {
            let partial = acc.value();
            let holder_tail = target.powf(p) * (1.0 - p).exp2() * hurwitz_zeta(p - 1.0, from as f64 + 0.5)?;
            let upper = family.ub_power_tail(from, p).map_or(f64::INFINITY, |t| partial + t);
            Ok(TauBracket {
                p,
                lower: partial + holder_tail,
                upper,
                rows_used: rows,
                bound_ref: target.powf(p) * tau_zeta_bound(p)?,
            })
        })
        .collect()
}

pub fn tau_bracket<F: PartitionFamily + ?Sized>(family: &F, p: f64, rows: usize) -> Result<TauBracket> {
    Ok(tau_brackets(family, &[p], rows)?.remove(0))
}

/// [`tau_bracket`] on a built family.
pub fn tau_bracket_built(family: &BuiltFamily, p: f64, rows: usize) -> Result<TauBracket> {
    crate::with_family!(family, f => tau_bracket(f.as_ref(), p, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{EquiFamily, FareyFamily};

    #[test]
    fn equi_pins_the_bound() {
        let b = tau_bracket(&EquiFamily::new(), 3.0, 100).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 8.0;
        assert!(b.contains(exact) || (b.lower - exact).abs() < 1e-14);
        assert!(b.width() < 1e-14);
        assert!((b.bound_ref - exact).abs() < 1e-14);
    }

    #[test]
    fn large_p_tends_to_one() {
        let b = tau_bracket(&EquiFamily::new(), 60.0, 10).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-15 && (b.upper - 1.0).abs() < 1e-15);
    }

    #[test]
    fn refusals() {
        assert_eq!(tau_bracket(&EquiFamily::new(), 2.0, 10).unwrap_err().name(), "InvalidExponent");
        assert_eq!(tau_bracket(&FareyFamily::new(), 3.0, 10).unwrap_err().name(), "InvalidArgument");
    }
}
