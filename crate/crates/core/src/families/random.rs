use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::equi::odd_power_tail;
use crate::error::{Error, Result};
use crate::partition::{Arithmetic, Exact, FamilyKind, FamilyMeta, PartitionFamily, PartitionRow};

/// Largest integer weight drawn per piece.
const MAX_WEIGHT: u64 = 4;
/// Denominator used to turn the concentration into a rational.
const CONCENTRATION_DENOM: u64 = 1000;

/// Random odd partitions with exact rational pieces.
///
/// Row `N` mixes the equi-row with a random integer-weighted row:
/// `L_k = (1 - w)/(2N+1) + w g_k / sum(g)`, `g_k` uniform in `1..=4`,
/// `w = 1/(1 + concentration)`. Every row sums to exactly 1, and every
/// piece is at most `K/(2N+1)` with `K = 1 - w + 4w`, which gives the
/// upper bound. Row `N` draws from its own ChaCha stream, so rows can be
/// produced in any order.
#[derive(Debug, Clone)]
pub struct RandomOddFamily {
    meta: FamilyMeta,
    seed: u64,
    // w = w_num / w_den
    w_num: u64,
    w_den: u64,
}

impl RandomOddFamily {
    pub fn new(seed: u64, concentration: f64) -> Result<Self> {
        if !(concentration > 0.0) || !concentration.is_finite() {
            return Err(Error::FamilyConstruction(format!("concentration must be positive, got {concentration}")));
        }
        let c_num = (concentration * CONCENTRATION_DENOM as f64).round().max(1.0) as u64;
        let meta = FamilyMeta::new("random", FamilyKind::Odd, Arithmetic::Exact)
            .with_param("seed", seed)
            .with_param("conc", concentration);
        Ok(RandomOddFamily { meta, seed, w_num: CONCENTRATION_DENOM, w_den: CONCENTRATION_DENOM + c_num })
    }

    fn weights(&self, order: usize) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(order as u64);
        (0..2 * order + 1).map(|_| u64::from(rng.next_u32()) % MAX_WEIGHT + 1).collect()
    }

    /// `K = 1 - w + w * MAX_WEIGHT` as `(numerator, denominator)`.
    fn envelope(&self) -> (u64, u64) {
        (self.w_den - self.w_num + self.w_num * MAX_WEIGHT, self.w_den)
    }
}

impl PartitionFamily for RandomOddFamily {
    type Value = Exact;

    fn meta(&self) -> &FamilyMeta {
        &self.meta
    }

    fn row(&self, order: usize) -> Result<PartitionRow<Exact>> {
        let g = self.weights(order);
        let count = BigInt::from(2 * order + 1);
        let total = BigInt::from(g.iter().sum::<u64>());
        let (wn, wd) = (BigInt::from(self.w_num), BigInt::from(self.w_den));
        // ((wd - wn) S + wn (2N+1) g_k) / (wd (2N+1) S)
        let denom = &wd * &count * &total;
        let base = (&wd - &wn) * &total;
        let lengths = g
            .into_iter()
            .map(|gk| Exact::new(BigRational::new(&base + &wn * &count * BigInt::from(gk), denom.clone())))
            .collect();
        Ok(PartitionRow::new(order, lengths, Exact::from_ratio(1, 1)))
    }

    fn upper_bound(&self, order: usize) -> Result<Exact> {
        let (k_num, k_den) = self.envelope();
        let count = (2 * order + 1) as u64;
        Ok(if k_num >= count * k_den { Exact::from_ratio(1, 1) } else { Exact::new(BigRational::new(k_num.into(), (count * k_den).into())) })
    }

    fn ub_power_tail(&self, from: usize, p: f64) -> Option<f64> {
        let (k_num, k_den) = self.envelope();
        let k = k_num as f64 / k_den as f64;
        // rows whose bound is capped at 1 contribute 2N+1 each
        let mut head = 0.0;
        let mut n = from;
        while ((2 * n + 1) as f64) <= k {
            head += (2 * n + 1) as f64;
            n += 1;
        }
        Some(head + k.powf(p) * odd_power_tail(n, p)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{check_family, validate_row, Length};

    #[test]
    fn rows_are_exact_partitions() {
        let fam = RandomOddFamily::new(1, 2.0).unwrap();
        assert_eq!(fam.row(0).unwrap().lengths, vec![Exact::from_ratio(1, 1)]);
        for n in 0..40 {
            validate_row(fam.row(n).unwrap(), FamilyKind::Odd, 0.0).unwrap();
        }
        check_family(&fam, &[0, 1, 2, 5, 10, 50, 200]).unwrap();
    }

    #[test]
    fn deterministic_and_order_independent() {
        let a = RandomOddFamily::new(7, 10.0).unwrap();
        let b = RandomOddFamily::new(7, 10.0).unwrap();
        let late = b.row(9).unwrap();
        assert_eq!(a.row(9).unwrap(), late);
        assert_ne!(RandomOddFamily::new(8, 10.0).unwrap().row(9).unwrap(), late);
    }

    #[test]
    fn high_concentration_approaches_equi() {
        let fam = RandomOddFamily::new(3, 1e6).unwrap();
        for l in fam.row(2).unwrap().lengths {
            assert!((l.to_f64() - 0.2).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_concentration() {
        assert!(RandomOddFamily::new(1, 0.0).is_err());
        assert!(RandomOddFamily::new(1, f64::NAN).is_err());
    }
}
