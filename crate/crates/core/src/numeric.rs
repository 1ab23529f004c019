//! Small numerical utilities shared by several modules.

/// Compensated (Neumaier) summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = NeumaierSum::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Neville extrapolation of `values[i] = f(h[i])` to `h = 0`.
///
/// Returns the extrapolated value and the magnitude of the last correction,
/// a usable error estimate when the samples are in the asymptotic regime.
pub fn extrapolate_to_zero(h: &[f64], values: &[f64]) -> (f64, f64) {
    assert_eq!(h.len(), values.len());
    assert!(!h.is_empty());
    let mut p = values.to_vec();
    let n = p.len();
    let mut last_correction = f64::INFINITY;
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (h[i], h[i + level]);
            let next = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
            if i == 0 {
                last_correction = (next - p[0]).abs();
            }
            p[i] = next;
        }
    }
    (p[0], last_correction)
}

/// Ordinary least squares fit `y = intercept + slope * x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}
