//! Associated Legendre functions of the first and second kind on `x > 1`.
//!
//! Convention: `P_n^m(x) = (x^2-1)^{m/2} d^m P_n/dx^m` and the same for `Q`,
//! with no Condon–Shortley factor. Then `P_n^m > 0`, `sign Q_n^m = (-1)^m`,
//! and the Wronskian is
//! `P dQ - dP Q = (-1)^m (n+m)!/(n-m)! / (1 - x^2)`.
//!
//! Values grow and decay factorially in `n` and `m`, so tables store
//! log-magnitudes and signs. Recurrences run on ratios:
//! `P` forward in `n` (dominant solution), `Q` backward from a high trial
//! degree (minimal solution, Miller's algorithm). `Q_0` is anchored by its
//! closed form; for `m >= 1` the column is anchored by the Casoratian
//! `P_{m+1} Q_m - P_m Q_{m+1} = (-1)^m (2m)!`.

use num_traits::{Float, FromPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::NeumaierSum;

/// Working precision of the Legendre recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrecisionMode {
    #[default]
    Double,
    /// Double-double arithmetic; admits arguments closer to 1.
    Extended,
}

impl PrecisionMode {
    /// Smallest argument accepted by the spectral computations in this mode.
    pub fn argument_floor(self) -> f64 {
        match self {
            PrecisionMode::Double => 1.02,
            PrecisionMode::Extended => 1.0005,
        }
    }
}

impl std::str::FromStr for PrecisionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "double" => Ok(PrecisionMode::Double),
            "extended" => Ok(PrecisionMode::Extended),
            other => Err(Error::InvalidArgument(format!("unknown precision mode `{other}`"))),
        }
    }
}

/// Scalar type the recurrences can run in.
pub trait WorkingFloat: Float + FromPrimitive + Send + Sync + std::fmt::Debug {
    fn from_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize fits")
    }

    fn from_f64_exact(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Natural logarithm rounded to `f64`.
    fn ln_f64(self) -> f64;
}

impl WorkingFloat for f64 {
    fn ln_f64(self) -> f64 {
        self.ln()
    }
}

// The crate's own transcendental functions lose digits, so logarithms are
// taken from the leading component with a first-order correction.
impl WorkingFloat for twofloat::TwoFloat {
    // `FromPrimitive::from_f64` truncates to an integer for this type.
    fn from_f64_exact(x: f64) -> Self {
        twofloat::TwoFloat::from(x)
    }

    fn ln_f64(self) -> f64 {
        let (hi, lo) = (self.hi(), self.lo());
        hi.abs().ln() + (lo / hi).ln_1p()
    }
}

/// Wronskian residual above which a table is rejected.
pub const PRECISION_LOSS_THRESHOLD: f64 = 1e-8;

/// A signed value stored as `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedLog {
    pub sign: i8,
    pub ln_abs: f64,
}

impl SignedLog {
    pub fn value(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.ln_abs.exp()
        }
    }
}

/// `P_n^m`, `Q_n^m` and their `x`-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegendrePair {
    pub n: usize,
    pub m: usize,
    pub x: f64,
    pub p: SignedLog,
    pub dp: SignedLog,
    pub q: SignedLog,
    pub dq: SignedLog,
}

impl LegendrePair {
    pub fn p(&self) -> f64 {
        self.p.value()
    }
    pub fn dp(&self) -> f64 {
        self.dp.value()
    }
    pub fn q(&self) -> f64 {
        self.q.value()
    }
    pub fn dq(&self) -> f64 {
        self.dq.value()
    }
}

/// `ln k!` for `k = 0..=k_max`.
pub(crate) fn ln_factorials(k_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    let mut acc = NeumaierSum::default();
    out.push(0.0);
    for k in 1..=k_max {
        acc.add((k as f64).ln());
        out.push(acc.value());
    }
    out
}

/// Raw column data for fixed `m` and `x`, indexed by `n - m`.
///
/// Ratios and log-derivative factors are kept in the working precision;
/// log-magnitudes are accumulated in compensated `f64`, which is ample for
/// values whose logarithms stay below a few thousand.
#[derive(Debug, Clone)]
pub struct LegendreColumn<T> {
    pub m: usize,
    pub n_max: usize,
    pub x: f64,
    /// `ln(x^2 - 1)`
    pub ln_x2m1: f64,
    pub ln_p: Vec<f64>,
    pub ln_q: Vec<f64>,
    /// `(x^2 - 1) P'/P`
    pub p_log_derivative: Vec<T>,
    /// `(x^2 - 1) Q'/Q`
    pub q_log_derivative: Vec<T>,
    /// `ln k!` for `k <= n_max + m + 1`.
    pub ln_fact: Vec<f64>,
}

/// Trial start degree of the backward recurrence.
pub fn miller_start(n_max: usize, x: f64) -> usize {
    let extra = (10.0 / (x - 1.0)).ceil().min(5.0e6) as usize;
    n_max + 20 + extra
}

fn check_argument(x: f64, m: usize, n_max: usize) -> Result<()> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::ArgumentOutOfDomain { what: "legendre_table", value: x, domain: "x > 1" });
    }
    if m > n_max {
        return Err(Error::InvalidArgument(format!("order m = {m} exceeds n_max = {n_max}")));
    }
    Ok(())
}

impl<T: WorkingFloat> LegendreColumn<T> {
    pub fn compute(n_max: usize, m: usize, x_f64: f64) -> Result<Self> {
        check_argument(x_f64, m, n_max)?;
        let one = T::one();
        let x = <T as WorkingFloat>::from_f64_exact(x_f64);
        let xm1 = x - one;
        let x2m1 = xm1 * (x + one);
        let ln_x2m1 = (x_f64 - 1.0).ln() + (x_f64 + 1.0).ln();
        let int = <T as WorkingFloat>::from_usize;
        let len = n_max - m + 1;

        // rho[i] = P_{m+i} / P_{m+i-1} for i = 1..=len (one extra for the anchor)
        let mut rho = vec![T::zero(); len + 1];
        rho[1] = int(2 * m + 1) * x;
        for i in 1..len {
            let n = m + i;
            rho[i + 1] = (int(2 * n + 1) * x - int(n + m) / rho[i]) / int(n - m + 1);
        }

        // sigma[n] = Q_n / Q_{n-1}, backward from the trial degree
        let start = miller_start(n_max, x_f64).max(m + 2);
        let low = m.max(1);
        let mut sigma = vec![T::zero(); n_max + 2];
        let mut s = one / (x + x2m1.sqrt());
        for n in (low..=start).rev() {
            s = int(n + m) / (int(2 * n + 1) * x - int(n - m + 1) * s);
            if n <= n_max + 1 {
                sigma[n] = s;
            }
        }

        let ln_fact = ln_factorials(n_max + m + 1);

        // anchors ln P_m^m and ln |Q_m^m|
        let mut ln_pm = NeumaierSum::default();
        ln_pm.add(m as f64 / 2.0 * ln_x2m1);
        for k in 1..=m {
            ln_pm.add(((2 * k - 1) as f64).ln());
        }
        let ln_pm = ln_pm.value();
        // Q_0 = (1/2) ln((x+1)/(x-1))
        let q0 = 0.5 * (2.0 / (x_f64 - 1.0)).ln_1p();
        let ln_qm = if m == 0 { q0.ln() } else { ln_fact[2 * m] - ln_pm - (rho[1] - sigma[m + 1]).ln_f64() };

        let mut ln_p = Vec::with_capacity(len);
        let mut ln_q = Vec::with_capacity(len);
        let mut acc_p = NeumaierSum::default();
        let mut acc_q = NeumaierSum::default();
        acc_p.add(ln_pm);
        acc_q.add(ln_qm);
        for i in 0..len {
            if i > 0 {
                acc_p.add(rho[i].ln_f64());
                acc_q.add(sigma[m + i].ln_f64());
            }
            ln_p.push(acc_p.value());
            ln_q.push(acc_q.value());
        }

        // (x^2-1) f_n' = n x f_n - (n+m) f_{n-1}
        let mut p_log_derivative = Vec::with_capacity(len);
        let mut q_log_derivative = Vec::with_capacity(len);
        for (i, &rho_i) in rho.iter().enumerate().take(len) {
            let n = m + i;
            let nx = int(n) * x;
            let dp = if i == 0 { nx } else { nx - int(n + m) / rho_i };
            let dq = if n == 0 { <T as WorkingFloat>::from_f64_exact(-1.0 / q0) } else { nx - int(n + m) / sigma[n] };
            p_log_derivative.push(dp);
            q_log_derivative.push(dq);
        }

        Ok(LegendreColumn { m, n_max, x: x_f64, ln_x2m1, ln_p, ln_q, p_log_derivative, q_log_derivative, ln_fact })
    }

    /// Relative Wronskian residual at degree `n`.
    pub fn wronskian_residual(&self, n: usize) -> f64 {
        let i = n - self.m;
        // P dQ - dP Q = P Q (q_ld - p_ld)/(x^2-1) should equal -(-1)^m (n+m)!/(n-m)!/(x^2-1)
        let gap = self.q_log_derivative[i] - self.p_log_derivative[i];
        let sign_q = if self.m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let sign = sign_q * gap.signum().to_f64_lossy();
        if sign != -sign_q {
            return f64::INFINITY;
        }
        let ln_expected = self.ln_fact[n + self.m] - self.ln_fact[n - self.m];
        (self.ln_p[i] + self.ln_q[i] + gap.abs().ln_f64() - ln_expected).exp_m1().abs()
    }

    pub fn max_wronskian_residual(&self) -> (usize, f64) {
        (self.m..=self.n_max)
            .map(|n| (n, self.wronskian_residual(n)))
            .fold((self.m, 0.0), |acc, (n, r)| if r > acc.1 || r.is_nan() { (n, r) } else { acc })
    }

    /// NP-type combination `1/2 + p_ld / (q_ld - p_ld)`, equal to
    /// `1/2 - (-1)^m (n-m)!/(n+m)! (x^2-1) P' Q` when the Wronskian holds.
    pub fn half_plus_ratio(&self, n: usize) -> f64 {
        let i = n - self.m;
        let p = self.p_log_derivative[i];
        let q = self.q_log_derivative[i];
        let half = <T as WorkingFloat>::from_f64_exact(0.5);
        (half + p / (q - p)).to_f64_lossy()
    }

    pub fn pair(&self, n: usize) -> LegendrePair {
        let i = n - self.m;
        let q_sign: i8 = if self.m.is_multiple_of(2) { 1 } else { -1 };
        let signed = |v: T| -> i8 {
            if v > T::zero() {
                1
            } else if v < T::zero() {
                -1
            } else {
                0
            }
        };
        let dp = self.p_log_derivative[i];
        let dq = self.q_log_derivative[i];
        let ln_d = |ln_f: f64, factor: T| ln_f + factor.abs().ln_f64() - self.ln_x2m1;
        LegendrePair {
            n,
            m: self.m,
            x: self.x,
            p: SignedLog { sign: 1, ln_abs: self.ln_p[i] },
            dp: SignedLog { sign: signed(dp), ln_abs: ln_d(self.ln_p[i], dp) },
            q: SignedLog { sign: q_sign, ln_abs: self.ln_q[i] },
            dq: SignedLog { sign: q_sign * signed(dq), ln_abs: ln_d(self.ln_q[i], dq) },
        }
    }
}

/// `P_n^m, Q_n^m` and derivatives for `n = m..=n_max` at `x > 1`.
///
/// Fails with `PrecisionLoss` when the Wronskian residual of any entry
/// exceeds [`PRECISION_LOSS_THRESHOLD`].
pub fn legendre_table(n_max: usize, m: usize, x: f64, mode: PrecisionMode) -> Result<Vec<LegendrePair>> {
    match mode {
        PrecisionMode::Double => table_in::<f64>(n_max, m, x),
        PrecisionMode::Extended => table_in::<twofloat::TwoFloat>(n_max, m, x),
    }
}

fn table_in<T: WorkingFloat>(n_max: usize, m: usize, x: f64) -> Result<Vec<LegendrePair>> {
    let column = LegendreColumn::<T>::compute(n_max, m, x)?;
    let (n, residual) = column.max_wronskian_residual();
    if !(residual <= PRECISION_LOSS_THRESHOLD) {
        return Err(Error::PrecisionLoss { n, m, x, residual });
    }
    Ok((m..=n_max).map(|n| column.pair(n)).collect())
}
