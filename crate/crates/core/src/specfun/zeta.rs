//! Riemann and Hurwitz zeta functions for real `s > 1`.

use crate::error::{Error, Result};
use crate::numeric::NeumaierSum;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

// Stieltjes constants gamma_1, gamma_2, quoted to full published precision.
#[allow(clippy::excessive_precision)]
const STIELTJES_1: f64 = -0.072_815_845_483_676_724_860_586_375_874_901_32;
#[allow(clippy::excessive_precision)]
const STIELTJES_2: f64 = -0.009_690_363_192_872_318_484_530_386_035_217_5;

/// Below this distance from the pole the Laurent expansion is used.
const LAURENT_CUTOFF: f64 = 1e-8;

/// B_{2j} / (2j)! for j = 1..=12.
#[allow(clippy::excessive_precision)]
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_888_9e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_767e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_468e-11,
    -3.389_680_296_322_583e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_23e-18,
    -1.395_446_468_581_252_3e-19,
];

fn check_s(s: f64, what: &'static str) -> Result<()> {
    if s > 1.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::ArgumentOutOfDomain { what, value: s, domain: "s > 1" })
    }
}

/// Euler–Maclaurin correction terms `sum_j B_2j/(2j)! (s)_{2j-1} b^{-s-2j+1}`.
fn em_corrections(s: f64, b: f64) -> f64 {
    let inv_b2 = 1.0 / (b * b);
    // rising factorial (s)_{2j-1} times b^{-s-2j+1}, updated in place
    let mut factor = s * b.powf(-s - 1.0);
    let mut sum = NeumaierSum::default();
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coeff * factor;
        sum.add(term);
        if term.abs() < 1e-18 * sum.value().abs() {
            break;
        }
        let k = 2.0 * j as f64 + 1.0;
        factor *= (s + k) * (s + k + 1.0) * inv_b2;
    }
    sum.value()
}

/// Number of directly summed terms so the remainder argument is at least
/// `max(20, s)`, which keeps the Euler–Maclaurin series well inside its
/// asymptotic regime.
fn split_point(s: f64, a: f64) -> usize {
    let target = s.max(20.0);
    if a >= target {
        0
    } else {
        (target - a).ceil() as usize
    }
}

/// Hurwitz zeta `sum_{k >= 0} (k + a)^{-s}` for `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    check_s(s, "hurwitz_zeta")?;
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::ArgumentOutOfDomain { what: "hurwitz_zeta", value: a, domain: "a > 0" });
    }
    let n = split_point(s, a);
    let mut sum = NeumaierSum::default();
    for k in 0..n {
        sum.add((k as f64 + a).powf(-s));
    }
    let b = a + n as f64;
    sum.add(b.powf(1.0 - s) / (s - 1.0));
    sum.add(0.5 * b.powf(-s));
    sum.add(em_corrections(s, b));
    Ok(sum.value())
}

/// `zeta(s) - 1/(s - 1)`, free of cancellation against the pole.
pub fn zeta_regular(s: f64) -> Result<f64> {
    check_s(s, "zeta")?;
    let delta = s - 1.0;
    if delta < LAURENT_CUTOFF {
        return Ok(EULER_GAMMA - STIELTJES_1 * delta + 0.5 * STIELTJES_2 * delta * delta);
    }
    let n = split_point(s, 1.0);
    let mut sum = NeumaierSum::default();
    for k in 1..=n {
        sum.add((k as f64).powf(-s));
    }
    let b = (n + 1) as f64;
    // (b^{1-s} - 1)/(s - 1) replaces b^{1-s}/(s-1) once the pole is removed
    let ln_b = b.ln();
    sum.add((-delta * ln_b).exp_m1() / delta);
    sum.add(0.5 * b.powf(-s));
    sum.add(em_corrections(s, b));
    Ok(sum.value())
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64> {
    let regular = zeta_regular(s)?;
    Ok(regular + 1.0 / (s - 1.0))
}

/// `(1 - 2^{1-p}) zeta(p - 1)`, the value of the p-power sum of the
/// equi-partition diagram.
pub fn tau_zeta_bound(p: f64) -> Result<f64> {
    if !(p > 2.0) || !p.is_finite() {
        return Err(Error::ArgumentOutOfDomain { what: "tau_zeta_bound", value: p, domain: "p > 2" });
    }
    let factor = -(-(p - 1.0) * std::f64::consts::LN_2).exp_m1();
    Ok(factor * zeta(p - 1.0)?)
}

/// `(1 - 2^{1-p}) zeta(p - 1) - 1/(2(p - 2))` evaluated without cancellation
/// for `p` close to 2.
pub fn tau_bound_regular(p: f64) -> Result<f64> {
    if !(p > 2.0) || !p.is_finite() {
        return Err(Error::ArgumentOutOfDomain { what: "tau_bound_regular", value: p, domain: "p > 2" });
    }
    let s = p - 1.0;
    let delta = s - 1.0;
    let factor = -(-s * std::f64::consts::LN_2).exp_m1();
    // (1/2 - 2^{-s}) / (s - 1) = -expm1(-(s-1) ln 2) / (2 (s - 1))
    let pole_part = -(-delta * std::f64::consts::LN_2).exp_m1() / (2.0 * delta);
    Ok(factor * zeta_regular(s)? + pole_part)
}
