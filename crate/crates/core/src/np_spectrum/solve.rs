use serde::Serialize;

use super::shape::SpheroidShape;
use super::weyl::{weyl_constant, willmore_energy};
use crate::error::{Error, Result};
use crate::specfun::PrecisionMode;

/// Upper end of the shape search.
pub const XI0_CEILING: f64 = 1e6;
/// Targets this close to the sphere value are refused.
pub const SPHERE_MARGIN: f64 = 1e-6;
pub const SOLVE_TOL: f64 = 1e-8;
const MONOTONICITY_SAMPLES: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveOutcome {
    /// The target is the sphere value 1/2, reached only in the limit.
    SphereLimit,
    Shape { xi0: f64, achieved: f64, iterations: usize },
}

impl SolveOutcome {
    pub fn xi0(&self) -> f64 {
        match self {
            SolveOutcome::SphereLimit => f64::INFINITY,
            SolveOutcome::Shape { xi0, .. } => *xi0,
        }
    }
}

/// Doubled Weyl coefficient `2 C~(xi0)`.
fn doubled_coefficient(xi0: f64, mode: PrecisionMode) -> Result<f64> {
    let shape = SpheroidShape::new(xi0, mode)?;
    Ok(2.0 * weyl_constant(willmore_energy(&shape)?))
}

fn check_monotone(lo: f64, hi: f64, mode: PrecisionMode) -> Result<()> {
    let (u0, u1) = ((lo - 1.0).ln(), (hi - 1.0).ln());
    let mut last = f64::INFINITY;
    for i in 0..MONOTONICITY_SAMPLES {
        let xi0 = 1.0 + (u0 + (u1 - u0) * i as f64 / (MONOTONICITY_SAMPLES - 1) as f64).exp();
        let c = doubled_coefficient(xi0, mode)?;
        if c > last + 1e-12 {
            return Err(Error::NonMonotoneMap { xi0 });
        }
        last = c;
    }
    Ok(())
}

/// Shape parameter whose doubled Weyl coefficient equals `target_c`.
///
/// The bracket grows from `xi0 = 2` by doubling or halving `xi0 - 1`
/// within `[floor, 1e6]`, where the floor is the precision wall of `mode`.
pub fn solve_xi0(target_c: f64, mode: PrecisionMode) -> Result<SolveOutcome> {
    if target_c == 0.5 {
        return Ok(SolveOutcome::SphereLimit);
    }
    if !(target_c >= 0.5 + SPHERE_MARGIN) || !target_c.is_finite() {
        return Err(Error::BracketNotFound {
            target: target_c,
            reason: "coefficients below 1/2 are not attained; 1/2 is the sphere limit".into(),
        });
    }
    let floor = mode.argument_floor();
    check_monotone(floor, XI0_CEILING, mode)?;

    let f = |xi0: f64| doubled_coefficient(xi0, mode).map(|c| c - target_c);
    // f decreases in xi0: find lo with f(lo) >= 0 and hi with f(hi) <= 0
    let (mut lo, mut hi) = (2.0, 2.0);
    let mut f_lo = f(2.0)?;
    let mut f_hi = f_lo;
    while f_lo < 0.0 {
        hi = lo;
        f_hi = f_lo;
        if lo == floor {
            return Err(Error::BracketNotFound {
                target: target_c,
                reason: format!("needs xi0 below the precision wall {floor} of {mode:?} mode"),
            });
        }
        lo = (1.0 + (lo - 1.0) / 2.0).max(floor);
        f_lo = f(lo)?;
    }
    while f_hi > 0.0 {
        lo = hi;
        f_lo = f_hi;
        if hi == XI0_CEILING {
            return Err(Error::BracketNotFound { target: target_c, reason: "needs xi0 above 1e6".into() });
        }
        hi = (1.0 + 2.0 * (hi - 1.0)).min(XI0_CEILING);
        f_hi = f(hi)?;
    }

    let mut iterations = 0;
    let (mut u_lo, mut u_hi) = ((lo - 1.0).ln(), (hi - 1.0).ln());
    let (mut best, mut best_f) = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    while best_f.abs() >= SOLVE_TOL && iterations < 200 {
        iterations += 1;
        let u = 0.5 * (u_lo + u_hi);
        let xi0 = 1.0 + u.exp();
        let fm = f(xi0)?;
        if fm.abs() < best_f.abs() {
            best = xi0;
            best_f = fm;
        }
        if fm > 0.0 {
            u_lo = u;
        } else {
            u_hi = u;
        }
        if u_hi - u_lo < 1e-15 {
            break;
        }
    }
    if best_f.abs() >= SOLVE_TOL {
        return Err(Error::BracketNotFound {
            target: target_c,
            reason: format!("bisection stalled at residual {:e}", best_f.abs()),
        });
    }
    Ok(SolveOutcome::Shape { xi0: best, achieved: target_c + best_f, iterations })
}
