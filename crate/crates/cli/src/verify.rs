//! The invariant suite behind `oddpart verify`. Every check is sized to run
//! in seconds; the exhaustive versions live in the library's test suites.

use oddpart::analysis::{gamma_limit_probe, default_gamma_exponents, liminf_probe, tau_brackets};
use oddpart::families::{farey_row, EquiFamily, FareyFamily, RandomOddFamily, SpheroidFamily};
use oddpart::np_spectrum::{np_eigenvalue, weyl_constant, willmore_energy, SpectrumTable, SpheroidShape};
use oddpart::partition::{row_holder_margin, validate_row, DecreasingStream, Exact, FamilyKind, PartitionFamily};
use oddpart::specfun::{zeta, LegendreColumn, PrecisionMode};
use oddpart::Execution;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(u64) -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn op<T>(r: oddpart::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", e.name()))
}

fn equi_closed_form(_: u64) -> Result<String, String> {
    let mut n = 1u64;
    for item in DecreasingStream::new(&EquiFamily::new()).take(100_000) {
        let item = op(item)?;
        if n * n < item.index as u64 {
            n += 1;
        }
        ensure(item.value == Exact::reciprocal(2 * n - 1), || format!("a_{} = {}", item.index, item.value))?;
    }
    Ok("a_j = 1/(2 ceil(sqrt j) - 1) for j <= 1e5".into())
}

/// Stream prefix above `ub(last + 1)` against a sort of rows `..= last`.
fn matches_brute_force<F: PartitionFamily>(family: &F, last: usize) -> Result<(), String> {
    let cut = op(family.upper_bound(last + 1))?;
    let mut brute = Vec::new();
    for order in family.first_order()..=last {
        for (k, v) in op(family.row(order))?.lengths.into_iter().enumerate() {
            if v > cut {
                brute.push((v, order, k + 1));
            }
        }
    }
    brute.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let got: Vec<_> = DecreasingStream::new(family)
        .take(brute.len())
        .map(|e| e.map(|e| (e.value, e.order, e.position)))
        .collect::<oddpart::Result<_>>()
        .map_err(|e| e.to_string())?;
    ensure(got == brute, || format!("{} differs from the sorted truncation", family.meta().label()))
}

fn completeness(seed: u64) -> Result<String, String> {
    matches_brute_force(&EquiFamily::new(), 30)?;
    matches_brute_force(&FareyFamily::new(), 25)?;
    for s in seed..seed + 10 {
        matches_brute_force(&op(RandomOddFamily::new(s, 1.0 + (s % 5) as f64))?, 30)?;
    }
    let shape = op(SpheroidShape::new(1.5, PrecisionMode::Double))?;
    matches_brute_force(&op(SpheroidFamily::new(shape, true, 60))?, 20)?;
    Ok("equi, farey, 10 random and one spheroid family agree with brute force".into())
}

fn holder_margins(seed: u64) -> Result<String, String> {
    let mut count = 0;
    for s in seed..seed + 20 {
        let family = op(RandomOddFamily::new(s, 0.1 + (s % 7) as f64))?;
        for order in 0..40 {
            let row = op(validate_row(op(family.row(order))?, FamilyKind::Odd, 0.0))?;
            for p in [1.5, 2.0, 3.0, 5.0] {
                let margin = op(row_holder_margin(&row, p))?;
                ensure(margin >= 0.0, || format!("seed {s}, row {order}, p = {p}: {margin}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} random row margins are non-negative"))
}

fn zeta_bound(seed: u64) -> Result<String, String> {
    let ps = [2.5, 3.0, 4.0];
    let mut worst = f64::INFINITY;
    for b in op(tau_brackets(&EquiFamily::new(), &ps, 2000))? {
        ensure((b.lower - b.bound_ref).abs() <= b.width() + 1e-14 * b.bound_ref, || format!("equi misses at p = {}", b.p))?;
    }
    for s in seed..seed + 20 {
        for b in op(tau_brackets(&op(RandomOddFamily::new(s, 2.0))?, &ps, 100))? {
            let margin = b.lower - b.bound_ref;
            ensure(margin >= -1e-12, || format!("seed {s}, p = {}: margin {margin:e}", b.p))?;
            worst = worst.min(margin);
        }
    }
    Ok(format!("equi attains the bound; random margins >= {worst:.3e}"))
}

fn gamma_limit(_: u64) -> Result<String, String> {
    let probe = op(gamma_limit_probe(&default_gamma_exponents()))?;
    let gap = (probe.extrapolated - probe.target).abs();
    ensure(gap < 1e-6, || format!("extrapolated {} vs {}", probe.extrapolated, probe.target))?;
    Ok(format!("limit within {gap:.1e} of (log 2 + gamma)/2"))
}

fn zeta_shape(_: u64) -> Result<String, String> {
    let mut last = f64::INFINITY;
    for i in 1..400 {
        let s = 1.0 + 0.05 * i as f64;
        let z = op(zeta(s))?;
        ensure(z <= last, || format!("zeta increases at s = {s}"))?;
        last = z;
    }
    let far = op(zeta(60.0))?;
    ensure((far - 1.0).abs() < 1e-15, || format!("zeta(60) = {far}"))?;
    Ok("decreasing on (1, 21), zeta(60) = 1".into())
}

fn wronskian(_: u64) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for x in [1.05, 1.5, 2.0, 10.0] {
        for m in 0..=10 {
            let (_, r) = op(LegendreColumn::<f64>::compute(50, m, x))?.max_wronskian_residual();
            ensure(r < 1e-10, || format!("residual {r:e} at m = {m}, x = {x}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("residual <= {worst:.1e} for n <= 50, m <= 10"))
}

fn trace_identity(_: u64) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for xi0 in [1.05, 1.5, 3.0, 10.0] {
        let shape = op(SpheroidShape::new(xi0, PrecisionMode::Double))?;
        let (n, dev) = op(SpectrumTable::compute(shape, 30, Execution::Parallel))?.max_trace_deviation();
        ensure(dev <= 1e-10, || format!("xi0 = {xi0}, n = {n}: {dev:e}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("degree sums within {worst:.1e} of 1/2"))
}

fn sphere_limit(_: u64) -> Result<String, String> {
    let shape = op(SpheroidShape::new(1e3, PrecisionMode::Double))?;
    for n in 0..=5usize {
        for m in -(n as i64)..=n as i64 {
            let gap = (op(np_eigenvalue(&shape, n, m))? - 0.5 / (2 * n + 1) as f64).abs();
            ensure(gap <= 1e-4, || format!("({n}, {m}): {gap:e}"))?;
        }
    }
    let c = weyl_constant(op(willmore_energy(&op(SpheroidShape::new(1e9, PrecisionMode::Double))?))?);
    ensure((c - 0.25).abs() <= 1e-10, || format!("sphere coefficient {c}"))?;
    Ok(format!("eigenvalues near 1/(2(2n+1)); sphere coefficient {c:.12}"))
}

fn farey_rows(_: u64) -> Result<String, String> {
    let mut total = 0usize;
    for order in 1..=200usize {
        total += (1..=order).filter(|&k| gcd(order, k) == 1).count();
        let row = op(farey_row(order))?;
        ensure(row.len() == total, || format!("order {order}: {} entries", row.len()))?;
        op(validate_row(row, FamilyKind::General, 0.0))?;
    }
    Ok("row sizes are totient sums and rows sum to 1 for orders <= 200".into())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn doubling(_: u64) -> Result<String, String> {
    let shape = op(SpheroidShape::new(1.3, PrecisionMode::Double))?;
    let raw = op(SpheroidFamily::new(shape, false, 50))?;
    let doubled = op(SpheroidFamily::new(shape, true, 50))?;
    for n in 0..=50 {
        let (a, b) = (op(raw.row(n))?, op(doubled.row(n))?);
        ensure(a.lengths.iter().zip(&b.lengths).all(|(x, y)| 2.0 * x.get() == y.get()), || format!("row {n}"))?;
    }
    Ok("doubled rows are exactly twice the raw rows".into())
}

fn equi_tail(_: u64) -> Result<String, String> {
    let w = op(liminf_probe(&EquiFamily::new(), &[(10_000, 40_000)]))?;
    ensure(w[0].inf >= 0.45, || format!("min {} at j = {}", w[0].inf, w[0].argmin))?;
    Ok(format!("min sqrt(j) a_j = {:.6} on [1e4, 4e4]", w[0].inf))
}

const CHECKS: [(&str, Check); 12] = [
    ("equi_closed_form", equi_closed_form),
    ("enumeration_completeness", completeness),
    ("holder_margins", holder_margins),
    ("tau_zeta_bound", zeta_bound),
    ("gamma_limit", gamma_limit),
    ("zeta_monotone", zeta_shape),
    ("legendre_wronskian", wronskian),
    ("trace_identity", trace_identity),
    ("sphere_limit", sphere_limit),
    ("farey_rows", farey_rows),
    ("spheroid_doubling", doubling),
    ("equi_tail", equi_tail),
];

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(check, f)| match f(seed) {
            Ok(detail) => CheckResult { check, passed: true, detail },
            Err(detail) => CheckResult { check, passed: false, detail },
        })
        .collect()
}
