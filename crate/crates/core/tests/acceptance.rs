//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use oddpart::analysis::{decay_fit, default_gamma_exponents, gamma_limit_probe, tau_bracket, tau_brackets};
use oddpart::families::{farey_row, EquiFamily, FareyFamily, RandomOddFamily, SpheroidFamily};
use oddpart::np_spectrum::{
    np_eigenvalue, nystrom_oracle, solve_xi0, weyl_constant, willmore_energy, NystromMesh, SpectrumTable,
    SpheroidShape,
};
use oddpart::partition::{enumerate, DecreasingStream, Exact, PartitionFamily};
use oddpart::specfun::{legendre_table, LegendreColumn, PrecisionMode};
use oddpart::{Error, Execution};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    format!("{}: {e}", e.name())
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn ceil_sqrt(j: u64) -> u64 {
    let mut r = (j as f64).sqrt() as u64;
    while r * r < j {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= j {
        r -= 1;
    }
    r
}

/// Criteria 1 and 2 share one enumeration of the equi family.
fn equi_sequence() -> Result<(Vec<Exact>, Duration), String> {
    let start = Instant::now();
    let seq: Vec<Exact> = enumerate(&EquiFamily::new(), 1_000_000).map_err(err)?.into_iter().map(|e| e.value).collect();
    Ok((seq, start.elapsed()))
}

fn criterion_1(seq: &[Exact], elapsed: Duration) -> Outcome {
    check(seq.len() == 1_000_000, "short sequence")?;
    for (i, a) in seq.iter().enumerate() {
        let j = i as u64 + 1;
        let expected = Exact::reciprocal(2 * ceil_sqrt(j) - 1);
        check(*a == expected, format!("a_{j} = {a}, expected {expected}"))?;
    }
    check(elapsed < Duration::from_secs(30), format!("took {:.1} s", secs(elapsed)))?;
    Ok(format!("a_j = 1/(2 ceil(sqrt j) - 1) exactly for j <= 1e6, {:.1} s", secs(elapsed)))
}

fn criterion_2(seq: &[Exact]) -> Outcome {
    let fit = decay_fit(&EquiFamily::new(), (1_000, 1_000_000)).map_err(err)?;
    check((fit.alpha_hat + 0.5).abs() <= 0.01, format!("alpha_hat = {}", fit.alpha_hat))?;
    check((fit.c_hat - 0.5).abs() <= 0.01, format!("C_hat = {}", fit.c_hat))?;
    for n in 1..=1000u64 {
        let a = seq[(n * n - 1) as usize].value();
        let c = a * BigRational::from_integer(BigInt::from(n));
        let expected = BigRational::new(BigInt::from(n), BigInt::from(2 * n - 1));
        check(c == expected, format!("N = {n}: N a_(N^2) = {c}"))?;
    }
    Ok(format!("alpha_hat = {:.5}, C_hat = {:.5}, N a_(N^2) = N/(2N-1) for N <= 1000", fit.alpha_hat, fit.c_hat))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let b = tau_bracket(&EquiFamily::new(), 3.0, 10_000).map_err(err)?;
    let target = PI * PI / 8.0;
    check(b.lower <= target && target <= b.upper, format!("[{}, {}] misses pi^2/8", b.lower, b.upper))?;
    check(b.width() < 1e-7, format!("width {:e}", b.width()))?;
    check(b.lower >= b.bound_ref - 1e-12, "lower below the zeta bound")?;
    let mut worst = f64::INFINITY;
    for seed in 0..100u64 {
        let conc = [0.25, 1.0, 4.0, 20.0][(seed % 4) as usize];
        let fam = RandomOddFamily::new(seed, conc).map_err(err)?;
        for b in tau_brackets(&fam, &[2.5, 3.0, 4.0], 100).map_err(err)? {
            let margin = b.lower - b.bound_ref;
            check(margin >= -1e-12, format!("seed {seed}, p = {}: margin {margin:e}", b.p))?;
            worst = worst.min(margin);
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), format!("took {:.1} s", secs(elapsed)))?;
    Ok(format!(
        "equi bracket width {:.1e} around pi^2/8; 100 random families, smallest margin {worst:.3e}; {:.1} s",
        b.width(),
        secs(elapsed)
    ))
}

fn criterion_4() -> Outcome {
    let probe = gamma_limit_probe(&default_gamma_exponents()).map_err(err)?;
    let gap = (probe.extrapolated - probe.target).abs();
    check(gap < 1e-6, format!("extrapolated {} vs {}", probe.extrapolated, probe.target))?;
    Ok(format!("extrapolated {:.12} vs (log 2 + gamma)/2 = {:.12}, gap {gap:.1e}", probe.extrapolated, probe.target))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for xi0 in [1.05, 1.5, 3.0, 10.0] {
        for mode in [PrecisionMode::Double, PrecisionMode::Extended] {
            let shape = SpheroidShape::new(xi0, mode).map_err(err)?;
            let table = SpectrumTable::compute(shape, 30, Execution::Parallel).map_err(err)?;
            let (n, dev) = table.max_trace_deviation();
            check(dev <= 1e-10, format!("xi0 = {xi0} ({mode:?}), n = {n}: deviation {dev:e}"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("degree sums equal 1/2 for n <= 30, max deviation {worst:.1e}"))
}

fn sorted_formula_top(shape: &SpheroidShape, n_max: usize, k: usize) -> Result<Vec<f64>, String> {
    let table = SpectrumTable::compute(*shape, n_max, Execution::Parallel).map_err(err)?;
    let mut all: Vec<f64> = (0..=n_max).flat_map(|n| table.sorted_row(n).unwrap()).collect();
    all.sort_by(|a, b| b.total_cmp(a));
    all.truncate(k);
    Ok(all)
}

fn criterion_6() -> Outcome {
    let far = SpheroidShape::new(1e3, PrecisionMode::Double).map_err(err)?;
    let mut worst_sphere: f64 = 0.0;
    for n in 0..=5usize {
        for m in -(n as i64)..=n as i64 {
            let lambda = np_eigenvalue(&far, n, m).map_err(err)?;
            let dev = (lambda - 0.5 / (2 * n + 1) as f64).abs();
            check(dev <= 1e-4, format!("lambda_({n},{m})(1e3) off by {dev:e}"))?;
            worst_sphere = worst_sphere.max(dev);
        }
    }

    let start = Instant::now();
    let mesh = NystromMesh::with_nodes(3200);
    let sphere = nystrom_oracle(&SpheroidShape::sphere(), mesh, 9, Execution::Parallel).map_err(err)?;
    let expected = [0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.1, 0.1, 0.1, 0.1, 0.1];
    let sphere_dev = sphere.eigenvalues.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    check(sphere_dev <= 1e-2, format!("sphere oracle {:?}", sphere.eigenvalues))?;

    let shape = SpheroidShape::new(1.5, PrecisionMode::Double).map_err(err)?;
    let oracle = nystrom_oracle(&shape, mesh, 9, Execution::Parallel).map_err(err)?;
    let elapsed = start.elapsed();
    let formula = sorted_formula_top(&shape, 12, 9)?;
    let dev = oracle.eigenvalues.iter().zip(&formula).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    check(dev <= 1e-2, format!("xi0 = 1.5: oracle {:?} vs formula {:?}", oracle.eigenvalues, formula))?;
    check(elapsed < Duration::from_secs(300), format!("oracle took {:.1} s", secs(elapsed)))?;
    Ok(format!(
        "xi0 = 1e3 within {worst_sphere:.1e} of 1/(2(2n+1)); oracle {} nodes: sphere {sphere_dev:.1e}, xi0 = 1.5 top 9 {dev:.1e}; {:.1} s",
        mesh.nodes(),
        secs(elapsed)
    ))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for xi0 in [1.2, 1.5, 3.0] {
        let shape = SpheroidShape::new(xi0, PrecisionMode::Double).map_err(err)?;
        let predicted = 2.0 * weyl_constant(willmore_energy(&shape).map_err(err)?);
        let fam = SpheroidFamily::new(shape, true, 400).map_err(err)?;
        let fit = decay_fit(&fam, (1_000, 10_000)).map_err(err)?;
        let rel = (fit.c_hat / predicted - 1.0).abs();
        check(rel <= 0.02, format!("xi0 = {xi0}: C_hat {} vs {predicted}", fit.c_hat))?;
        notes.push(format!("{xi0}: {rel:.1e}"));
    }
    let near_sphere = SpheroidShape::new(1e9, PrecisionMode::Double).map_err(err)?;
    let w = willmore_energy(&near_sphere).map_err(err)?;
    let c = weyl_constant(w);
    check((c - 0.25).abs() <= 1e-10, format!("sphere coefficient {c}"))?;
    Ok(format!("relative fit error by xi0 [{}]; sphere C~ = {c:.12}", notes.join(", ")))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for (target, mode) in [(0.55, PrecisionMode::Double), (0.8, PrecisionMode::Double), (1.0, PrecisionMode::Extended)] {
        let xi0 = solve_xi0(target, mode).map_err(err)?.xi0();
        let shape = SpheroidShape::new(xi0, mode).map_err(err)?;
        let fam = SpheroidFamily::new(shape, true, 600).map_err(err)?;
        let fit = decay_fit(&fam, (1_000, 10_000)).map_err(err)?;
        let rel = (fit.c_hat / target - 1.0).abs();
        check(rel <= 0.03, format!("C = {target}: xi0 = {xi0}, fitted {}", fit.c_hat))?;
        notes.push(format!("C={target}: xi0={xi0:.6} fit {:.4}", fit.c_hat));
    }
    match solve_xi0(0.4, PrecisionMode::Double) {
        Err(Error::BracketNotFound { .. }) => {}
        other => return Err(format!("target 0.4 gave {other:?}")),
    }
    Ok(format!("{}; C=0.4 refused", notes.join("; ")))
}

fn criterion_9() -> Outcome {
    let diagram: [&[&str]; 5] = [
        &["1"],
        &["1/2", "1/2"],
        &["1/3", "1/6", "1/6", "1/3"],
        &["1/4", "1/12", "1/6", "1/6", "1/12", "1/4"],
        &["1/5", "1/20", "1/12", "1/15", "1/10", "1/15", "1/12", "1/20", "1/5"],
    ];
    for (i, printed) in diagram.iter().enumerate() {
        let order = i + 1;
        let row: Vec<String> = farey_row(order).map_err(err)?.lengths.iter().map(|l| l.to_string()).collect();
        if order < 5 {
            check(row == *printed, format!("order {order}: {row:?}"))?;
        } else {
            // the printed fifth row sums to 9/10: it lists the central gap
            // 1/10 once, while 2/5 < 1/2 < 3/5 gives it twice
            let mut printed_restored: Vec<String> = printed.iter().map(|s| s.to_string()).collect();
            printed_restored.insert(5, "1/10".into());
            check(row == printed_restored, format!("order 5: {row:?}"))?;
        }
    }
    let prefix = ["1", "1/2", "1/2", "1/3", "1/3", "1/4", "1/4", "1/5", "1/5", "1/6", "1/6", "1/6", "1/6", "1/6", "1/6"];
    let got: Vec<String> =
        enumerate(&FareyFamily::new(), prefix.len()).map_err(err)?.iter().map(|e| e.value.to_string()).collect();
    check(got == prefix, format!("prefix {got:?}"))?;
    let fit = decay_fit(&FareyFamily::new(), (1_000, 100_000)).map_err(err)?;
    // Gaps of length >= 1/N come from coprime b d <= N, each pair present in
    // min(b, d) rows, so about (8/pi^2) N^(3/2) of them: a_j decays like
    // j^(-2/3) and this window is out of reach of a correct enumeration.
    check(
        (-0.38..=-0.28).contains(&fit.alpha_hat),
        format!(
            "rows 1-5 and prefix match, but alpha_hat = {:.4} lies outside [-0.38, -0.28] (gap counting gives -2/3)",
            fit.alpha_hat
        ),
    )?;
    Ok(format!(
        "rows 1-4 exact, row 5 equals the printed row with its second central 1/10 restored; prefix matches; alpha_hat = {:.4}",
        fit.alpha_hat
    ))
}

/// Enumeration of a truncated family against a brute-force sort.
fn brute_force_case<F: PartitionFamily>(family: &F, rows: usize) -> Result<(), String> {
    let first = family.first_order();
    let cut = family.upper_bound(first + rows).map_err(err)?;
    let mut all: Vec<(F::Value, usize, usize)> = Vec::new();
    for order in first..first + rows {
        for (k, v) in family.row(order).map_err(err)?.lengths.into_iter().enumerate() {
            if v > cut {
                all.push((v, order, k + 1));
            }
        }
    }
    all.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let got: Vec<_> = DecreasingStream::new(family)
        .take(all.len())
        .map(|e| e.map(|e| (e.value, e.order, e.position)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    check(got == all, format!("{}: enumeration differs from sorted rows", family.meta().label()))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_241_016);
    for case in 0..20 {
        let rows = 5 + (rng.next_u32() % 60) as usize;
        match case % 4 {
            0 | 1 => {
                let conc = [0.1, 1.0, 5.0][(rng.next_u32() % 3) as usize];
                brute_force_case(&RandomOddFamily::new(rng.next_u64(), conc).map_err(err)?, rows)?;
            }
            2 => brute_force_case(&FareyFamily::new(), rows / 2)?,
            _ => brute_force_case(&EquiFamily::new(), rows)?,
        }
    }

    let args = [1.05, 1.5, 2.0, 10.0];
    let mut worst_wronskian: f64 = 0.0;
    for &x in &args {
        for m in 0..=10 {
            let (_, r) = LegendreColumn::<f64>::compute(50, m, x).map_err(err)?.max_wronskian_residual();
            check(r < 1e-10, format!("Wronskian residual {r:e} at m = {m}, x = {x}"))?;
            worst_wronskian = worst_wronskian.max(r);
        }
    }

    let h = 1e-6;
    let mut worst_fd: f64 = 0.0;
    for &x in &args {
        for m in [0, 3, 10] {
            let mid = legendre_table(50, m, x, PrecisionMode::Double).map_err(err)?;
            let up = legendre_table(50, m, x + h, PrecisionMode::Double).map_err(err)?;
            let down = legendre_table(50, m, x - h, PrecisionMode::Double).map_err(err)?;
            for ((c, u), d) in mid.iter().zip(&up).zip(&down) {
                for (exact, fd) in [(c.dp(), (u.p() - d.p()) / (2.0 * h)), (c.dq(), (u.q() - d.q()) / (2.0 * h))] {
                    if exact == 0.0 {
                        continue;
                    }
                    let rel = ((exact - fd) / exact).abs();
                    check(rel < 1e-5, format!("n = {}, m = {m}, x = {x}: derivative off by {rel:e}", c.n))?;
                    worst_fd = worst_fd.max(rel);
                }
            }
        }
    }
    Ok(format!(
        "20 brute-force cases agree; Wronskian residual <= {worst_wronskian:.1e}; derivatives within {worst_fd:.1e}"
    ))
}

fn main() -> ExitCode {
    // The libtest flags passed by `cargo test` are ignored; an optional
    // filter such as `criterion_7` restricts the run.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let selected = |name: &str| filter.as_deref().is_none_or(|f| name.contains(f));

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    if selected("criterion_1") || selected("criterion_2") {
        match equi_sequence() {
            Ok((seq, elapsed)) => {
                results.push(("criterion_1 equi sequence exactness", criterion_1(&seq, elapsed)));
                results.push(("criterion_2 optimal coefficient", criterion_2(&seq)));
            }
            Err(e) => {
                results.push(("criterion_1 equi sequence exactness", Err(e.clone())));
                results.push(("criterion_2 optimal coefficient", Err(e)));
            }
        }
    }
    let rest: [Criterion; 8] = [
        ("criterion_3 Hölder equality and inequality", criterion_3),
        ("criterion_4 gamma limit", criterion_4),
        ("criterion_5 spheroid trace identity", criterion_5),
        ("criterion_6 sphere gates and Nyström oracle", criterion_6),
        ("criterion_7 Weyl law", criterion_7),
        ("criterion_8 prescribed coefficients", criterion_8),
        ("criterion_9 Farey rows and exponent", criterion_9),
        ("criterion_10 property suites", criterion_10),
    ];
    for (name, run) in rest {
        if selected(name) {
            let start = Instant::now();
            let outcome = run();
            eprintln!("  ({name}: {:.1} s)", secs(start.elapsed()));
            results.push((name, outcome));
        }
    }

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
