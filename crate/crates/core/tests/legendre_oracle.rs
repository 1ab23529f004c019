//! Associated Legendre tables against hypergeometric series evaluated in
//! double-double arithmetic.

use oddpart::specfun::{legendre_table, LegendreColumn, PrecisionMode};
use twofloat::TwoFloat;

const DEGREES: usize = 50;
const ORDERS: usize = 10;
const ARGS: [f64; 4] = [1.05, 1.5, 2.0, 10.0];

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

fn factorial(k: usize) -> TwoFloat {
    (1..=k).fold(tf(1.0), |acc, i| acc * tf(i as f64))
}

fn powi(x: TwoFloat, k: usize) -> TwoFloat {
    (0..k).fold(tf(1.0), |acc, _| acc * x)
}

/// Sum of a hypergeometric series whose terms are all positive.
fn hyp2f1_positive(a: TwoFloat, b: TwoFloat, c: TwoFloat, z: TwoFloat) -> TwoFloat {
    let mut term = tf(1.0);
    let mut sum = tf(1.0);
    for k in 0..20_000 {
        let kf = tf(k as f64);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + tf(1.0))) * z;
        sum += term;
        if term.hi() == 0.0 || term.hi().abs() < 1e-32 * sum.hi().abs() {
            break;
        }
    }
    sum
}

/// `P_n^m(x) = (x^2-1)^{m/2} (n+m)!/(2^m m! (n-m)!) 2F1(m-n, m+n+1; m+1; (1-x)/2)`
fn p_oracle(n: usize, m: usize, x: f64) -> f64 {
    let x = tf(x);
    let w = (x * x - tf(1.0)).sqrt();
    let pre = powi(w, m) * factorial(n + m) / (powi(tf(2.0), m) * factorial(m) * factorial(n - m));
    let mut term = tf(1.0);
    let mut sum = tf(1.0);
    let z = (tf(1.0) - x) / tf(2.0);
    for k in 0..(n - m) {
        let kf = k as f64;
        term = term * tf(m as f64 - n as f64 + kf) * tf((m + n + 1) as f64 + kf) / (tf((m + 1) as f64 + kf) * tf(kf + 1.0)) * z;
        sum += term;
    }
    (pre * sum).hi()
}

/// `|Q_n^m(x)| = (n+m)!/(2n+1)!! (x^2-1)^{m/2} x^{-n-m-1}
///  2F1((n+m+2)/2, (n+m+1)/2; n+3/2; 1/x^2)`
fn q_oracle_abs(n: usize, m: usize, x: f64) -> f64 {
    let x = tf(x);
    let w = (x * x - tf(1.0)).sqrt();
    let double_fact = (0..=n).fold(tf(1.0), |acc, k| acc * tf((2 * k + 1) as f64));
    let pre = factorial(n + m) / double_fact * powi(w, m) / powi(x, n + m + 1);
    let f = hyp2f1_positive(
        tf((n + m + 2) as f64 / 2.0),
        tf((n + m + 1) as f64 / 2.0),
        tf(n as f64 + 1.5),
        tf(1.0) / (x * x),
    );
    (pre * f).hi()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn tables_match_series_oracle() {
    for &x in &ARGS {
        for m in 0..=ORDERS {
            let table = legendre_table(DEGREES, m, x, PrecisionMode::Double).unwrap();
            for pair in &table {
                let p = p_oracle(pair.n, m, x);
                let q = q_oracle_abs(pair.n, m, x);
                assert!(rel(pair.p(), p) < 1e-10, "P n={} m={m} x={x}: {} vs {p}", pair.n, pair.p());
                assert!(rel(pair.q().abs(), q) < 1e-10, "Q n={} m={m} x={x}: {} vs {q}", pair.n, pair.q());
                assert_eq!(pair.q.sign, if m % 2 == 0 { 1 } else { -1 });
            }
        }
    }
}

#[test]
fn closed_forms() {
    let t = legendre_table(1, 0, 2.0, PrecisionMode::Double).unwrap();
    assert!((t[1].p() - 2.0).abs() < 1e-15);
    assert!((t[1].q() - 0.098_612_288_668_109_7).abs() < 1e-15);
    let t = legendre_table(1, 1, 2.0, PrecisionMode::Double).unwrap();
    assert!((t[0].p() - 3f64.sqrt()).abs() < 1e-14);
}

#[test]
fn derivatives_match_central_differences() {
    let h = 1e-6;
    for &x in &ARGS {
        for m in [0, 1, 4, 10] {
            let mid = legendre_table(DEGREES, m, x, PrecisionMode::Double).unwrap();
            let up = legendre_table(DEGREES, m, x + h, PrecisionMode::Double).unwrap();
            let down = legendre_table(DEGREES, m, x - h, PrecisionMode::Double).unwrap();
            for ((c, u), d) in mid.iter().zip(&up).zip(&down) {
                let dp = (u.p() - d.p()) / (2.0 * h);
                let dq = (u.q() - d.q()) / (2.0 * h);
                assert!(rel(c.dp(), dp) < 1e-5 || c.dp() == 0.0 && dp.abs() < 1e-6, "dP n={} m={m} x={x}", c.n);
                assert!(rel(c.dq(), dq) < 1e-5, "dQ n={} m={m} x={x}: {} vs {dq}", c.n, c.dq());
            }
        }
    }
}

#[test]
fn wronskian_residual_on_grid() {
    for &x in &ARGS {
        for m in 0..=ORDERS {
            let col = LegendreColumn::<f64>::compute(DEGREES, m, x).unwrap();
            let (n, r) = col.max_wronskian_residual();
            assert!(r < 1e-10, "m={m} x={x} n={n}: {r:e}");
        }
    }
}

#[test]
fn second_kind_decays_at_infinity() {
    let mut last = f64::INFINITY;
    for &x in &[2.0, 10.0, 100.0, 1e4] {
        let q = legendre_table(3, 2, x, PrecisionMode::Double).unwrap()[1].q().abs();
        assert!(q < last);
        last = q;
    }
    assert!(last < 1e-15);
}

#[test]
fn extended_mode_reaches_closer_to_one() {
    let x = 1.001;
    let col = LegendreColumn::<TwoFloat>::compute(200, 20, x).unwrap();
    assert!(col.max_wronskian_residual().1 < 1e-10);
    let table = legendre_table(60, 5, x, PrecisionMode::Extended).unwrap();
    for pair in table.iter().step_by(11) {
        assert!(rel(pair.q().abs(), q_oracle_abs(pair.n, 5, x)) < 1e-9, "n={}", pair.n);
    }
}
