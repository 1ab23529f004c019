use oddpart::analysis::{decay_fit, dyadic_points, fit_samples, gamma_limit_probe, liminf_probe, tau_brackets};
use oddpart::families::{equi_row, CustomFamily, EquiFamily, FareyFamily, RandomOddFamily, SpheroidFamily, TailPolicy};
use oddpart::np_spectrum::SpheroidShape;
use oddpart::partition::{
    enumerate, row_holder_margin, validate_row, DecreasingStream, Exact, FamilyKind, Length, PartitionFamily,
};
use oddpart::specfun::{tau_zeta_bound, PrecisionMode};
use proptest::prelude::*;

fn concentration() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.05), Just(0.5), Just(1.0), Just(7.0), 0.01f64..50.0]
}

fn assert_monotone<F: PartitionFamily>(family: &F, count: usize) {
    let seq = enumerate(family, count).unwrap();
    for w in seq.windows(2) {
        assert!(w[0].value >= w[1].value, "{}: a_{} < a_{}", family.meta().label(), w[0].index, w[1].index);
        if w[0].value == w[1].value {
            assert!((w[0].order, w[0].position) < (w[1].order, w[1].position), "tie order broken");
        }
    }
}

/// Enumerated values above `ub(N0 + 1)` against a sort of rows `..= N0`.
fn assert_complete<F: PartitionFamily>(family: &F, last: usize) {
    let cut = family.upper_bound(last + 1).unwrap();
    let mut brute: Vec<(F::Value, usize, usize)> = Vec::new();
    for order in family.first_order()..=last {
        for (k, v) in family.row(order).unwrap().lengths.into_iter().enumerate() {
            if v > cut {
                brute.push((v, order, k + 1));
            }
        }
    }
    brute.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut got = Vec::new();
    for item in DecreasingStream::new(family) {
        let item = item.unwrap();
        if item.value <= cut {
            break;
        }
        got.push((item.value, item.order, item.position));
    }
    assert_eq!(got, brute);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_streams_are_monotone(seed in any::<u64>(), conc in concentration(), count in 1usize..3000) {
        assert_monotone(&RandomOddFamily::new(seed, conc).unwrap(), count);
    }

    #[test]
    fn random_truncations_match_brute_force(seed in any::<u64>(), conc in concentration(), last in 1usize..40) {
        assert_complete(&RandomOddFamily::new(seed, conc).unwrap(), last);
    }

    #[test]
    fn random_rows_validate_exactly(seed in any::<u64>(), conc in concentration(), order in 0usize..200) {
        let family = RandomOddFamily::new(seed, conc).unwrap();
        let row = validate_row(family.row(order).unwrap(), FamilyKind::Odd, 0.0).unwrap();
        prop_assert!(*row.max().unwrap() <= family.upper_bound(order).unwrap());
    }

    #[test]
    fn holder_margin_is_nonnegative(seed in any::<u64>(), conc in concentration(), order in 0usize..60) {
        let row = RandomOddFamily::new(seed, conc).unwrap().row(order).unwrap();
        for p in [1.5, 2.0, 3.0, 5.0] {
            prop_assert!(row_holder_margin(&row, p).unwrap() >= 0.0);
        }
    }

    #[test]
    fn random_tau_respects_zeta_bound(seed in any::<u64>(), conc in concentration()) {
        let family = RandomOddFamily::new(seed, conc).unwrap();
        for b in tau_brackets(&family, &[2.5, 3.0, 4.0], 60).unwrap() {
            prop_assert!(b.lower >= tau_zeta_bound(b.p).unwrap() - 1e-12, "p = {}: {} < {}", b.p, b.lower, b.bound_ref);
            prop_assert!(b.lower <= b.upper);
        }
    }

    #[test]
    fn fit_recovers_power_laws(c in 0.01f64..10.0, alpha in -2.0f64..-0.1, lo in 10usize..10_000) {
        let window = (lo, lo * 1000);
        let samples: Vec<(usize, f64)> =
            dyadic_points(window.0, window.1).into_iter().map(|j| (j, c * (j as f64).powf(alpha))).collect();
        let fit = fit_samples(window, &samples).unwrap();
        prop_assert!((fit.c_hat - c).abs() <= 1e-6 * c.max(1.0));
        prop_assert!((fit.alpha_hat - alpha).abs() <= 1e-6);
    }

    #[test]
    fn spheroid_rows_are_partitions_of_half(xi0 in 1.05f64..20.0) {
        let shape = SpheroidShape::new(xi0, PrecisionMode::Double).unwrap();
        let raw = SpheroidFamily::new(shape, false, 40).unwrap();
        let doubled = SpheroidFamily::new(shape, true, 40).unwrap();
        let mut previous_max = f64::INFINITY;
        for n in 0..=40 {
            let row = raw.row(n).unwrap();
            let sum: f64 = row.lengths.iter().map(|l| l.get()).sum();
            prop_assert!((sum - 0.5).abs() <= 1e-10);
            prop_assert!(row.lengths.iter().all(|l| l.get() > 0.0));
            let twice = doubled.row(n).unwrap();
            for (a, b) in row.lengths.iter().zip(&twice.lengths) {
                prop_assert_eq!(2.0 * a.get(), b.get());
            }
            let ub = raw.upper_bound(n).unwrap().get();
            prop_assert!(ub <= previous_max);
            previous_max = ub;
        }
    }
}

#[test]
fn built_in_streams_are_monotone() {
    assert_monotone(&EquiFamily::new(), 5000);
    assert_monotone(&FareyFamily::new(), 5000);
    let shape = SpheroidShape::new(1.5, PrecisionMode::Double).unwrap();
    assert_monotone(&SpheroidFamily::new(shape, true, 120).unwrap(), 5000);
}

#[test]
fn built_in_truncations_match_brute_force() {
    assert_complete(&EquiFamily::new(), 30);
    assert_complete(&FareyFamily::new(), 30);
    let shape = SpheroidShape::new(3.0, PrecisionMode::Double).unwrap();
    assert_complete(&SpheroidFamily::new(shape, false, 60).unwrap(), 25);
}

#[test]
fn equi_sequence_closed_form() {
    let mut n = 1u64;
    for item in DecreasingStream::new(&EquiFamily::new()).take(1_000_000) {
        let item = item.unwrap();
        if (n * n) < item.index as u64 {
            n += 1;
        }
        assert_eq!(item.value, Exact::reciprocal(2 * n - 1), "j = {}", item.index);
    }
}

#[test]
fn equi_tail_stays_above_threshold() {
    let w = liminf_probe(&EquiFamily::new(), &[(10_000, 40_000)]).unwrap();
    assert!(w[0].inf >= 0.45, "{:?}", w[0]);
}

#[test]
fn equi_holder_margin_vanishes() {
    for n in 0..50 {
        for p in [1.5, 2.0, 3.0, 5.0] {
            assert_eq!(row_holder_margin(&equi_row(n), p).unwrap(), 0.0);
        }
    }
}

#[test]
fn built_in_tau_respects_zeta_bound() {
    let ps = [2.5, 3.0, 4.0];
    for b in tau_brackets(&EquiFamily::new(), &ps, 2000).unwrap() {
        assert!(b.lower >= b.bound_ref - 1e-12);
        let slack = b.width() + 1e-14 * b.bound_ref;
        assert!((b.lower - b.bound_ref).abs() <= slack, "equi pins the bound: {b:?}");
    }
    let shape = SpheroidShape::new(1.5, PrecisionMode::Double).unwrap();
    for b in tau_brackets(&SpheroidFamily::new(shape, true, 200).unwrap(), &ps, 200).unwrap() {
        assert!(b.lower >= tau_zeta_bound(b.p).unwrap() - 1e-12, "{b:?}");
    }
}

#[test]
fn one_uneven_row_lifts_tau_above_the_bound() {
    let text = r#"{"name": "bump", "target_sum": "1", "kind": "odd",
                   "rows": [["1"], ["1/2", "1/4", "1/4"]]}"#;
    let family = CustomFamily::from_json(text, TailPolicy::EquiTail).unwrap();
    let bump = family.row(1).unwrap();
    for b in tau_brackets(&family, &[2.5, 3.0, 4.0], 500).unwrap() {
        let expected = row_holder_margin(&bump, b.p).unwrap();
        assert!(expected > 0.0);
        let margin = b.lower - b.bound_ref;
        assert!((margin - expected).abs() < 1e-12, "p = {}: margin {margin} vs {expected}", b.p);
        assert!(b.lower - b.width() > b.bound_ref, "margin exceeds bracket width");
    }
}

#[test]
fn gamma_probe_monotone_near_two() {
    let ps: Vec<f64> = (0..40).map(|i| 2.0 + 0.5 * (i + 1) as f64 / 40.0).collect();
    let probe = gamma_limit_probe(&ps).unwrap();
    let values: Vec<f64> = probe.values.iter().map(|(_, v)| *v).collect();
    let increasing = values.windows(2).all(|w| w[1] >= w[0]);
    let decreasing = values.windows(2).all(|w| w[1] <= w[0]);
    assert!(increasing || decreasing, "{values:?}");
}

#[test]
fn farey_fit_reports_an_exponent() {
    let fit = decay_fit(&FareyFamily::new(), (100, 10_000)).unwrap();
    assert!(fit.alpha_hat < 0.0 && fit.c_hat > 0.0);
    assert!(fit.residual.is_finite());
    assert_eq!(enumerate(&FareyFamily::new(), 1).unwrap()[0].value.to_f64(), 1.0);
}
