use proptest::prelude::*;

use trigzeros::analytic::{pair_correlation_finite_n_rescaled, pair_correlation_limit};
use trigzeros::rootfind::real_roots_sampled;
use trigzeros::stats::{circular_gaps, empirical_pair_correlation, rescale_zeros};
use trigzeros::{EnsembleSpec, TrigPolynomial, VarianceProfile};

fn poly(degree: usize, seed: u64) -> TrigPolynomial {
    EnsembleSpec::equal_variance(degree, 0, 1, seed)
        .and_then(|s| s.sample(0))
        .unwrap()
}

fn close(a: &TrigPolynomial, b: &TrigPolynomial, tol: f64) -> bool {
    let scale = a.max_abs_coeff().max(b.max_abs_coeff()).max(1.0);
    a.cos_coeffs()
        .iter()
        .zip(b.cos_coeffs())
        .chain(a.sin_coeffs().iter().zip(b.sin_coeffs()))
        .all(|(x, y)| (x - y).abs() <= tol * scale)
}

fn gap_spread(roots: &[f64]) -> f64 {
    let gaps = circular_gaps(roots, std::f64::consts::TAU);
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    (gaps.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / gaps.len() as f64).sqrt() / mean
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivatives_compose(degree in 1usize..30, seed in any::<u64>(), a in 0u32..6, b in 0u32..6) {
        let f = poly(degree, seed);
        let n = degree as f64;
        let stepwise = f.differentiate_scaled(a, n).differentiate_scaled(b, n);
        prop_assert!(close(&stepwise, &f.differentiate_scaled(a + b, n), 1e-12));
        let unscaled = f.differentiate(a + b).scaled(n.powi(-((a + b) as i32)));
        prop_assert!(close(&unscaled, &f.differentiate_scaled(a + b, n), 1e-9));
    }

    #[test]
    fn fourth_derivative_scales_modes_by_n4(degree in 1usize..20, seed in any::<u64>()) {
        let f = poly(degree, seed);
        let d4 = f.differentiate(4);
        for (k, (c, c4)) in f.cos_coeffs().iter().zip(d4.cos_coeffs()).enumerate() {
            prop_assert!((c * (k as f64).powi(4) - c4).abs() <= 1e-9 * c4.abs().max(1.0));
        }
    }

    #[test]
    fn zeros_are_scale_invariant(degree in 1usize..25, p in 0u32..6, seed in any::<u64>(), exp in -30i32..30) {
        let f = EnsembleSpec::equal_variance(degree, p, 1, seed).and_then(|s| s.realization(0)).unwrap();
        let g = f.scaled(10f64.powi(exp));
        let a = real_roots_sampled(&f, Default::default()).unwrap();
        let b = real_roots_sampled(&g, Default::default()).unwrap();
        prop_assert_eq!(a.real_roots.len(), b.real_roots.len());
        for (x, y) in a.real_roots.iter().zip(&b.real_roots) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn pair_correlation_is_reflection_symmetric_with_full_mass(
        degree in 4usize..20,
        raw in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 2..30), 1..6),
    ) {
        let period = 2.0 * degree as f64;
        let sets: Vec<Vec<f64>> = raw
            .iter()
            .map(|r| {
                let mut v: Vec<f64> = r.iter().map(|u| u * period).collect();
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            })
            .collect();
        let reflected: Vec<Vec<f64>> = sets
            .iter()
            .map(|r| {
                let mut v: Vec<f64> = r.iter().map(|x| if *x == 0.0 { 0.0 } else { period - x }).collect();
                v.sort_by(f64::total_cmp);
                v
            })
            .collect();
        let width = degree as f64 / 8.0;
        let est = empirical_pair_correlation(&sets, degree, width, degree as f64).unwrap();
        let mirror = empirical_pair_correlation(&reflected, degree, width, degree as f64).unwrap();
        let total: u64 = est.pair_counts.iter().sum();
        let pairs: u64 = sets.iter().map(|r| (r.len() * (r.len() - 1) / 2) as u64).sum();
        prop_assert_eq!(total, pairs);
        let shift = |a: &[u64], b: &[u64]| a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum::<u64>();
        prop_assert!(shift(&est.pair_counts, &mirror.pair_counts) <= 2 * pairs / 1000 + 2);
    }

    #[test]
    fn higher_derivatives_are_more_crystalline(seed in any::<u64>()) {
        let spec10 = EnsembleSpec::equal_variance(8, 10, 1, seed).unwrap();
        let spec40 = EnsembleSpec::equal_variance(8, 40, 1, seed).unwrap();
        let r10 = real_roots_sampled(&spec10.realization(0).unwrap(), Default::default()).unwrap();
        let r40 = real_roots_sampled(&spec40.realization(0).unwrap(), Default::default()).unwrap();
        prop_assert!(r40.real_roots.len() >= r10.real_roots.len());
        prop_assert_eq!(r40.real_roots.len(), 16);
        if r10.real_roots.len() == 16 {
            prop_assert!(gap_spread(&r40.real_roots) < gap_spread(&r10.real_roots));
        }
        let scaled = rescale_zeros(&r40.real_roots, 8);
        prop_assert!(scaled.iter().all(|x| (0.0..16.0).contains(x)));
    }

    #[test]
    fn finite_n_approaches_limit_monotonically(p in 0u32..6, x0 in 0.3f64..2.5) {
        let xs: Vec<f64> = (0..5).map(|k| x0 + 0.1 * k as f64).collect();
        let mut previous = f64::INFINITY;
        for n in [16usize, 32, 64, 128] {
            let profile = VarianceProfile::derivative(n, p).unwrap();
            let mut worst: f64 = 0.0;
            for &x in &xs {
                let finite = pair_correlation_finite_n_rescaled(&profile, x).unwrap();
                worst = worst.max((finite - pair_correlation_limit(p, x).unwrap()).abs());
            }
            prop_assert!(worst < previous, "N={n}: {worst} not below {previous}");
            previous = worst;
        }
    }
}
