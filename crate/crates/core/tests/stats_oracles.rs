mod common;

use approx::assert_abs_diff_eq;
use commitment_power::stats::{
    approx_randomization, bonferroni, logistic_regression, ols, ols_power_regression, relative_difference,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exact_randomization_p, irls_oracle, ols_oracle, random_dataset, random_logistic};

#[test]
fn ols_matches_normal_equation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let (rows, y) = random_dataset(&mut rng);
        let fit = ols(&rows, &y).unwrap();
        let oracle = ols_oracle(&rows, &y);
        for j in 0..oracle.beta.len() {
            assert_abs_diff_eq!(fit.coefficients[j], oracle.beta[j], epsilon = 1e-9);
            assert_abs_diff_eq!(fit.std_errors[j], oracle.se[j], epsilon = 1e-9);
            assert_abs_diff_eq!(fit.t_statistics[j], oracle.t[j], epsilon = 1e-9);
            assert_abs_diff_eq!(fit.p_values[j], oracle.p[j], epsilon = 1e-9);
        }
    }
}

#[test]
fn logistic_matches_irls_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 30 {
        let (y, x) = random_logistic(&mut rng);
        let Ok(fit) = logistic_regression(&y, &x) else { continue };
        if fit.quasi_separation {
            continue;
        }
        let (b, z, p) = irls_oracle(&y, &x);
        assert_abs_diff_eq!(fit.coefficient, b, epsilon = 1e-6);
        assert_abs_diff_eq!(fit.t_statistic, z, epsilon = 1e-6);
        assert_abs_diff_eq!(fit.p_value, p, epsilon = 1e-6);
        checked += 1;
    }
}

#[test]
fn randomization_matches_exact_binomial() {
    let a = vec![true; 20];
    let b = vec![false; 20];
    let r = approx_randomization(&a, &b, 10_000, 1).unwrap();
    assert!((r.p_value - exact_randomization_p(&a, &b)).abs() <= 0.01, "{}", r.p_value);

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let a: Vec<bool> = (0..60).map(|_| rng.random_bool(0.7)).collect();
        let b: Vec<bool> = (0..60).map(|_| rng.random_bool(0.55)).collect();
        let r = approx_randomization(&a, &b, 10_000, 3).unwrap();
        let exact = exact_randomization_p(&a, &b);
        assert!((r.p_value - exact).abs() <= 0.01, "{} vs {exact}", r.p_value);
    }
}

#[test]
fn randomization_is_stable_across_seeds_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a: Vec<bool> = (0..100).map(|_| rng.random_bool(0.7)).collect();
    let b: Vec<bool> = (0..100).map(|_| rng.random_bool(0.6)).collect();
    let ps: Vec<f64> = (0..5)
        .map(|s| approx_randomization(&a, &b, 10_000, s).unwrap().p_value)
        .collect();
    let (lo, hi) = ps.iter().fold((1.0f64, 0.0f64), |(l, h), &p| (l.min(p), h.max(p)));
    assert!(hi - lo <= 0.02, "{ps:?}");
    for s in 0..3 {
        let ab = approx_randomization(&a, &b, 1000, s).unwrap();
        let ba = approx_randomization(&b, &a, 1000, s).unwrap();
        assert_eq!(ab.p_value, ba.p_value);
        assert_eq!(ab.observed_diff, -ba.observed_diff);
    }
}

fn design() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (8usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), n),
            prop::collection::vec(-10.0f64..10.0, n),
        )
            .prop_map(|(xs, y)| (xs.into_iter().map(|(a, b)| vec![1.0, a, b]).collect(), y))
    })
}

proptest! {
    #[test]
    fn ols_residuals_are_orthogonal_to_the_design((rows, y) in design()) {
        if let Ok(fit) = ols(&rows, &y) {
            for j in 0..3 {
                let dot: f64 = rows.iter().zip(&fit.residuals).map(|(r, e)| r[j] * e).sum();
                prop_assert!(dot.abs() < 1e-7, "column {j}: {dot}");
            }
        }
    }

    #[test]
    fn relative_difference_is_scale_invariant(sub in 0.01f64..100.0, sup in 0.01f64..100.0, c in 0.01f64..1000.0) {
        let a = relative_difference(sub, sup).unwrap();
        let b = relative_difference(sub * c, sup * c).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn power_coefficient_ignores_token_count_shift(
        data in prop::collection::vec((0u32..20, any::<bool>(), 10u32..200), 10..60),
        shift in -5.0f64..500.0,
    ) {
        let values: Vec<Option<f64>> = data.iter().map(|d| Some(d.0 as f64)).collect();
        let sup: Vec<bool> = data.iter().map(|d| d.1).collect();
        let tokens: Vec<f64> = data.iter().map(|d| d.2 as f64).collect();
        let shifted: Vec<f64> = tokens.iter().map(|t| t + shift).collect();
        if let (Ok(a), Ok(b)) = (ols_power_regression(&values, &sup, &tokens), ols_power_regression(&values, &sup, &shifted)) {
            prop_assert!((a.coefficient - b.coefficient).abs() < 1e-7);
            if a.t_statistic.is_finite() {
                prop_assert!((a.t_statistic - b.t_statistic).abs() < 1e-6 * a.t_statistic.abs().max(1.0));
            }
        }
    }

    #[test]
    fn bonferroni_is_monotone_and_capped(ps in prop::collection::vec(0.0f64..=1.0, 1..10), extra in 0usize..5) {
        let m = ps.len() + extra;
        let adj = bonferroni(&ps, m).unwrap();
        for (p, a) in ps.iter().zip(&adj) {
            prop_assert!(*a >= *p && *a <= 1.0);
            prop_assert!((*a - (p * m as f64).min(1.0)).abs() < 1e-15);
        }
    }
}
