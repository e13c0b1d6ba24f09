mod common;

use proptest::prelude::*;
use uavsec::approx::{optimal_x, penalty, rate_minorant};
use uavsec::planner::{bisect_min_feasible, round_association};
use uavsec::validate::brute_force_from_differences;
use uavsec::*;

fn association(k: usize, n: usize) -> impl Strategy<Value = Association64> {
    prop::collection::vec(0.0..1.0f64, k * n).prop_map(move |v| Association(Matrix::from_fn(k, n, |i, j| v[i * n + j])))
}

fn sized_association() -> impl Strategy<Value = Association64> {
    (1usize..4, 1usize..12).prop_flat_map(|(k, n)| association(k, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rounding_keeps_column_sums(a in sized_association()) {
        let r = round_association(&a);
        prop_assert!(r.is_binary(0.0));
        prop_assert!(r.max_column_sum() <= 1.0);
    }

    #[test]
    fn penalty_is_nonnegative_and_aux_stays_in_ball(a in sized_association()) {
        let x = optimal_x(&a);
        let kn = (a.num_users() * a.num_slots()) as f64;
        prop_assert!(x.ball_norm_sq() <= kn * (1.0 + 1e-12));
        prop_assert!(penalty(&a, &x).unwrap() >= -1e-9);
    }

    #[test]
    fn bisection_finds_any_threshold(lo in 1usize..40, width in 1usize..200, frac in 0.0..1.0f64) {
        let hi = lo + width;
        let threshold = lo + (frac * width as f64) as usize;
        let out = bisect_min_feasible(lo, hi, (), |n| Ok::<_, ()>((n >= threshold).then_some(()))).unwrap();
        prop_assert_eq!(out.n_star, threshold);
        let cap = ((hi - lo) as f64).log2().ceil() as usize + 1;
        prop_assert!(out.probes.len() <= cap);
    }

    #[test]
    fn rate_minorant_is_global_lower_bound(
        ax in -500.0..500.0f64, ay in -500.0..500.0f64,
        px in -500.0..500.0f64, py in -500.0..500.0f64,
    ) {
        let s = Scenario64::evaluation_default();
        let anchor = Trajectory64::new(vec![Point2::new(ax, ay)]);
        for k in 0..2 {
            let m = rate_minorant(&s, k, &anchor)[0];
            let p = Point2::new(px, py);
            prop_assert!(m.eval(p - s.user(k)) <= s.spectral_rate_user(p, k) + 1e-12);
        }
    }

    #[test]
    fn brute_force_clamp_is_irrelevant(diffs in prop::collection::vec(-3.0..3.0f64, 2 * 6)) {
        let m = Matrix::from_fn(2, 6, |i, j| diffs[i * 6 + j]);
        let r = brute_force_from_differences(&m).unwrap();
        prop_assert!((r.clamped.lambda - r.unclamped.lambda).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_validates_at_bound(seed in any::<u64>()) {
        let s = common::random_scenario(&mut common::rng(seed));
        let n = prop1_bound(&s).unwrap();
        let (t, a) = hover_witness(&s, n).unwrap();
        prop_assert!(check_plan(&s, &t, &a).unwrap().passed);
        prop_assert!(n >= travel_lower_bound(&s).unwrap());
    }

    #[test]
    fn bound_shrinks_with_bandwidth(seed in any::<u64>()) {
        let s = common::random_scenario(&mut common::rng(seed));
        let mut wide = s.clone();
        wide.bandwidth *= 2.0;
        prop_assert!(prop1_bound(&wide).unwrap() <= prop1_bound(&s).unwrap());
    }
}
