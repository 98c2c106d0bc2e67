use gig_core::envelope::{
    count_cutoffs_curve, find_cutoffs_by_rate, find_cutoffs_by_rate_traced, CutoffSearchConfig,
    CutoffSet, Envelope, StandardParams, DEFAULT_MAX_CUTOFFS,
};
use gig_core::special_fn::{
    gamma_log_lower_cdf, gamma_log_quantile_log_upper, gamma_log_upper_cdf, inv_gamma_log_cdf,
    log_gamma,
};
use gig_core::validation::check_domination;
use gig_core::{GammaShapeRate, LogProb};
use proptest::prelude::*;

fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn params() -> impl Strategy<Value = StandardParams> {
    (log_range(1e-3, 3.0), log_range(1e-4, 10.0))
        .prop_map(|(l, b)| StandardParams::new(-l, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_gamma_recurrence(x in log_range(1e-5, 1e4)) {
        let lhs = log_gamma(x + 1.0).unwrap();
        let rhs = log_gamma(x).unwrap() + x.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn tails_are_complementary(a in log_range(1e-3, 1e3), x in log_range(1e-6, 1e4)) {
        let g = GammaShapeRate::new(a, 1.0).unwrap();
        let lp = gamma_log_lower_cdf(x, &g).unwrap().value();
        let lq = gamma_log_upper_cdf(x, &g).unwrap().value();
        let total = lp.max(lq) + (-(lp - lq).abs()).exp().ln_1p();
        prop_assert!(total.abs() < 1e-12, "lnP={lp} lnQ={lq}");
    }

    #[test]
    fn upper_tail_is_decreasing(a in log_range(1e-3, 100.0), x in log_range(1e-4, 1e3)) {
        let g = GammaShapeRate::new(a, 1.0).unwrap();
        let q0 = gamma_log_upper_cdf(x, &g).unwrap().value();
        let q1 = gamma_log_upper_cdf(x * 1.01, &g).unwrap().value();
        prop_assert!(q1 <= q0);
    }

    #[test]
    fn quantile_inverts_upper_tail(a in log_range(1e-3, 100.0), b in log_range(1e-3, 10.0), lq in -1e4f64..-1e-12) {
        let g = GammaShapeRate::new(a, b).unwrap();
        let ln_x = gamma_log_quantile_log_upper(LogProb::new(lq).unwrap(), &g).unwrap();
        prop_assume!(ln_x.exp() > 0.0 && ln_x.exp().is_finite());
        let back = gamma_log_upper_cdf(ln_x.exp(), &g).unwrap().value();
        prop_assert!((back - lq).abs() <= 1e-8 * lq.abs().max(1e-3), "lq={lq} back={back}");
    }

    #[test]
    fn inverse_gamma_cdf_is_increasing(a in log_range(1e-3, 10.0), y in log_range(1e-3, 1e3)) {
        let g = GammaShapeRate::new(a, 0.5).unwrap();
        let f0 = inv_gamma_log_cdf(y, &g).unwrap().value();
        let f1 = inv_gamma_log_cdf(y * 1.01, &g).unwrap().value();
        prop_assert!(f0 <= f1 && f1 <= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rate_search_output_is_strictly_increasing(sp in params(), eps0 in 0.05f64..1.0) {
        let set = find_cutoffs_by_rate(&sp, &CutoffSearchConfig::new(eps0)).unwrap();
        prop_assert!(!set.is_empty());
        prop_assert!(set.log_values().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(set.log_values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn rate_search_loop_state(sp in params(), eps0 in 0.05f64..1.0) {
        let (_, trace) = find_cutoffs_by_rate_traced(&sp, &CutoffSearchConfig::new(eps0)).unwrap();
        for s in trace {
            prop_assert!(s.a_left >= 0.0 && s.a_right >= 0.0);
            prop_assert!(s.a_left + s.a_right <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn cutoff_count_non_increasing_in_rate(sp in params(), e in 0.02f64..0.98, d in 0.0f64..0.02) {
        let counts = count_cutoffs_curve(&sp, &[e, e + d], false, DEFAULT_MAX_CUTOFFS).unwrap();
        prop_assert!(counts[0] >= counts[1]);
    }

    #[test]
    fn envelope_invariants(sp in params(), eps0 in 0.05f64..1.0) {
        let env = Envelope::by_rate(&sp, &CutoffSearchConfig::new(eps0)).unwrap();
        let w = env.weights();
        prop_assert_eq!(w.len(), env.cutoff_count() + 1);
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(w.iter().all(|&z| z >= 0.0));
        let cdf = env.seg_log_cdf();
        prop_assert!(cdf.windows(2).all(|p| p[0] <= p[1]));
        prop_assert_eq!(*cdf.last().unwrap(), 0.0);
        let mass: f64 = env.seg_exp_mass().iter().sum();
        prop_assert!((mass - 1.0).abs() < 1e-12);
        prop_assert_eq!(*env.cumulative_weights().last().unwrap(), 1.0);
        // The construction guarantees rejection at most eps0.
        prop_assert!(env.expected_acceptance().unwrap() >= 1.0 - eps0 - 1e-9);
    }

    #[test]
    fn random_cutoffs_dominate(sp in params(), mut logs in prop::collection::vec(-12.0f64..18.0, 0..40)) {
        logs.sort_by(f64::total_cmp);
        logs.dedup();
        let env = Envelope::new(&sp, CutoffSet::from_log_values(logs).unwrap()).unwrap();
        let r = check_domination(&env, 2000).unwrap();
        prop_assert_eq!(r.violations, 0);
        prop_assert!((env.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn rate_search_terminates_on_grid() {
    for l in [-1.0, -0.1, -0.01, -0.001] {
        for b in [1e-4, 1e-3, 1e-2, 0.1] {
            let sp = StandardParams::new(l, b).unwrap();
            for eps0 in [0.1, 0.25, 0.5, 0.75] {
                let set = find_cutoffs_by_rate(&sp, &CutoffSearchConfig::new(eps0)).unwrap();
                assert!(!set.is_empty() && set.len() < DEFAULT_MAX_CUTOFFS);
            }
        }
    }
}
