//! Distributional checks of the samplers against independent oracles.

use gig_core::envelope::{build_envelope, CutoffSearchConfig, Envelope, StandardParams};
use gig_core::generator::{sample_gig, GigParams, SamplerConfig};
use gig_core::quadrature::{integrate, QuadratureConfig};
use gig_core::rejection::sample_quasi_density;
use gig_core::rng::stream;
use gig_core::special_fn::inv_gamma_log_cdf_at_ln;
use gig_core::stats::{
    ks_from_cdf_values, ks_one_sample, ks_two_sample, mean, quantile_sorted, std_dev,
};
use gig_core::truncated_gamma::{
    sample_truncated_gamma, sample_truncated_inv_gamma, TruncatedGammaSpec,
};
use gig_core::validation::{check_rate_guarantee, GigOracle};
use gig_core::GammaShapeRate;

const N: usize = 100_000;
const ALPHA: f64 = 0.01;

fn quad() -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-300,
        ..QuadratureConfig::default()
    }
}

/// CDF of a density at each sorted sample point, by integrating between
/// consecutive points in `t = ln y`.
fn tabulated_cdf<F: Fn(f64) -> f64>(
    sorted: &[f64],
    log_density: F,
    t_lo: f64,
    t_hi: f64,
) -> Vec<f64> {
    let f = |t: f64| (log_density(t.exp()) + t).exp();
    let total = integrate(f, t_lo, t_hi, &quad()).unwrap().0;
    let mut acc = 0.0;
    let mut prev = t_lo;
    sorted
        .iter()
        .map(|&y| {
            let t = y.ln().clamp(t_lo, t_hi);
            acc += integrate(f, prev, t, &quad()).unwrap().0;
            prev = t;
            (acc / total).min(1.0)
        })
        .collect()
}

#[test]
fn truncated_gamma_far_tail_conditional_mean() {
    // Gamma(0.5, rate 0.5) beyond 50: tail mass about 1.5e-12.
    let (a, b, t) = (0.5, 0.5, 50.0);
    let spec = TruncatedGammaSpec::new(GammaShapeRate::new(a, b).unwrap(), t).unwrap();
    assert!((spec.log_tail_mass() - (1.537e-12f64).ln()).abs() < 1e-3);
    let mut rng = stream(101);
    let xs: Vec<f64> = (0..N)
        .map(|_| {
            let x = sample_truncated_gamma(&spec, &mut rng).unwrap();
            assert!(x > t);
            x
        })
        .collect();
    let kernel = |p: f64| move |x: f64| ((a - 1.0 + p) * (x / t).ln() - b * (x - t)).exp();
    let num = integrate(kernel(1.0), t, t + 200.0, &quad()).unwrap().0 * t;
    let den = integrate(kernel(0.0), t, t + 200.0, &quad()).unwrap().0;
    let want = num / den;
    let se = std_dev(&xs) / (N as f64).sqrt();
    assert!(
        (mean(&xs) - want).abs() < 3.0 * se,
        "{} vs {want}",
        mean(&xs)
    );
}

#[test]
fn truncated_inverse_gamma_matches_quadrature() {
    let (a, b, upper) = (0.1, 0.5, 0.3);
    let g = GammaShapeRate::new(a, b).unwrap();
    let mut rng = stream(102);
    let mut xs: Vec<f64> = (0..N)
        .map(|_| {
            let x = sample_truncated_inv_gamma(&g, upper, &mut rng).unwrap();
            assert!(x > 0.0 && x < upper);
            x
        })
        .collect();
    xs.sort_by(f64::total_cmp);
    // Inverse-gamma log density up to a constant.
    let cdf = tabulated_cdf(
        &xs,
        |x| -(a + 1.0) * x.ln() - b / x,
        (1e-4f64).ln(),
        upper.ln(),
    );
    let ks = ks_from_cdf_values(cdf);
    assert!(ks.passes(ALPHA), "{ks:?}");
}

#[test]
fn uniform_transform_of_truncated_gamma() {
    // Lower-CDF image of truncated draws is uniform on (P(t), 1).
    let g = GammaShapeRate::new(2.5, 1.5).unwrap();
    let t = 1.2;
    let spec = TruncatedGammaSpec::new(g, t).unwrap();
    let p_t = -spec.log_tail_mass().exp_m1();
    let mut rng = stream(103);
    let us: Vec<f64> = (0..N)
        .map(|_| {
            let x = spec.sample(&mut rng).unwrap();
            gig_core::special_fn::gamma_log_lower_cdf(x, &g)
                .unwrap()
                .prob()
        })
        .collect();
    let ks = ks_one_sample(&us, |u| ((u - p_t) / (1.0 - p_t)).clamp(0.0, 1.0));
    assert!(ks.passes(ALPHA), "{ks:?}");
}

#[test]
fn quasi_density_draws_match_quadrature() {
    let sp = StandardParams::new(-0.1, 1.0).unwrap();
    let env = Envelope::by_rate(&sp, &CutoffSearchConfig::new(0.25)).unwrap();
    let (mut ys, stats) = sample_quasi_density(N, &env, &mut stream(104)).unwrap();
    assert!(stats.acceptance_rate().unwrap() >= 0.75 - 3.0 * (0.75f64 * 0.25 / N as f64).sqrt());
    ys.sort_by(f64::total_cmp);
    let g = sp.inv_gamma();
    let b = sp.half_beta();
    let cdf = tabulated_cdf(
        &ys,
        |y| -b * y + inv_gamma_log_cdf_at_ln(y.ln(), &g).unwrap(),
        -50.0,
        (200.0f64).ln(),
    );
    let ks = ks_from_cdf_values(cdf);
    assert!(ks.passes(ALPHA), "{ks:?}");
}

#[test]
fn closed_form_segment_frequencies() {
    let sp = StandardParams::new(-1.0, 2.0).unwrap();
    let env = build_envelope(&sp, &[0.5, 1.0, 1.5]).unwrap();
    let (ys, _) = sample_quasi_density(N, &env, &mut stream(105)).unwrap();
    // Accepted draws follow e^{-y} e^{-1/y}, not the envelope; check the
    // fraction below 1 against quadrature.
    let f = |y: f64| (-y - 1.0 / y).exp();
    let below = integrate(f, 1e-6, 1.0, &quad()).unwrap().0;
    let total = below + integrate(f, 1.0, 60.0, &quad()).unwrap().0;
    let p = below / total;
    let got = ys.iter().filter(|&&y| y < 1.0).count() as f64 / N as f64;
    assert!(
        (got - p).abs() < 3.0 * (p * (1.0 - p) / N as f64).sqrt(),
        "{got} vs {p}"
    );
}

#[test]
fn rate_guarantee_on_naive_grid() {
    let mut rng = stream(106);
    for l in [-0.001, -0.01, -0.1, -1.0] {
        for b in [1e-4, 1e-3, 1e-2, 0.1] {
            let sp = StandardParams::new(l, b).unwrap();
            for eps0 in [0.1, 0.25, 0.5] {
                let r = check_rate_guarantee(&sp, &CutoffSearchConfig::new(eps0), 50_000, &mut rng)
                    .unwrap();
                assert!(r.passed(), "lambda={l} beta={b} eps0={eps0}: {r:?}");
            }
        }
    }
}

#[test]
fn reciprocal_identity() {
    let a = sample_gig(
        N,
        &GigParams::new(0.7, 2.0, 3.0).unwrap(),
        &SamplerConfig::target_rate(0.1).with_seed(107),
    )
    .unwrap();
    let b = sample_gig(
        N,
        &GigParams::new(-0.7, 3.0, 2.0).unwrap(),
        &SamplerConfig::target_rate(0.1).with_seed(108),
    )
    .unwrap();
    let inv: Vec<f64> = a.values.iter().map(|x| 1.0 / x).collect();
    let ks = ks_two_sample(&inv, &b.values);
    assert!(ks.passes(ALPHA), "{ks:?}");
}

#[test]
fn scale_equivariance() {
    let c = 3.5;
    let a = sample_gig(
        N,
        &GigParams::new(-0.4, 1.2, 0.8).unwrap(),
        &SamplerConfig::target_rate(0.1).with_seed(109),
    )
    .unwrap();
    let b = sample_gig(
        N,
        &GigParams::new(-0.4, 1.2 / c, 0.8 * c).unwrap(),
        &SamplerConfig::target_rate(0.1).with_seed(110),
    )
    .unwrap();
    let scaled: Vec<f64> = a.values.iter().map(|x| c * x).collect();
    let ks = ks_two_sample(&scaled, &b.values);
    assert!(ks.passes(ALPHA), "{ks:?}");
}

#[test]
fn positive_lambda_matches_oracle() {
    let p = GigParams::new(1.3, 0.6, 2.5).unwrap();
    let batch = sample_gig(N, &p, &SamplerConfig::fixed_count(20).with_seed(111)).unwrap();
    let oracle = GigOracle::new(&p).unwrap();
    let ks = ks_one_sample(&batch.values, |x| oracle.cdf(x));
    assert!(ks.passes(ALPHA), "{ks:?}");
}

#[test]
fn concentrated_case_median() {
    let p = GigParams::new(-1.0, 50.0, 50.0).unwrap();
    let mut xs = sample_gig(N, &p, &SamplerConfig::target_rate(0.1).with_seed(112))
        .unwrap()
        .values;
    xs.sort_by(f64::total_cmp);
    let want = GigOracle::new(&p).unwrap().quantile(0.5);
    let got = quantile_sorted(&xs, 0.5);
    assert!((got / want - 1.0).abs() < 0.05, "{got} vs {want}");
    // The standardized mode.
    let mode = (-2.0 + (4.0f64 + 2500.0).sqrt()) / 50.0;
    assert!((want / mode - 1.0).abs() < 0.05);
}

#[test]
fn extreme_corner_matches_oracle() {
    let p = GigParams::new(-0.001, 1e-4, 1e-4).unwrap();
    let batch = sample_gig(N, &p, &SamplerConfig::target_rate(0.25).with_seed(113)).unwrap();
    assert!(batch.values.iter().all(|&x| x > 0.0 && x.is_finite()));
    let oracle = GigOracle::new(&p).unwrap();
    let ks = ks_one_sample(&batch.values, |x| oracle.cdf(x));
    assert!(ks.passes(ALPHA), "{ks:?}");
}
