use twedge::fredholm::{
    discretize_scalar, finite_cdf, semi_infinite_rule, semi_infinite_rule_scaled, tw_cdf,
    tw_density, tw_quantile, Beta,
};
use twedge::kernels::{AiryKernel, GueKernel, RescaledGueKernel};
use twedge::specfun::{centering, CenteringSpec};

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let k = ((hi - lo) / step).round() as usize;
    (0..=k).map(|i| lo + step * i as f64).collect()
}

#[test]
fn limit_laws_satisfy_cdf_axioms() {
    for beta in [Beta::One, Beta::Two] {
        let v: Vec<f64> = grid(-8.0, 6.0, 0.25)
            .iter()
            .map(|&s| tw_cdf(beta, s).unwrap().value)
            .collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]), "beta {}", beta.index());
        assert!(tw_cdf(beta, -10.0).unwrap().value <= 1e-3);
        assert!(tw_cdf(beta, 8.0).unwrap().value >= 1.0 - 1e-3);
    }
}

#[test]
fn finite_laws_satisfy_cdf_axioms() {
    for (n, spec) in [
        (10, CenteringSpec::gue_theorem()),
        (9, CenteringSpec::goe_theorem()),
    ] {
        let v: Vec<f64> = grid(-8.0, 6.0, 0.25)
            .iter()
            .map(|&s| finite_cdf(n, &spec, s).unwrap().value)
            .collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]), "N = {n}");
        assert!(v.iter().all(|x| (-1e-9..=1.0 + 1e-9).contains(x)));
        assert!(finite_cdf(n, &spec, -10.0).unwrap().value <= 1e-3);
        assert!(finite_cdf(n, &spec, 8.0).unwrap().value >= 1.0 - 1e-3);
    }
}

#[test]
fn determinant_is_invariant_under_rescaling() {
    let spec = CenteringSpec::gue_theorem();
    let (mu, tau) = centering(&spec, 5).unwrap();
    let raw = GueKernel::new(5).unwrap();
    for s0 in [-3.0, -1.0, 1.5] {
        let rule = semi_infinite_rule_scaled(mu + tau * s0, 160, 4.0 * tau).unwrap();
        let unscaled = discretize_scalar(&raw, &rule).det();
        let scaled = finite_cdf(5, &spec, s0).unwrap().value;
        assert!(
            (unscaled - scaled).abs() < 1e-8,
            "s0 = {s0}: {unscaled} vs {scaled}"
        );
    }
}

#[test]
fn seiler_simon_bound_holds_for_discretisations() {
    for n in [8usize, 32] {
        let k = RescaledGueKernel::new(n, CenteringSpec::gue_theorem()).unwrap();
        for s0 in [-2.0, 0.0] {
            let rule = semi_infinite_rule(s0, 120).unwrap();
            let a = discretize_scalar(&k, &rule);
            let b = discretize_scalar(&AiryKernel, &rule);
            let diff = twedge::fredholm::trace_norm(&(&a.matrix - &b.matrix));
            let lhs = (a.det() - b.det()).abs();
            let rhs = diff * (a.trace_norm() + b.trace_norm() + 1.0).exp();
            assert!(lhs <= rhs, "N = {n}, s0 = {s0}: {lhs} > {rhs}");
        }
    }
}

#[test]
fn quantiles_invert_the_cdf() {
    for beta in [Beta::One, Beta::Two] {
        for a in [0.01, 0.3, 0.99] {
            let q = tw_quantile(beta, a).unwrap();
            assert!((tw_cdf(beta, q).unwrap().value - a).abs() <= 1e-8);
        }
    }
    let median = tw_quantile(Beta::Two, 0.5).unwrap();
    assert!((median + 1.804_912).abs() < 1e-5, "{median}");
    assert!((tw_quantile(Beta::One, 0.83).unwrap()).abs() < 0.15);
}

#[test]
fn goe_density_integrates_to_one() {
    let h = 0.05;
    let pts = grid(-10.0, 6.0, h);
    let f: Vec<f64> = pts
        .iter()
        .map(|&s| tw_density(Beta::One, s).unwrap())
        .collect();
    let n = f.len() - 1;
    // composite Simpson
    let mut total = f[0] + f[n];
    for (i, v) in f.iter().enumerate().take(n).skip(1) {
        total += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    total *= h / 3.0;
    assert!((total - 1.0).abs() <= 1e-3, "{total}");
}

#[test]
fn finite_examples() {
    let q = |a| tw_quantile(Beta::Two, a).unwrap();
    let v = finite_cdf(10, &CenteringSpec::gue_theorem(), q(0.1)).unwrap();
    assert!((v.value - 0.115).abs() <= 2e-3);
    let v = finite_cdf(2, &CenteringSpec::gue_averaged(), q(0.5)).unwrap();
    assert!((v.value - 0.538).abs() <= 2e-3);
    let v = finite_cdf(500, &CenteringSpec::gue_theorem(), q(0.9)).unwrap();
    assert!((v.value - 0.900).abs() <= 2e-3);
    let goe = finite_cdf(
        9,
        &CenteringSpec::goe_theorem(),
        tw_quantile(Beta::One, 0.5).unwrap(),
    )
    .unwrap();
    assert!((goe.value - 0.502).abs() <= 4e-3);
}
