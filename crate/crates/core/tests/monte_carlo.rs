use twedge::ensembles::{mc_cdf, mc_density, SampleConfig};
use twedge::fredholm::{finite_cdf, tw_density, Beta};
use twedge::specfun::{CenteringSpec, Ensemble};

const MILLION: usize = 1_000_000;

fn tuned() -> CenteringSpec {
    CenteringSpec::goe_tuned(0.2, 1.0)
}

#[test]
fn sampler_agrees_with_determinant_for_small_gue() {
    let spec = CenteringSpec::gue_theorem();
    let cfg = SampleConfig::new(Ensemble::Gue, 5, 11, 200_000);
    let alphas = [0.1, 0.5, 0.9];
    let est = mc_cdf(&cfg, &spec, &alphas).unwrap();
    for (i, paper) in [0.125, 0.526, 0.907].into_iter().enumerate() {
        let exact = finite_cdf(5, &spec, est.s_values[i]).unwrap().value;
        assert!((exact - paper).abs() <= 2e-3);
        assert!(
            (est.p_hat[i] - exact).abs() <= 4.0 * est.stderr[i],
            "alpha {}: {} vs {exact}",
            alphas[i],
            est.p_hat[i]
        );
    }
}

#[test]
fn gue_two_by_two_median() {
    let cfg = SampleConfig::new(Ensemble::Gue, 2, 3, MILLION);
    let est = mc_cdf(&cfg, &CenteringSpec::gue_theorem(), &[0.5]).unwrap();
    assert!(
        (est.p_hat[0] - 0.549).abs() <= 3.0 * est.stderr[0],
        "{}",
        est.p_hat[0]
    );
}

#[test]
fn goe_table_cells() {
    let cfg = SampleConfig::new(Ensemble::Goe, 10, 5, MILLION);
    let est = mc_cdf(&cfg, &CenteringSpec::goe_theorem(), &[0.5]).unwrap();
    assert!(
        (est.p_hat[0] - 0.502).abs() <= 3.0 * est.stderr[0],
        "{}",
        est.p_hat[0]
    );

    let cfg = SampleConfig::new(Ensemble::Goe, 2, 6, MILLION);
    let est = mc_cdf(&cfg, &tuned(), &[0.95]).unwrap();
    assert!(
        (est.p_hat[0] - 0.950).abs() <= 3.0 * est.stderr[0],
        "{}",
        est.p_hat[0]
    );
}

#[test]
fn density_histogram_matches_goe_law() {
    let cfg = SampleConfig::new(Ensemble::Goe, 2, 9, MILLION);
    let h = mc_density(&cfg, &tuned(), 100).unwrap();
    assert!(h.mass() >= 0.999, "{}", h.mass());
    assert!((-2.0..=0.0).contains(&h.mode()), "{}", h.mode());
    let l1: f64 = h
        .centres()
        .iter()
        .zip(&h.heights)
        .map(|(&s, &v)| (v - tw_density(Beta::One, s).unwrap()).abs() * h.width)
        .sum();
    assert!(l1 <= 0.08, "{l1}");
}

#[test]
fn estimates_are_reproducible() {
    let cfg = SampleConfig::new(Ensemble::Goe, 100, 42, 2_000);
    let a = mc_cdf(&cfg, &CenteringSpec::goe_theorem(), &[0.1, 0.9]).unwrap();
    let b = mc_cdf(&cfg, &CenteringSpec::goe_theorem(), &[0.1, 0.9]).unwrap();
    assert_eq!(a, b);
    for (p, se) in a.p_hat.iter().zip(&a.stderr) {
        assert!((se - (p * (1.0 - p) / a.reps as f64).sqrt()).abs() <= 1e-15);
    }
}
