//! Monte Carlo estimates from the dense and tridiagonal samplers.

use twedge::cli::TABLE_ALPHAS;
use twedge::ensembles::{
    ks_critical, ks_statistic, largest_eigenvalue_sample, mc_cdf, Model, SampleConfig,
};
use twedge::specfun::{CenteringSpec, Ensemble};

fn main() {
    let reps = 50_000;
    for size in [2usize, 10, 100] {
        let cfg = SampleConfig::new(Ensemble::Goe, size, 1, reps);
        let est = mc_cdf(&cfg, &CenteringSpec::goe_theorem(), &TABLE_ALPHAS).unwrap();
        let cells: Vec<String> = est.p_hat.iter().map(|p| format!("{p:.3}")).collect();
        println!("GOE {size:>3} ({:?}): {}", cfg.model, cells.join(" "));
    }

    let base = SampleConfig::new(Ensemble::Gue, 8, 2, reps);
    let a = largest_eigenvalue_sample(&base.with_model(Model::Dense)).unwrap();
    let mut other = base.with_model(Model::Tridiagonal);
    other.seed = 3;
    let b = largest_eigenvalue_sample(&other).unwrap();
    println!(
        "\nGUE n = 8, dense vs tridiagonal: KS = {:.4}, 5% critical value {:.4}",
        ks_statistic(&a, &b),
        ks_critical(reps, reps, 0.05)
    );
}
