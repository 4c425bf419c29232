//! Exact finite-N largest-eigenvalue probabilities at the limiting
//! quantiles, for GUE (two centerings) and GOE.

use twedge::cli::{table, TableOptions};
use twedge::fredholm::{finite_cdf, tw_quantile, Beta};
use twedge::specfun::CenteringSpec;

fn main() {
    let t = table(
        1,
        &TableOptions {
            rows: Some(vec![2, 10, 100]),
            ..TableOptions::default()
        },
    )
    .unwrap();
    print!("{}", t.to_csv().unwrap());

    let s = tw_quantile(Beta::One, 0.5).unwrap();
    for (name, spec) in [
        ("theorem", CenteringSpec::goe_theorem()),
        ("tuned", CenteringSpec::goe_tuned(0.2, 1.0)),
    ] {
        let r = finite_cdf(9, &spec, s).unwrap();
        println!(
            "GOE, matrix size 10, {name} centering, P(s <= F1 median) = {:.6} (change on doubling nodes {:.1e})",
            r.value, r.convergence
        );
    }
}
