//! F2 and F1 by Fredholm determinants: values, quantiles and densities.

use twedge::fredholm::{tw_cdf, tw_density, tw_quantile, Beta};

fn main() {
    println!(
        "{:>5} {:>18} {:>18} {:>12} {:>12}",
        "s", "F2", "F1", "f2", "f1"
    );
    for s in [-6.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0] {
        let f2 = tw_cdf(Beta::Two, s).unwrap();
        let f1 = tw_cdf(Beta::One, s).unwrap();
        println!(
            "{s:>5} {:>18.15} {:>18.15} {:>12.8} {:>12.8}",
            f2.value,
            f1.value,
            tw_density(Beta::Two, s).unwrap(),
            tw_density(Beta::One, s).unwrap()
        );
    }

    println!("\n{:>6} {:>14} {:>14}", "alpha", "q2", "q1");
    for a in [0.01, 0.05, 0.5, 0.95, 0.99] {
        println!(
            "{a:>6} {:>14.9} {:>14.9}",
            tw_quantile(Beta::Two, a).unwrap(),
            tw_quantile(Beta::One, a).unwrap()
        );
    }
}
