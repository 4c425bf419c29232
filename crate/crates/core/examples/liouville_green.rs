//! The turning-point map and the O(N^-2/3) approach of the rescaled
//! oscillator function to Ai.

use twedge::lg::{lg_phi_approx, lg_zeta, lg_zeta_dot, rate_scan};
use twedge::specfun::airy;

fn main() {
    for xi in [0.5, 1.0, 1.5, 3.0] {
        println!(
            "zeta({xi}) = {:+.12}, zeta'({xi}) = {:.12}",
            lg_zeta(xi).unwrap(),
            lg_zeta_dot(xi).unwrap()
        );
    }

    println!("\nLG approximant vs Ai at N = 50");
    for s in [-4.0, -1.0, 0.0, 3.0] {
        println!(
            "  s = {s:+}: {:.10} vs {:.10}",
            lg_phi_approx(50, s).unwrap(),
            airy(s).0
        );
    }

    let grid: Vec<f64> = (0..=64).map(|i| -6.0 + 0.25 * i as f64).collect();
    println!(
        "\n{:>5} {:>12} {:>12} {:>12}",
        "N", "sup error", "x N^2/3", "x N^1/3"
    );
    for r in rate_scan(&[16, 32, 64, 128, 256], &grid).unwrap() {
        println!(
            "{:>5} {:>12.4e} {:>12.5} {:>12.5}",
            r.n,
            r.value_error,
            r.scaled_value(2.0 / 3.0),
            r.scaled_value(1.0 / 3.0)
        );
    }
}
