//! Airy function, oscillator wave functions and the edge scaling that links
//! them.

use twedge::specfun::{airy, airy_tail_integral, oscillator_phi, wave_context};

fn main() {
    println!(
        "{:>6} {:>22} {:>22} {:>22}",
        "x", "Ai", "Ai'", "int_x^inf Ai"
    );
    for x in [-8.0, -2.0, 0.0, 2.0, 8.0] {
        let (a, ap) = airy(x);
        println!(
            "{x:>6} {a:>22.15e} {ap:>22.15e} {:>22.15e}",
            airy_tail_integral(x)
        );
    }

    // near the turning point, phi_N looks like a scaled Airy function
    println!(
        "\n{:>6} {:>8} {:>14} {:>14}",
        "N", "s", "scaled phi_N", "Ai(s)"
    );
    for n in [10usize, 100, 1000] {
        let ctx = wave_context(n).unwrap();
        for s in [-2.0, 0.0, 2.0] {
            let x = ctx.u_n + ctx.tau_n * s;
            let v = (2.0 * n as f64).powf(0.25) * ctx.tau_n * oscillator_phi(n, x);
            println!("{n:>6} {s:>8} {v:>14.8} {:>14.8}", airy(s).0);
        }
    }
}
