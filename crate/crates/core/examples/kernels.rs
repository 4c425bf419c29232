//! Correlation kernels: three forms of the GUE kernel, its edge limit, and
//! the GOE kernel as a rank-one correction.

use twedge::kernels::{
    airy_kernel, goe_scalar_kernel, goe_scalar_kernel_direct, gue_kernel, rescaled_gue_kernel,
    GueMethod,
};
use twedge::specfun::CenteringSpec;

fn main() {
    let (x, y) = (3.0, 3.1);
    for m in [GueMethod::Sum, GueMethod::Cd, GueMethod::Diamond] {
        println!(
            "S_5,2({x}, {y}) by {m:?}: {:.15}",
            gue_kernel(5, x, y, m).unwrap()
        );
    }

    println!("\nedge limit at (s, t) = (0.5, -0.5)");
    let spec = CenteringSpec::gue_averaged();
    for n in [10usize, 100, 1000] {
        let v = rescaled_gue_kernel(n, &spec, 0.5, -0.5).unwrap();
        println!("  N = {n:>4}: {v:.10}");
    }
    println!("  Airy:     {:.10}", airy_kernel(0.5, -0.5));

    println!("\nGOE kernel at N = 9");
    for (x, y) in [(4.0, 4.0), (1.0, -2.0), (-2.0, 1.0)] {
        println!(
            "  ({x:+}, {y:+}): {:.12} (direct {:.12})",
            goe_scalar_kernel(9, x, y).unwrap(),
            goe_scalar_kernel_direct(9, x, y).unwrap()
        );
    }
}
