use twedge::fredholm::{discretize_scalar, semi_infinite_rule};
use twedge::kernels::{tail_integral, AiryKernel};
use twedge::specfun::{airy, airy_tail_integral};

#[test]
fn tail_integration_is_linear() {
    let delta = 0.1;
    let v = tail_integral(&|x| airy(x).0 + delta * airy(x).1, 0.0).unwrap();
    let want = airy_tail_integral(0.0) - delta * airy(0.0).0;
    assert!((v - want).abs() <= 1e-12, "{v} vs {want}");
}

/// Hilbert–Schmidt and trace norms of `Ai ⋄ Ai` restricted to `(s0, ∞)`.
fn norms(s0: f64) -> (f64, f64) {
    let op = discretize_scalar(&AiryKernel, &semi_infinite_rule(s0, 120).unwrap());
    (op.matrix.norm(), op.trace_norm())
}

#[test]
fn airy_product_norms_decay_like_the_envelope() {
    // the constant has to cover every s0 above the lowest one, so it is
    // calibrated there
    let (hs0, tr0) = norms(0.0);
    let (c_hs, c_tr) = (2.0 * hs0, 2.0 * tr0);
    for s0 in [1.0, 2.0, 3.0] {
        let (hs, tr) = norms(s0);
        let env = (-2.0 * s0).exp() / 2.0;
        assert!(hs <= c_hs * env, "s0 = {s0}: {hs} > {}", c_hs * env);
        assert!(tr <= c_tr * env, "s0 = {s0}: {tr} > {}", c_tr * env);
        assert!(hs <= tr);
    }
}
