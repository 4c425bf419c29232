//! Harmonic-oscillator wave functions
//! `φ_k(x) = (2^k k! √π)^{-1/2} H_k(x) e^{-x²/2}`, their derivatives and
//! their right-tail integrals.
//!
//! Values come from the normalised three-term recurrence, with the Gaussian
//! factor kept as a separate logarithm and the running values renormalised
//! so that neither under- nor overflow occurs for `k` up to `10^6`.

use std::f64::consts::PI;

/// Largest supported index.
pub const MAX_INDEX: usize = 1_000_000;

const RESCALE: f64 = 1e150;
const LN_RESCALE: f64 = 345.387_763_949_107; // ln(1e150)

fn pi_quarter_inv() -> f64 {
    PI.powf(-0.25)
}

/// Iterates `φ_0(x), φ_1(x), ...` calling `visit(k, φ_k)`; stops after `kmax`.
fn walk(kmax: usize, x: f64, mut visit: impl FnMut(usize, f64)) {
    let mut prev = 0.0;
    let mut cur = pi_quarter_inv();
    let mut log_scale = -0.5 * x * x;
    visit(0, descale(cur, log_scale));
    for j in 0..kmax {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += LN_RESCALE;
        }
        visit(j + 1, descale(cur, log_scale));
    }
}

fn descale(v: f64, log_scale: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let r = v.signum() * (v.abs().ln() + log_scale).exp();
    if r.abs() < f64::MIN_POSITIVE {
        0.0
    } else {
        r
    }
}

/// `φ_k(x)`.
pub fn oscillator_phi(k: usize, x: f64) -> f64 {
    oscillator_pair(k, x).1
}

/// `(φ_{k-1}(x), φ_k(x))`, with `φ_{-1} = 0`.
pub fn oscillator_pair(k: usize, x: f64) -> (f64, f64) {
    debug_assert!(k <= MAX_INDEX);
    let mut out = (0.0, 0.0);
    walk(k, x, |j, v| {
        if j + 1 == k {
            out.0 = v;
        }
        if j == k {
            out.1 = v;
        }
    });
    out
}

/// `φ_k'(x) = -x φ_k(x) + √(2k) φ_{k-1}(x)`.
pub fn oscillator_phi_prime(k: usize, x: f64) -> f64 {
    let (pm, p) = oscillator_pair(k, x);
    -x * p + (2.0 * k as f64).sqrt() * pm
}

/// `[φ_0(x), ..., φ_{kmax}(x)]`.
pub fn oscillator_table(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; kmax + 1];
    walk(kmax, x, |j, v| out[j] = v);
    out
}

/// `[φ_0'(x), ..., φ_{kmax}'(x)]` from a table of values `φ_0..φ_{kmax}`.
pub fn oscillator_derivatives(phi: &[f64], x: f64) -> Vec<f64> {
    phi.iter()
        .enumerate()
        .map(|(k, &p)| {
            let lower = if k == 0 { 0.0 } else { phi[k - 1] };
            -x * p + (2.0 * k as f64).sqrt() * lower
        })
        .collect()
}

/// Right-tail integrals `[I_0(x), ..., I_{kmax}(x)]` with `I_k(x) = ∫_x^∞ φ_k`.
///
/// Uses `I_{k+1} = √(k/(k+1)) I_{k-1} + √(2/(k+1)) φ_k(x)`, seeded with the
/// complementary error function and `I_1 = √2 φ_0(x)`.
pub fn oscillator_tail_integrals(kmax: usize, x: f64) -> Vec<f64> {
    let phi = oscillator_table(kmax, x);
    tail_integrals_from_table(&phi, x)
}

/// As [`oscillator_tail_integrals`], reusing an existing table `φ_0..φ_{kmax}`.
pub fn tail_integrals_from_table(phi: &[f64], x: f64) -> Vec<f64> {
    let kmax = phi.len().saturating_sub(1);
    let mut out = vec![0.0; kmax + 1];
    if phi.is_empty() {
        return out;
    }
    out[0] = pi_quarter_inv() * (PI / 2.0).sqrt() * libm::erfc(x / std::f64::consts::SQRT_2);
    if kmax >= 1 {
        out[1] = std::f64::consts::SQRT_2 * phi[0];
    }
    for k in 1..kmax {
        let kf = k as f64;
        out[k + 1] = (kf / (kf + 1.0)).sqrt() * out[k - 1] + (2.0 / (kf + 1.0)).sqrt() * phi[k];
    }
    out
}

/// `∫_ℝ φ_k`; zero for odd `k`.
pub fn oscillator_integral_total(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let mut t = (2.0 * PI).sqrt() * pi_quarter_inv();
    let mut j = 0;
    while j < k {
        let jf = (j + 1) as f64;
        t *= (jf / (jf + 1.0)).sqrt();
        j += 2;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: physicists' Hermite polynomials in extended range
    /// via the unnormalised recurrence, for small `k`.
    fn phi_direct(k: usize, x: f64) -> f64 {
        let mut h0 = 1.0;
        let mut h1 = 2.0 * x;
        let hk = if k == 0 {
            h0
        } else {
            for j in 1..k {
                let h2 = 2.0 * x * h1 - 2.0 * j as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        };
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        hk * (-0.5 * x * x).exp() / (2f64.powi(k as i32) * fact * PI.sqrt()).sqrt()
    }

    #[test]
    fn small_index_values() {
        assert!((oscillator_phi(0, 0.0) - 0.751_125_544_464_942_5).abs() < 1e-15);
        assert_eq!(oscillator_phi(1, 0.0), 0.0);
        for k in 0..20 {
            for &x in &[-3.5, -1.0, 0.2, 1.7, 4.0] {
                let a = oscillator_phi(k, x);
                let b = phi_direct(k, x);
                assert!((a - b).abs() < 1e-13, "k={k} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn derivative_ladder_agrees() {
        for k in [0usize, 1, 5, 40] {
            for &x in &[-2.0, 0.0, 0.7, 3.1] {
                let down = oscillator_phi_prime(k, x);
                let up = x * oscillator_phi(k, x)
                    - (2.0 * (k + 1) as f64).sqrt() * oscillator_phi(k + 1, x);
                assert!((down - up).abs() < 1e-12);
                let h = 1e-5;
                let fd = (oscillator_phi(k, x + h) - oscillator_phi(k, x - h)) / (2.0 * h);
                assert!((down - fd).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn large_index_is_finite_and_bounded() {
        for &k in &[1000usize, 100_000, MAX_INDEX] {
            let edge = (2.0 * k as f64 + 1.0).sqrt();
            for &x in &[0.0, 0.5 * edge, edge, 1.2 * edge, 3.0 * edge] {
                let v = oscillator_phi(k, x);
                assert!(v.is_finite() && v.abs() < 1.0, "k={k} x={x}: {v}");
            }
        }
        // deep in the tail the value underflows to an exact zero
        assert_eq!(oscillator_phi(10, 60.0), 0.0);
    }

    #[test]
    fn normalisation_by_quadrature() {
        let rule = crate::fredholm::gauss_legendre(400).unwrap();
        for &k in &[0usize, 3, 17, 60] {
            let half = (2.0 * k as f64 + 1.0).sqrt() + 12.0;
            let norm: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(u, w)| {
                    let p = oscillator_phi(k, half * u);
                    w * half * p * p
                })
                .sum();
            assert!((norm - 1.0).abs() < 1e-12, "k={k}: {norm}");
        }
    }

    #[test]
    fn tail_integrals_match_quadrature() {
        let rule = crate::fredholm::gauss_legendre(300).unwrap();
        for &x in &[-9.0, -1.3, 0.0, 2.4] {
            let tails = oscillator_tail_integrals(30, x);
            for k in [0usize, 1, 2, 9, 30] {
                let upper = 16.0;
                let half = 0.5 * (upper - x);
                let mid = 0.5 * (upper + x);
                let q: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(u, w)| w * half * oscillator_phi(k, mid + half * u))
                    .sum();
                assert!(
                    (tails[k] - q).abs() < 1e-12,
                    "k={k} x={x}: {} vs {q}",
                    tails[k]
                );
            }
        }
    }

    #[test]
    fn totals_match_far_left_tail() {
        let tails = oscillator_tail_integrals(40, -40.0);
        for (k, t) in tails.iter().enumerate() {
            assert!((t - oscillator_integral_total(k)).abs() < 1e-12, "k={k}");
        }
        assert!((oscillator_integral_total(0) - 2f64.sqrt() * PI.powf(0.25)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn parity(k in 0usize..200, x in -30.0f64..30.0) {
            let a = oscillator_phi(k, x);
            let b = oscillator_phi(k, -x);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - sign * b).abs() <= 1e-12 * (1.0 + a.abs()));
        }

        #[test]
        fn table_matches_pointwise(k in 0usize..120, x in -20.0f64..20.0) {
            let t = oscillator_table(k, x);
            prop_assert_eq!(t[k], oscillator_phi(k, x));
        }
    }
}
