//! The Airy kernel `S_A(s,t) = ∫_0^∞ Ai(s+z)Ai(t+z) dz`, its derivative in
//! the second slot and its right-tail integral in the first slot.

use std::sync::OnceLock;

use nalgebra::DMatrix;

use super::{near_diagonal, KernelMeta, ScalarKernel};
use crate::fredholm::{semi_infinite_rule, QuadratureRule};
use crate::specfun::{airy, airy_tail_integral, Ensemble};

/// `S_A(s,t)` in Christoffel–Darboux form; the diagonal is
/// `Ai'(s)² − s Ai(s)²`.
pub fn airy_kernel(s: f64, t: f64) -> f64 {
    cd(s, airy(s), t, airy(t))
}

fn cd(s: f64, a: (f64, f64), t: f64, b: (f64, f64)) -> f64 {
    if near_diagonal(s, t) {
        let m = 0.5 * (s + t);
        let (ai, aip) = if s == t { a } else { airy(m) };
        return aip * aip - m * ai * ai;
    }
    (a.0 * b.1 - a.1 * b.0) / (s - t)
}

/// Below this separation `∂_t S_A` uses a local series.
const DT_SERIES: f64 = 0.05;

/// `∂_t S_A(s,t) = ∫_0^∞ Ai(s+z) Ai'(t+z) dz`.
///
/// Away from the diagonal this is the derivative of the closed form. Close
/// to it, with `t = s + h` and `Ai(s+h) = Σ a_k h^k` from the Airy
/// recurrence, the numerator `Ai(s)Ai'(t) − Ai'(s)Ai(t) = Σ c_k h^k` has
/// `c_0 = 0`, so `S_A = −Σ c_k h^{k−1}` differentiates term by term.
pub fn airy_kernel_dt(s: f64, t: f64) -> f64 {
    dt(s, airy(s), t, airy(t))
}

fn dt(s: f64, a: (f64, f64), t: f64, b: (f64, f64)) -> f64 {
    let h = t - s;
    if h.abs() < DT_SERIES {
        return dt_series(s, a, h);
    }
    let d = s - t;
    (a.0 * t * b.0 - a.1 * b.1) / d + (a.0 * b.1 - a.1 * b.0) / (d * d)
}

fn dt_series(s: f64, (ai, aip): (f64, f64), h: f64) -> f64 {
    const TERMS: usize = 40;
    let mut c = [0.0; TERMS + 2];
    c[0] = ai;
    c[1] = aip;
    for k in 0..TERMS {
        let prev = if k == 0 { 0.0 } else { c[k - 1] };
        c[k + 2] = (s * c[k] + prev) / ((k + 2) as f64 * (k + 1) as f64);
    }
    let mut sum = 0.0;
    let mut hp = 1.0;
    for k in 2..=TERMS {
        let ck = ai * (k + 1) as f64 * c[k + 1] - aip * c[k];
        let term = (k - 1) as f64 * ck * hp;
        sum += term;
        hp *= h;
        if k > 6 && term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    -sum
}

const TAIL_NODES: usize = 120;

fn tail_rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| semi_infinite_rule(0.0, TAIL_NODES).expect("valid rule"))
}

/// `(ε̃₁S_A)(s,t) = ∫_s^∞ S_A(u,t) du = ∫_0^∞ (ε̃Ai)(s+z) Ai(t+z) dz`.
pub fn airy_kernel_tail_first(s: f64, t: f64) -> f64 {
    tail_rule().integrate(|z| airy_tail_integral(s + z) * airy(t + z).0)
}

/// `(ε̃₁S_A)` on `nodes × nodes`, sharing the integrand samples.
pub(crate) fn tail_first_matrix(nodes: &[f64]) -> DMatrix<f64> {
    let q = tail_rule();
    let m = nodes.len();
    let k = q.len();
    let g = DMatrix::from_fn(m, k, |i, j| {
        q.weights[j] * airy_tail_integral(nodes[i] + q.nodes[j])
    });
    let h = DMatrix::from_fn(k, m, |j, i| airy(nodes[i] + q.nodes[j]).0);
    g * h
}

/// `S_A` as a kernel object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AiryKernel;

impl ScalarKernel for AiryKernel {
    fn eval(&self, s: f64, t: f64) -> f64 {
        airy_kernel(s, t)
    }

    fn meta(&self) -> KernelMeta {
        KernelMeta::limit("S_A", Ensemble::Gue)
    }

    fn matrix(&self, nodes: &[f64]) -> DMatrix<f64> {
        let vals: Vec<(f64, f64)> = nodes.iter().map(|&s| airy(s)).collect();
        DMatrix::from_fn(nodes.len(), nodes.len(), |i, j| {
            cd(nodes[i], vals[i], nodes[j], vals[j])
        })
    }
}

/// `∂_t S_A` on `nodes × nodes`.
pub(crate) fn dt_matrix(nodes: &[f64], vals: &[(f64, f64)]) -> DMatrix<f64> {
    DMatrix::from_fn(nodes.len(), nodes.len(), |i, j| {
        dt(nodes[i], vals[i], nodes[j], vals[j])
    })
}

/// `S_A` on `nodes × nodes` from precomputed `(Ai, Ai')`.
pub(crate) fn kernel_matrix(nodes: &[f64], vals: &[(f64, f64)]) -> DMatrix<f64> {
    DMatrix::from_fn(nodes.len(), nodes.len(), |i, j| {
        cd(nodes[i], vals[i], nodes[j], vals[j])
    })
}
