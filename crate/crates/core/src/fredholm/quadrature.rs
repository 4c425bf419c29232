//! Gauss–Legendre rules and their maps to finite and semi-infinite intervals.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported Gauss–Legendre order.
pub const MAX_NODES: usize = 2000;

/// Scale `L` of the rational map `s = s₀ + L(1+u)/(1−u)`.
pub const SEMI_INFINITE_SCALE: f64 = 4.0;

/// Where the rule lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Domain {
    /// `[a, b]`, affine image of `[−1, 1]`.
    Finite { a: f64, b: f64 },
    /// `(s₀, ∞)` through `s = s₀ + L(1+u)/(1−u)`.
    SemiInfinite { s0: f64, scale: f64 },
}

/// Nodes and positive weights, plus the underlying Legendre nodes `u_i`,
/// weights and the map's Jacobian at each node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: Domain,
    /// Legendre nodes on `[−1, 1]` the rule was mapped from.
    pub reference_nodes: Vec<f64>,
    /// Legendre weights on `[−1, 1]`.
    pub reference_weights: Vec<f64>,
    /// `ds/du` at each node.
    pub jacobian: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// The same Legendre rule mapped affinely to `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> QuadratureRule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        QuadratureRule {
            nodes: self
                .reference_nodes
                .iter()
                .map(|u| mid + half * u)
                .collect(),
            weights: self.reference_weights.iter().map(|w| half * w).collect(),
            domain: Domain::Finite { a, b },
            reference_nodes: self.reference_nodes.clone(),
            reference_weights: self.reference_weights.clone(),
            jacobian: vec![half; self.len()],
        }
    }
}

/// `m`-point Gauss–Legendre rule on `[−1, 1]`, nodes ascending.
pub fn gauss_legendre(m: usize) -> Result<QuadratureRule> {
    if m == 0 || m > MAX_NODES {
        return Err(Error::Domain(format!(
            "Gauss-Legendre order must be in 1..={MAX_NODES}, got {m}"
        )));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    Ok(QuadratureRule {
        nodes: nodes.clone(),
        weights: weights.clone(),
        domain: Domain::Finite { a: -1.0, b: 1.0 },
        reference_nodes: nodes,
        reference_weights: weights,
        jacobian: vec![1.0; m],
    })
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 1..m {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let mf = m as f64;
    (p1, mf * (x * p1 - p0) / (x * x - 1.0))
}

/// `m`-point rule on `(s₀, ∞)` through `s = s₀ + L(1+u)/(1−u)`, `L = 4`.
pub fn semi_infinite_rule(s0: f64, m: usize) -> Result<QuadratureRule> {
    semi_infinite_rule_scaled(s0, m, SEMI_INFINITE_SCALE)
}

/// As [`semi_infinite_rule`] with an explicit scale `L > 0`.
pub fn semi_infinite_rule_scaled(s0: f64, m: usize, scale: f64) -> Result<QuadratureRule> {
    if m < 8 {
        return Err(Error::Domain(format!(
            "semi-infinite rule needs m >= 8, got {m}"
        )));
    }
    if !s0.is_finite() || scale.is_nan() || scale <= 0.0 {
        return Err(Error::Domain(
            "semi-infinite rule needs finite s0 and L > 0".into(),
        ));
    }
    let base = gauss_legendre(m)?;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut jacobian = Vec::with_capacity(m);
    for (&u, &w) in base.reference_nodes.iter().zip(&base.reference_weights) {
        let one_minus = 1.0 - u;
        let jac = 2.0 * scale / (one_minus * one_minus);
        nodes.push(s0 + scale * (1.0 + u) / one_minus);
        weights.push(w * jac);
        jacobian.push(jac);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        domain: Domain::SemiInfinite { s0, scale },
        reference_nodes: base.reference_nodes,
        reference_weights: base.reference_weights,
        jacobian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn midpoint_rule() {
        let q = gauss_legendre(1).unwrap();
        assert_eq!(q.nodes, vec![0.0]);
        assert!((q.weights[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn order_range() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(MAX_NODES + 1).is_err());
        let q = gauss_legendre(MAX_NODES).unwrap();
        assert!((q.weights.iter().sum::<f64>() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exactness_examples() {
        let q = gauss_legendre(5).unwrap();
        assert!((q.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-14);
        let q = gauss_legendre(64).unwrap();
        let want = std::f64::consts::E - (-1.0f64).exp();
        assert!((q.integrate(|x| (-x).exp()) - want).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_legendre_roots() {
        for m in [7usize, 100, 1000] {
            let q = gauss_legendre(m).unwrap();
            for w in q.nodes.windows(2) {
                assert!(w[0] < w[1]);
            }
            for &x in &q.nodes {
                let (p, d) = legendre_with_derivative(m, x);
                assert!((p / d).abs() < 1e-14, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn semi_infinite_examples() {
        let a = semi_infinite_rule(1.5, 48)
            .unwrap()
            .integrate(|x| (-(x - 1.5)).exp());
        assert!((a - 1.0).abs() < 1e-12);
        let b = semi_infinite_rule(1.5, 96)
            .unwrap()
            .integrate(|x| (-(x - 1.5)).exp());
        assert!((a - b).abs() < 1e-13);
        let ai = semi_infinite_rule(0.0, 96)
            .unwrap()
            .integrate(|z| crate::specfun::airy(z).0);
        assert!((ai - 1.0 / 3.0).abs() < 1e-10);
        assert!(semi_infinite_rule(0.0, 7).is_err());
    }

    #[test]
    fn affine_map() {
        let q = gauss_legendre(20).unwrap().on_interval(2.0, 5.0);
        assert!((q.weights.iter().sum::<f64>() - 3.0).abs() < 1e-12);
        assert!((q.integrate(|x| x * x) - 39.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn weights_positive_and_sum(m in 1usize..300) {
            let q = gauss_legendre(m).unwrap();
            prop_assert!(q.weights.iter().all(|&w| w > 0.0));
            prop_assert!((q.weights.iter().sum::<f64>() - 2.0).abs() < 1e-12);
        }

        #[test]
        fn exact_at_top_degree(m in 1usize..60) {
            // ∫_{-1}^{1} (1+x)^{2m-1} = 2^{2m}/(2m)
            let q = gauss_legendre(m).unwrap();
            let d = 2 * m - 1;
            let want = 2f64.powi(d as i32 + 1) / (d as f64 + 1.0);
            let got = q.integrate(|x| (1.0 + x).powi(d as i32));
            prop_assert!((got - want).abs() <= 1e-10 * want);
        }
    }
}
