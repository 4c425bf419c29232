//! Nyström discretisation and Fredholm determinants of scalar and 2×2
//! block kernels on `(s₀, ∞)`.

use nalgebra::DMatrix;

use super::{semi_infinite_rule, QuadratureRule};
use crate::kernels::{MatrixKernel2, ScalarKernel};
use crate::{Error, Result};

/// Determinants whose halved-rule estimate differs by more than this are
/// flagged.
pub const CONVERGENCE_WARNING: f64 = 1e-6;

/// Block determinants below this are a numerical failure; between it and
/// zero they are clamped.
pub const NEGATIVE_GUARD: f64 = -1e-8;

/// Block row/column weight exponent used unless overridden.
pub const DEFAULT_GAMMA: f64 = 1.0;

/// Non-fatal conditions attached to a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    /// `|value_m − value_{m/2}|` exceeded the warning threshold.
    NotConverged,
    /// The evaluation point was moved into the supported range.
    Clamped,
    /// A slightly negative determinant was set to zero.
    NegativeClamped,
}

/// A determinant or distribution value with its convergence record.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfResult {
    pub value: f64,
    /// Nodes used for `value`.
    pub m: usize,
    /// `|value_m − value_{m/2}|`.
    pub convergence: f64,
    pub flags: Vec<Flag>,
}

impl CdfResult {
    pub fn is_flagged(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub(crate) fn flag(&mut self, flag: Flag) {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
    }
}

/// How the distributional `ε(s−t)` term of a block kernel is discretised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EpsRule {
    /// Exact integration of `ε(s_i − t)` against the degree `m−1`
    /// polynomial interpolant in the reference variable.
    #[default]
    ProductIntegration,
    /// `½ sgn(s_i − s_j)` at the nodes, zero on the diagonal.
    Sign,
}

/// A Nyström matrix together with the rule that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedOperator {
    /// `m×m` for a scalar kernel, `2m×2m` for a block kernel.
    pub matrix: DMatrix<f64>,
    pub rule: QuadratureRule,
    /// Block weight exponent `γ`; `None` for scalar kernels.
    pub gamma: Option<f64>,
}

impl DiscretizedOperator {
    /// `det(I − M)`.
    pub fn det(&self) -> f64 {
        let n = self.matrix.nrows();
        (DMatrix::identity(n, n) - &self.matrix).lu().determinant()
    }

    /// Sum of singular values.
    pub fn trace_norm(&self) -> f64 {
        trace_norm(&self.matrix)
    }
}

/// Sum of singular values of a matrix.
pub fn trace_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().singular_values().sum()
}

/// `√(w_i w_j) K(s_i, s_j)`.
pub fn discretize_scalar(kernel: &dyn ScalarKernel, rule: &QuadratureRule) -> DiscretizedOperator {
    let sw: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let mut k = kernel.matrix(&rule.nodes);
    for j in 0..k.ncols() {
        for i in 0..k.nrows() {
            k[(i, j)] *= sw[i] * sw[j];
        }
    }
    DiscretizedOperator {
        matrix: k,
        rule: rule.clone(),
        gamma: None,
    }
}

/// Legendre polynomials `P_0..P_m` at `u`.
fn legendre_all(m: usize, u: f64) -> Vec<f64> {
    let mut p = vec![0.0; m + 1];
    p[0] = 1.0;
    if m >= 1 {
        p[1] = u;
    }
    for k in 1..m {
        p[k + 1] = ((2 * k + 1) as f64 * u * p[k] - k as f64 * p[k - 1]) / (k + 1) as f64;
    }
    p
}

/// `E_ij ≈ ∫ ε(s_i − t) ℓ_j(t) dt` with `ℓ_j` the Lagrange basis, so that
/// `Σ_j E_ij f(s_j) ≈ ∫ ε(s_i − t) f(t) dt`.
fn eps_matrix(rule: &QuadratureRule, eps: EpsRule) -> DMatrix<f64> {
    let m = rule.len();
    match eps {
        EpsRule::Sign => DMatrix::from_fn(m, m, |i, j| {
            0.5 * (rule.nodes[i] - rule.nodes[j]).signum() * rule.weights[j] * f64::from(i != j)
        }),
        EpsRule::ProductIntegration => {
            let u = &rule.reference_nodes;
            let p: Vec<Vec<f64>> = u.iter().map(|&x| legendre_all(m, x)).collect();
            // ∫_u^1 P_k = −(P_{k+1} − P_{k−1})/(2k+1), and 1 − u for k = 0.
            let a = DMatrix::from_fn(m, m, |i, k| {
                if k == 0 {
                    1.0 - u[i]
                } else {
                    -(p[i][k + 1] - p[i][k - 1]) / (2 * k + 1) as f64
                }
            });
            let b = DMatrix::from_fn(m, m, |k, j| {
                (k as f64 + 0.5) * p[j][k] * rule.reference_weights[j]
            });
            let q = a * b;
            DMatrix::from_fn(m, m, |i, j| {
                0.5 * rule.weights[j] - q[(i, j)] * rule.jacobian[j]
            })
        }
    }
}

/// `2m×2m` Nyström matrix of a block kernel with row/column scalings
/// `r_i = e^{γ|s_i|/2}` (capped at `e^{300}`).
pub fn discretize_block2(
    kernel: &dyn MatrixKernel2,
    rule: &QuadratureRule,
    gamma: f64,
    eps: EpsRule,
) -> DiscretizedOperator {
    let m = rule.len();
    let sw: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let r: Vec<f64> = rule
        .nodes
        .iter()
        .map(|s| (gamma * s.abs() / 2.0).min(300.0).exp())
        .collect();
    let b = kernel.blocks(&rule.nodes);
    let e = kernel.has_eps_term().then(|| eps_matrix(rule, eps));
    let mut out = DMatrix::zeros(2 * m, 2 * m);
    for j in 0..m {
        for i in 0..m {
            let w = sw[i] * sw[j];
            let e_ij = e.as_ref().map_or(0.0, |e| sw[i] * e[(i, j)] / sw[j]);
            out[(i, j)] = r[i] * w * b.k11[(i, j)] / r[j];
            out[(i, m + j)] = r[i] * w * b.k12[(i, j)] * r[j];
            out[(m + i, j)] = (w * b.k21[(i, j)] - e_ij) / (r[i] * r[j]);
            out[(m + i, m + j)] = w * b.k22[(i, j)] * r[j] / r[i];
        }
    }
    DiscretizedOperator {
        matrix: out,
        rule: rule.clone(),
        gamma: Some(gamma),
    }
}

fn check_nodes(m: usize) -> Result<()> {
    if m < 16 {
        return Err(Error::Usage(format!(
            "at least 16 nodes are needed for a convergence estimate, got {m}"
        )));
    }
    Ok(())
}

fn finish(value: f64, half: f64, m: usize) -> CdfResult {
    let mut r = CdfResult {
        value,
        m,
        convergence: (value - half).abs(),
        flags: Vec::new(),
    };
    if r.convergence > CONVERGENCE_WARNING || !value.is_finite() {
        r.flag(Flag::NotConverged);
    }
    r
}

/// `det(I − K)` on `(s₀, ∞)` with `m` nodes, checked against `m/2`.
pub fn fredholm_det_scalar(kernel: &dyn ScalarKernel, s0: f64, m: usize) -> Result<CdfResult> {
    check_nodes(m)?;
    let det =
        |m| -> Result<f64> { Ok(discretize_scalar(kernel, &semi_infinite_rule(s0, m)?).det()) };
    Ok(finish(det(m)?, det(m / 2)?, m))
}

pub(crate) fn block_det(
    kernel: &dyn MatrixKernel2,
    s0: f64,
    m: usize,
    gamma: f64,
    eps: EpsRule,
) -> Result<(f64, bool)> {
    let d = discretize_block2(kernel, &semi_infinite_rule(s0, m)?, gamma, eps).det();
    if d < NEGATIVE_GUARD || d.is_nan() {
        return Err(Error::Numerical(format!(
            "block determinant {d} at s0 = {s0}, m = {m} is negative beyond the guard"
        )));
    }
    Ok((d.max(0.0), d < 0.0))
}

/// `det(I − K)` for a 2×2 block kernel on `(s₀, ∞)`; the distribution
/// value is its square root.
pub fn fredholm_det_block2(
    kernel: &dyn MatrixKernel2,
    s0: f64,
    m: usize,
    gamma: f64,
) -> Result<CdfResult> {
    fredholm_det_block2_with(kernel, s0, m, gamma, EpsRule::default())
}

/// [`fredholm_det_block2`] with an explicit `ε` discretisation.
pub fn fredholm_det_block2_with(
    kernel: &dyn MatrixKernel2,
    s0: f64,
    m: usize,
    gamma: f64,
    eps: EpsRule,
) -> Result<CdfResult> {
    check_nodes(m)?;
    if !(0.0..2.0).contains(&gamma) {
        return Err(Error::Usage(format!(
            "gamma must lie in [0, 2), got {gamma}"
        )));
    }
    let (v, neg) = block_det(kernel, s0, m, gamma, eps)?;
    let (h, _) = block_det(kernel, s0, m / 2, gamma, eps)?;
    let mut r = finish(v, h, m);
    if neg {
        r.flag(Flag::NegativeClamped);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fredholm::gauss_legendre;
    use crate::kernels::{goe_matrix_kernel_limit, AiryKernel, KernelMeta, RescaledGueKernel};
    use crate::specfun::{airy, CenteringSpec, Ensemble};

    struct Zero;

    impl ScalarKernel for Zero {
        fn eval(&self, _: f64, _: f64) -> f64 {
            0.0
        }
        fn meta(&self) -> KernelMeta {
            KernelMeta::limit("zero", Ensemble::Gue)
        }
    }

    /// `½Ai((s+t)/2 + s₀)` on `(0,∞)`; its determinant is `F₁(s₀)`.
    struct HalfAiry(f64);

    impl ScalarKernel for HalfAiry {
        fn eval(&self, s: f64, t: f64) -> f64 {
            0.5 * airy(0.5 * (s + t) + self.0).0
        }
        fn meta(&self) -> KernelMeta {
            KernelMeta::limit("half-airy", Ensemble::Goe)
        }
    }

    #[test]
    fn zero_kernel_has_unit_determinant() {
        let r = fredholm_det_scalar(&Zero, 0.0, 32).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.flags.is_empty());
        assert!(fredholm_det_scalar(&Zero, 0.0, 8).is_err());
    }

    #[test]
    fn airy_determinant_at_origin() {
        let r = fredholm_det_scalar(&AiryKernel, 0.0, 80).unwrap();
        assert!((r.value - 0.969_372_828_355_262).abs() < 1e-12);
        assert!(r.convergence < 1e-10);
    }

    #[test]
    fn scalar_eigenvalues_in_unit_interval() {
        let rule = semi_infinite_rule(-4.0, 60).unwrap();
        let k = RescaledGueKernel::new(6, CenteringSpec::gue_theorem()).unwrap();
        for op in [
            discretize_scalar(&AiryKernel, &rule),
            discretize_scalar(&k, &rule),
        ] {
            let ev = op.matrix.clone().symmetric_eigenvalues();
            assert!(
                ev.iter().all(|&l| (-1e-8..=1.0 + 1e-8).contains(&l)),
                "{ev}"
            );
        }
    }

    #[test]
    fn product_integration_matrix_is_exact_on_polynomials() {
        // ∫_{-1}^{1} ε(x_i − t) t³ dt = ½(x_i⁴/4 − 1/4) − ½(1/4 − x_i⁴/4) = (x_i⁴ − 1)/4.
        let mut rule = gauss_legendre(12).unwrap();
        rule.jacobian = vec![1.0; 12];
        let e = eps_matrix(&rule, EpsRule::ProductIntegration);
        for i in 0..12 {
            let x = rule.nodes[i];
            let v: f64 = (0..12).map(|j| e[(i, j)] * rule.nodes[j].powi(3)).sum();
            assert!((v - (x.powi(4) - 1.0) / 4.0).abs() < 1e-13);
        }
    }

    #[test]
    fn goe_limit_matches_half_airy_square() {
        for s0 in [-3.0, 0.0, 1.5] {
            let want = fredholm_det_scalar(&HalfAiry(s0), 0.0, 120)
                .unwrap()
                .value
                .powi(2);
            let got = fredholm_det_block2(&goe_matrix_kernel_limit(), s0, 80, 1.0).unwrap();
            assert!(
                (got.value - want).abs() < 1e-10,
                "s0={s0}: {} vs {want}",
                got.value
            );
            assert!(got.convergence < 1e-8);
        }
    }

    #[test]
    fn product_integration_beats_sign_rule() {
        let k = goe_matrix_kernel_limit();
        let want = fredholm_det_scalar(&HalfAiry(-2.0), 0.0, 120)
            .unwrap()
            .value
            .powi(2);
        let pi = fredholm_det_block2_with(&k, -2.0, 60, 1.0, EpsRule::ProductIntegration).unwrap();
        let sg = fredholm_det_block2_with(&k, -2.0, 60, 1.0, EpsRule::Sign).unwrap();
        assert!((pi.value - want).abs() * 100.0 < (sg.value - want).abs());
    }

    #[test]
    fn block_limit_right_tail_and_gamma_range() {
        let k = goe_matrix_kernel_limit();
        assert!((fredholm_det_block2(&k, 10.0, 40, 1.0).unwrap().value - 1.0).abs() < 1e-6);
        assert!(fredholm_det_block2(&k, 0.0, 40, 2.0).is_err());
    }

    #[test]
    fn block_limit_is_monotone() {
        let k = goe_matrix_kernel_limit();
        let vals: Vec<f64> = (-5..=3)
            .map(|s| {
                fredholm_det_block2(&k, s as f64, 120, 1.0)
                    .unwrap()
                    .value
                    .sqrt()
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]), "{vals:?}");
    }

    /// Off-diagonal blocks `e^{−(s+t)/2}`: on `(−2,∞)`, `det(I − M) = 1 − e⁴`.
    struct Negative;

    impl MatrixKernel2 for Negative {
        fn entry(&self, i: usize, j: usize, s: f64, t: f64) -> f64 {
            if i == j {
                0.0
            } else {
                (-(s + t) / 2.0).exp()
            }
        }
        fn has_eps_term(&self) -> bool {
            false
        }
        fn meta(&self) -> KernelMeta {
            KernelMeta::limit("rank-one", Ensemble::Goe)
        }
    }

    #[test]
    fn negative_determinant_is_an_error() {
        let r = fredholm_det_block2(&Negative, -2.0, 32, 0.0);
        assert!(matches!(r, Err(Error::Numerical(_))), "{r:?}");
    }
}
