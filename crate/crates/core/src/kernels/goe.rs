//! GOE kernels: the scalar kernel `S_{N+1,1}`, and the 2×2 matrix kernels
//! `K_τ` (finite N, matrix size `N+1`) and `K_GOE` (edge limit).
//!
//! Both matrix kernels share one layout. With a core
//! `C(s,t) = S(s,t) − ½φ(s)(ε̃ψ)(t)`:
//!
//! ```text
//! (1,1) = C(s,t) + ½β φ(s)
//! (1,2) = −∂_t S(s,t) − ½φ(s)ψ(t)
//! (2,1) = −ε̃₁S(s,t) + ½(ε̃φ)(s)(ε̃ψ)(t) − ½β(ε̃φ)(s) + ½β(ε̃φ)(t) − ε(s−t)
//! (2,2) = C(t,s) + ½β φ(t)
//! ```
//!
//! In the limit `φ = ψ = Ai`, `β = 1` and `S = S_A`.

use nalgebra::DMatrix;

use super::edge::{dt_matrix, kernel_matrix, tail_first_matrix};
use super::{
    airy_kernel, airy_kernel_dt, airy_kernel_tail_first, gue_kernel, GueMethod, KernelBlocks,
    KernelMeta, MatrixKernel2, TailIntegrator,
};
use crate::specfun::{
    airy, airy_tail_integral, centering, oscillator_derivatives, oscillator_pair, oscillator_table,
    tail_integrals_from_table, wave_context, CenteringSpec, Ensemble,
};
use crate::{Error, Result};

fn check_parity(n: usize) -> Result<f64> {
    if n == 0 || !(n - 1).is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "GOE kernels need N − 1 even (matrix size N + 1 even), got N = {n}"
        )));
    }
    Ok(wave_context(n)?.beta_nm1.expect("N − 1 even"))
}

/// `(εψ)(y) = β_{N−1} − (ε̃ψ)(y)` with `ψ = (2N)^{1/4}φ_{N−1}`,
/// `ε(x) = ½ sgn x` and `y` the physical argument.
pub fn eps_psi(n: usize, y: f64) -> Result<f64> {
    let beta = check_parity(n)?;
    let phi = oscillator_table(n - 1, y);
    let tails = tail_integrals_from_table(&phi, y);
    Ok(beta - (2.0 * n as f64).powf(0.25) * tails[n - 1])
}

/// `S_{N+1,1}(x,y) = S_{N,2}(x,y) + ½φ(x)(εψ)(y)`, `φ = (2N)^{1/4}φ_N`.
pub fn goe_scalar_kernel(n: usize, x: f64, y: f64) -> Result<f64> {
    let e = eps_psi(n, y)?;
    let c = (2.0 * n as f64).powf(0.25);
    Ok(gue_kernel(n, x, y, GueMethod::Cd)? + 0.5 * c * oscillator_pair(n, x).1 * e)
}

/// `Σ_{k≤N} φ_k(x)φ_k(y) + √((N+1)/2) φ_N(x)(εφ_{N+1})(y)`, with the
/// `ε` convolution done by direct quadrature on both sides of `y`.
pub fn goe_scalar_kernel_direct(n: usize, x: f64, y: f64) -> Result<f64> {
    check_parity(n)?;
    let a = oscillator_table(n, x);
    let b = oscillator_table(n, y);
    let sum: f64 = a.iter().zip(&b).map(|(p, q)| p * q).sum();
    let t = TailIntegrator::default();
    let f = |u: f64| oscillator_pair(n + 1, u).1;
    let right = t.integrate(&f, y)?;
    let left = t.integrate(&|u: f64| f(-u), -y)?;
    let eps = 0.5 * (left - right);
    Ok(sum + (0.5 * (n as f64 + 1.0)).sqrt() * a[n] * eps)
}

/// Finite-N matrix kernel `K_τ` at centering `(μ, τ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoeFiniteKernel {
    pub n: usize,
    pub spec: CenteringSpec,
    pub mu: f64,
    pub tau: f64,
    pub beta: f64,
}

/// `K_τ` for `N − 1` even and a GOE centering.
pub fn goe_matrix_kernel_finite(n: usize, spec: &CenteringSpec) -> Result<GoeFiniteKernel> {
    let beta = check_parity(n)?;
    if spec.ensemble != Ensemble::Goe {
        return Err(Error::Usage("K_tau needs a GOE centering".into()));
    }
    let (mu, tau) = centering(spec, n)?;
    Ok(GoeFiniteKernel {
        n,
        spec: *spec,
        mu,
        tau,
        beta,
    })
}

/// Per-point ingredients of `K_τ`.
struct Point {
    /// `φ_0..φ_N`.
    phi: Vec<f64>,
    /// `φ_0'..φ_{N−1}'`.
    dphi: Vec<f64>,
    /// `I_0..I_N`.
    tail: Vec<f64>,
}

impl GoeFiniteKernel {
    fn point(&self, s: f64) -> Point {
        let x = self.mu + self.tau * s;
        let phi = oscillator_table(self.n, x);
        let mut dphi = oscillator_derivatives(&phi, x);
        dphi.truncate(self.n);
        let tail = tail_integrals_from_table(&phi, x);
        Point { phi, dphi, tail }
    }

    fn c(&self) -> f64 {
        (2.0 * self.n as f64).powf(0.25)
    }

    /// `(φ_τ, ψ_τ, ε̃φ_τ, ε̃ψ_τ)` at a point.
    fn waves(&self, p: &Point) -> (f64, f64, f64, f64) {
        let c = self.c();
        let n = self.n;
        (
            c * self.tau * p.phi[n],
            c * self.tau * p.phi[n - 1],
            c * p.tail[n],
            c * p.tail[n - 1],
        )
    }

    fn assemble(&self, s: &Point, t: &Point, i: usize, j: usize) -> f64 {
        let n = self.n;
        let dot =
            |a: &[f64], b: &[f64]| a[..n].iter().zip(&b[..n]).map(|(x, y)| x * y).sum::<f64>();
        let (phi_s, _, ephi_s, epsi_s) = self.waves(s);
        let (phi_t, psi_t, ephi_t, epsi_t) = self.waves(t);
        let b = self.beta;
        match (i, j) {
            (1, 1) => self.tau * dot(&s.phi, &t.phi) - 0.5 * phi_s * epsi_t + 0.5 * b * phi_s,
            (1, 2) => -self.tau * self.tau * dot(&s.phi, &t.dphi) - 0.5 * phi_s * psi_t,
            (2, 1) => {
                -dot(&s.tail, &t.phi) + 0.5 * ephi_s * epsi_t - 0.5 * b * ephi_s + 0.5 * b * ephi_t
            }
            (2, 2) => self.tau * dot(&t.phi, &s.phi) - 0.5 * phi_t * epsi_s + 0.5 * b * phi_t,
            _ => panic!("entry index out of range"),
        }
    }
}

impl MatrixKernel2 for GoeFiniteKernel {
    fn entry(&self, i: usize, j: usize, s: f64, t: f64) -> f64 {
        self.assemble(&self.point(s), &self.point(t), i, j)
    }

    fn has_eps_term(&self) -> bool {
        true
    }

    fn meta(&self) -> KernelMeta {
        KernelMeta {
            label: "K_tau",
            ensemble: Some(Ensemble::Goe),
            n: Some(self.n),
            centering: Some(self.spec),
        }
    }

    fn blocks(&self, nodes: &[f64]) -> KernelBlocks {
        let m = nodes.len();
        let n = self.n;
        let pts: Vec<Point> = nodes.iter().map(|&s| self.point(s)).collect();
        let p = DMatrix::from_fn(n, m, |k, i| pts[i].phi[k]);
        let d = DMatrix::from_fn(n, m, |k, i| pts[i].dphi[k]);
        let q = DMatrix::from_fn(n, m, |k, i| pts[i].tail[k]);
        let s = p.transpose() * &p * self.tau;
        let ds = p.transpose() * &d * (self.tau * self.tau);
        let e1s = q.transpose() * &p;
        let w: Vec<(f64, f64, f64, f64)> = pts.iter().map(|pt| self.waves(pt)).collect();
        let b = self.beta;
        let core = DMatrix::from_fn(m, m, |i, j| s[(i, j)] - 0.5 * w[i].0 * w[j].3);
        KernelBlocks {
            k11: DMatrix::from_fn(m, m, |i, j| core[(i, j)] + 0.5 * b * w[i].0),
            k12: DMatrix::from_fn(m, m, |i, j| -ds[(i, j)] - 0.5 * w[i].0 * w[j].1),
            k21: DMatrix::from_fn(m, m, |i, j| {
                -e1s[(i, j)] + 0.5 * w[i].2 * w[j].3 - 0.5 * b * w[i].2 + 0.5 * b * w[j].2
            }),
            k22: DMatrix::from_fn(m, m, |i, j| core[(j, i)] + 0.5 * b * w[j].0),
        }
    }
}

/// Edge-limit matrix kernel `K_GOE`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GoeLimitKernel;

/// `K_GOE`.
pub fn goe_matrix_kernel_limit() -> GoeLimitKernel {
    GoeLimitKernel
}

impl MatrixKernel2 for GoeLimitKernel {
    fn entry(&self, i: usize, j: usize, s: f64, t: f64) -> f64 {
        let (a_s, a_t) = (airy(s).0, airy(t).0);
        let (e_s, e_t) = (airy_tail_integral(s), airy_tail_integral(t));
        match (i, j) {
            (1, 1) => airy_kernel(s, t) - 0.5 * a_s * e_t + 0.5 * a_s,
            (1, 2) => -airy_kernel_dt(s, t) - 0.5 * a_s * a_t,
            (2, 1) => -airy_kernel_tail_first(s, t) + 0.5 * e_s * e_t - 0.5 * e_s + 0.5 * e_t,
            (2, 2) => airy_kernel(t, s) - 0.5 * a_t * e_s + 0.5 * a_t,
            _ => panic!("entry index out of range"),
        }
    }

    fn has_eps_term(&self) -> bool {
        true
    }

    fn meta(&self) -> KernelMeta {
        KernelMeta::limit("K_GOE", Ensemble::Goe)
    }

    fn blocks(&self, nodes: &[f64]) -> KernelBlocks {
        let m = nodes.len();
        let vals: Vec<(f64, f64)> = nodes.iter().map(|&s| airy(s)).collect();
        let e: Vec<f64> = nodes.iter().map(|&s| airy_tail_integral(s)).collect();
        let sa = kernel_matrix(nodes, &vals);
        let dt = dt_matrix(nodes, &vals);
        let e1 = tail_first_matrix(nodes);
        let a = |i: usize| vals[i].0;
        let core = DMatrix::from_fn(m, m, |i, j| sa[(i, j)] - 0.5 * a(i) * e[j]);
        KernelBlocks {
            k11: DMatrix::from_fn(m, m, |i, j| core[(i, j)] + 0.5 * a(i)),
            k12: DMatrix::from_fn(m, m, |i, j| -dt[(i, j)] - 0.5 * a(i) * a(j)),
            k21: DMatrix::from_fn(m, m, |i, j| {
                -e1[(i, j)] + 0.5 * e[i] * e[j] - 0.5 * e[i] + 0.5 * e[j]
            }),
            k22: DMatrix::from_fn(m, m, |i, j| core[(j, i)] + 0.5 * a(j)),
        }
    }
}
