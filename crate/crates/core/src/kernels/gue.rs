//! The GUE correlation kernel `S_{N,2}(x,y) = Σ_{k<N} φ_k(x)φ_k(y)` and its
//! edge rescaling `S_τ(s,t) = τ_N S_{N,2}(μ_N + τ_N s, μ_N + τ_N t)`.

use nalgebra::DMatrix;

use super::{near_diagonal, KernelMeta, ScalarKernel, TailIntegrator};
use crate::specfun::{centering, oscillator_pair, oscillator_table, CenteringSpec, Ensemble};
use crate::{Error, Result};

/// How to evaluate `S_{N,2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GueMethod {
    /// The defining `N`-term sum.
    Sum,
    /// Christoffel–Darboux closed form.
    Cd,
    /// `½∫_0^∞ [φ(x+z)ψ(y+z) + ψ(x+z)φ(y+z)] dz` with
    /// `φ = (2N)^{1/4}φ_N`, `ψ = (2N)^{1/4}φ_{N−1}`.
    Diamond,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("N must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Christoffel–Darboux evaluation from `(φ_{N−1}, φ_N)` at both points.
fn cd(n: usize, x: f64, px: (f64, f64), y: f64, py: (f64, f64)) -> f64 {
    let nf = n as f64;
    if near_diagonal(x, y) {
        let m = 0.5 * (x + y);
        let (pm1, p) = if x == y { px } else { oscillator_pair(n, m) };
        let xm = if x == y { x } else { m };
        return nf * (p * p + pm1 * pm1) - (2.0 * nf).sqrt() * xm * p * pm1;
    }
    (0.5 * nf).sqrt() * (px.1 * py.0 - px.0 * py.1) / (x - y)
}

/// `S_{N,2}(x, y)`.
pub fn gue_kernel(n: usize, x: f64, y: f64, method: GueMethod) -> Result<f64> {
    check_n(n)?;
    match method {
        GueMethod::Sum => {
            let a = oscillator_table(n - 1, x);
            let b = oscillator_table(n - 1, y);
            Ok(a.iter().zip(&b).map(|(p, q)| p * q).sum())
        }
        GueMethod::Cd => Ok(cd(n, x, oscillator_pair(n, x), y, oscillator_pair(n, y))),
        GueMethod::Diamond => {
            let c = (2.0 * n as f64).powf(0.25);
            let phi = |u: f64| c * oscillator_pair(n, u).1;
            let psi = |u: f64| c * oscillator_pair(n - 1, u).1;
            let t = TailIntegrator::default();
            let a = t.diamond(&phi, &psi, x, y)?;
            let b = t.diamond(&psi, &phi, x, y)?;
            Ok(0.5 * (a + b))
        }
    }
}

/// `S_{N,2}` in Christoffel–Darboux form, as a kernel object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GueKernel {
    pub n: usize,
}

impl GueKernel {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(GueKernel { n })
    }
}

fn cd_matrix(n: usize, xs: &[f64], scale: f64) -> DMatrix<f64> {
    let pairs: Vec<(f64, f64)> = xs.iter().map(|&x| oscillator_pair(n, x)).collect();
    DMatrix::from_fn(xs.len(), xs.len(), |i, j| {
        scale * cd(n, xs[i], pairs[i], xs[j], pairs[j])
    })
}

impl ScalarKernel for GueKernel {
    fn eval(&self, s: f64, t: f64) -> f64 {
        cd(
            self.n,
            s,
            oscillator_pair(self.n, s),
            t,
            oscillator_pair(self.n, t),
        )
    }

    fn meta(&self) -> KernelMeta {
        KernelMeta {
            label: "S_N2",
            ensemble: Some(Ensemble::Gue),
            n: Some(self.n),
            centering: None,
        }
    }

    fn matrix(&self, nodes: &[f64]) -> DMatrix<f64> {
        cd_matrix(self.n, nodes, 1.0)
    }
}

/// `S_τ(s,t) = τ_N S_{N,2}(μ_N + τ_N s, μ_N + τ_N t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledGueKernel {
    pub n: usize,
    pub spec: CenteringSpec,
    pub mu: f64,
    pub tau: f64,
}

impl RescaledGueKernel {
    pub fn new(n: usize, spec: CenteringSpec) -> Result<Self> {
        check_n(n)?;
        if spec.ensemble != Ensemble::Gue {
            return Err(Error::Usage(
                "rescaled GUE kernel needs a GUE centering".into(),
            ));
        }
        let (mu, tau) = centering(&spec, n)?;
        Ok(RescaledGueKernel { n, spec, mu, tau })
    }
}

impl ScalarKernel for RescaledGueKernel {
    fn eval(&self, s: f64, t: f64) -> f64 {
        let x = self.mu + self.tau * s;
        let y = self.mu + self.tau * t;
        self.tau
            * cd(
                self.n,
                x,
                oscillator_pair(self.n, x),
                y,
                oscillator_pair(self.n, y),
            )
    }

    fn meta(&self) -> KernelMeta {
        KernelMeta {
            label: "S_tau",
            ensemble: Some(Ensemble::Gue),
            n: Some(self.n),
            centering: Some(self.spec),
        }
    }

    fn matrix(&self, nodes: &[f64]) -> DMatrix<f64> {
        let xs: Vec<f64> = nodes.iter().map(|s| self.mu + self.tau * s).collect();
        cd_matrix(self.n, &xs, self.tau)
    }
}

/// `S_τ(s, t)` for a GUE centering.
pub fn rescaled_gue_kernel(n: usize, spec: &CenteringSpec, s: f64, t: f64) -> Result<f64> {
    Ok(RescaledGueKernel::new(n, *spec)?.eval(s, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::airy_kernel;
    use crate::specfun::wave_context;
    use proptest::prelude::*;

    #[test]
    fn single_term() {
        for m in [GueMethod::Sum, GueMethod::Cd] {
            let v = gue_kernel(1, 0.0, 0.0, m).unwrap();
            assert!((v - std::f64::consts::PI.powf(-0.5)).abs() < 1e-15);
        }
        assert!(gue_kernel(0, 0.0, 0.0, GueMethod::Sum).is_err());
    }

    #[test]
    fn representations_agree_at_example_point() {
        let s = gue_kernel(5, 3.0, 3.1, GueMethod::Sum).unwrap();
        let c = gue_kernel(5, 3.0, 3.1, GueMethod::Cd).unwrap();
        let d = gue_kernel(5, 3.0, 3.1, GueMethod::Diamond).unwrap();
        assert!((s - c).abs() < 1e-10);
        assert!((s - d).abs() < 1e-6);
    }

    #[test]
    fn representations_agree_on_grid() {
        for n in [3usize, 10] {
            let w = wave_context(n).unwrap();
            let edge = w.u_n + 6.0 * w.tau_n;
            for i in 0..7 {
                for j in 0..7 {
                    let x = -edge + 2.0 * edge * i as f64 / 6.0;
                    let y = -edge + 2.0 * edge * j as f64 / 6.0;
                    let s = gue_kernel(n, x, y, GueMethod::Sum).unwrap();
                    let c = gue_kernel(n, x, y, GueMethod::Cd).unwrap();
                    let d = gue_kernel(n, x, y, GueMethod::Diamond).unwrap();
                    assert!((s - c).abs() < 1e-10, "N={n} ({x},{y})");
                    assert!((s - d).abs() < 1e-6, "N={n} ({x},{y}): {s} vs {d}");
                }
            }
        }
    }

    #[test]
    fn near_diagonal_is_continuous() {
        let n = 40;
        for &x in &[-3.0, 0.5, 9.2] {
            let on = gue_kernel(n, x, x, GueMethod::Sum).unwrap();
            for h in [1e-9, 5e-7, 2e-6, 1e-5] {
                let c = gue_kernel(n, x, x + h, GueMethod::Cd).unwrap();
                let s = gue_kernel(n, x, x + h, GueMethod::Sum).unwrap();
                assert!(
                    (c - s).abs() < 1e-9 * (1.0 + on.abs()),
                    "x={x} h={h}: {c} vs {s}"
                );
            }
        }
    }

    #[test]
    fn matrix_matches_pointwise() {
        let k = RescaledGueKernel::new(7, CenteringSpec::gue_theorem()).unwrap();
        let nodes = [-2.0, -0.3, 0.0, 1.7];
        let m = k.matrix(&nodes);
        for i in 0..4 {
            for j in 0..4 {
                assert!((m[(i, j)] - k.eval(nodes[i], nodes[j])).abs() < 1e-15);
            }
        }
        assert!(RescaledGueKernel::new(7, CenteringSpec::goe_theorem()).is_err());
    }

    #[test]
    fn rescaled_kernel_approaches_airy() {
        let target = airy_kernel(0.0, 0.0);
        let mut last = f64::INFINITY;
        for n in [8usize, 32, 128] {
            let v = rescaled_gue_kernel(n, &CenteringSpec::gue_theorem(), 0.0, 0.0).unwrap();
            let err = (v - target).abs();
            assert!(err < last, "N={n}");
            last = err;
        }
    }

    proptest! {
        #[test]
        fn symmetric(s in -8.0f64..8.0, t in -8.0f64..8.0, n in 1usize..60) {
            let k = RescaledGueKernel::new(n, CenteringSpec::gue_averaged()).unwrap();
            prop_assert!((k.eval(s, t) - k.eval(t, s)).abs() <= 1e-10);
        }
    }
}
