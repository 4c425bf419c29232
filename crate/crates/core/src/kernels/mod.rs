//! Two-point kernels: finite-N GUE (three representations), its rescaled
//! form, the Airy kernel, the GOE scalar kernel and the 2×2 GOE matrix
//! kernels at finite N and in the edge limit.

mod edge;
mod goe;
mod gue;
mod tail;

pub use edge::{airy_kernel, airy_kernel_dt, airy_kernel_tail_first, AiryKernel};
pub use goe::{
    eps_psi, goe_matrix_kernel_finite, goe_matrix_kernel_limit, goe_scalar_kernel,
    goe_scalar_kernel_direct, GoeFiniteKernel, GoeLimitKernel,
};
pub use gue::{gue_kernel, rescaled_gue_kernel, GueKernel, GueMethod, RescaledGueKernel};
pub use tail::{diamond, tail_integral, TailIntegrator};

use nalgebra::DMatrix;

use crate::specfun::{CenteringSpec, Ensemble};

/// Descriptor carried by every kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMeta {
    pub label: &'static str,
    pub ensemble: Option<Ensemble>,
    pub n: Option<usize>,
    pub centering: Option<CenteringSpec>,
}

impl KernelMeta {
    pub fn limit(label: &'static str, ensemble: Ensemble) -> Self {
        KernelMeta {
            label,
            ensemble: Some(ensemble),
            n: None,
            centering: None,
        }
    }
}

/// A real two-point kernel `K(s,t)`.
pub trait ScalarKernel: Sync {
    fn eval(&self, s: f64, t: f64) -> f64;

    fn meta(&self) -> KernelMeta;

    /// `[K(x_i, x_j)]`; implementations may precompute per-node data.
    fn matrix(&self, nodes: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(nodes.len(), nodes.len(), |i, j| {
            self.eval(nodes[i], nodes[j])
        })
    }
}

/// The four smooth entries of a 2×2 block kernel at a set of nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBlocks {
    pub k11: DMatrix<f64>,
    pub k12: DMatrix<f64>,
    pub k21: DMatrix<f64>,
    pub k22: DMatrix<f64>,
}

/// A 2×2 matrix kernel. Entry `(2,1)` may additionally contain the
/// distributional term `−ε(s−t)`, `ε(x) = ½ sgn x`, which is not part of
/// [`MatrixKernel2::entry`] and is added at discretisation time.
pub trait MatrixKernel2: Sync {
    /// Smooth part of entry `(i, j)`, `i, j ∈ {1, 2}`.
    fn entry(&self, i: usize, j: usize, s: f64, t: f64) -> f64;

    /// Whether entry `(2,1)` carries `−ε(s−t)`.
    fn has_eps_term(&self) -> bool;

    fn meta(&self) -> KernelMeta;

    /// All four smooth entries on `nodes × nodes`.
    fn blocks(&self, nodes: &[f64]) -> KernelBlocks {
        let m = nodes.len();
        let f = |i, j| DMatrix::from_fn(m, m, |a, b| self.entry(i, j, nodes[a], nodes[b]));
        KernelBlocks {
            k11: f(1, 1),
            k12: f(1, 2),
            k21: f(2, 1),
            k22: f(2, 2),
        }
    }
}

/// Separation below which two arguments are treated as coincident.
pub(crate) fn near_diagonal(x: f64, y: f64) -> bool {
    (x - y).abs() < 1e-6 * (1.0 + x.abs())
}
