//! Right-tail integrals `∫_s^∞ f` and the diamond product
//! `(a ⋄ b)(s,t) = ∫_0^∞ a(s+z) b(t+z) dz`.

use std::sync::OnceLock;

use crate::fredholm::gauss_legendre;
use crate::{Error, Result};

/// Composite Gauss–Legendre integration of a decaying integrand over
/// `[s, ∞)`, panel by panel until the contributions are negligible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailIntegrator {
    /// Panel width.
    pub panel: f64,
    /// Nodes per panel.
    pub order: usize,
    /// Integration stops with an error if the tail is still significant
    /// after this many units.
    pub max_length: f64,
    /// Relative size below which a run of panels counts as negligible.
    pub tol: f64,
    /// Allowed change when the per-panel order is doubled.
    pub check: f64,
}

impl Default for TailIntegrator {
    fn default() -> Self {
        TailIntegrator {
            panel: 0.5,
            order: 16,
            max_length: 400.0,
            tol: 1e-18,
            check: 1e-8,
        }
    }
}

const QUIET_PANELS: usize = 8;

fn rule(order: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<[(Vec<f64>, Vec<f64>); 3]> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        [16usize, 32, 64].map(|m| {
            let q = gauss_legendre(m).expect("small order");
            (q.nodes, q.weights)
        })
    });
    match order {
        16 => &cache[0],
        32 => &cache[1],
        64 => &cache[2],
        _ => panic!("tail integrator order must be 16, 32 or 64"),
    }
}

impl TailIntegrator {
    fn pass(&self, f: &dyn Fn(f64) -> f64, s: f64, order: usize) -> Result<f64> {
        let (nodes, weights) = rule(order);
        let half = 0.5 * self.panel;
        let mut total = 0.0;
        let mut quiet = 0;
        let mut lo = s;
        while lo - s < self.max_length {
            let mid = lo + half;
            let contrib: f64 = nodes
                .iter()
                .zip(weights)
                .map(|(u, w)| w * half * f(mid + half * u))
                .sum();
            total += contrib;
            lo += self.panel;
            if contrib.abs() <= self.tol * total.abs() || contrib == 0.0 {
                quiet += 1;
                if quiet >= QUIET_PANELS {
                    return Ok(total);
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::Accuracy(format!(
            "tail integral from {s} still significant after {} units",
            self.max_length
        )))
    }

    /// `∫_s^∞ f`, checked by repeating with twice the nodes per panel.
    pub fn integrate(&self, f: &dyn Fn(f64) -> f64, s: f64) -> Result<f64> {
        let order = match self.order {
            16 | 32 => self.order,
            _ => {
                return Err(Error::Usage(
                    "tail integrator order must be 16 or 32".into(),
                ))
            }
        };
        let coarse = self.pass(f, s, order)?;
        let fine = self.pass(f, s, 2 * order)?;
        if (coarse - fine).abs() > self.check * fine.abs().max(1.0) {
            return Err(Error::Accuracy(format!(
                "tail integral from {s} not converged: {coarse} vs {fine}"
            )));
        }
        Ok(fine)
    }

    /// `(a ⋄ b)(s,t)`.
    pub fn diamond(
        &self,
        a: &dyn Fn(f64) -> f64,
        b: &dyn Fn(f64) -> f64,
        s: f64,
        t: f64,
    ) -> Result<f64> {
        self.integrate(&|z| a(s + z) * b(t + z), 0.0)
    }
}

/// `(a ⋄ b)(s,t) = ∫_0^∞ a(s+z) b(t+z) dz` with the default integrator.
pub fn diamond(a: &dyn Fn(f64) -> f64, b: &dyn Fn(f64) -> f64, s: f64, t: f64) -> Result<f64> {
    TailIntegrator::default().diamond(a, b, s, t)
}

/// `(ε̃f)(s) = ∫_s^∞ f` with the default integrator.
pub fn tail_integral(f: &dyn Fn(f64) -> f64, s: f64) -> Result<f64> {
    TailIntegrator::default().integrate(f, s)
}
