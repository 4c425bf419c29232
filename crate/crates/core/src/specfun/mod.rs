//! Special functions and scalar constants: the Airy function, oscillator
//! wave functions, per-degree constants and centering/scaling choices.

mod airy;
mod hermite;

pub use airy::{
    airy, airy_ai, airy_ai_prime, airy_ai_second, airy_tail_integral, AI_PRIME_ZERO, AI_ZERO,
};
pub use hermite::{
    oscillator_derivatives, oscillator_integral_total, oscillator_pair, oscillator_phi,
    oscillator_phi_prime, oscillator_table, oscillator_tail_integrals, tail_integrals_from_table,
    MAX_INDEX,
};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Gaussian ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ensemble {
    /// Unitary ensemble, β = 2.
    Gue,
    /// Orthogonal ensemble, β = 1.
    Goe,
}

impl Ensemble {
    /// Dyson index.
    pub fn beta(self) -> u8 {
        match self {
            Ensemble::Gue => 2,
            Ensemble::Goe => 1,
        }
    }
}

/// Which centering constant `μ_N` (and scale `τ_N`) to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `√(2N)` for GUE, `√(2N+1)` for GOE.
    Theorem,
    /// `(√(2N−1) + √(2N+1))/2`, GUE only.
    Averaged,
    /// `(2N₊ − γN₊^{−1/3})^{1/2}` with `τ = 2^{−1/2}(N+c)^{−1/6}`, GOE only.
    Tuned,
}

/// Ensemble plus centering variant, with the tuning constants of the GOE
/// variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenteringSpec {
    pub ensemble: Ensemble,
    pub variant: Variant,
    pub gamma: f64,
    pub c: f64,
}

impl CenteringSpec {
    pub const DEFAULT_GAMMA: f64 = 0.2;
    pub const DEFAULT_C: f64 = 1.0;

    /// Builds a spec with the default tuning constants; fails on
    /// incompatible ensemble/variant pairs.
    pub fn new(ensemble: Ensemble, variant: Variant) -> Result<Self> {
        let spec = CenteringSpec {
            ensemble,
            variant,
            gamma: Self::DEFAULT_GAMMA,
            c: Self::DEFAULT_C,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gue_theorem() -> Self {
        Self::new(Ensemble::Gue, Variant::Theorem).unwrap()
    }

    pub fn gue_averaged() -> Self {
        Self::new(Ensemble::Gue, Variant::Averaged).unwrap()
    }

    pub fn goe_theorem() -> Self {
        Self::new(Ensemble::Goe, Variant::Theorem).unwrap()
    }

    pub fn goe_tuned(gamma: f64, c: f64) -> Self {
        CenteringSpec {
            ensemble: Ensemble::Goe,
            variant: Variant::Tuned,
            gamma,
            c,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.ensemble, self.variant) {
            (Ensemble::Goe, Variant::Averaged) => Err(Error::Usage(
                "averaged centering is defined only for GUE".into(),
            )),
            (Ensemble::Gue, Variant::Tuned) => Err(Error::Usage(
                "tuned centering is defined only for GOE".into(),
            )),
            _ if !self.gamma.is_finite() || !self.c.is_finite() => {
                Err(Error::Usage("tuning constants must be finite".into()))
            }
            _ => Ok(()),
        }
    }
}

/// `(μ_N, τ_N)` for the given spec.
pub fn centering(spec: &CenteringSpec, n: usize) -> Result<(f64, f64)> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let nf = n as f64;
    let tau = std::f64::consts::FRAC_1_SQRT_2 * nf.powf(-1.0 / 6.0);
    Ok(match (spec.ensemble, spec.variant) {
        (Ensemble::Gue, Variant::Theorem) => ((2.0 * nf).sqrt(), tau),
        (Ensemble::Gue, Variant::Averaged) => (
            0.5 * ((2.0 * nf - 1.0).sqrt() + (2.0 * nf + 1.0).sqrt()),
            tau,
        ),
        (Ensemble::Goe, Variant::Theorem) => ((2.0 * nf + 1.0).sqrt(), tau),
        (Ensemble::Goe, Variant::Tuned) => {
            let np = nf + 0.5;
            let mu2 = 2.0 * np - spec.gamma * np.powf(-1.0 / 3.0);
            if mu2 <= 0.0 || nf + spec.c <= 0.0 {
                return Err(Error::Domain("tuned centering out of range".into()));
            }
            (
                mu2.sqrt(),
                std::f64::consts::FRAC_1_SQRT_2 * (nf + spec.c).powf(-1.0 / 6.0),
            )
        }
        _ => unreachable!("validated above"),
    })
}

/// Per-degree constants of the oscillator functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveContext {
    pub n: usize,
    /// `√(2N+1)`.
    pub u_n: f64,
    /// `√(2N−1)`.
    pub u_nm1: f64,
    /// `2^{−1/2} N^{−1/6}`.
    pub tau_n: f64,
    /// `(u_N − u_{N−1})/τ_N`.
    pub delta_n: f64,
    /// `½ ∫ ψ_τ`; available only when `N − 1` is even.
    pub beta_nm1: Option<f64>,
    /// `2N+1`.
    pub kappa_n: f64,
    /// `2N−1`.
    pub kappa_nm1: f64,
}

/// Constants for degree `N ≥ 1`.
pub fn wave_context(n: usize) -> Result<WaveContext> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let nf = n as f64;
    let u_n = (2.0 * nf + 1.0).sqrt();
    let u_nm1 = (2.0 * nf - 1.0).sqrt();
    let tau_n = std::f64::consts::FRAC_1_SQRT_2 * nf.powf(-1.0 / 6.0);
    // u_N − u_{N−1} = 2/(u_N + u_{N−1}) without cancellation
    let delta_n = 2.0 / (u_n + u_nm1) / tau_n;
    Ok(WaveContext {
        n,
        u_n,
        u_nm1,
        tau_n,
        delta_n,
        beta_nm1: beta_nm1(n),
        kappa_n: 2.0 * nf + 1.0,
        kappa_nm1: 2.0 * nf - 1.0,
    })
}

/// `(πN/2)^{1/4} √((N−1)!) / (2^{(N−1)/2} ((N−1)/2)!)` for odd `N`.
fn beta_nm1(n: usize) -> Option<f64> {
    if n == 0 || !(n - 1).is_multiple_of(2) {
        return None;
    }
    let nf = n as f64;
    let m = nf - 1.0;
    let log = 0.25 * (std::f64::consts::PI * nf / 2.0).ln() + 0.5 * libm::lgamma(m + 1.0)
        - 0.5 * m * std::f64::consts::LN_2
        - libm::lgamma(m / 2.0 + 1.0);
    Some(log.exp())
}
