//! Liouville–Green asymptotics of the oscillator functions near the upper
//! turning point: the map `ζ(ξ)`, the ratio `r(ξ)`, the constant `c_N`,
//! the leading Airy approximant and the shifted, rescaled waves
//! `φ_τ(s;k)` and `ψ_τ(s;l)`.

use serde::{Deserialize, Serialize};

use crate::specfun::{airy, oscillator_pair, wave_context};
use crate::{Error, Result};

/// `ζ̇(1) = 2^{1/3}`.
pub const ZETA_DOT_AT_ONE: f64 = 1.259_921_049_894_873_2;

/// Default lower end `s_L` for local bounds.
pub const S_LOWER: f64 = -6.0;

/// Taylor coefficients of `ζ(1+t) = Σ_{i≥1} a_i t^i`.
#[allow(clippy::excessive_precision)]
const ZETA_SERIES: [f64; 11] = [
    1.259_921_049_894_873_190_67e+00,
    1.259_921_049_894_873_190_67e-01,
    -1.439_909_771_308_426_483_79e-02,
    2.959_814_529_911_765_357_27e-03,
    -7.683_674_364_067_187_567_70e-04,
    2.277_163_999_971_103_984_86e-04,
    -7.363_016_532_116_176_051_26e-05,
    2.533_604_801_921_156_510_24e-05,
    -9.136_143_762_223_522_470_26e-06,
    3.417_220_532_907_719_066_65e-06,
    -1.316_239_456_254_413_516_90e-06,
];

/// Half-width of the interval about `ξ = 1` on which the series is used.
const SERIES_RADIUS: f64 = 0.05;

fn check_xi(xi: f64) -> Result<()> {
    if xi > 0.0 && xi.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "ξ must be positive and finite, got {xi}"
        )))
    }
}

fn zeta_series(t: f64) -> (f64, f64) {
    let mut z = 0.0;
    let mut dz = 0.0;
    for (i, a) in ZETA_SERIES.iter().enumerate().rev() {
        let p = (i + 1) as f64;
        z = z * t + a;
        dz = dz * t + p * a;
    }
    // z currently holds Σ a_i t^{i-1}
    (z * t, dz)
}

/// `ζ(ξ)` with `(2/3)ζ^{3/2} = ∫_1^ξ √(ξ'²−1) dξ'` (and the reflected
/// branch for `ξ < 1`).
pub fn lg_zeta(xi: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok(zeta_unchecked(xi))
}

fn zeta_unchecked(xi: f64) -> f64 {
    let t = xi - 1.0;
    if t.abs() < SERIES_RADIUS {
        return zeta_series(t).0;
    }
    if xi > 1.0 {
        let g = 0.5 * xi * (xi * xi - 1.0).sqrt() - 0.5 * xi.acosh();
        (1.5 * g).powf(2.0 / 3.0)
    } else {
        let g = 0.5 * (xi.acos() - xi * (1.0 - xi * xi).sqrt());
        -(1.5 * g).powf(2.0 / 3.0)
    }
}

/// `dζ/dξ = √(f(ξ)/ζ(ξ))` with `f(ξ) = ξ² − 1`; equals `2^{1/3}` at `ξ = 1`.
pub fn lg_zeta_dot(xi: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok(zeta_dot_unchecked(xi))
}

fn zeta_dot_unchecked(xi: f64) -> f64 {
    let t = xi - 1.0;
    if t.abs() < SERIES_RADIUS {
        return zeta_series(t).1;
    }
    ((xi * xi - 1.0) / zeta_unchecked(xi)).sqrt()
}

/// `r(ξ) = [ζ̇(ξ)/ζ̇(1)]^{−1/2}`.
pub fn lg_r(xi: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok((zeta_dot_unchecked(xi) / ZETA_DOT_AT_ONE).powf(-0.5))
}

/// `c_N = 2√π κ^{1/6} h_N^{−1/2} (2N₊)^{N/2} e^{−N₊/2} 2^{N−N₊}` with
/// `h_N = √π 2^N N!` and `N₊ = N + ½`.
pub fn lg_c_n(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    use std::f64::consts::{LN_2, PI};
    let nf = n as f64;
    let np = nf + 0.5;
    let kappa = 2.0 * nf + 1.0;
    let ln_h = 0.5 * PI.ln() + nf * LN_2 + libm::lgamma(nf + 1.0);
    let log = LN_2 + 0.5 * PI.ln() + kappa.ln() / 6.0 - 0.5 * ln_h + 0.5 * nf * (2.0 * np).ln()
        - 0.5 * np
        - 0.5 * LN_2;
    Ok(log.exp())
}

/// Degree `N` or `N − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Wave {
    /// `φ_τ`, built on `φ_N`.
    Phi,
    /// `ψ_τ`, built on `φ_{N−1}`.
    Psi,
}

/// `u_{Nj}`, `κ_{Nj}` and the degree for the chosen wave.
fn wave_data(n: usize, which: Wave) -> Result<(usize, f64, f64, f64)> {
    let ctx = wave_context(n)?;
    Ok(match which {
        Wave::Phi => (n, ctx.u_n, ctx.kappa_n, ctx.tau_n),
        Wave::Psi => (n - 1, ctx.u_nm1, ctx.kappa_nm1, ctx.tau_n),
    })
}

/// `κ_{Nj}^{2/3} ζ(1 + σ_{Nj} s)` with `σ_{Nj} = τ_N / u_{Nj}`.
pub fn lg_airy_argument(n: usize, which: Wave, s: f64) -> Result<f64> {
    let (_, u, kappa, tau) = wave_data(n, which)?;
    let xi = 1.0 + tau / u * s;
    Ok(kappa.powf(2.0 / 3.0) * lg_zeta(xi)?)
}

/// Leading Liouville–Green approximant `r(ξ) Ai(κ_N^{2/3} ζ(ξ))` of
/// `φ̄_N(u_N + sτ_N)`, with `ξ = 1 + σ_N s`.
pub fn lg_phi_approx(n: usize, s: f64) -> Result<f64> {
    lg_wave_approx(n, Wave::Phi, s)
}

/// As [`lg_phi_approx`] for either degree.
pub fn lg_wave_approx(n: usize, which: Wave, s: f64) -> Result<f64> {
    let (_, u, kappa, tau) = wave_data(n, which)?;
    let xi = 1.0 + tau / u * s;
    let z = lg_zeta(xi)?;
    Ok(lg_r(xi)? * airy(kappa.powf(2.0 / 3.0) * z).0)
}

/// `φ̄_{Nj}(x) = (2N)^{1/4} τ_N φ_{Nj}(x)`.
pub fn normalized_wave(n: usize, which: Wave, x: f64) -> Result<f64> {
    let (deg, _, _, tau) = wave_data(n, which)?;
    Ok((2.0 * n as f64).powf(0.25) * tau * oscillator_pair(deg, x).1)
}

/// A shifted, rescaled wave `φ_τ(s;k)` or `ψ_τ(s;l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftedWaveSpec {
    pub which: Wave,
    /// Shift in units of `Δ_N`.
    pub k: f64,
    pub n: usize,
}

impl ShiftedWaveSpec {
    pub fn phi(n: usize, k: f64) -> Self {
        ShiftedWaveSpec {
            which: Wave::Phi,
            k,
            n,
        }
    }

    pub fn psi(n: usize, l: f64) -> Self {
        ShiftedWaveSpec {
            which: Wave::Psi,
            k: l,
            n,
        }
    }

    /// Physical point `u_{Nj} + τ_N(s + kΔ_N)`.
    pub fn point(&self, s: f64) -> Result<f64> {
        if !self.k.is_finite() {
            return Err(Error::Domain("shift must be finite".into()));
        }
        let ctx = wave_context(self.n)?;
        let u = match self.which {
            Wave::Phi => ctx.u_n,
            Wave::Psi => ctx.u_nm1,
        };
        Ok(u + ctx.tau_n * (s + self.k * ctx.delta_n))
    }
}

/// `φ̄_{Nj}(u_{Nj} + τ_N(s + kΔ_N))`, evaluated exactly.
pub fn shifted_wave(spec: &ShiftedWaveSpec, s: f64) -> Result<f64> {
    normalized_wave(spec.n, spec.which, spec.point(s)?)
}

/// `d/ds` of [`shifted_wave`], i.e. `τ_N φ̄_{Nj}'` at the same point.
pub fn shifted_wave_prime(spec: &ShiftedWaveSpec, s: f64) -> Result<f64> {
    let (deg, _, _, tau) = wave_data(spec.n, spec.which)?;
    let x = spec.point(s)?;
    let (pm, p) = oscillator_pair(deg, x);
    let d = -x * p + (2.0 * deg as f64).sqrt() * pm;
    Ok((2.0 * spec.n as f64).powf(0.25) * tau * tau * d)
}

/// Unscaled maxima for one `N` of a rate scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub n: usize,
    /// `max_s e^{s/2} |φ̄_N(u_N + sτ_N) − Ai(s)|`.
    pub value_error: f64,
    /// `max_s e^{s/2} |τ_N φ̄_N'(u_N + sτ_N) − Ai'(s)|`.
    pub derivative_error: f64,
}

impl RateRow {
    /// `N^p · value_error`.
    pub fn scaled_value(&self, p: f64) -> f64 {
        (self.n as f64).powf(p) * self.value_error
    }

    /// `N^p · derivative_error`.
    pub fn scaled_derivative(&self, p: f64) -> f64 {
        (self.n as f64).powf(p) * self.derivative_error
    }
}

/// Weighted sup-errors of `φ̄_N` and its derivative against `Ai`, `Ai'`.
pub fn rate_scan(n_list: &[usize], s_grid: &[f64]) -> Result<Vec<RateRow>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("N list must be strictly ascending".into()));
    }
    n_list
        .iter()
        .map(|&n| {
            let spec = ShiftedWaveSpec::phi(n, 0.0);
            let mut value_error: f64 = 0.0;
            let mut derivative_error: f64 = 0.0;
            for &s in s_grid {
                let (a, ap) = airy(s);
                let w = (0.5 * s).exp();
                value_error = value_error.max(w * (shifted_wave(&spec, s)? - a).abs());
                derivative_error =
                    derivative_error.max(w * (shifted_wave_prime(&spec, s)? - ap).abs());
            }
            Ok(RateRow {
                n,
                value_error,
                derivative_error,
            })
        })
        .collect()
}
