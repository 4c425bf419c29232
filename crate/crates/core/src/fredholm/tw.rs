//! Tracy–Widom distributions `F₂`, `F₁`, their quantiles, and the finite-N
//! largest-eigenvalue distributions at edge scaling.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::det::{block_det, fredholm_det_scalar, CdfResult, EpsRule, Flag, DEFAULT_GAMMA};
use super::semi_infinite_rule;
use crate::kernels::{
    goe_matrix_kernel_finite, goe_matrix_kernel_limit, AiryKernel, RescaledGueKernel,
};
use crate::specfun::{CenteringSpec, Ensemble};
use crate::{Error, Result};

/// Dyson index of the limiting law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Beta {
    One,
    Two,
}

impl Beta {
    pub fn from_index(b: u32) -> Result<Self> {
        match b {
            1 => Ok(Beta::One),
            2 => Ok(Beta::Two),
            _ => Err(Error::Usage(format!("beta must be 1 or 2, got {b}"))),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Beta::One => 1,
            Beta::Two => 2,
        }
    }

    pub fn ensemble(self) -> Ensemble {
        match self {
            Beta::One => Ensemble::Goe,
            Beta::Two => Ensemble::Gue,
        }
    }
}

/// Arguments of [`tw_cdf`] are clamped to this range.
pub const TW_RANGE: (f64, f64) = (-12.0, 10.0);

/// Node counts tried in turn by [`tw_cdf`].
const TW_NODES: [usize; 4] = [40, 80, 160, 320];

/// Self-convergence target of [`tw_cdf`].
const TW_TARGET: f64 = 1e-11;

/// `F₂(s) = det(I − S_A)` or `F₁(s) = √det(I − K_GOE)` on `(s, ∞)`, with the
/// node count doubled until successive values agree.
pub fn tw_cdf(beta: Beta, s: f64) -> Result<CdfResult> {
    if s.is_nan() {
        return Err(Error::Domain("tw_cdf at NaN".into()));
    }
    let x = s.clamp(TW_RANGE.0, TW_RANGE.1);
    let eval = |m: usize| -> Result<(f64, bool)> {
        match beta {
            Beta::Two => {
                let rule = semi_infinite_rule(x, m)?;
                let d = super::discretize_scalar(&AiryKernel, &rule).det();
                Ok((d.clamp(0.0, 1.0), false))
            }
            Beta::One => {
                let (d, neg) = block_det(
                    &goe_matrix_kernel_limit(),
                    x,
                    m,
                    DEFAULT_GAMMA,
                    EpsRule::default(),
                )?;
                Ok((d.min(1.0).sqrt(), neg))
            }
        }
    };
    let (mut prev, mut neg) = eval(TW_NODES[0])?;
    let mut out = None;
    for &m in &TW_NODES[1..] {
        let (v, n) = eval(m)?;
        neg |= n;
        let r = CdfResult {
            value: v,
            m,
            convergence: (v - prev).abs(),
            flags: Vec::new(),
        };
        let done = r.convergence < TW_TARGET;
        out = Some(r);
        if done {
            break;
        }
        prev = v;
    }
    let mut r = out.expect("at least two node counts");
    let limit = match beta {
        Beta::Two => 1e-8,
        Beta::One => 1e-6,
    };
    if r.convergence > limit {
        r.flag(Flag::NotConverged);
    }
    if x != s {
        r.flag(Flag::Clamped);
    }
    if neg {
        r.flag(Flag::NegativeClamped);
    }
    Ok(r)
}

/// Step of the central difference in [`tw_density`].
pub const DENSITY_STEP: f64 = 1e-3;

/// `F_β'(s)` by a central difference of [`tw_cdf`].
pub fn tw_density(beta: Beta, s: f64) -> Result<f64> {
    let hi = tw_cdf(beta, s + DENSITY_STEP)?.value;
    let lo = tw_cdf(beta, s - DENSITY_STEP)?.value;
    Ok((hi - lo) / (2.0 * DENSITY_STEP))
}

/// Supported quantile levels.
pub const QUANTILE_RANGE: (f64, f64) = (1e-6, 1.0 - 1e-6);

const QUANTILE_TOL: f64 = 1e-11;

fn quantile_cache() -> &'static Mutex<HashMap<(Beta, u64), f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(Beta, u64), f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `s` with `F_β(s) = α`, by Illinois-modified regula falsi on
/// `[−12, 10]`. Results are memoised.
pub fn tw_quantile(beta: Beta, alpha: f64) -> Result<f64> {
    if !(QUANTILE_RANGE.0..=QUANTILE_RANGE.1).contains(&alpha) {
        return Err(Error::Domain(format!(
            "quantile level must lie in [1e-6, 1 - 1e-6], got {alpha}"
        )));
    }
    let key = (beta, alpha.to_bits());
    if let Some(&q) = quantile_cache().lock().expect("cache lock").get(&key) {
        return Ok(q);
    }
    let f = |s: f64| -> Result<f64> { Ok(tw_cdf(beta, s)?.value - alpha) };
    let (mut a, mut b) = TW_RANGE;
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    let mut side = 0i8;
    let mut q = 0.5 * (a + b);
    for _ in 0..200 {
        // Fall back to bisection when the secant step stalls near an end.
        let secant = (a * fb - b * fa) / (fb - fa);
        let width = b - a;
        q = if secant.is_finite() && secant > a + 1e-3 * width && secant < b - 1e-3 * width {
            secant
        } else {
            0.5 * (a + b)
        };
        let fq = f(q)?;
        if fq.abs() <= QUANTILE_TOL || width < 1e-13 {
            break;
        }
        if (fq > 0.0) == (fb > 0.0) {
            b = q;
            fb = fq;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = q;
            fa = fq;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
    }
    quantile_cache().lock().expect("cache lock").insert(key, q);
    Ok(q)
}

/// Settings for [`finite_cdf_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfOptions {
    pub nodes: usize,
    /// Block weight exponent for the GOE determinant.
    pub gamma: f64,
    pub eps: EpsRule,
}

impl Default for CdfOptions {
    fn default() -> Self {
        CdfOptions {
            nodes: 160,
            gamma: DEFAULT_GAMMA,
            eps: EpsRule::default(),
        }
    }
}

/// `P{(x₍₁₎ − μ_N)/τ_N ≤ s₀}` for the ensemble and centering named by
/// `spec`. For GOE the matrix size is `N + 1`, so `N − 1` must be even.
pub fn finite_cdf(n: usize, spec: &CenteringSpec, s0: f64) -> Result<CdfResult> {
    finite_cdf_with(n, spec, s0, &CdfOptions::default())
}

/// [`finite_cdf`] with explicit discretisation settings.
pub fn finite_cdf_with(
    n: usize,
    spec: &CenteringSpec,
    s0: f64,
    opts: &CdfOptions,
) -> Result<CdfResult> {
    let mut r = match spec.ensemble {
        Ensemble::Gue => {
            let k = RescaledGueKernel::new(n, *spec)?;
            fredholm_det_scalar(&k, s0, opts.nodes)?
        }
        Ensemble::Goe => {
            if opts.nodes < 16 {
                return Err(Error::Usage("at least 16 nodes are needed".into()));
            }
            let k = goe_matrix_kernel_finite(n, spec)?;
            let (v, neg) = block_det(&k, s0, opts.nodes, opts.gamma, opts.eps)?;
            let (h, _) = block_det(&k, s0, opts.nodes / 2, opts.gamma, opts.eps)?;
            let (v, h) = (v.min(1.0).sqrt(), h.min(1.0).sqrt());
            let mut r = CdfResult {
                value: v,
                m: opts.nodes,
                convergence: (v - h).abs(),
                flags: Vec::new(),
            };
            if r.convergence > super::CONVERGENCE_WARNING {
                r.flag(Flag::NotConverged);
            }
            if neg {
                r.flag(Flag::NegativeClamped);
            }
            r
        }
    };
    r.value = r.value.clamp(0.0, 1.0);
    Ok(r)
}
