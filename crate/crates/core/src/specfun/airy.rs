//! The Airy function `Ai`, its derivative, and its right-tail integral.
//!
//! On `[-10, 10]` values come from local Taylor expansions about centres
//! spaced `0.5` apart. The centre values are produced once by propagating
//! the Airy equation `y'' = x y` with exact Taylor steps: downward from the
//! Maclaurin data at `0` into the oscillatory region, and downward from the
//! asymptotic data at `x = 10` for the positive side, so that the recessive
//! solution is always propagated in its stable direction. Outside `[-10, 10]`
//! the classical asymptotic expansions are used.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::{Error, Result};

/// `Ai(0) = 3^{-2/3} / Γ(2/3)`.
#[allow(clippy::excessive_precision)]
pub const AI_ZERO: f64 = 0.355_028_053_887_817_239_26;
/// `Ai'(0) = -3^{-1/3} / Γ(1/3)`.
#[allow(clippy::excessive_precision)]
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_798_40;

const CENTRE_STEP: f64 = 0.5;
const TABLE_EDGE: f64 = 10.0;
const N_CENTRES: usize = 41;
const ZERO_INDEX: usize = 20;

struct Centres {
    ai: [f64; N_CENTRES],
    aip: [f64; N_CENTRES],
    /// `∫_c^∞ Ai` at every centre.
    tail: [f64; N_CENTRES],
}

fn centre(i: usize) -> f64 {
    -TABLE_EDGE + CENTRE_STEP * i as f64
}

fn centres() -> &'static Centres {
    static TABLE: OnceLock<Centres> = OnceLock::new();
    TABLE.get_or_init(build_centres)
}

fn build_centres() -> Centres {
    let mut ai = [0.0; N_CENTRES];
    let mut aip = [0.0; N_CENTRES];
    let mut tail = [0.0; N_CENTRES];

    ai[ZERO_INDEX] = AI_ZERO;
    aip[ZERO_INDEX] = AI_PRIME_ZERO;
    for i in (1..=ZERO_INDEX).rev() {
        let t = taylor(centre(i), ai[i], aip[i], -CENTRE_STEP);
        ai[i - 1] = t.value;
        aip[i - 1] = t.deriv;
    }

    let (a, ap) = asymptotic(TABLE_EDGE);
    ai[N_CENTRES - 1] = a;
    aip[N_CENTRES - 1] = ap;
    for i in (ZERO_INDEX + 2..N_CENTRES).rev() {
        let t = taylor(centre(i), ai[i], aip[i], -CENTRE_STEP);
        ai[i - 1] = t.value;
        aip[i - 1] = t.deriv;
    }

    tail[N_CENTRES - 1] = far_right_tail(TABLE_EDGE);
    for i in (1..N_CENTRES).rev() {
        // ∫_{c_{i-1}}^{c_i} Ai, expanded about the left end.
        let t = taylor(centre(i - 1), ai[i - 1], aip[i - 1], CENTRE_STEP);
        tail[i - 1] = tail[i] + t.integral;
    }
    Centres { ai, aip, tail }
}

struct Taylor {
    value: f64,
    deriv: f64,
    /// `∫_c^{c+h} y`.
    integral: f64,
}

/// Sums the Taylor series of the Airy-equation solution with data
/// `(y0, y1)` at `c`, evaluated at `c + h`.
fn taylor(c: f64, y0: f64, y1: f64, h: f64) -> Taylor {
    // a_{k+2} (k+2)(k+1) = c a_k + a_{k-1}
    let (mut a_km1, mut a_k, mut a_kp1) = (0.0, y0, y1);
    let mut hk = 1.0; // h^k
    let mut value = 0.0;
    let mut deriv = 0.0;
    let mut integral = 0.0;
    let mut quiet = 0;
    for k in 0..120usize {
        let kf = k as f64;
        value += a_k * hk;
        integral += a_k * hk * h / (kf + 1.0);
        deriv += (kf + 1.0) * a_kp1 * hk;
        let next = (c * a_k + a_km1) / ((kf + 2.0) * (kf + 1.0));
        a_km1 = a_k;
        a_k = a_kp1;
        a_kp1 = next;
        hk *= h;
        let size = (a_k * hk).abs() + (a_kp1 * hk).abs();
        if size <= 1e-18 * (value.abs() + deriv.abs()) {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Taylor {
        value,
        deriv,
        integral,
    }
}

/// `u_k` coefficients of the Airy asymptotic expansions.
fn u_coefficients() -> &'static [f64] {
    static U: OnceLock<Vec<f64>> = OnceLock::new();
    U.get_or_init(|| {
        let mut u = vec![1.0];
        for k in 1..40usize {
            let kf = k as f64;
            let r = (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            let prev = u[k - 1];
            u.push(prev * r);
        }
        u
    })
}

fn v_coefficient(k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        let kf = k as f64;
        -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u_coefficients()[k]
    }
}

/// Asymptotic expansions for `|x| >= 10`.
fn asymptotic(x: f64) -> (f64, f64) {
    let u = u_coefficients();
    let z = x.abs();
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    if x > 0.0 {
        if zeta > 740.0 {
            return (0.0, 0.0);
        }
        let mut su = 0.0;
        let mut sv = 0.0;
        let mut zk = 1.0;
        let mut last = f64::INFINITY;
        for (k, &uk) in u.iter().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let tu = uk * zk;
            if tu.abs() > last {
                break;
            }
            last = tu.abs();
            su += sign * tu;
            sv += sign * v_coefficient(k) * zk;
            if tu.abs() < 1e-18 {
                break;
            }
            zk /= zeta;
        }
        let pref = (-zeta).exp() / (2.0 * PI.sqrt());
        let ai = flush(pref / z.powf(0.25) * su);
        let aip = flush(-pref * z.powf(0.25) * sv);
        (ai, aip)
    } else {
        let (mut p, mut q, mut r, mut s) = (0.0, 0.0, 0.0, 0.0);
        let mut zk = 1.0;
        let mut last = f64::INFINITY;
        for k in 0..u.len() / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let t_even = u[2 * k] * zk;
            let t_odd = u[2 * k + 1] * zk / zeta;
            if t_even.abs() > last {
                break;
            }
            last = t_odd.abs();
            p += sign * t_even;
            q += sign * t_odd;
            r += sign * v_coefficient(2 * k) * zk;
            s += sign * v_coefficient(2 * k + 1) * zk / zeta;
            if t_odd.abs() < 1e-18 {
                break;
            }
            zk /= zeta * zeta;
        }
        let (sn, cs) = (zeta - FRAC_PI_4).sin_cos();
        let rp = PI.sqrt().recip();
        let ai = rp / z.powf(0.25) * (cs * p + sn * q);
        let aip = rp * z.powf(0.25) * (sn * r - cs * s);
        (ai, aip)
    }
}

fn flush(v: f64) -> f64 {
    if v.abs() < f64::MIN_POSITIVE {
        0.0
    } else {
        v
    }
}

/// `(Ai(x), Ai'(x))` without input validation. NaN propagates.
pub fn airy(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x.abs() >= TABLE_EDGE {
        return asymptotic(x);
    }
    let t = centres();
    let i = ((x + TABLE_EDGE) / CENTRE_STEP).round() as usize;
    let c = centre(i);
    let r = taylor(c, t.ai[i], t.aip[i], x - c);
    (flush(r.value), flush(r.deriv))
}

/// `Ai(s)`.
pub fn airy_ai(s: f64) -> Result<f64> {
    check(s)?;
    Ok(airy(s).0)
}

/// `Ai'(s)`.
pub fn airy_ai_prime(s: f64) -> Result<f64> {
    check(s)?;
    Ok(airy(s).1)
}

/// `Ai''(s) = s Ai(s)`, from the Airy equation.
pub fn airy_ai_second(s: f64) -> Result<f64> {
    check(s)?;
    Ok(s * airy(s).0)
}

fn check(s: f64) -> Result<()> {
    if s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Airy argument must be finite, got {s}"
        )))
    }
}

/// Right-tail integral `(ε̃Ai)(s) = ∫_s^∞ Ai(u) du`.
///
/// Tends to `1` as `s → -∞` and equals `1/3` at `s = 0`.
pub fn airy_tail_integral(s: f64) -> f64 {
    if s.is_nan() {
        return f64::NAN;
    }
    if s >= TABLE_EDGE {
        return far_right_tail(s);
    }
    if s <= -TABLE_EDGE {
        return centres().tail[0] + panel_integral(s, -TABLE_EDGE, 0.5);
    }
    let t = centres();
    let i = ((s + TABLE_EDGE) / CENTRE_STEP).round() as usize;
    let c = centre(i);
    let r = taylor(c, t.ai[i], t.aip[i], s - c);
    // ∫_s^∞ = ∫_c^∞ − ∫_c^s
    flush(t.tail[i] - r.integral)
}

/// Beyond this point the tail integral uses its asymptotic series alone.
const SERIES_TAIL: f64 = 14.0;

/// `∫_x^∞ Ai` for `x ≥ 10`.
fn far_right_tail(x: f64) -> f64 {
    if x >= SERIES_TAIL {
        return series_tail(x);
    }
    series_tail(SERIES_TAIL) + panel_integral(x, SERIES_TAIL, 2.0)
}

/// `∫_x^∞ Ai = Ai'(x) h(x) − Ai(x) h'(x)` where `h'' − xh = 1` has the
/// asymptotic solution `h = Σ c_k x^{−3k−1}`, `c_0 = −1`,
/// `c_{k+1} = (3k+1)(3k+2) c_k`, summed to its smallest term.
fn series_tail(x: f64) -> f64 {
    let (ai, aip) = airy(x);
    if ai == 0.0 {
        return 0.0;
    }
    let x3 = x * x * x;
    let mut c = -1.0 / x;
    let (mut h, mut hp) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if c.abs() >= last {
            break;
        }
        last = c.abs();
        h += c;
        hp -= (3 * k + 1) as f64 * c / x;
        c *= (3 * k + 1) as f64 * (3 * k + 2) as f64 / x3;
    }
    flush(aip * h - ai * hp)
}

/// Composite 16-point Gauss–Legendre over `[a, b]` with panels no wider
/// than `width`.
fn panel_integral(a: f64, b: f64, width: f64) -> f64 {
    let (nodes, weights) = gl16();
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        for (u, w) in nodes.iter().zip(weights) {
            total += w * 0.5 * h * airy(mid + 0.5 * h * u).0;
        }
    }
    total
}

fn gl16() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let r = RULE.get_or_init(|| {
        let q = crate::fredholm::gauss_legendre(16).expect("16-point rule");
        (q.nodes, q.weights)
    });
    (&r.0, &r.1)
}
