//! Largest-eigenvalue distributions of the Gaussian unitary and orthogonal
//! ensembles at finite `N`, their Tracy–Widom limits `F₂` and `F₁`, and the
//! Airy/Hermite asymptotics that connect the two.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Airy function, oscillator wave functions `φ_k`, and the
//!   scalar constants (`u_N`, `τ_N`, `Δ_N`, `β_{N−1}`, centerings).
//! * [`lg`]: the Liouville–Green turning-point map `ζ(ξ)`, the LG
//!   approximant of `φ_N`, and shifted/rescaled waves `φ_τ(s;k)`.
//! * [`kernels`]: GUE/GOE correlation kernels, the Airy kernel, the
//!   `⋄` operator and right-tail integration.
//! * [`fredholm`]: quadrature, Nyström discretisation, Fredholm
//!   determinants, `F₁`/`F₂`, quantiles and finite-`N` CDFs.
//! * [`ensembles`]: GOE/GUE samplers (dense and tridiagonal) and Monte
//!   Carlo estimates.
//! * [`cli`]: table, rate and figure reproduction with CSV output.
//!
//! ```
//! use twedge::fredholm::{tw_cdf, Beta};
//! let f2 = tw_cdf(Beta::Two, 0.0).unwrap();
//! assert!((f2.value - 0.969372828355262).abs() < 1e-9);
//! ```

pub mod cli;
pub mod ensembles;
mod error;
pub mod fredholm;
pub mod kernels;
pub mod lg;
pub mod specfun;

pub use error::{Error, Result};
