//! Quadrature, Nyström discretisation and Fredholm determinants.

mod det;
mod quadrature;
mod tw;

pub use det::{
    discretize_block2, discretize_scalar, fredholm_det_block2, fredholm_det_block2_with,
    fredholm_det_scalar, trace_norm, CdfResult, DiscretizedOperator, EpsRule, Flag,
    CONVERGENCE_WARNING, DEFAULT_GAMMA, NEGATIVE_GUARD,
};
pub use quadrature::{
    gauss_legendre, semi_infinite_rule, semi_infinite_rule_scaled, Domain, QuadratureRule,
    MAX_NODES, SEMI_INFINITE_SCALE,
};
pub use tw::{
    finite_cdf, finite_cdf_with, tw_cdf, tw_density, tw_quantile, Beta, CdfOptions, DENSITY_STEP,
    QUANTILE_RANGE, TW_RANGE,
};
