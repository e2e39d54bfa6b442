//! Limiting crossover distributions on the relaxation time scale and their
//! ingredients: half-integer polylogarithms, the complex error function,
//! the node sets `exp(-xi^2/2) = z`, and the discrete Fredholm determinants.

mod constants;
mod distribution;
mod kernels;
mod nodes;
mod reference;
mod special;

pub use constants::{
    a1_quadrature, abc_constants, b_coefficient, b_constant, b_quadrature, B_MAX_MODULUS,
};
pub use distribution::{
    distribution_grid, f1, f1_grid, f2, f2_grid, integrand, integrand_truncated, CurvePoint,
    DistributionCurve, Family, DEFAULT_NODE_COUNT, MAX_NODE_COUNT, TRUNCATION_TOL,
};
pub use kernels::{kernel_flat, kernel_step, phi_step, psi_flat};
pub use nodes::{node, psi_int, psi_int_line, psi_int_path, NodeSet};
pub use reference::{f_goe, f_gue, gauss_legendre, ReferenceCurve};
pub use special::{
    airy_ai, cerfc, normal_cdf, polylog, polylog_integral, polylog_series, PolylogOrder,
};
