//! Independent verification machinery: Monte Carlo sampling, planar
//! quadrature of the P-representation and antidiagonal-kernel formulas, and
//! numeric checks of the underlying integral identities.

pub mod identities;
mod montecarlo;
mod quadrature;
mod report;
pub mod verify;

pub use identities::{
    identity_gaussian_linear, identity_gaussian_moments, identity_gaussian_quadratic, identity_laguerre_kernel,
    identity_laguerre_radial, identity_laguerre_vacuum, run_identity, run_identity_suite,
};
pub use montecarlo::{mc_counts, SamplingRoute, CHUNK};
pub use quadrature::{
    antidiagonal_quadrature, antidiagonal_region, gauss_legendre, p_function_quadrature, QuadratureConfig,
    QuadratureEstimate,
};
pub use report::{ComparisonReport, ErrorUnit, ReportMetadata};
