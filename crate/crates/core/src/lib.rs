//! Photoelectron counting distributions `p(m)` for single-mode light fields
//! seen through a detector of quantum efficiency `xi`.
//!
//! The crate has two layers. The production evaluators in [`counting`]
//! (closed forms for coherent, chaotic, squeezed-vacuum and displaced chaotic
//! light, plus the binomial-thinning transform for any photon-number
//! distribution) and the independent checks in [`oracle`] (Monte Carlo,
//! complex-plane quadrature of the P-representation and of the
//! antidiagonal-kernel formula, and numeric checks of the Gaussian integral
//! identities everything rests on).
//!
//! ```
//! use photocount::{counting, Efficiency, StateModel};
//!
//! let state = StateModel::thermal(1.0).unwrap();
//! let xi = Efficiency::new(0.5).unwrap();
//! let dist = counting::distribution(&state, xi, 4, &counting::Method::Closed).unwrap();
//! assert!((dist.probs[0] - 2.0 / 3.0).abs() < 1e-15);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counting;
pub mod error;
pub mod oracle;
pub mod special_fn;
pub mod states;

pub use counting::{CountDistribution, Efficiency, Method, MethodKind};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use oracle::{ComparisonReport, QuadratureConfig};
pub use special_fn::PolyOrder;
pub use states::{FockDistribution, StateModel};
