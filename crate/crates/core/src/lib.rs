//! Sharp constants, attainment classification, explicit extremals and
//! identity checks for doubly-critical Hardy-Sobolev elliptic systems
//!
//! ```text
//! -Δu - λ|u|^{p1-2}u/|x|^{s1} = κα|u|^{α-2}u|v|^β/|x|^{s2}
//! -Δv - μ|v|^{p1-2}v/|x|^{s1} = κβ|u|^α|v|^{β-2}v/|x|^{s2}
//! ```
//!
//! with `p1 = 2*(s1)` and `α + β = 2*(s2)`.
//!
//! Modules:
//! - [`params`]: parameter validation and exponent arithmetic.
//! - [`coupling`]: Young constant, the one-dimensional `g(t)` reduction,
//!   sharp constants, classification, extremal coefficients and energies.
//! - [`radial`]: radial profiles on log grids, quadrature, instantons,
//!   residuals, dilation and Kelvin transforms.
//! - [`checks`]: Nehari, Pohozaev, interpolation and perturbation checks.
//! - [`exec`]: data-parallel map with a sequential fallback.

pub mod checks;
pub mod coupling;
pub mod error;
pub mod exec;
pub mod params;
pub mod radial;
pub mod roots;

pub use error::{Error, Result};
