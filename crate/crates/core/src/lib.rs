//! Optimal discrete additive noise for private transmission of quantized
//! sensor measurements.
//!
//! A sensor reading is quantized onto `N` uniform levels and sent over an
//! untrusted channel. Before transmission a discrete noise variable `Z`,
//! supported on the same levels, is added; the eavesdropper only sees the
//! sum `V = Y^Q + Z`. This crate designs the PMF of `Z` to minimize the
//! privacy leakage `I[V; Y^Q]` subject to a mean-square distortion budget
//! `E[Z^2] <= epsilon`, a convex program over the probability simplex, and
//! certifies the result through its KKT residual.
//!
//! The pieces, bottom to top:
//!
//! - [`pmf`]: PMFs on ordered real supports, the shared currency.
//! - [`quantizer`]: the uniform finite-range quantizer and the exact PMF of
//!   the quantized measurement.
//! - [`distributions`]: Gaussian / uniform sensor models with CDFs, seeded
//!   sampling, and empirical PMF estimation.
//! - [`info_theory`]: exact entropies, the sum PMF, the objective
//!   `H[V] - H[Z]`, its analytic gradient, and enumeration-based checks.
//! - [`solver`]: the constrained convex solver plus a brute-force oracle.
//! - [`multi_obs`]: stacked multiple observations and streaming validation.
//! - [`estimators`]: adversarial estimators and the data-processing bound.
//!
//! All public information quantities are in bits. Everything except
//! sampling is pure and deterministic; sampling takes a caller-owned
//! generator state.

pub mod distributions;
mod error;
pub mod estimators;
pub mod info_theory;
pub mod multi_obs;
pub mod pmf;
pub mod quantizer;
pub mod solver;

pub use distributions::{empirical_pmf, NoiseLaw, SensorModel};
pub use error::{Error, Result};
pub use estimators::{dpi_gap, mean_estimator, Estimator};
pub use info_theory::{
    convexity_parts, decoupled_mi, entropy, mi_gradient, mi_joint_direct, mi_objective, sum_pmf,
    ConvexityParts, JointPmf,
};
pub use multi_obs::{simulate_stream, stacked_mi, StackedModel};
pub use pmf::Pmf;
pub use quantizer::QuantizerSpec;
pub use solver::{
    brute_force_solve, kkt_check, solve, tradeoff_sweep, DesignProblem, NoiseDesign, SolverOptions,
};
