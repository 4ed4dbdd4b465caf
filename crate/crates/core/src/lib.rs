//! The generalized nested-radical Pi-function
//!
//! ```text
//! h_0 = 0,   h_i = sqrt(x(x-1) + h_{i-1}),   Π_i(x) = (2x)^{(i+1)/2} sqrt(x - h_i)
//! ```
//!
//! which converges for every `x > 1` to a limit `π_x`, with `π_2 = π`
//! (Viète's nested radical). The crate evaluates it through a
//! cancellation-free residual recurrence on either hardware doubles or
//! arbitrary-precision fixed point, checks its algebraic identities, locates
//! the minimum of `π_x`, and generates digits of π.

pub mod analysis;
pub mod backend;
pub mod bigfixed;
pub mod digits;
pub mod error;
pub mod radical;
pub mod sweep;

pub use backend::{Arithmetic, BackendDescriptor, Double, FixedPoint};
pub use bigfixed::{plan_precision, BigFixed, PrecisionPlan};
pub use error::{Error, Result};
pub use radical::{pi_diff_estimate, pi_value, PiEstimate, RadicalState};
