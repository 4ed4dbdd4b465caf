//! Convergence driver, identity checks, asymptotics, the minimum of `π_x`
//! and an independent π oracle.

pub mod asymptotic;
pub mod identities;
pub mod limit;
pub mod machin;
pub mod minimum;

pub use asymptotic::{asympt_linear, asympt_sqrt};
pub use identities::{
    check_doubling, check_h_reflection, check_pi_reflection, ratio_convergence, IdentityKind,
    IdentityReport,
};
pub use limit::{pi_iterate, pi_limit, LimitPolicy, RelTol};
pub use machin::{machin_pi, machin_pi_digits};
pub use minimum::{find_minimum, golden_section, MinimumResult};
