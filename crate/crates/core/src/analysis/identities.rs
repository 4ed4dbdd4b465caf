//! Numerical checks of the identities satisfied by `h_i` and `Π_i`.
//!
//! All checks run in double precision. Powers of `2x` are formed only here,
//! and an unrepresentable power is reported as [`Error::Overflow`] rather
//! than compared as infinity.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::backend::Double;
use crate::error::{Error, Result};
use crate::radical::{literal_h, residual_step, RadicalState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `Π_{i+1}² = 2x·Π_i² + (2x)^{i+2}(h_i - h_{i+1})`
    Doubling,
    /// `sqrt((x - h_i)/(x - h_{i+1})) → sqrt(2x)`
    Ratio,
    /// `h_i(x) = h_i(1 - x)`
    HReflection,
    /// `Π_i²(1-x) = (1/x - 1)^{i+1} Π_i²(x) - 2^{i+1}(1-x)^{i+1}(2x-1)`
    PiReflection,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 4] = [
        IdentityKind::Doubling,
        IdentityKind::Ratio,
        IdentityKind::HReflection,
        IdentityKind::PiReflection,
    ];

    /// Pass threshold for [`IdentityReport::deviation`].
    pub fn threshold(self) -> f64 {
        match self {
            IdentityKind::Doubling => 1e-12,
            IdentityKind::Ratio => 1e-6,
            IdentityKind::HReflection => 4.0,
            IdentityKind::PiReflection => 1e-10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Doubling => "doubling",
            IdentityKind::Ratio => "ratio",
            IdentityKind::HReflection => "h-reflection",
            IdentityKind::PiReflection => "pi-reflection",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub x: f64,
    pub depth: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_residual: f64,
}

impl IdentityReport {
    fn new(identity: IdentityKind, x: f64, depth: usize, lhs: f64, rhs: f64) -> Result<Self> {
        if !lhs.is_finite() || !rhs.is_finite() {
            return Err(Error::Overflow(format!(
                "{identity} at x = {x}, depth {depth} exceeds double range"
            )));
        }
        let rel_residual = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-300);
        Ok(IdentityReport {
            identity,
            x,
            depth,
            lhs,
            rhs,
            rel_residual,
        })
    }

    /// The quantity compared against [`IdentityKind::threshold`]: absolute
    /// difference for the ratio limit, distance in ulps for the
    /// h-reflection, relative residual otherwise.
    pub fn deviation(&self) -> f64 {
        match self.identity {
            IdentityKind::Ratio => (self.lhs - self.rhs).abs(),
            IdentityKind::HReflection => ulps_between(self.lhs, self.rhs) as f64,
            _ => self.rel_residual,
        }
    }

    pub fn passes(&self) -> bool {
        self.deviation() <= self.identity.threshold()
    }
}

/// Number of representable doubles between `a` and `b`.
pub fn ulps_between(a: f64, b: f64) -> u64 {
    fn ordered(v: f64) -> i64 {
        let bits = v.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    }
    ordered(a).abs_diff(ordered(b))
}

fn power_of(base: f64, exp: usize, what: &str) -> Result<f64> {
    let value = base.powi(exp as i32);
    if value.is_finite() && exp <= i32::MAX as usize {
        Ok(value)
    } else {
        Err(Error::Overflow(format!(
            "{what} = {base}^{exp} exceeds double range"
        )))
    }
}

/// `sqrt(ε_i/ε_{i+1})` against its limit `sqrt(2x)`. The limit is in `i`.
pub fn ratio_convergence(x: f64, depth: usize) -> Result<IdentityReport> {
    let state = RadicalState::at_depth(&Double, x, depth)?;
    let next = residual_step(&Double, &x, state.residual())?;
    let lhs = (state.residual() / next).sqrt();
    IdentityReport::new(IdentityKind::Ratio, x, depth, lhs, (2.0 * x).sqrt())
}

/// Both sides of the doubling identity in residual form, where
/// `h_i - h_{i+1} = ε_{i+1} - ε_i`.
pub fn check_doubling(x: f64, depth: usize) -> Result<IdentityReport> {
    let state = RadicalState::at_depth(&Double, x, depth)?;
    let next = state.advance(&Double)?;
    let two_x = 2.0 * x;
    let power = power_of(two_x, depth + 2, "(2x)^(i+2)")?;
    let lhs = next.scale() * next.scale();
    let rhs = two_x * state.scale() * state.scale() + power * (next.residual() - state.residual());
    IdentityReport::new(IdentityKind::Doubling, x, depth, lhs, rhs)
}

/// `h_i(x)` against `h_i(1 - x)`, both by the literal recurrence.
pub fn check_h_reflection(x: f64, depth: usize) -> Result<IdentityReport> {
    if x * (x - 1.0) < 0.0 || !x.is_finite() {
        return Err(Error::domain(format!(
            "x = {x}: x(x-1) < 0, both h_i(x) and h_i(1-x) are complex"
        )));
    }
    let lhs = literal_h(&Double, &x, depth)?;
    let rhs = literal_h(&Double, &(1.0 - x), depth)?;
    IdentityReport::new(IdentityKind::HReflection, x, depth, lhs, rhs)
}

/// The reflected squared estimate `Π_i²(1-x) = (2(1-x))^{i+1}((1-x) - h_i)`
/// against its expression through `Π_i²(x)`. Only squares are formed, so
/// no square root of a negative quantity is needed.
pub fn check_pi_reflection(x: f64, depth: usize) -> Result<IdentityReport> {
    let state = RadicalState::at_depth(&Double, x, depth)?;
    let y = 1.0 - x;
    let h = literal_h(&Double, &y, depth)?;
    let exp = depth + 1;
    let lhs = power_of(2.0 * y, exp, "(2(1-x))^(i+1)")? * (y - h);
    let pi_sq = state.scale() * state.scale();
    let rhs = power_of(1.0 / x - 1.0, exp, "(1/x - 1)^(i+1)")? * pi_sq
        - power_of(2.0, exp, "2^(i+1)")? * power_of(y, exp, "(1-x)^(i+1)")? * (2.0 * x - 1.0);
    IdentityReport::new(IdentityKind::PiReflection, x, depth, lhs, rhs)
}

pub fn check(kind: IdentityKind, x: f64, depth: usize) -> Result<IdentityReport> {
    match kind {
        IdentityKind::Doubling => check_doubling(x, depth),
        IdentityKind::Ratio => ratio_convergence(x, depth),
        IdentityKind::HReflection => check_h_reflection(x, depth),
        IdentityKind::PiReflection => check_pi_reflection(x, depth),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_examples() {
        let r = ratio_convergence(2.0, 40).unwrap();
        assert!((r.lhs - 2.0).abs() <= 1e-6 && r.rhs == 2.0 && r.passes());
        let r = ratio_convergence(3.0, 40).unwrap();
        assert!((r.rhs - 2.449_489_742_783_178).abs() < 1e-15);
        assert!((r.lhs - r.rhs).abs() <= 1e-6);
        let r = ratio_convergence(2.0, 0).unwrap();
        assert!((r.lhs - 1.847_759_065_022_573_5).abs() < 1e-14);
        assert!(!r.passes());
    }

    #[test]
    fn doubling_examples() {
        for (x, i) in [(2.0, 10), (5.0, 30), (1.1, 5)] {
            let r = check_doubling(x, i).unwrap();
            assert!(r.rel_residual <= 1e-12, "{r:?}");
        }
    }

    #[test]
    fn doubling_overflow_is_reported() {
        assert!(matches!(check_doubling(50.0, 400), Err(Error::Overflow(_))));
    }

    #[test]
    fn h_reflection_examples() {
        for (x, i) in [(2.0, 5), (3.0, 8), (1.5, 3)] {
            let r = check_h_reflection(x, i).unwrap();
            assert!(r.passes(), "{r:?}");
        }
        assert!(matches!(check_h_reflection(0.5, 3), Err(Error::Domain(_))));
        // Negative arguments share the radicand with 1 - x > 1.
        assert!(check_h_reflection(-2.0, 6).unwrap().passes());
    }

    #[test]
    fn pi_reflection_examples() {
        let r = check_pi_reflection(2.0, 0).unwrap();
        assert_eq!(r.lhs, 2.0);
        assert!((r.rhs - 2.0).abs() < 1e-14);
        for (x, i) in [(2.0, 3), (1.5, 6)] {
            let r = check_pi_reflection(x, i).unwrap();
            assert!(r.rel_residual <= 1e-12, "{r:?}");
        }
        assert!(matches!(check_pi_reflection(1.0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn ulp_distance() {
        assert_eq!(ulps_between(1.0, 1.0), 0);
        assert_eq!(ulps_between(1.0, f64::from_bits(1.0f64.to_bits() + 3)), 3);
        assert_eq!(ulps_between(-0.0, 0.0), 0);
        assert_eq!(ulps_between(-f64::from_bits(1), f64::from_bits(1)), 2);
    }

    #[test]
    fn kinds_parse_by_name() {
        for kind in IdentityKind::ALL {
            assert_eq!(kind.name().parse::<IdentityKind>(), Ok(kind));
        }
        assert!("nope".parse::<IdentityKind>().is_err());
    }
}
