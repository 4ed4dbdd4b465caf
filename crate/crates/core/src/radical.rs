//! The nested-radical recurrence and its two limit estimators.
//!
//! The literal recurrence is `h_{i+1} = sqrt(x(x-1) + h_i)` with `h_0 = 0`
//! and `Π_i(x) = (2x)^{(i+1)/2} · sqrt(x - h_i)`. Since `h_i → x`, the
//! difference `x - h_i` loses every significant digit after a couple dozen
//! levels in double precision. The public estimators therefore carry the
//! residual `ε_i = x - h_i` directly,
//!
//! ```text
//! ε_{i+1} = ε_i / (x + sqrt(x² - ε_i)),   ε_0 = x,
//! ```
//!
//! and grow `Π` by the per-level factor `sqrt(2x · ε_{i+1} / ε_i)` instead of
//! ever forming `(2x)^{(i+1)/2}`.

use crate::backend::Arithmetic;
use crate::error::{Error, Result};

/// `x(x-1)` as the single fused expression `x·x - x`. The same expression
/// is used for `x` and `1 - x`, which share the radicand.
fn radicand<A: Arithmetic>(arith: &A, x: &A::Real) -> A::Real {
    let neg_x = arith.sub(&arith.from_int(0), x);
    arith.mul_add(x, x, &neg_x)
}

/// One literal step `sqrt(x(x-1) + h_prev)`.
pub fn h_step<A: Arithmetic>(arith: &A, x: &A::Real, h_prev: &A::Real) -> Result<A::Real> {
    let value = arith.add(&radicand(arith, x), h_prev);
    arith.sqrt(&value).map_err(|_| {
        Error::domain(format!(
            "negative radicand at x = {}: outside the real-convergence domain",
            arith.to_f64(x)
        ))
    })
}

/// `h_depth(x)` by the literal recurrence. Accurate as a value, but
/// `x - h_depth` is useless beyond small depths.
pub fn literal_h<A: Arithmetic>(arith: &A, x: &A::Real, depth: usize) -> Result<A::Real> {
    (0..depth).try_fold(arith.from_int(0), |h, _| h_step(arith, x, &h))
}

fn check_domain(x: f64) -> Result<()> {
    if x > 1.0 && x.is_finite() {
        Ok(())
    } else if x == 1.0 {
        Err(Error::domain(
            "x = 1: h_i is identically 0 and Π_i = 2^((i+1)/2) diverges",
        ))
    } else {
        Err(Error::domain(format!(
            "x = {x} is outside the real domain x > 1"
        )))
    }
}

/// `ε_prev / (x + sqrt(x² - ε_prev))`, the cancellation-free form of
/// `x - sqrt(x(x-1) + (x - ε_prev))`.
pub fn residual_step<A: Arithmetic>(arith: &A, x: &A::Real, eps_prev: &A::Real) -> Result<A::Real> {
    check_domain(arith.to_f64(x))?;
    let zero = arith.from_int(0);
    if arith.cmp(eps_prev, &zero).is_lt() || arith.cmp(eps_prev, x).is_gt() {
        return Err(Error::domain(format!(
            "residual {} outside [0, x]",
            arith.to_f64(eps_prev)
        )));
    }
    let (residual, _) = residual_parts(arith, x, eps_prev)?;
    Ok(residual)
}

/// Returns `(ε_next, x + sqrt(x² - ε_prev))`.
fn residual_parts<A: Arithmetic>(
    arith: &A,
    x: &A::Real,
    eps_prev: &A::Real,
) -> Result<(A::Real, A::Real)> {
    let neg_eps = arith.sub(&arith.from_int(0), eps_prev);
    let root = arith.sqrt(&arith.mul_add(x, x, &neg_eps))?;
    let denom = arith.add(x, &root);
    Ok((arith.div(eps_prev, &denom)?, denom))
}

/// One point of the iteration: argument, depth, residual `ε = x - h` and
/// the running value `scale = Π_depth(x)`.
#[derive(Clone, Debug)]
pub struct RadicalState<R> {
    x: R,
    x_f64: f64,
    depth: usize,
    residual: R,
    scale: R,
}

impl<R: Clone> RadicalState<R> {
    /// Depth-0 state: `ε_0 = x` (`h_0 = 0`) and `Π_0 = sqrt(2x · x)`.
    pub fn new<A: Arithmetic<Real = R>>(arith: &A, x: f64) -> Result<Self> {
        check_domain(x)?;
        let xr = arith.from_f64(x)?;
        let two = arith.from_int(2);
        let scale = arith.sqrt(&arith.mul(&two, &arith.mul(&xr, &xr)))?;
        Ok(RadicalState {
            residual: xr.clone(),
            x: xr,
            x_f64: x,
            depth: 0,
            scale,
        })
    }

    /// The state after `depth` applications of [`RadicalState::advance`].
    pub fn at_depth<A: Arithmetic<Real = R>>(arith: &A, x: f64, depth: usize) -> Result<Self> {
        let mut state = Self::new(arith, x)?;
        for _ in 0..depth {
            state = state.advance(arith)?;
        }
        Ok(state)
    }

    pub fn x(&self) -> &R {
        &self.x
    }

    pub fn x_f64(&self) -> f64 {
        self.x_f64
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn residual(&self) -> &R {
        &self.residual
    }

    /// `Π_depth(x)`.
    pub fn scale(&self) -> &R {
        &self.scale
    }

    /// `h_depth = x - ε_depth`.
    pub fn h<A: Arithmetic<Real = R>>(&self, arith: &A) -> R {
        arith.sub(&self.x, &self.residual)
    }

    pub fn advance<A: Arithmetic<Real = R>>(&self, arith: &A) -> Result<Self> {
        self.advance_with_growth(arith).map(|(state, _)| state)
    }

    /// Advances one level and also returns the relative growth
    /// `Π_{i+1}/Π_i - 1`, computed without cancellation.
    pub fn advance_with_growth<A: Arithmetic<Real = R>>(&self, arith: &A) -> Result<(Self, R)> {
        let (residual, denom) = residual_parts(arith, &self.x, &self.residual)?;
        // 2x·ε_{i+1}/ε_i = 2x/denom = 1 + d with d = ε_{i+1}/denom.
        let d = arith.div(&residual, &denom)?;
        let one = arith.from_int(1);
        let root = arith.sqrt(&arith.add(&one, &d))?;
        let growth = arith.div(&d, &arith.add(&one, &root))?;
        let scale = arith.mul_add(&self.scale, &growth, &self.scale);
        if !arith.is_finite(&scale) {
            return Err(Error::Overflow(format!(
                "Π at x = {} depth {}",
                self.x_f64,
                self.depth + 1
            )));
        }
        let next = RadicalState {
            x: self.x.clone(),
            x_f64: self.x_f64,
            depth: self.depth + 1,
            residual,
            scale,
        };
        Ok((next, growth))
    }
}

/// A converged (or truncated) value of `π_x`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PiEstimate<R> {
    pub x: f64,
    pub iterations: usize,
    pub value: R,
    /// Claimed bound on `|π_x - value|`.
    pub error_bound: R,
    pub converged: bool,
}

/// `Π_iterations(x)` through the stable recurrence.
pub fn pi_value<A: Arithmetic>(arith: &A, x: f64, iterations: usize) -> Result<A::Real> {
    Ok(RadicalState::at_depth(arith, x, iterations)?.scale)
}

/// The difference estimator `(2x)^{(i+2)/2} · sqrt((h_{i+1} - h_i)/(2x - 1))`,
/// evaluated as `Π_i · sqrt(2x (ε_i - ε_{i+1}) / (ε_i (2x - 1)))`.
pub fn pi_diff_estimate<A: Arithmetic>(arith: &A, x: f64, iterations: usize) -> Result<A::Real> {
    let state = RadicalState::at_depth(arith, x, iterations)?;
    let (_, denom) = residual_parts(arith, &state.x, &state.residual)?;
    // (ε_i - ε_{i+1}) / ε_i = (denom - 1) / denom
    let one = arith.from_int(1);
    let two_x = arith.mul(&arith.from_int(2), &state.x);
    let numerator = arith.mul(&two_x, &arith.sub(&denom, &one));
    let denominator = arith.mul(&denom, &arith.sub(&two_x, &one));
    let ratio = arith.div(&numerator, &denominator)?;
    Ok(arith.mul(&state.scale, &arith.sqrt(&ratio)?))
}
