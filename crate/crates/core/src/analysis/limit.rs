use crate::backend::Arithmetic;
use crate::bigfixed::LOG2_10;
use crate::error::{Error, Result};
use crate::radical::{PiEstimate, RadicalState};

/// A positive relative tolerance, stored as `log2` so that digit targets far
/// below `f64` range (`1e-1000`) stay representable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelTol {
    log2: f64,
}

impl RelTol {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(RelTol { log2: value.log2() })
        } else {
            Err(Error::domain(format!(
                "relative tolerance must be positive, got {value}"
            )))
        }
    }

    /// `10^-digits`.
    pub fn from_digits(digits: u32) -> Self {
        RelTol {
            log2: -(digits as f64) * LOG2_10,
        }
    }

    pub fn log2(&self) -> f64 {
        self.log2
    }

    /// The tolerance as a double; underflows to 0 for digit targets beyond
    /// ~307.
    pub fn value(&self) -> f64 {
        self.log2.exp2()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitPolicy {
    pub rel_tol: RelTol,
    pub max_iterations: usize,
}

impl LimitPolicy {
    pub fn new(rel_tol: f64, max_iterations: usize) -> Result<Self> {
        if max_iterations == 0 {
            return Err(Error::domain("max_iterations must be at least 1"));
        }
        Ok(LimitPolicy {
            rel_tol: RelTol::new(rel_tol)?,
            max_iterations,
        })
    }
}

impl Default for LimitPolicy {
    fn default() -> Self {
        LimitPolicy {
            rel_tol: RelTol::new(1e-12).expect("positive"),
            max_iterations: 10_000,
        }
    }
}

/// Iterates until the geometric tail of the remaining growth drops below
/// the tolerance, or `max_iterations` is exhausted (`converged = false`).
///
/// With per-level growth `Δ_i = Π_{i+1}/Π_i - 1` shrinking by about
/// `r = 1/(2x)` per level, the remaining relative increase is about
/// `Δ_i · r/(1-r) = Δ_i / (2x - 1)`. The reported `error_bound` doubles that.
pub fn pi_iterate<A: Arithmetic>(
    arith: &A,
    x: f64,
    policy: &LimitPolicy,
) -> Result<PiEstimate<A::Real>> {
    let mut state = RadicalState::new(arith, x)?;
    let one = arith.from_int(1);
    let two_x = arith.mul(&arith.from_int(2), state.x());
    let tail_factor = arith.div(&one, &arith.sub(&two_x, &one))?;
    let two = arith.from_int(2);

    let mut tail = one.clone();
    let mut converged = false;
    for _ in 0..policy.max_iterations.max(1) {
        let (next, growth) = state.advance_with_growth(arith)?;
        state = next;
        tail = arith.mul(&growth, &tail_factor);
        if arith.log2_abs(&tail) <= policy.rel_tol.log2() {
            converged = true;
            break;
        }
    }
    let error_bound = arith.mul(&two, &arith.mul(state.scale(), &tail));
    Ok(PiEstimate {
        x,
        iterations: state.depth(),
        value: state.scale().clone(),
        error_bound,
        converged,
    })
}

/// [`pi_iterate`], failing with [`Error::NonConvergence`] (carrying the best
/// value reached) when the stopping rule never fires.
pub fn pi_limit<A: Arithmetic>(
    arith: &A,
    x: f64,
    policy: &LimitPolicy,
) -> Result<PiEstimate<A::Real>> {
    let estimate = pi_iterate(arith, x, policy)?;
    if estimate.converged {
        Ok(estimate)
    } else {
        Err(Error::NonConvergence {
            x,
            iterations: estimate.iterations,
            best: arith.to_f64(&estimate.value),
        })
    }
}
