//! Decimal digits of π from the nested radical at `x = 2`, cross-checked
//! against the Machin series.

use serde::Serialize;

use crate::analysis::limit::{pi_limit, LimitPolicy, RelTol};
use crate::analysis::machin::machin_pi_digits;
use crate::backend::FixedPoint;
use crate::bigfixed::{plan_precision, BigFixed, PrecisionPlan};
use crate::error::{Error, Result};

/// Trailing digits allowed to differ between the two computations.
pub const TOLERATED_TRAILING_DIGITS: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DigitsOutcome {
    pub count: usize,
    /// Nested-radical digits, truncated.
    pub digits: String,
    pub oracle: String,
    /// Leading digits on which both computations agree.
    pub matching: usize,
    pub iterations: usize,
    pub plan: PrecisionPlan,
}

/// `count` significant digits (including the leading 3) of `π_2` by the
/// nested radical, without the oracle check.
pub fn nested_radical_pi(count: usize) -> Result<(BigFixed, usize, PrecisionPlan)> {
    if count == 0 {
        return Err(Error::domain("digit count must be at least 1"));
    }
    let target = u32::try_from(count + 1)
        .map_err(|_| Error::domain(format!("digit count {count} is too large")))?;
    let plan = plan_precision(2.0, target)?;
    let arith = FixedPoint::new(plan.frac_bits);
    let policy = LimitPolicy {
        rel_tol: RelTol::from_digits(target),
        max_iterations: 2 * plan.iterations + 16,
    };
    let estimate = pi_limit(&arith, 2.0, &policy)?;
    Ok((estimate.value, estimate.iterations, plan))
}

/// Number of leading digit characters shared by two renderings.
pub fn leading_agreement(a: &str, b: &str) -> usize {
    a.chars()
        .zip(b.chars())
        .take_while(|(p, q)| p == q)
        .filter(|(p, _)| p.is_ascii_digit())
        .count()
}

/// Nested-radical digits, failing with [`Error::OracleMismatch`] if they
/// disagree with the Machin oracle before the last two digits.
pub fn pi_digits(count: usize) -> Result<DigitsOutcome> {
    let (value, iterations, plan) = nested_radical_pi(count)?;
    let digits = value.to_decimal(count);
    let oracle = machin_pi_digits(count);
    let matching = leading_agreement(&digits, &oracle);
    let required = count.saturating_sub(TOLERATED_TRAILING_DIGITS).max(1);
    if matching < required {
        return Err(Error::OracleMismatch { matching, required });
    }
    Ok(DigitsOutcome {
        count,
        digits,
        oracle,
        matching,
        iterations,
        plan,
    })
}
