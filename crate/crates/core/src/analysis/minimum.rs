//! Golden-section search for the minimum of `x ↦ π_x`.

use serde::Serialize;

use crate::analysis::limit::{pi_limit, LimitPolicy};
use crate::backend::Arithmetic;
use crate::error::Result;

/// Search interval; `π_x` is unimodal on it (checked on a grid in tests).
pub const SEARCH_BRACKET: (f64, f64) = (1.001, 2.0);
pub const X_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimumResult {
    pub x_star: f64,
    pub value: f64,
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

/// Minimizes `eval` over `[lo, hi]` until the bracket is narrower than
/// `x_tol`. Values are compared with `less`, so callers can compare at
/// full backend precision. The final bracket always contains `x_star`.
pub fn golden_section<T, E, L>(
    mut eval: E,
    less: L,
    lo: f64,
    hi: f64,
    x_tol: f64,
) -> Result<(f64, T, (f64, f64), usize)>
where
    E: FnMut(f64) -> Result<T>,
    L: Fn(&T, &T) -> bool,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    let mut evaluations = 2;
    while b - a > x_tol {
        if less(&fc, &fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
        }
        evaluations += 1;
    }
    let x_star = 0.5 * (a + b);
    let value = eval(x_star)?;
    Ok((x_star, value, (a, b), evaluations + 1))
}

pub fn find_minimum<A: Arithmetic>(arith: &A, policy: &LimitPolicy) -> Result<MinimumResult> {
    let (x_star, value, bracket, evaluations) = golden_section(
        |x| pi_limit(arith, x, policy).map(|estimate| estimate.value),
        |p, q| arith.cmp(p, q).is_lt(),
        SEARCH_BRACKET.0,
        SEARCH_BRACKET.1,
        X_TOLERANCE,
    )?;
    Ok(MinimumResult {
        x_star,
        value: arith.to_f64(&value),
        bracket,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::Double;

    #[test]
    fn parabola() {
        let (x, v, (lo, hi), n) =
            golden_section(|x| Ok((x - 0.3).powi(2)), |p, q| p < q, 0.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.3).abs() < 1e-8);
        assert!(v < 1e-16);
        assert!(lo < x && x < hi && hi - lo <= 1e-9);
        assert!(n > 40);
    }

    #[test]
    fn minimum_of_pi_x() {
        let m = find_minimum(&Double, &LimitPolicy::default()).unwrap();
        assert!((m.x_star - 1.19005).abs() <= 5e-3);
        assert!((m.value - 2.31383).abs() <= 1e-3);
        assert!(m.bracket.0 < m.x_star && m.x_star < m.bracket.1);
        assert!(m.evaluations > 0);
    }
}
