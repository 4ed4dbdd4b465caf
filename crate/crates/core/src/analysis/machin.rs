//! Independent π oracle: `π = 16·atan(1/5) - 4·atan(1/239)` with both
//! arctangents summed as alternating integer series in fixed point.

use crate::bigfixed::{BigFixed, GUARD_BITS, LOG2_10};

/// `atan(1/k)` summed until the next term is below `10^-(digits)`.
fn arctan_inverse(k: u64, digits: usize, frac_bits: u32) -> BigFixed {
    // Term m is below k^-(2m+1); pick m with (2m+1)·log10(k) >= digits.
    let terms = ((digits as f64 / (k as f64).log10() - 1.0) / 2.0)
        .ceil()
        .max(0.0) as u64
        + 1;
    let mut power = BigFixed::from_int(1, frac_bits)
        .div_int(k)
        .expect("nonzero divisor");
    let k2 = k * k;
    let mut sum = BigFixed::zero(frac_bits);
    for m in 0..=terms {
        let term = power.div_int(2 * m + 1).expect("nonzero divisor");
        sum = if m % 2 == 0 {
            &sum + &term
        } else {
            &sum - &term
        };
        power = power.div_int(k2).expect("nonzero divisor");
    }
    sum
}

/// π with series truncation below `10^-(digits + 5)` at a precision that
/// resolves `digits` decimal digits plus guard bits.
pub fn machin_pi(digits: usize) -> BigFixed {
    let target = digits + 5;
    let frac_bits = (target as f64 * LOG2_10).ceil() as u32 + GUARD_BITS;
    // The 16x factor costs another two decimal digits of series tail.
    let a = arctan_inverse(5, target + 2, frac_bits);
    let b = arctan_inverse(239, target + 2, frac_bits);
    &(&a * &BigFixed::from_int(16, frac_bits)) - &(&b * &BigFixed::from_int(4, frac_bits))
}

/// The first `n` decimal digits of π, truncated: `"3.1415…"`.
pub fn machin_pi_digits(n: usize) -> String {
    machin_pi(n.max(1)).to_decimal(n.max(1))
}
