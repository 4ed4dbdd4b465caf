//! Numeric backends the recurrences are generic over.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::bigfixed::BigFixed;
use crate::error::{Error, Result};

/// Arithmetic surface needed by the nested-radical recurrences.
///
/// Implementations are stateless descriptors (the precision lives in the
/// backend, not in the values), so one backend can be shared across threads.
#[allow(clippy::wrong_self_convention)]
pub trait Arithmetic: Sync {
    type Real: Clone + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> BackendDescriptor;

    fn from_int(&self, n: i64) -> Self::Real;
    fn from_f64(&self, value: f64) -> Result<Self::Real>;

    fn add(&self, a: &Self::Real, b: &Self::Real) -> Self::Real;
    fn sub(&self, a: &Self::Real, b: &Self::Real) -> Self::Real;
    fn mul(&self, a: &Self::Real, b: &Self::Real) -> Self::Real;
    fn div(&self, a: &Self::Real, b: &Self::Real) -> Result<Self::Real>;
    /// Errors with [`Error::Domain`] on a negative argument.
    fn sqrt(&self, a: &Self::Real) -> Result<Self::Real>;
    fn cmp(&self, a: &Self::Real, b: &Self::Real) -> Ordering;

    /// `a * b + c`; backends with a fused operation override this.
    fn mul_add(&self, a: &Self::Real, b: &Self::Real, c: &Self::Real) -> Self::Real {
        self.add(&self.mul(a, b), c)
    }

    /// False when the value has left the representable range.
    fn is_finite(&self, _a: &Self::Real) -> bool {
        true
    }

    fn to_f64(&self, a: &Self::Real) -> f64;
    fn log2_abs(&self, a: &Self::Real) -> f64;
    /// Truncated decimal rendering with `digits` significant digits.
    fn to_decimal(&self, a: &Self::Real, digits: usize) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BackendDescriptor {
    HardwareDouble,
    BigFixed { frac_bits: u32 },
}

impl fmt::Display for BackendDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendDescriptor::HardwareDouble => f.write_str("double"),
            BackendDescriptor::BigFixed { frac_bits } => write!(f, "bigfixed({frac_bits} bits)"),
        }
    }
}

/// IEEE-754 binary64.
#[derive(Clone, Copy, Debug, Default)]
pub struct Double;

impl Arithmetic for Double {
    type Real = f64;

    fn descriptor(&self) -> BackendDescriptor {
        BackendDescriptor::HardwareDouble
    }

    fn from_int(&self, n: i64) -> f64 {
        n as f64
    }

    fn from_f64(&self, value: f64) -> Result<f64> {
        Ok(value)
    }

    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }

    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn div(&self, a: &f64, b: &f64) -> Result<f64> {
        if *b == 0.0 {
            return Err(Error::DivideByZero);
        }
        Ok(a / b)
    }

    fn sqrt(&self, a: &f64) -> Result<f64> {
        if a.is_nan() || *a < 0.0 {
            return Err(Error::domain(format!("square root of {a}")));
        }
        Ok(a.sqrt())
    }

    fn cmp(&self, a: &f64, b: &f64) -> Ordering {
        a.total_cmp(b)
    }

    fn mul_add(&self, a: &f64, b: &f64, c: &f64) -> f64 {
        a.mul_add(*b, *c)
    }

    fn is_finite(&self, a: &f64) -> bool {
        a.is_finite()
    }

    fn to_f64(&self, a: &f64) -> f64 {
        *a
    }

    fn log2_abs(&self, a: &f64) -> f64 {
        a.abs().log2()
    }

    fn to_decimal(&self, a: &f64, digits: usize) -> String {
        format_significant(*a, digits)
    }
}

/// [`BigFixed`] values at a fixed number of fractional bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub frac_bits: u32,
}

impl FixedPoint {
    pub fn new(frac_bits: u32) -> Self {
        FixedPoint { frac_bits }
    }
}

impl Arithmetic for FixedPoint {
    type Real = BigFixed;

    fn descriptor(&self) -> BackendDescriptor {
        BackendDescriptor::BigFixed {
            frac_bits: self.frac_bits,
        }
    }

    fn from_int(&self, n: i64) -> BigFixed {
        BigFixed::from_int(n, self.frac_bits)
    }

    fn from_f64(&self, value: f64) -> Result<BigFixed> {
        BigFixed::from_f64(value, self.frac_bits)
    }

    fn add(&self, a: &BigFixed, b: &BigFixed) -> BigFixed {
        a + b
    }

    fn sub(&self, a: &BigFixed, b: &BigFixed) -> BigFixed {
        a - b
    }

    fn mul(&self, a: &BigFixed, b: &BigFixed) -> BigFixed {
        a * b
    }

    fn div(&self, a: &BigFixed, b: &BigFixed) -> Result<BigFixed> {
        a.checked_div(b)
    }

    fn sqrt(&self, a: &BigFixed) -> Result<BigFixed> {
        a.sqrt()
    }

    fn cmp(&self, a: &BigFixed, b: &BigFixed) -> Ordering {
        a.cmp(b)
    }

    fn to_f64(&self, a: &BigFixed) -> f64 {
        a.to_f64()
    }

    fn log2_abs(&self, a: &BigFixed) -> f64 {
        a.log2_abs()
    }

    fn to_decimal(&self, a: &BigFixed, digits: usize) -> String {
        a.to_decimal(digits)
    }
}

/// Renders `value` with `digits` significant digits in positional notation
/// (rounded to nearest, as the standard formatter does).
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value:.*}", digits.saturating_sub(1));
    }
    let magnitude = value.abs().log10().floor() as i64;
    let places = (digits as i64 - 1 - magnitude).max(0) as usize;
    let text = format!("{value:.places$}");
    // Rounding can carry into a new leading digit (9.99 -> 10.0).
    let significant = text
        .trim_start_matches('-')
        .replace('.', "")
        .trim_start_matches('0')
        .len();
    if significant > digits && places > 0 {
        let places = places - 1;
        return format!("{value:.places$}");
    }
    text
}
