//! Arbitrary-precision binary fixed-point reals.
//!
//! A [`BigFixed`] is `sign · magnitude · 2^-frac_bits`. Binary operations
//! first align both operands to the larger `frac_bits` and the result
//! carries that precision. Addition and subtraction are exact; every other
//! operation truncates toward zero, and [`BigFixed::sqrt`] is a floor square
//! root, so all rounding error is one-sided.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::error::{Error, Result};

pub const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Guard bits added on top of every precision plan.
pub const GUARD_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid decimal {text:?}: {reason}")]
pub struct ParseError {
    text: String,
    reason: &'static str,
}

impl ParseError {
    fn new(text: &str, reason: &'static str) -> Self {
        ParseError {
            text: text.to_owned(),
            reason,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BigFixed {
    sign: Sign,
    magnitude: BigUint,
    frac_bits: u32,
}

impl BigFixed {
    pub fn from_parts(negative: bool, magnitude: BigUint, frac_bits: u32) -> Self {
        let sign = if magnitude.is_zero() {
            Sign::Zero
        } else if negative {
            Sign::Negative
        } else {
            Sign::Positive
        };
        BigFixed {
            sign,
            magnitude,
            frac_bits,
        }
    }

    pub fn zero(frac_bits: u32) -> Self {
        Self::from_parts(false, BigUint::zero(), frac_bits)
    }

    pub fn from_int(n: i64, frac_bits: u32) -> Self {
        Self::from_parts(
            n < 0,
            BigUint::from(n.unsigned_abs()) << frac_bits,
            frac_bits,
        )
    }

    /// Converts a finite double, truncating toward zero if it carries more
    /// fractional bits than `frac_bits`.
    pub fn from_f64(value: f64, frac_bits: u32) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain(format!(
                "cannot convert {value} to fixed point"
            )));
        }
        if value == 0.0 {
            return Ok(Self::zero(frac_bits));
        }
        let bits = value.to_bits();
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        // value = mantissa · 2^(exp2)
        let (mantissa, exp2) = if exponent == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), exponent - 1075)
        };
        let shift = exp2 + frac_bits as i64;
        let mantissa = BigUint::from(mantissa);
        let magnitude = if shift >= 0 {
            mantissa << shift as u64
        } else {
            mantissa >> (-shift) as u64
        };
        Ok(Self::from_parts(value < 0.0, magnitude, frac_bits))
    }

    /// Parses `[-]digits[.digits]`, truncating toward zero at `frac_bits`.
    pub fn from_decimal(text: &str, frac_bits: u32) -> Result<Self, ParseError> {
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() {
            return Err(ParseError::new(text, "missing integer digits"));
        }
        if body.contains('.') && frac_part.is_empty() {
            return Err(ParseError::new(text, "missing fractional digits"));
        }
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(ParseError::new(text, "unexpected character"));
        }
        let digits = format!("{int_part}{frac_part}");
        let scaled = BigUint::parse_bytes(digits.as_bytes(), 10)
            .ok_or_else(|| ParseError::new(text, "unparseable digits"))?;
        let denominator = pow10(frac_part.len() as u32);
        let magnitude = (scaled << frac_bits) / denominator;
        Ok(Self::from_parts(negative, magnitude, frac_bits))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn magnitude(&self) -> &BigUint {
        &self.magnitude
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    pub fn abs(&self) -> Self {
        Self::from_parts(false, self.magnitude.clone(), self.frac_bits)
    }

    /// Re-expresses the value with `frac_bits` fractional bits, truncating
    /// toward zero when precision is reduced.
    pub fn with_frac_bits(&self, frac_bits: u32) -> Self {
        let magnitude = match frac_bits.cmp(&self.frac_bits) {
            Ordering::Equal => self.magnitude.clone(),
            Ordering::Greater => &self.magnitude << (frac_bits - self.frac_bits),
            Ordering::Less => &self.magnitude >> (self.frac_bits - frac_bits),
        };
        Self::from_parts(self.is_negative(), magnitude, frac_bits)
    }

    fn signed_at(&self, frac_bits: u32) -> BigInt {
        debug_assert!(frac_bits >= self.frac_bits);
        let magnitude = &self.magnitude << (frac_bits - self.frac_bits);
        let sign = match self.sign {
            Sign::Negative => BigSign::Minus,
            Sign::Zero => BigSign::NoSign,
            Sign::Positive => BigSign::Plus,
        };
        BigInt::from_biguint(sign, magnitude)
    }

    fn from_signed(value: BigInt, frac_bits: u32) -> Self {
        let (sign, magnitude) = value.into_parts();
        Self::from_parts(sign == BigSign::Minus, magnitude, frac_bits)
    }

    pub fn checked_div(&self, rhs: &BigFixed) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivideByZero);
        }
        let frac_bits = self.frac_bits.max(rhs.frac_bits);
        let shift = frac_bits - self.frac_bits + rhs.frac_bits;
        let magnitude = (&self.magnitude << shift) / &rhs.magnitude;
        Ok(Self::from_parts(
            self.is_negative() != rhs.is_negative(),
            magnitude,
            frac_bits,
        ))
    }

    /// Division by a small positive integer, truncating toward zero.
    pub fn div_int(&self, divisor: u64) -> Result<Self> {
        if divisor == 0 {
            return Err(Error::DivideByZero);
        }
        Ok(Self::from_parts(
            self.is_negative(),
            &self.magnitude / divisor,
            self.frac_bits,
        ))
    }

    /// Floor square root: `r <= sqrt(self) < r + 2^-frac_bits`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::domain("square root of a negative value"));
        }
        let magnitude = isqrt(&(&self.magnitude << self.frac_bits));
        Ok(Self::from_parts(false, magnitude, self.frac_bits))
    }

    /// Approximate `log2(|self|)`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.magnitude.bits();
        let shift = bits.saturating_sub(64);
        let top = (&self.magnitude >> shift).to_u64().unwrap_or(u64::MAX) as f64;
        top.log2() + shift as f64 - self.frac_bits as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.magnitude.bits();
        let shift = bits.saturating_sub(64);
        let top = (&self.magnitude >> shift).to_u64().unwrap_or(u64::MAX) as f64;
        let value = ldexp(top, shift as i64 - self.frac_bits as i64);
        if self.is_negative() {
            -value
        } else {
            value
        }
    }

    /// Decimal rendering truncated (never rounded) to `digits` significant
    /// digits. Values whose integer part is longer than `digits` are padded
    /// with zeros.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return pad_fraction("0", digits - 1);
        }
        let mut exponent = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let significand = loop {
            let candidate = self.scaled_by_pow10(digits as i64 - 1 - exponent);
            let len = if candidate.is_zero() {
                0
            } else {
                candidate.to_str_radix(10).len()
            };
            match len.cmp(&digits) {
                Ordering::Less => exponent -= 1,
                Ordering::Greater => exponent += 1,
                Ordering::Equal => break candidate.to_str_radix(10),
            }
        };
        let body = if exponent >= digits as i64 - 1 {
            let zeros = (exponent - (digits as i64 - 1)) as usize;
            format!("{significand}{}", "0".repeat(zeros))
        } else if exponent >= 0 {
            let (int, frac) = significand.split_at(exponent as usize + 1);
            format!("{int}.{frac}")
        } else {
            format!("0.{}{significand}", "0".repeat((-exponent - 1) as usize))
        };
        if self.is_negative() {
            format!("-{body}")
        } else {
            body
        }
    }

    /// `floor(|self| · 10^power)` as an integer.
    fn scaled_by_pow10(&self, power: i64) -> BigUint {
        if power >= 0 {
            (&self.magnitude * pow10(power as u32)) >> self.frac_bits
        } else {
            (&self.magnitude >> self.frac_bits) / pow10((-power) as u32)
        }
    }
}

fn pad_fraction(int: &str, places: usize) -> String {
    if places == 0 {
        int.to_owned()
    } else {
        format!("{int}.{}", "0".repeat(places))
    }
}

fn pow10(exp: u32) -> BigUint {
    BigUint::from(10u32).pow(exp)
}

fn ldexp(mut value: f64, mut exp: i64) -> f64 {
    let step = 2f64.powi(1000);
    while exp > 1000 && value.is_finite() {
        value *= step;
        exp -= 1000;
    }
    while exp < -1000 && value != 0.0 {
        value /= step;
        exp += 1000;
    }
    value * 2f64.powi(exp as i32)
}

/// `floor(sqrt(n))` by Newton iteration from an overestimate.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let bits = n.bits();
    let mut x = if bits <= 100 {
        BigUint::one() << bits.div_ceil(2)
    } else {
        // Seed from the leading ~100 bits; +2 keeps the seed above the root.
        let shift = (bits - 100) & !1;
        let top = (n >> shift).to_u128().expect("at most 101 bits");
        let seed = ((top + 1) as f64).sqrt().ceil() as u128 + 2;
        BigUint::from(seed) << (shift / 2)
    };
    loop {
        let next: BigUint = (&x + n / &x) >> 1u32;
        if next >= x {
            return x;
        }
        x = next;
    }
}

impl PartialEq for BigFixed {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFixed {}

impl PartialOrd for BigFixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFixed {
    fn cmp(&self, other: &Self) -> Ordering {
        let frac_bits = self.frac_bits.max(other.frac_bits);
        self.signed_at(frac_bits).cmp(&other.signed_at(frac_bits))
    }
}

impl Neg for &BigFixed {
    type Output = BigFixed;
    fn neg(self) -> BigFixed {
        BigFixed::from_parts(!self.is_negative(), self.magnitude.clone(), self.frac_bits)
    }
}

impl Add for &BigFixed {
    type Output = BigFixed;
    fn add(self, rhs: &BigFixed) -> BigFixed {
        let frac_bits = self.frac_bits.max(rhs.frac_bits);
        BigFixed::from_signed(
            self.signed_at(frac_bits) + rhs.signed_at(frac_bits),
            frac_bits,
        )
    }
}

impl Sub for &BigFixed {
    type Output = BigFixed;
    fn sub(self, rhs: &BigFixed) -> BigFixed {
        let frac_bits = self.frac_bits.max(rhs.frac_bits);
        BigFixed::from_signed(
            self.signed_at(frac_bits) - rhs.signed_at(frac_bits),
            frac_bits,
        )
    }
}

impl Mul for &BigFixed {
    type Output = BigFixed;
    fn mul(self, rhs: &BigFixed) -> BigFixed {
        let frac_bits = self.frac_bits.max(rhs.frac_bits);
        let drop = self.frac_bits + rhs.frac_bits - frac_bits;
        let magnitude = (&self.magnitude * &rhs.magnitude) >> drop;
        BigFixed::from_parts(
            self.is_negative() != rhs.is_negative(),
            magnitude,
            frac_bits,
        )
    }
}

macro_rules! forward_owned {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp for BigFixed {
            type Output = BigFixed;
            fn $method(self, rhs: BigFixed) -> BigFixed {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for BigFixed {
    /// Every fractional digit the precision can resolve, truncated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = (self.frac_bits as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        let digits = self.scaled_by_pow10(places as i64).to_str_radix(10);
        let digits = format!("{:0>width$}", digits, width = places + 1);
        let (int, frac) = digits.split_at(digits.len() - places);
        if self.is_negative() {
            f.write_str("-")?;
        }
        if places == 0 {
            f.write_str(int)
        } else {
            write!(f, "{int}.{frac}")
        }
    }
}

/// Iteration count and fixed-point budget for a digit target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PrecisionPlan {
    pub target_digits: u32,
    pub iterations: usize,
    pub frac_bits: u32,
}

/// Smallest `(iterations, frac_bits)` that resolves `target_digits` of
/// `pi_x`. Each nesting level shrinks the residual by about `2x`, so an
/// absolute error of `2^-F` in the residual grows by `(2x)^i` in the
/// estimate.
pub fn plan_precision(x: f64, target_digits: u32) -> Result<PrecisionPlan> {
    if x <= 1.0 || !x.is_finite() {
        return Err(Error::domain(format!(
            "precision plan requires x > 1, got {x}"
        )));
    }
    if target_digits == 0 {
        return Err(Error::domain("precision plan requires at least one digit"));
    }
    let per_level = (2.0 * x).log2();
    let decimal_bits = target_digits as f64 * LOG2_10;
    let iterations = (decimal_bits / per_level).ceil() as usize;
    Ok(PrecisionPlan {
        target_digits,
        iterations,
        frac_bits: frac_bits_for(x, iterations, target_digits),
    })
}

/// Fractional bits that keep `digits` significant digits of `Π_i(x)` after
/// `iterations` nesting levels.
pub fn frac_bits_for(x: f64, iterations: usize, digits: u32) -> u32 {
    let bits = iterations as f64 * (2.0 * x).log2() + digits as f64 * LOG2_10;
    (bits + GUARD_BITS as f64).ceil() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dec(text: &str, frac_bits: u32) -> BigFixed {
        BigFixed::from_decimal(text, frac_bits).unwrap()
    }

    #[test]
    fn parses_exact_binary_fractions() {
        let v = dec("1.5", 8);
        assert_eq!(v.magnitude(), &BigUint::from(384u32));
        assert_eq!(v.frac_bits(), 8);
        let v = dec("-2", 4);
        assert_eq!(v.sign(), Sign::Negative);
        assert_eq!(v.magnitude(), &BigUint::from(32u32));
        assert_eq!(dec("-0.0", 4).sign(), Sign::Zero);
    }

    #[test]
    fn rejects_malformed_decimals() {
        for bad in [
            "abc", "", "-", "1.", ".5", "1e5", "1,5", "1.2.3", "--1", " 1",
        ] {
            assert!(BigFixed::from_decimal(bad, 8).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn truncates_inexact_decimals_toward_zero() {
        // 0.1 · 2^8 = 25.6
        assert_eq!(dec("0.1", 8).magnitude(), &BigUint::from(25u32));
        assert_eq!(dec("-0.1", 8).magnitude(), &BigUint::from(25u32));
    }

    #[test]
    fn basic_arithmetic() {
        let three = &dec("1.5", 16) * &BigFixed::from_int(2, 16);
        assert_eq!(three, BigFixed::from_int(3, 16));
        let third = BigFixed::from_int(1, 8)
            .checked_div(&BigFixed::from_int(3, 8))
            .unwrap();
        assert_eq!(third.magnitude(), &BigUint::from(85u32));
        assert_eq!(third.to_f64(), 0.33203125);
        let x = dec("-12.375", 40);
        assert!((&x - &x).is_zero());
        assert_eq!(
            BigFixed::from_int(1, 8).checked_div(&BigFixed::zero(8)),
            Err(Error::DivideByZero)
        );
    }

    #[test]
    fn mul_and_div_truncate_toward_zero() {
        let a = dec("-1", 8);
        let third = a.checked_div(&BigFixed::from_int(3, 8)).unwrap();
        assert_eq!(third.magnitude(), &BigUint::from(85u32));
        assert!(third.is_negative());
        let tiny = BigFixed::from_parts(true, BigUint::one(), 8);
        assert!((&tiny * &tiny).is_zero());
    }

    #[test]
    fn mixed_precision_operands_align_to_the_finer_one() {
        let a = dec("1.25", 4);
        let b = dec("0.1", 30);
        let manual = &a.with_frac_bits(30) + &b;
        assert_eq!((&a + &b).frac_bits(), 30);
        assert_eq!(&a + &b, manual);
        assert_eq!((&a * &b).frac_bits(), 30);
        assert_eq!(&a * &b, &a.with_frac_bits(30) * &b);
        assert_eq!(
            a.checked_div(&b).unwrap(),
            a.with_frac_bits(30).checked_div(&b).unwrap()
        );
    }

    #[test]
    fn sqrt_examples() {
        let r = BigFixed::from_int(144, 0).sqrt().unwrap();
        assert_eq!(r, BigFixed::from_int(12, 0));
        assert!(BigFixed::zero(32).sqrt().unwrap().is_zero());
        assert!(matches!(
            BigFixed::from_int(-1, 8).sqrt(),
            Err(Error::Domain(_))
        ));
        // Reference digits from an independent 40-digit computation.
        let root2 = BigFixed::from_int(2, 64).sqrt().unwrap();
        assert_eq!(root2.to_decimal(19), "1.414213562373095048");
    }

    #[test]
    fn sqrt_bracket_holds_for_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let frac_bits = rng.gen_range(0..200);
            let limbs: Vec<u32> = (0..rng.gen_range(1..12)).map(|_| rng.gen()).collect();
            let a = BigFixed::from_parts(false, BigUint::new(limbs), frac_bits);
            let r = a.sqrt().unwrap();
            let ulp = BigFixed::from_parts(false, BigUint::one(), frac_bits);
            let next = &r + &ulp;
            // Exact comparisons at doubled precision.
            let fine = 2 * frac_bits;
            let square = |v: &BigFixed| {
                let v = v.with_frac_bits(fine);
                BigFixed::from_parts(false, (v.magnitude() * v.magnitude()) >> fine, fine)
            };
            assert!(square(&r) <= a.with_frac_bits(fine));
            assert!(square(&next) > a.with_frac_bits(fine));
        }
    }

    #[test]
    fn isqrt_matches_library_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2_000 {
            let limbs: Vec<u32> = (0..rng.gen_range(1..80)).map(|_| rng.gen()).collect();
            let n = BigUint::new(limbs);
            assert_eq!(isqrt(&n), num_integer::Roots::sqrt(&n));
        }
        for k in 0u32..300 {
            let n = BigUint::one() << k;
            assert_eq!(isqrt(&n), num_integer::Roots::sqrt(&n));
            let m = &n - BigUint::one();
            assert_eq!(isqrt(&m), num_integer::Roots::sqrt(&m));
        }
    }

    #[test]
    fn renders_truncated_significant_digits() {
        assert_eq!(BigFixed::from_int(3, 16).to_decimal(5), "3.0000");
        let third = BigFixed::from_int(1, 64)
            .checked_div(&BigFixed::from_int(3, 64))
            .unwrap();
        assert_eq!(third.to_decimal(6), "0.333333");
        assert_eq!(dec("0.0012999", 80).to_decimal(2), "0.0012");
        assert_eq!(dec("-28.4696569", 80).to_decimal(8), "-28.469656");
        assert_eq!(BigFixed::from_int(12345, 4).to_decimal(3), "12300");
        assert_eq!(BigFixed::from_int(100, 4).to_decimal(3), "100");
        assert_eq!(BigFixed::zero(8).to_decimal(3), "0.00");
        assert_eq!(BigFixed::from_int(9, 0).to_decimal(1), "9");
    }

    #[test]
    fn f64_conversions() {
        for v in [0.0, 1.5, -2.75, 1.001, 3.0e-5, 12345.678, f64::MIN_POSITIVE] {
            let fixed = BigFixed::from_f64(v, 1100).unwrap();
            assert_eq!(fixed.to_f64(), v);
        }
        assert!(BigFixed::from_f64(f64::NAN, 8).is_err());
        let v = BigFixed::from_f64(1.001, 200).unwrap();
        assert!((v.log2_abs() - 1.001f64.log2()).abs() < 1e-12);
        assert_eq!(BigFixed::zero(3).log2_abs(), f64::NEG_INFINITY);
    }

    #[test]
    fn display_shows_resolved_digits() {
        assert_eq!(dec("1.5", 4).to_string(), "1.50");
        assert_eq!(dec("0.25", 4).to_string(), "0.25");
    }

    #[test]
    fn precision_plans() {
        let plan = plan_precision(2.0, 100).unwrap();
        assert_eq!(plan.iterations, 167);
        assert_eq!(plan.frac_bits, 731);
        assert_eq!(plan_precision(20.0, 100).unwrap().iterations, 63);
        assert!(matches!(plan_precision(1.0, 10), Err(Error::Domain(_))));
        assert!(plan_precision(2.0, 0).is_err());
    }
}
