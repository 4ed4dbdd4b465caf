//! Large-`x` approximations of `π_x`. Both expand as
//! `√2·x·(1 + 1/(8x) + O(x⁻²))`.

use crate::error::{Error, Result};

/// `x · sqrt((4x - 1)/(2x - 1))`, defined for `x > 1/2`.
pub fn asympt_sqrt(x: f64) -> Result<f64> {
    if x <= 0.5 || !x.is_finite() {
        return Err(Error::domain(format!("asympt_sqrt needs x > 1/2, got {x}")));
    }
    Ok(x * ((4.0 * x - 1.0) / (2.0 * x - 1.0)).sqrt())
}

/// `√2 · x · (1 + 1/(8x))`, defined for `x > 0`.
pub fn asympt_linear(x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::domain(format!("asympt_linear needs x > 0, got {x}")));
    }
    Ok(std::f64::consts::SQRT_2 * x * (1.0 + 1.0 / (8.0 * x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        let cases = [
            (20.0, 28.465_003_254_108_55, 28.461_047_942_758_54),
            (8.0, 11.500_724_614_852_17, 11.490_485_194_281_4),
            (2.0, 3.055_050_463_303_893, 3.005_203_820_042_827),
        ];
        for (x, sqrt_form, linear_form) in cases {
            assert!((asympt_sqrt(x).unwrap() - sqrt_form).abs() < 1e-13);
            assert!((asympt_linear(x).unwrap() - linear_form).abs() < 1e-13);
        }
    }

    #[test]
    fn forms_converge_relative_to_each_other() {
        let gap = |x: f64| (asympt_linear(x).unwrap() / asympt_sqrt(x).unwrap() - 1.0).abs();
        let mut previous = f64::INFINITY;
        for x in [2.0, 8.0, 20.0, 80.0, 320.0, 1280.0] {
            let g = gap(x);
            assert!(g < previous, "x = {x}");
            previous = g;
        }
        assert!(previous < 1e-6);
    }

    #[test]
    fn domains() {
        assert!(asympt_sqrt(0.5).is_err());
        assert!(asympt_linear(0.0).is_err());
        assert!(asympt_sqrt(0.75).is_ok());
    }
}
