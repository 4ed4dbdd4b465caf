//! Grid evaluation of `π_x` for plotting.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::limit::{pi_limit, LimitPolicy};
use crate::backend::{format_significant, Arithmetic};
use crate::error::{Error, Result};

/// Significant digits in CSV output.
pub const CSV_DIGITS: usize = 17;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub steps: usize,
    pub policy: LimitPolicy,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min > 1.0 && self.x_min < self.x_max && self.x_max.is_finite()) {
            return Err(Error::domain(format!(
                "sweep range must satisfy 1 < x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::domain("sweep needs at least 2 steps"));
        }
        Ok(())
    }

    /// Evenly spaced grid including both end points.
    pub fn grid(&self) -> Vec<f64> {
        let width = self.x_max - self.x_min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.x_max
                } else {
                    self.x_min + width * (k as f64 / last)
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSample {
    pub x: f64,
    pub pi_x: f64,
    /// `pi_x` rendered by the backend at [`CSV_DIGITS`] significant digits.
    pub pi_x_text: String,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub samples: Vec<SweepSample>,
    pub max_iterations: usize,
    pub converged: bool,
}

/// Evaluates the grid in parallel; samples come back in ascending `x`.
pub fn sweep<A: Arithmetic>(arith: &A, spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    let samples = spec
        .grid()
        .into_par_iter()
        .map(|x| {
            let estimate = pi_limit(arith, x, &spec.policy)?;
            Ok(SweepSample {
                x,
                pi_x: arith.to_f64(&estimate.value),
                pi_x_text: arith.to_decimal(&estimate.value, CSV_DIGITS),
                iterations: estimate.iterations,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_iterations = samples.iter().map(|s| s.iterations).max().unwrap_or(0);
    Ok(SweepReport {
        samples,
        max_iterations,
        converged: true,
    })
}

impl SweepReport {
    /// `x,pi_x` header plus one LF-terminated row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,pi_x\n");
        for sample in &self.samples {
            out.push_str(&format_significant(sample.x, CSV_DIGITS));
            out.push(',');
            out.push_str(&sample.pi_x_text);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{Double, FixedPoint};

    fn spec(x_min: f64, x_max: f64, steps: usize) -> SweepSpec {
        SweepSpec {
            x_min,
            x_max,
            steps,
            policy: LimitPolicy::default(),
        }
    }

    #[test]
    fn grid_includes_end_points() {
        let grid = spec(1.5, 3.5, 5).grid();
        assert_eq!(grid, vec![1.5, 2.0, 2.5, 3.0, 3.5]);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(sweep(&Double, &spec(0.5, 3.0, 10)).is_err());
        assert!(sweep(&Double, &spec(2.0, 2.0, 10)).is_err());
        assert!(sweep(&Double, &spec(1.5, 3.0, 1)).is_err());
    }

    #[test]
    fn dips_near_the_minimum() {
        let report = sweep(&Double, &spec(1.01, 3.0, 200)).unwrap();
        assert_eq!(report.samples.len(), 200);
        let (argmin, _) = report
            .samples
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.pi_x.total_cmp(&b.1.pi_x))
            .unwrap();
        assert!((report.samples[argmin].x - 1.19).abs() < 0.02);
        assert!(report.samples[argmin + 1..]
            .windows(2)
            .all(|w| w[1].pi_x > w[0].pi_x));
    }

    #[test]
    fn csv_layout() {
        let report = sweep(&Double, &spec(1.5, 3.5, 5)).unwrap();
        let csv = report.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,pi_x");
        assert_eq!(lines.len(), 6);
        assert!(lines[3].starts_with("2.5000000000000000,3.80846618"));
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn fixed_point_sweep_renders_truncated_digits() {
        let mut spec = spec(1.5, 2.5, 3);
        spec.policy = LimitPolicy::new(1e-20, 1_000).unwrap();
        let report = sweep(&FixedPoint::new(200), &spec).unwrap();
        assert_eq!(report.samples[1].pi_x_text, "3.1415926535897932");
    }
}
