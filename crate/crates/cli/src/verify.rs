//! Identity suites run by `pifunc verify`.

use pifunc::analysis::identities::{check, IdentityKind, IdentityReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_260_901;

#[derive(Debug)]
pub struct SuiteResult {
    pub identity: IdentityKind,
    pub reports: Vec<IdentityReport>,
}

impl SuiteResult {
    pub fn worst(&self) -> Option<&IdentityReport> {
        self.reports
            .iter()
            .max_by(|a, b| a.deviation().total_cmp(&b.deviation()))
    }

    pub fn passes(&self) -> bool {
        self.reports.iter().all(IdentityReport::passes)
    }
}

/// `(x, depth)` pairs checked by the default suite for `kind`.
pub fn suite_points(kind: IdentityKind, seed: u64, samples: usize) -> Vec<(f64, usize)> {
    let grid = |xs: &[f64], depths: std::ops::RangeInclusive<usize>| -> Vec<(f64, usize)> {
        xs.iter()
            .flat_map(|&x| depths.clone().map(move |i| (x, i)))
            .collect()
    };
    match kind {
        IdentityKind::Doubling => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| (10.0 - rng.gen_range(0.0..9.0), rng.gen_range(0..=40)))
                .collect()
        }
        IdentityKind::Ratio => grid(&[1.5, 2.0, 3.0, 20.0], 40..=40),
        IdentityKind::HReflection => grid(&[1.5, 2.0, 3.0, 10.0], 0..=20),
        IdentityKind::PiReflection => grid(&[1.5, 2.0, 3.0], 0..=30),
    }
}

pub fn run_suite(kind: IdentityKind, points: &[(f64, usize)]) -> pifunc::Result<SuiteResult> {
    let reports = points
        .iter()
        .map(|&(x, i)| check(kind, x, i))
        .collect::<pifunc::Result<Vec<_>>>()?;
    Ok(SuiteResult {
        identity: kind,
        reports,
    })
}
