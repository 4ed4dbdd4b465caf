use num_bigint::BigUint;
use pifunc::analysis::identities::ulps_between;
use pifunc::analysis::{
    find_minimum, machin_pi_digits, pi_limit, ratio_convergence, LimitPolicy, RelTol,
};
use pifunc::bigfixed::{frac_bits_for, plan_precision, BigFixed};
use pifunc::digits::leading_agreement;
use pifunc::radical::literal_h;
use pifunc::sweep::{sweep, SweepSpec};
use pifunc::{pi_diff_estimate, pi_value, Double, FixedPoint, RadicalState};
use proptest::prelude::*;

fn power_of_ten(exp: i32) -> String {
    if exp >= 0 {
        format!("1{}", "0".repeat(exp as usize))
    } else {
        format!("0.{}1", "0".repeat((-exp - 1) as usize))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residual_shrinks_by_between_x_and_2x(x in 1.000_001f64..=100.0) {
        let mut state = RadicalState::new(&Double, x).unwrap();
        for _ in 0..200 {
            let eps = *state.residual();
            if eps < f64::MIN_POSITIVE * 2.0 * x {
                break;
            }
            let next = state.advance(&Double).unwrap();
            let eps_next = *next.residual();
            prop_assert!(0.0 < eps_next && eps_next < eps);
            prop_assert!(eps / (2.0 * x) <= eps_next && eps_next <= eps / x);
            state = next;
        }
    }

    #[test]
    fn estimates_never_decrease(x in 1.000_001f64..=100.0) {
        let mut state = RadicalState::new(&Double, x).unwrap();
        for _ in 0..200 {
            let next = state.advance(&Double).unwrap();
            let floor = *state.scale() - 4.0 * f64::EPSILON * state.scale();
            prop_assert!(*next.scale() >= floor);
            state = next;
        }
    }

    #[test]
    fn literal_and_stable_residuals_agree(x in 1.000_001f64..=100.0) {
        let mut state = RadicalState::new(&Double, x).unwrap();
        for depth in 0..=15 {
            let literal = x - literal_h(&Double, &x, depth).unwrap();
            prop_assert!((literal - state.residual()).abs() <= 1e-10 * x);
            state = state.advance(&Double).unwrap();
        }
    }

    #[test]
    fn add_then_subtract_is_exact(a in any::<i64>(), b in any::<i64>(), fa in 0u32..96, fb in 0u32..96) {
        let a = BigFixed::from_int(a, fa).checked_div(&BigFixed::from_int(7, fa)).unwrap();
        let b = BigFixed::from_int(b, fb).checked_div(&BigFixed::from_int(3, fb)).unwrap();
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &BigFixed::from_int(1, fa), a.clone());
        let f = fa.max(fb);
        prop_assert_eq!(&a - &b, &a.with_frac_bits(f) - &b.with_frac_bits(f));
        prop_assert_eq!(&a * &b, &a.with_frac_bits(f) * &b.with_frac_bits(f));
    }

    #[test]
    fn decimal_round_trip(mantissa in any::<i64>(), frac_bits in 0u32..120, digits in 1usize..40) {
        let a = BigFixed::from_parts(mantissa < 0, BigUint::from(mantissa.unsigned_abs()), frac_bits);
        let back = BigFixed::from_decimal(&a.to_decimal(digits), frac_bits).unwrap();
        let gap = (&back - &a).abs();
        // 10^(1-d)·|a| + 2^-F
        let relative = BigFixed::from_decimal(&power_of_ten(1 - digits as i32), 600).unwrap();
        let ulp = BigFixed::from_parts(false, BigUint::from(1u8), frac_bits);
        prop_assert!(a.is_zero() || gap < &(&a.abs() * &relative) + &ulp);
    }

    #[test]
    fn order_agrees_with_decimal_rendering(a in any::<i64>(), b in any::<i64>(), digits in 1usize..25) {
        let a = BigFixed::from_int(a, 64).checked_div(&BigFixed::from_int(1 << 20, 64)).unwrap();
        let b = BigFixed::from_int(b, 64).checked_div(&BigFixed::from_int(1 << 20, 64)).unwrap();
        let ra = BigFixed::from_decimal(&a.to_decimal(digits), 256).unwrap();
        let rb = BigFixed::from_decimal(&b.to_decimal(digits), 256).unwrap();
        if a <= b {
            prop_assert!(ra <= rb);
        } else {
            prop_assert!(ra >= rb);
        }
    }
}

#[test]
fn residual_monotone_over_full_range_in_fixed_point() {
    for x in [1.01, 2.0, 7.3, 42.0, 100.0] {
        let arith = FixedPoint::new(frac_bits_for(x, 200, 20));
        let mut state = RadicalState::new(&arith, x).unwrap();
        let two_x = BigFixed::from_f64(2.0 * x, arith.frac_bits).unwrap();
        let x_fixed = BigFixed::from_f64(x, arith.frac_bits).unwrap();
        for _ in 0..200 {
            let next = state.advance(&arith).unwrap();
            let (eps, eps_next) = (state.residual(), next.residual());
            assert!(!eps_next.is_zero() && eps_next < eps, "x = {x}");
            assert!(&eps.checked_div(&two_x).unwrap() <= eps_next);
            assert!(eps_next <= &eps.checked_div(&x_fixed).unwrap());
            state = next;
        }
    }
}

#[test]
fn scale_squared_matches_exactly_representable_powers() {
    for x in [
        1.0625, 1.125, 1.25, 1.5, 1.75, 2.0, 3.0, 4.0, 5.0, 8.0, 16.0,
    ] {
        let mut state = RadicalState::new(&Double, x).unwrap();
        let exact_factor = BigFixed::from_f64(2.0 * x, 64).unwrap();
        let mut exact_power = BigFixed::from_int(1, 64);
        for depth in 0..200 {
            exact_power = &exact_power * &exact_factor;
            let power = (2.0 * x).powi(depth + 1);
            if !power.is_finite() || BigFixed::from_f64(power, 64).unwrap() != exact_power {
                break;
            }
            let ulps = ulps_between(state.scale() * state.scale(), power * state.residual());
            assert!(ulps <= 8, "x = {x}, depth = {depth}: {ulps} ulp");
            state = state.advance(&Double).unwrap();
        }
    }
}

#[test]
fn precision_plan_is_sufficient() {
    for n in [50u32, 200, 1000] {
        let plan = plan_precision(2.0, n).unwrap();
        let value = pi_value(&FixedPoint::new(plan.frac_bits), 2.0, plan.iterations).unwrap();
        let digits = value.to_decimal(n as usize);
        let oracle = machin_pi_digits(n as usize);
        assert!(
            leading_agreement(&digits, &oracle) >= n as usize - 2,
            "n = {n}"
        );
    }
}

#[test]
fn estimators_agree_at_the_stopping_iteration() {
    let policy = LimitPolicy::default();
    for x in [1.5, 2.0, 3.0, 5.0, 20.0] {
        let estimate = pi_limit(&Double, x, &policy).unwrap();
        let n = estimate.iterations;
        let a = pi_value(&Double, x, n).unwrap();
        let b = pi_diff_estimate(&Double, x, n).unwrap();
        assert!((a - b).abs() / estimate.value <= 1e-9, "x = {x}");
    }
}

#[test]
fn ratio_gap_shrinks_with_depth() {
    for x in [1.5f64, 2.0, 3.0, 7.0, 20.0] {
        let target = (2.0 * x).sqrt();
        let noise = 4.0 * f64::EPSILON * target;
        let mut previous = f64::INFINITY;
        for depth in 0..=40 {
            let gap = (ratio_convergence(x, depth).unwrap().lhs - target).abs();
            assert!(gap <= previous + noise, "x = {x}, depth = {depth}");
            previous = gap;
        }
        assert!(previous <= 1e-6);
    }
}

#[test]
fn minimum_dominates_grid() {
    let minimum = find_minimum(&Double, &LimitPolicy::default()).unwrap();
    for k in 1..=19 {
        let x = 1.0 + 0.05 * k as f64;
        let v = pi_limit(&Double, x, &LimitPolicy::default()).unwrap().value;
        assert!(minimum.value <= v, "x = {x}");
    }
}

/// Golden minimum from an independent 50-digit computation (root of the
/// derivative of the 250-level estimate).
const GOLDEN_X_STAR: f64 = 1.190_041_901_680_21;
const GOLDEN_VALUE: f64 = 2.313_835_078_014_736;

#[test]
fn grid_scan_then_fixed_point_refinement_reproduces_golden_minimum() {
    let policy = LimitPolicy::default();
    let grid: Vec<f64> = (0..=9_990).map(|k| 1.001 + 1e-4 * k as f64).collect();
    let (best, _) = grid
        .iter()
        .map(|&x| (x, pi_limit(&Double, x, &policy).unwrap().value))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert!((best - GOLDEN_X_STAR).abs() <= 1e-4);

    let arith = FixedPoint::new(320);
    let fine = LimitPolicy {
        rel_tol: RelTol::from_digits(30),
        max_iterations: 1_000,
    };
    let (x_star, value, _, _) = pifunc::analysis::golden_section(
        |x| pi_limit(&arith, x, &fine).map(|e| e.value),
        |p, q| p < q,
        best - 2e-4,
        best + 2e-4,
        1e-9,
    )
    .unwrap();
    assert!((x_star - GOLDEN_X_STAR).abs() <= 1e-8, "{x_star}");
    assert!((value.to_f64() - GOLDEN_VALUE).abs() <= 1e-14);
}

#[test]
fn sweep_is_deterministic() {
    let spec = SweepSpec {
        x_min: 1.01,
        x_max: 3.0,
        steps: 200,
        policy: LimitPolicy::default(),
    };
    let first = sweep(&Double, &spec).unwrap().to_csv();
    for _ in 0..3 {
        assert_eq!(sweep(&Double, &spec).unwrap().to_csv(), first);
    }
}
