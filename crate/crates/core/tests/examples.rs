//! Worked examples for each layer, checked against independent values or
//! closed forms.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use jacobs_ladder::bessel::j0_asymptotic_difference;
use jacobs_ladder::verify::{chain39_rhs_at, thm1_rhs, thm1_rhs_at};
use jacobs_ladder::zeta::theta_asymptotic;
use jacobs_ladder::*;

// |θ(t) − asymptotic| · t over t ≥ 100, measured at 0.02125 and frozen.
const THETA_ASYMPTOTIC_CONSTANT: f64 = 0.022;
// |J₀ difference − leading form| · t^{3/2} at the 500th Gram interval, measured at 0.393.
const BESSEL_DIFFERENCE_CONSTANT: f64 = 0.40;

#[test]
fn theta_crosses_zero_near_17_8() {
    let t = 17.845_599_540_410_3;
    let v = theta(t).unwrap();
    assert!(v.theta.abs() < 1e-9, "{}", v.theta);
    assert!(theta(t - 0.01).unwrap().theta < 0.0 && theta(t + 0.01).unwrap().theta > 0.0);
}

#[test]
fn theta_is_increasing_beyond_ten() {
    let mut prev = theta(10.0).unwrap().theta;
    let mut t = 10.0;
    while t < 2e5 {
        t *= 1.0007;
        let v = theta(t).unwrap();
        assert!(v.dtheta > 0.0 && v.theta > prev, "t = {t}");
        prev = v.theta;
    }
}

#[test]
fn theta_asymptotic_remainder_is_bounded() {
    let mut t = 100.0;
    while t < 1e6 {
        let scaled = (theta(t).unwrap().theta - theta_asymptotic(t)).abs() * t;
        assert!(scaled <= THETA_ASYMPTOTIC_CONSTANT, "t = {t}: {scaled}");
        t *= 1.031;
    }
}

#[test]
fn z_vanishes_at_first_zero() {
    let acc = EvalAccuracy::default();
    assert!(hardy_z(14.134_725_141_734_693, &acc).unwrap().abs() < 1e-9);
}

#[test]
fn zeta_square_is_nonnegative_and_has_log_mean() {
    let acc = EvalAccuracy::default();
    for k in 0..200 {
        assert!(zeta_abs_sq(10.0 + 7.3 * k as f64, &acc).unwrap() >= 0.0);
    }
    let t = 5000.0;
    let q = integrate(|x| zeta_abs_sq(x, &acc).unwrap(), t, 2.0 * t, 1e-8, Some(TAU / t.ln())).unwrap();
    let mean = q.value / t;
    assert!((mean / t.ln() - 1.0).abs() < 0.25, "mean {mean}, ln T {}", t.ln());
}

#[test]
fn sign_changes_count_zeros_between_100_and_200() {
    // 79 zeros below 200 minus 29 below 100.
    let n = jacobs_ladder::oracle::count_sign_changes(100.0, 200.0, 0.01, &EvalAccuracy::default()).unwrap();
    assert_eq!(n, 50);
}

#[test]
fn j0_at_first_j1_zero() {
    assert!((j0(3.831_705_970_207_512).unwrap() + 0.402_759_395_702_553).abs() < 1e-12);
}

#[test]
fn j0_approaches_its_leading_asymptotic() {
    let x = 1000.0;
    let leading = (2.0 / (PI * x)).sqrt() * (x - FRAC_PI_4).cos();
    assert!((j0(x).unwrap() - leading).abs() <= 2.0 / x.powf(1.5));
}

#[test]
fn first_zeros_of_j1() {
    assert!((j1_zero(1) - 3.831_705_970_2).abs() < 1e-9);
    assert!((j1_zero(2) - 7.015_586_669_8).abs() < 1e-9);
    assert!(((j1_zero(101) - j1_zero(100)) - PI).abs() < 1e-4);
}

#[test]
fn j1_integral_to_first_zero() {
    let mu = j1_zero(1);
    let q = integrate(|x| j1(x).unwrap(), 0.0, mu, 1e-13, None).unwrap();
    assert!((q.value - (1.0 - j0(mu).unwrap())).abs() < 1e-10);
    assert!((j1_definite_integral(0.0, mu).unwrap() - q.value).abs() < 1e-10);
    assert_eq!(j1_definite_integral(mu, mu).unwrap(), 0.0);
}

#[test]
fn bessel_difference_over_gram_interval() {
    let a = gram_point(500).unwrap().t;
    let b = gram_point(501).unwrap().t;
    let exact = j1_definite_integral(a, b).unwrap();
    assert_eq!(exact, jacobs_ladder::verify::bessel_difference(a, b).unwrap());
    let dev = (j0_asymptotic_difference(a, b) - exact).abs();
    assert!(dev * a.powf(1.5) <= BESSEL_DIFFERENCE_CONSTANT, "{}", dev * a.powf(1.5));
    assert_eq!(j0_asymptotic_difference(a, a), 0.0);
}

#[test]
fn bessel_difference_reduces_to_sine_form() {
    let t = 1000.0_f64;
    let h = TAU / t.ln();
    let prefactor = (2.0 / (PI * t)).sqrt();
    let two_term = prefactor * h * (t - FRAC_PI_4).sin();
    let band = prefactor * h * h;
    assert!((j0_asymptotic_difference(t, t + h) - two_term).abs() <= band);
}

#[test]
fn gram_point_from_generic_inversion() {
    for nu in [1_u64, 10, 1000, 100_000] {
        let g = gram_point(nu).unwrap();
        let target = PI * nu as f64;
        let t = invert_monotone(|t| theta(t).unwrap().theta, target, g.t - 1.0, g.t + 1.0, 1e-15).unwrap();
        assert!((t - g.t).abs() < 1e-9 * g.t.max(1.0), "nu = {nu}");
    }
}

#[test]
fn admissible_in_both_modes() {
    // Found by scanning ν from 200 upward.
    let zeros = BesselZeroTable::covering(500.0);
    for mode in [ExclusionMode::PaperLiteral, ExclusionMode::SinZeros] {
        assert!(classify_interval(201, 0.05, &zeros, mode).unwrap().admissible);
    }
}

#[test]
fn ladder_lag_diagnostic_is_recorded() {
    for t in [1e4, 1e5] {
        let l = build_ladder(LadderOrder::First, t, t + 20.0, 1e-10).unwrap();
        let r = l.lag_ratio(t + 20.0).unwrap();
        println!("lag ratio (t - phi1(t)) / ((1 - c) pi(t)) at t = {}: {r:.6}", t + 20.0);
        assert!(r > 0.9 && r < 1.1);
    }
}

#[test]
fn polynomial_substitution_at_2000() {
    let l = build_ladder_until(LadderOrder::First, 2000.0, 2010.0, 1e-12, &LadderOptions::default()).unwrap();
    let (t, u) = (2000.0, 5.0);
    let c = substitution_check(&l, |x| x, t, u).unwrap();
    assert!((c.rhs - (t * u + u * u / 2.0)).abs() < 1e-9);
    assert!(c.residual().abs() <= 3.0 * c.error_budget(), "{c:?}");
}

#[test]
fn bessel_substitution_over_gram_interval() {
    let l = build_ladder_until(LadderOrder::First, 2300.0, 2400.0, 1e-12, &LadderOptions::default()).unwrap();
    let nu = 1800;
    let (a, b) = (gram_point(nu).unwrap().t, gram_point(nu + 1).unwrap().t);
    let c = substitution_check(&l, |x| j1(x).unwrap(), a, b - a).unwrap();
    let exact = j0(a).unwrap() - j0(b).unwrap();
    assert!((c.rhs - exact).abs() < 1e-12);
    assert!((c.lhs - exact).abs() <= 1e-8 * exact.abs().max(1e-10));
}

#[test]
fn fourth_power_substitution_at_2000() {
    let acc = EvalAccuracy::default();
    let l = build_ladder_until(LadderOrder::Second, 2000.0, 2006.0, 1e-12, &LadderOptions::default()).unwrap();
    let c = substitution_check_with(&l, |x| zeta_abs_sq(x, &acc).unwrap().powi(2), 2000.0, 5.0, 1e-10).unwrap();
    assert!((c.lhs - c.rhs).abs() <= 1e-7 * c.rhs.abs(), "{c:?}");
    assert!(c.residual().abs() <= 3.0 * c.error_budget(), "{c:?}");
}

#[test]
fn first_theorem_right_side() {
    assert_eq!(thm1_rhs_at(FRAC_PI_4), 0.0);
    assert_eq!(chain39_rhs_at(FRAC_PI_4), 0.0);
    let t = gram_point(1000).unwrap().t;
    let direct = 2.0 * (2.0 * PI).sqrt() / t.sqrt() * (t - PI / 4.0).sin();
    assert!((thm1_rhs(1000).unwrap() - direct).abs() < 1e-14);
    for nu in (10..20_000).step_by(37) {
        let t = gram_point(nu).unwrap().t;
        assert!(thm1_rhs_at(t).abs() <= 2.0 * TAU.sqrt() / t.sqrt());
    }
}

#[test]
fn admissible_intervals_near_2000_follow_the_sine() {
    let l = build_ladder_until(LadderOrder::First, 1900.0, 2300.0, 1e-12, &LadderOptions::default()).unwrap();
    let zeros = BesselZeroTable::covering(2400.0);
    let mut seen = 0;
    for nu in 1516..1560 {
        match thm1_verify(&l, nu, 0.05, ExclusionMode::SinZeros, &zeros, &Thm1Options::default()) {
            Ok(r) => {
                seen += 1;
                let s = (r.exact.t - FRAC_PI_4).sin().signum();
                assert!(r.full.lhs.is_finite());
                assert_eq!(r.exact.lhs.signum(), s, "nu = {nu}");
                assert_eq!(r.sharp.lhs.signum(), s, "nu = {nu}");
            }
            Err(Error::Inadmissible { .. }) => {}
            Err(e) => panic!("nu = {nu}: {e}"),
        }
    }
    assert!(seen > 10);
}
