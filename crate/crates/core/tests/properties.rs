use std::f64::consts::PI;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jacobs_ladder::verify::write_records_csv;
use jacobs_ladder::*;

fn first_ladder() -> &'static LadderTable {
    static L: OnceLock<LadderTable> = OnceLock::new();
    L.get_or_init(|| build_ladder_until(LadderOrder::First, 1000.0, 2100.0, 1e-12, &LadderOptions::default()).unwrap())
}

type Real = Box<dyn Fn(f64) -> f64>;

/// Integrands with closed-form antiderivatives.
fn family(kind: usize, p: f64) -> (Real, Real) {
    match kind {
        0 => (Box::new(move |x| (p * x).cos()), Box::new(move |x| (p * x).sin() / p)),
        1 => {
            let n = p.round();
            (
                Box::new(move |x| x.powf(n)),
                Box::new(move |x| x.powf(n + 1.0) / (n + 1.0)),
            )
        }
        2 => (
            Box::new(move |x| (p * x / 10.0).exp()),
            Box::new(move |x| (p * x / 10.0).exp() * 10.0 / p),
        ),
        _ => (
            Box::new(move |x| 1.0 / (1.0 + p * x * x)),
            Box::new(move |x| (p.sqrt() * x).atan() / p.sqrt()),
        ),
    }
}

proptest! {
    #[test]
    fn quadrature_is_additive(kind in 0usize..4, p in 0.5f64..6.0, a in -3.0f64..3.0, w1 in 0.01f64..5.0, w2 in 0.01f64..5.0) {
        let (f, _) = family(kind, p);
        let (b, c) = (a + w1, a + w1 + w2);
        let whole = integrate(&f, a, c, 1e-11, None).unwrap();
        let left = integrate(&f, a, b, 1e-11, None).unwrap();
        let right = integrate(&f, b, c, 1e-11, None).unwrap();
        let slack = whole.error_estimate + left.error_estimate + right.error_estimate
            + 8.0 * f64::EPSILON * (left.value.abs() + right.value.abs());
        prop_assert!((whole.value - left.value - right.value).abs() <= slack);
    }

    #[test]
    fn inversion_recovers_gram_points(nu in 1u64..200_000) {
        let g = gram_point(nu).unwrap();
        prop_assert!((theta(g.t).unwrap().theta - PI * nu as f64).abs() < 1e-9);
        let next = gram_point(nu + 1).unwrap();
        prop_assert!(next.t > g.t);
    }

    #[test]
    fn classification_is_pure_and_sign_definite(nu in 5u64..20_000, literal in any::<bool>()) {
        let mode = if literal { ExclusionMode::PaperLiteral } else { ExclusionMode::SinZeros };
        let zeros = BesselZeroTable::covering(gram_point(nu + 1).unwrap().t + 10.0);
        let a = classify_interval(nu, 0.05, &zeros, mode).unwrap();
        let b = classify_interval(nu, 0.05, &zeros, mode).unwrap();
        prop_assert_eq!(a, b);
        if a.admissible {
            let lo = gram_point(nu).unwrap().t;
            let hi = gram_point(nu + 1).unwrap().t;
            let s0 = j1(lo).unwrap().signum();
            for k in 0..16 {
                let t = lo + (hi - lo) * k as f64 / 15.0;
                prop_assert_eq!(j1(t).unwrap().signum(), s0);
            }
        }
    }

    #[test]
    fn bessel_zeros_are_sign_changes(n in 1usize..5000) {
        let mu = j1_zero(n);
        prop_assert!(j1(mu).unwrap().abs() <= 1e-11);
        prop_assert!(j1(mu - 0.1).unwrap().signum() != j1(mu + 0.1).unwrap().signum());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn substitution_is_exact(which in 0usize..4, t in 1000.0f64..1900.0, frac in 0.001f64..1.0) {
        let u = (frac * t / t.ln()).min(2100.0 - t);
        let l = first_ladder();
        let c = match which {
            0 => substitution_check(l, |_| 1.0, t, u),
            1 => substitution_check(l, |x| x, t, u),
            2 => substitution_check(l, |x| j1(x).unwrap(), t, u),
            _ => substitution_check(l, |x| x.cos(), t, u),
        }.unwrap();
        prop_assert!(c.residual().abs() <= 3.0 * c.error_budget(), "{:?}", c);
    }
}

#[test]
fn quadrature_error_estimates_are_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut total, mut honest) = (0, 0);
    for _ in 0..2000 {
        let kind = rng.gen_range(0..4);
        let p = rng.gen_range(0.5..6.0);
        let a = rng.gen_range(-3.0..3.0);
        let b = a + rng.gen_range(0.01..8.0);
        let rel = 10f64.powf(rng.gen_range(-12.0..-4.0));
        let (f, big_f) = family(kind, p);
        let q = integrate(&f, a, b, rel, None).unwrap();
        let truth = big_f(b) - big_f(a);
        // Rounding in the closed form itself is not the quadrature's error.
        let rounding = 4.0 * f64::EPSILON * (big_f(a).abs() + big_f(b).abs());
        total += 1;
        if (q.value - truth).abs() <= 10.0 * q.error_estimate + rounding {
            honest += 1;
        }
    }
    assert!(honest as f64 >= 0.99 * total as f64, "{honest}/{total}");
}

#[test]
fn bessel_identity_from_origin() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let a: f64 = rng.gen_range(0.0..500.0);
        let q = integrate(|x| j1(x).unwrap(), 0.0, a, 1e-13, Some(PI)).unwrap();
        assert!((q.value - (1.0 - j0(a).unwrap())).abs() < 1e-10, "a = {a}");
    }
}

#[test]
fn ladder_round_trip() {
    let l = first_ladder();
    let (t0, t1) = l.t_range();
    let (_, phi_hi) = l.phi_range();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 1000 {
        let t = rng.gen_range(t0..t1);
        let phi = l.value(t).unwrap();
        if phi >= phi_hi {
            continue;
        }
        let back = l.inverse(phi).unwrap();
        if l.derivative(t) >= 1e-3 {
            assert!((back - t).abs() <= 1e-8, "t = {t}, back = {back}");
        } else {
            // Near a zero of Z the map is flat: demand a small forward residual instead.
            assert!((l.value(back).unwrap() - phi).abs() <= 1e-12 * phi, "t = {t}");
        }
        checked += 1;
    }
}

#[test]
fn inverse_agrees_with_generic_inversion() {
    let l = first_ladder();
    for nu in [900_u64, 1000, 1200, 1500] {
        let x = gram_point(nu).unwrap().t;
        let a = l.inverse(x).unwrap();
        let (lo, hi) = l.t_range();
        let b = invert_monotone(|t| l.value(t).unwrap(), x, lo, hi, 1e-16).unwrap();
        assert!((a - b).abs() < 1e-9, "nu = {nu}: {a} vs {b}");
        assert!(a > x);
    }
}

#[test]
fn tolerance_refinement_converges() {
    let tol = 1e-9;
    let coarse = build_ladder(LadderOrder::First, 1000.0, 1100.0, tol).unwrap();
    let fine = build_ladder(LadderOrder::First, 1000.0, 1100.0, tol / 10.0).unwrap();
    for k in 0..=200 {
        let t = 1000.0 + 0.5 * k as f64;
        let d = (coarse.value(t).unwrap() - fine.value(t).unwrap()).abs();
        assert!(d <= 20.0 * tol, "t = {t}: {d}");
    }
}

#[test]
fn halving_the_step_changes_little() {
    let tol = 1e-10;
    let base = build_ladder(LadderOrder::First, 1000.0, 1100.0, tol).unwrap();
    let half = LadderOptions {
        step_scale: 0.5,
        ..LadderOptions::default()
    };
    let refined = build_ladder_with(LadderOrder::First, 1000.0, 1100.0, tol, &half).unwrap();
    assert!(refined.nodes().len() > base.nodes().len() * 3 / 2);
    for k in 0..=100 {
        let t = 1000.0 + 0.99 * k as f64;
        let d = (base.value(t).unwrap() - refined.value(t).unwrap()).abs();
        assert!(d < tol, "t = {t}: {d}");
    }
}

#[test]
fn fourth_power_substitution() {
    let acc = EvalAccuracy::default();
    let (t, u) = (1500.0, 40.0);
    let l = build_ladder_until(LadderOrder::Second, t, t + u + 1.0, 1e-12, &LadderOptions::default()).unwrap();
    let c = substitution_check_with(&l, |x| zeta_abs_sq(x, &acc).unwrap().powi(2), t, u, 1e-10).unwrap();
    assert!(c.residual().abs() <= 3.0 * c.error_budget(), "{c:?}");
}

#[test]
fn exact_chain_holds_for_every_interval() {
    let l = first_ladder();
    let zeros = BesselZeroTable::covering(2200.0);
    let opts = Thm1Options {
        force: true,
        ..Thm1Options::default()
    };
    for nu in 800..900 {
        let r = thm1_verify(l, nu, 0.05, ExclusionMode::PaperLiteral, &zeros, &opts).unwrap();
        assert!(
            r.exact.residual.abs() <= 3.0 * r.exact.quad_error,
            "nu = {nu}: {:?}",
            r.exact
        );
        for rec in r.to_vec() {
            if rec.rhs.abs() < 1e-12 {
                assert!(rec.ratio.is_none());
            }
        }
    }
}

#[test]
fn algebraic_form_of_the_cosine_difference() {
    for nu in (100..10_000).step_by(97) {
        let a = gram_point(nu).unwrap().t;
        let b = gram_point(nu + 1).unwrap().t;
        let forms = jacobs_ladder::verify::cosine_difference_forms(a, b);
        for f in &forms[1..] {
            assert!((f - forms[0]).abs() <= 1e-13, "nu = {nu}: {forms:?}");
        }
    }
}

fn chain_csv(threads: usize) -> Vec<u8> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let outcome = pool.install(|| {
        run_campaign(&Campaign::Chain {
            nu_from: 100,
            nu_to: 180,
        })
    });
    assert!(outcome.failures.is_empty());
    let mut buf = Vec::new();
    write_records_csv(&outcome.records, &mut buf).unwrap();
    buf
}

#[test]
fn campaigns_are_deterministic() {
    let a = chain_csv(1);
    assert_eq!(a, chain_csv(1));
    assert_eq!(a, chain_csv(3));
}

#[test]
fn admissible_count_matches_cell_enumeration() {
    let (from, to) = (3000_u64, 3200_u64);
    let zeros = BesselZeroTable::covering(4000.0);
    let mode = ExclusionMode::PaperLiteral;
    let by_interval = (from..=to)
        .filter(|&nu| classify_interval(nu, 0.05, &zeros, mode).unwrap().admissible)
        .count() as u64;
    let lo = gram_point(from).unwrap().t;
    let hi = gram_point(to + 1).unwrap().t;
    let (mut inner, mut edge) = (0, 0);
    for n in 1..zeros.count() - 1 {
        let c = count_admissible_in_cell(n, 0.05, mode).unwrap();
        if c.mu_hi < lo || c.mu_lo > hi {
            continue;
        }
        if c.mu_lo >= lo && c.mu_hi <= hi {
            inner += c.admissible;
        } else {
            edge += c.admissible;
        }
    }
    assert!(
        inner <= by_interval && by_interval <= inner + edge,
        "{inner} {edge} {by_interval}"
    );
    // Each cell of width π holds about ½ ln t Gram intervals; a sizeable share survives.
    let share = by_interval as f64 / (to - from + 1) as f64;
    assert!((0.25..0.75).contains(&share), "{share}");
}
