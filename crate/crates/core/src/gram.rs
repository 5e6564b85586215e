//! Gram points `θ(t_ν) = πν`, their spacing, and admissibility of Gram
//! intervals relative to the zeros of `J₁`.

use std::f64::consts::{E, FRAC_PI_4, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::{j1_zero, BesselZeroTable};
use crate::error::{Error, Result};
use crate::quad::invert_monotone;
use crate::special::lambert_w0;
use crate::zeta::theta;

/// Largest accepted `|θ(t_ν) − πν|`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

/// Default half-width of the exclusion zones.
pub const DEFAULT_EPSILON: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramPoint {
    pub nu: u64,
    pub t: f64,
    pub theta_residual: f64,
}

/// Which lattice the ε-exclusion zones are centred on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionMode {
    /// Zones `[kπ − ε, kπ + ε]`.
    #[default]
    PaperLiteral,
    /// Zones `[kπ + π/4 − ε, kπ + π/4 + ε]` around the zeros of `sin(t − π/4)`.
    SinZeros,
}

impl ExclusionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionMode::PaperLiteral => "paper_literal",
            ExclusionMode::SinZeros => "sin_zeros",
        }
    }

    fn offset(self) -> f64 {
        match self {
            ExclusionMode::PaperLiteral => 0.0,
            ExclusionMode::SinZeros => FRAC_PI_4,
        }
    }
}

impl std::str::FromStr for ExclusionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper_literal" => Ok(ExclusionMode::PaperLiteral),
            "sin_zeros" => Ok(ExclusionMode::SinZeros),
            other => Err(Error::Precondition(format!("unknown exclusion mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalClassification {
    pub nu: u64,
    pub containing_bessel_index: Option<usize>,
    pub inside_bessel_cell: bool,
    pub clears_exclusion_zone: bool,
    pub sin_magnitude: f64,
    pub admissible: bool,
}

/// Starting guess from the two-term asymptotic `θ(t) ≈ t/2 ln(t/2πe) − π/8`.
fn gram_seed(nu: u64) -> f64 {
    let m = nu as f64 + 0.125;
    TAU * m / lambert_w0(m / E)
}

pub fn gram_point(nu: u64) -> Result<GramPoint> {
    if nu < 1 {
        return Err(Error::Precondition("Gram points are indexed from nu = 1".into()));
    }
    let target = PI * nu as f64;
    let residual = |t: f64| theta(t).map(|v| v.theta - target);

    // Newton on θ(t) − πν; θ' ≈ ½ ln(t/2π) is positive and slowly varying.
    let mut t = gram_seed(nu);
    for _ in 0..30 {
        let v = theta(t)?;
        let r = v.theta - target;
        if r.abs() <= 0.1 * RESIDUAL_TOLERANCE || v.dtheta <= 0.0 {
            break;
        }
        let step = r / v.dtheta;
        t -= step;
        if step.abs() <= 2.0 * f64::EPSILON * t {
            break;
        }
    }

    let mut r = residual(t)?;
    if !(r.abs() <= RESIDUAL_TOLERANCE) {
        // Bisection fallback on a widened bracket around the seed.
        let seed = gram_seed(nu);
        let mut width = 10.0;
        let (mut lo, mut hi) = ((seed - width).max(17.9), seed + width);
        while residual(lo)? > 0.0 || residual(hi)? < 0.0 {
            width *= 2.0;
            lo = (seed - width).max(17.9);
            hi = seed + width;
            if width > 1e7 {
                return Err(Error::Convergence {
                    what: format!("Gram point {nu}"),
                    lo,
                    hi,
                    iterations: 0,
                });
            }
        }
        t = invert_monotone(|x| theta(x).map(|v| v.theta).unwrap_or(f64::NAN), target, lo, hi, 1e-16)?;
        r = residual(t)?;
        if !(r.abs() <= RESIDUAL_TOLERANCE) {
            return Err(Error::Convergence {
                what: format!("Gram point {nu} (residual {r:e})"),
                lo,
                hi,
                iterations: 400,
            });
        }
    }
    Ok(GramPoint {
        nu,
        t,
        theta_residual: r,
    })
}

/// Gram points `t_from ..= t_to`, computed in parallel, in index order.
pub fn gram_points(from: u64, to: u64) -> Result<Vec<GramPoint>> {
    if to < from {
        return Ok(Vec::new());
    }
    (from..=to).into_par_iter().map(gram_point).collect()
}

/// Two-term spacing prediction `2π/ln t + 2π ln 2π / ln² t`.
pub fn spacing_prediction(t: f64) -> f64 {
    let l = t.ln();
    TAU / l + TAU * TAU.ln() / (l * l)
}

/// `(t_{ν+1} − t_ν) − [2π/ln t_ν + 2π ln 2π/ln² t_ν]`.
pub fn spacing_residual(nu: u64) -> Result<f64> {
    let lo = gram_point(nu)?.t;
    let hi = gram_point(nu + 1)?.t;
    Ok(hi - lo - spacing_prediction(lo))
}

fn touches_lattice(a: f64, b: f64, epsilon: f64, mode: ExclusionMode) -> bool {
    let o = mode.offset();
    let k_lo = ((a - o - epsilon) / PI).ceil().max(0.0);
    let k_hi = ((b - o + epsilon) / PI).floor();
    k_lo <= k_hi
}

/// Classify `[t_lo, t_hi]` (the Gram interval with index `nu`).
pub fn classify_points(
    nu: u64,
    t_lo: f64,
    t_hi: f64,
    epsilon: f64,
    zeros: &BesselZeroTable,
    mode: ExclusionMode,
) -> Result<IntervalClassification> {
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    if t_hi > zeros.max_zero() {
        return Err(Error::TableCoverage {
            needed: t_hi,
            max_zero: zeros.max_zero(),
        });
    }
    let cell = zeros.cell_containing(t_lo);
    let inside = match cell {
        Some(n) => zeros.get(n + 1).is_some_and(|upper| t_hi <= upper),
        None => false,
    };
    let clears = !touches_lattice(t_lo, t_hi, epsilon, mode);
    Ok(IntervalClassification {
        nu,
        containing_bessel_index: cell,
        inside_bessel_cell: inside,
        clears_exclusion_zone: clears,
        sin_magnitude: (t_lo - FRAC_PI_4).sin().abs(),
        admissible: inside && clears,
    })
}

pub fn classify_interval(
    nu: u64,
    epsilon: f64,
    zeros: &BesselZeroTable,
    mode: ExclusionMode,
) -> Result<IntervalClassification> {
    let lo = gram_point(nu)?.t;
    let hi = gram_point(nu + 1)?.t;
    classify_points(nu, lo, hi, epsilon, zeros, mode)
}

/// Gram intervals inside the Bessel cell `[μ_n, μ_{n+1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellCount {
    pub n: usize,
    pub mu_lo: f64,
    pub mu_hi: f64,
    /// Intervals with `μ_n <= t_ν` and `t_{ν+1} <= μ_{n+1}`.
    pub wholly_inside: u64,
    /// Of those, intervals that also clear the ε-exclusion zones.
    pub admissible: u64,
    pub t_mid: f64,
    /// `wholly_inside / (½ ln t_mid)`.
    pub ratio: f64,
}

pub fn count_admissible_in_cell(n: usize, epsilon: f64, mode: ExclusionMode) -> Result<CellCount> {
    if n < 1 {
        return Err(Error::Precondition("Bessel cells are indexed from n = 1".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    let mu_lo = j1_zero(n);
    let mu_hi = j1_zero(n + 1);
    let first = ((theta(mu_lo)?.theta / PI).ceil().max(1.0)) as u64;
    let mut nu = first;
    let mut lo = gram_point(nu)?;
    // θ(μ_n)/π rounding can land one index early.
    while lo.t < mu_lo {
        nu += 1;
        lo = gram_point(nu)?;
    }
    let mut wholly_inside = 0;
    let mut admissible = 0;
    loop {
        let hi = gram_point(nu + 1)?;
        if hi.t > mu_hi {
            break;
        }
        wholly_inside += 1;
        if !touches_lattice(lo.t, hi.t, epsilon, mode) {
            admissible += 1;
        }
        nu += 1;
        lo = hi;
    }
    let t_mid = 0.5 * (mu_lo + mu_hi);
    Ok(CellCount {
        n,
        mu_lo,
        mu_hi,
        wholly_inside,
        admissible,
        t_mid,
        ratio: wholly_inside as f64 / (0.5 * t_mid.ln()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::j1_zeros;

    #[test]
    fn first_gram_point() {
        // mpmath grampoint(1) = 23.17028270124630927899664
        let g = gram_point(1).unwrap();
        assert!((g.t - 23.170_282_701_246_309).abs() < 1e-10);
        assert!(g.theta_residual.abs() <= RESIDUAL_TOLERANCE);
    }

    #[test]
    fn defining_equation_round_trip() {
        for &nu in &[1u64, 10, 10_000, 100_000] {
            let g = gram_point(nu).unwrap();
            let th = theta(g.t).unwrap().theta;
            assert!((th - PI * nu as f64).abs() <= 1e-9, "nu = {nu}");
        }
    }

    #[test]
    fn index_zero_rejected() {
        assert!(gram_point(0).is_err());
    }

    #[test]
    fn large_index_lies_in_monotone_bracket() {
        let prev = gram_point(99_999).unwrap().t;
        let g = gram_point(100_000).unwrap().t;
        assert!(g > prev && g < prev + 10.0);
    }

    #[test]
    fn points_strictly_increase() {
        let pts = gram_points(1, 400).unwrap();
        assert!(pts.windows(2).all(|w| w[1].t > w[0].t));
        assert_eq!(pts.len(), 400);
        assert!(gram_points(5, 4).unwrap().is_empty());
    }

    #[test]
    fn spacing_residual_at_100() {
        let t = gram_point(100).unwrap().t;
        let r = spacing_residual(100).unwrap();
        assert!(r.abs() < TAU / t.ln().powi(2));
    }

    #[test]
    fn straddling_interval_is_outside_cell() {
        let zeros = j1_zeros(200);
        let mu = zeros.get(40).unwrap();
        let c = classify_points(7, mu - 0.1, mu + 0.2, 0.05, &zeros, ExclusionMode::PaperLiteral).unwrap();
        assert!(!c.inside_bessel_cell);
        assert!(!c.admissible);
    }

    #[test]
    fn wide_exclusion_tiles_the_line() {
        let zeros = j1_zeros(400);
        for nu in 100..160 {
            for mode in [ExclusionMode::PaperLiteral, ExclusionMode::SinZeros] {
                let c = classify_interval(nu, PI / 2.0, &zeros, mode).unwrap();
                assert!(!c.clears_exclusion_zone && !c.admissible);
            }
        }
    }

    #[test]
    fn coverage_is_checked() {
        let zeros = j1_zeros(5);
        assert!(matches!(
            classify_interval(100, 0.05, &zeros, ExclusionMode::PaperLiteral),
            Err(Error::TableCoverage { .. })
        ));
    }

    #[test]
    fn lattice_intersection() {
        assert!(touches_lattice(3.0, 3.1, 0.05, ExclusionMode::PaperLiteral));
        assert!(!touches_lattice(3.2, 3.9, 0.05, ExclusionMode::PaperLiteral));
        assert!(touches_lattice(3.2, 3.9, 0.05, ExclusionMode::SinZeros));
    }

    #[test]
    fn mode_round_trips_through_str() {
        for m in [ExclusionMode::PaperLiteral, ExclusionMode::SinZeros] {
            assert_eq!(m.as_str().parse::<ExclusionMode>().unwrap(), m);
        }
        assert!("kpi".parse::<ExclusionMode>().is_err());
    }
}
