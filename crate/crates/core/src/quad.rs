//! Adaptive Gauss–Kronrod quadrature and bracketed inversion of monotone maps.
//!
//! The integrator is a global adaptive scheme on the 7/15-point
//! Gauss–Kronrod pair: the panel with the largest error estimate is bisected
//! until the summed estimate meets `max(abs_tol, rel_tol * |I|)`. Panels whose
//! estimate is already at the rounding floor are retired instead of split, so
//! very tight tolerances terminate with an honest (floor-sized) estimate
//! rather than exhausting the budget.
//!
//! A wavelength hint caps the width of the initial panels at half the hint.
//! The integrands of this crate oscillate on the Gram scale `2π / ln t`, and
//! sampling them on coarser panels lets the embedded pair agree by accident.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::error::{Error, Result};

/// Default evaluation budget per call.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
    pub evaluations: usize,
}

impl QuadratureResult {
    pub const ZERO: QuadratureResult = QuadratureResult {
        value: 0.0,
        error_estimate: 0.0,
        panels: 1,
        evaluations: 0,
    };
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    #[error("quadrature budget exhausted; best estimate {best:?}")]
    NonConvergence { best: QuadratureResult },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub min_wavelength_hint: Option<f64>,
    pub max_evaluations: usize,
    /// Measure `rel_tol` against `∫|f|` instead of `|∫f|`. Useful when the
    /// integral nearly cancels.
    pub relative_to_l1: bool,
}

impl QuadConfig {
    pub fn new(rel_tol: f64) -> Self {
        QuadConfig {
            rel_tol,
            abs_tol: 0.0,
            min_wavelength_hint: None,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            relative_to_l1: false,
        }
    }

    pub fn abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn wavelength_hint(mut self, hint: Option<f64>) -> Self {
        self.min_wavelength_hint = hint;
        self
    }

    pub fn max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    pub fn relative_to_l1(mut self, yes: bool) -> Self {
        self.relative_to_l1 = yes;
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    abs: f64,
    error: f64,
    at_floor: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_15<F>(f: &F, a: f64, b: f64) -> std::result::Result<Panel, QuadError>
where
    F: Fn(f64) -> f64,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { x })
        }
    };

    let f_centre = eval(centre)?;
    let mut res_k = f_centre * WGK[7];
    let mut res_g = f_centre * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(centre - dx)?;
        let f2 = eval(centre + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_centre - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let at_floor = error <= floor;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    Ok(Panel {
        a,
        b,
        value,
        abs: res_abs,
        error,
        at_floor,
    })
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol`.
pub fn integrate<F>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    min_wavelength_hint: Option<f64>,
) -> std::result::Result<QuadratureResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    integrate_with(f, a, b, &QuadConfig::new(rel_tol).wavelength_hint(min_wavelength_hint))
}

pub fn integrate_with<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> std::result::Result<QuadratureResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(QuadError::InvalidInput(format!("limits [{a}, {b}]")));
    }
    if a > b {
        return Err(QuadError::InvalidInput(format!("a = {a} > b = {b}")));
    }
    if !(cfg.rel_tol > 0.0) || cfg.abs_tol < 0.0 {
        return Err(QuadError::InvalidInput(format!(
            "tolerances rel = {}, abs = {}",
            cfg.rel_tol, cfg.abs_tol
        )));
    }
    if a == b {
        return Ok(QuadratureResult::ZERO);
    }

    let initial = match cfg.min_wavelength_hint {
        Some(w) if w > 0.0 && w.is_finite() => ((b - a) / (0.5 * w)).ceil().max(1.0) as usize,
        Some(w) => {
            return Err(QuadError::InvalidInput(format!("wavelength hint {w}")));
        }
        None => 1,
    };

    let mut heap = BinaryHeap::with_capacity(initial);
    let mut retired: Vec<Panel> = Vec::new();
    let mut evaluations = 0usize;
    let mut value_sum = 0.0;
    let mut error_sum = 0.0;
    let mut abs_sum = 0.0;
    let width = (b - a) / initial as f64;
    for i in 0..initial {
        let lo = a + width * i as f64;
        let hi = if i + 1 == initial {
            b
        } else {
            a + width * (i + 1) as f64
        };
        let p = gauss_kronrod_15(&f, lo, hi)?;
        evaluations += 15;
        value_sum += p.value;
        abs_sum += p.abs;
        error_sum += p.error;
        heap.push(p);
    }

    loop {
        let scale = if cfg.relative_to_l1 { abs_sum } else { value_sum.abs() };
        let tol = cfg.abs_tol.max(cfg.rel_tol * scale);
        if error_sum <= tol {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.at_floor || mid <= worst.a || mid >= worst.b {
            retired.push(worst);
            continue;
        }
        if evaluations + 30 > cfg.max_evaluations {
            heap.push(worst);
            let best = summarize(heap.iter().chain(retired.iter()), evaluations);
            return Err(QuadError::NonConvergence { best });
        }
        let left = gauss_kronrod_15(&f, worst.a, mid)?;
        let right = gauss_kronrod_15(&f, mid, worst.b)?;
        evaluations += 30;
        value_sum += left.value + right.value - worst.value;
        abs_sum += left.abs + right.abs - worst.abs;
        error_sum += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    Ok(summarize(heap.iter().chain(retired.iter()), evaluations))
}

fn summarize<'a, I>(panels: I, evaluations: usize) -> QuadratureResult
where
    I: Iterator<Item = &'a Panel>,
{
    // Neumaier summation over the panels in abscissa order, so the result does
    // not depend on heap layout.
    let mut all: Vec<&Panel> = panels.collect();
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut err = 0.0;
    for p in &all {
        let t = sum + p.value;
        if sum.abs() >= p.value.abs() {
            comp += (sum - t) + p.value;
        } else {
            comp += (p.value - t) + sum;
        }
        sum = t;
        err += p.error;
    }
    QuadratureResult {
        value: sum + comp,
        error_estimate: err,
        panels: all.len(),
        evaluations,
    }
}

/// Solve `g(x) = target` for `x` in `[bracket_lo, bracket_hi]`, where `g` is
/// monotone (either direction) on the bracket.
///
/// Returns `x` with `|g(x) - target| <= tol * max(1, |target|)`, or the best
/// point once the bracket has shrunk to adjacent floats.
pub fn invert_monotone<G>(g: G, target: f64, bracket_lo: f64, bracket_hi: f64, tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if !(bracket_lo <= bracket_hi) {
        return Err(Error::Ordering {
            a: bracket_lo,
            b: bracket_hi,
        });
    }
    let scale = tol * target.abs().max(1.0);
    let g_lo = g(bracket_lo);
    let g_hi = g(bracket_hi);
    if !(g_lo.is_finite() && g_hi.is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite map value on bracket [{bracket_lo}, {bracket_hi}]"
        )));
    }
    if (g_lo - target).abs() <= scale {
        return Ok(bracket_lo);
    }
    if (g_hi - target).abs() <= scale {
        return Ok(bracket_hi);
    }
    let increasing = g_hi >= g_lo;
    let (g_min, g_max) = if increasing { (g_lo, g_hi) } else { (g_hi, g_lo) };
    if !(g_min <= target && target <= g_max) {
        return Err(Error::Bracket { target, g_lo, g_hi });
    }

    // Cheap monotonicity screen: a decrease beyond tolerance between ordered
    // samples is a hard error.
    const SAMPLES: usize = 8;
    let mut prev = g_lo;
    for k in 1..=SAMPLES {
        let x = bracket_lo + (bracket_hi - bracket_lo) * k as f64 / (SAMPLES + 1) as f64;
        let v = g(x);
        let step = if increasing { v - prev } else { prev - v };
        if step < -scale {
            return Err(Error::NonMonotone {
                lo: bracket_lo,
                hi: bracket_hi,
            });
        }
        prev = v;
    }

    // Illinois variant of regula falsi on h(x) = g(x) - target, oriented so h
    // is increasing.
    let orient = if increasing { 1.0 } else { -1.0 };
    let (mut lo, mut hi) = (bracket_lo, bracket_hi);
    let (mut h_lo, mut h_hi) = (orient * (g_lo - target), orient * (g_hi - target));
    let mut side = 0i8;
    for _ in 0..400 {
        let mut x = if h_hi > h_lo {
            lo - h_lo * (hi - lo) / (h_hi - h_lo)
        } else {
            0.5 * (lo + hi)
        };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        if x <= lo || x >= hi {
            // lo and hi are adjacent floats
            return Ok(if h_hi.abs() < h_lo.abs() { hi } else { lo });
        }
        let h = orient * (g(x) - target);
        if h.abs() <= scale {
            return Ok(x);
        }
        if h < 0.0 {
            lo = x;
            h_lo = h;
            if side == -1 {
                h_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            h_hi = h;
            if side == 1 {
                h_lo *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::Convergence {
        what: format!("inversion for target {target}"),
        lo,
        hi,
        iterations: 400,
    })
}

/// Bisection for a sign change of `f` on `[lo, hi]`, down to `x_tol` or float
/// adjacency.
pub fn bisect_root<F>(f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket {
            target: 0.0,
            g_lo: f_lo,
            g_hi: f_hi,
        });
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        what: "bisection".into(),
        lo,
        hi,
        iterations: 2000,
    })
}
