//! Numerical Jacob's ladders.
//!
//! A ladder is a monotone function `φ` whose derivative is a normalised power
//! of Hardy's `Z`:
//!
//! * first order: `φ₁'(t) = Z²(t) / ln t`,
//! * second order: `φ₂'(t) = 2π² Z⁴(t) / ln⁴ t`.
//!
//! The table stores `(t_i, φ(t_i), φ'(t_i))` on a grid whose step never exceeds
//! half the local Gram spacing. Off the grid, `φ(t) = φ(t_i) + ∫_{t_i}^t φ'`
//! is evaluated with the same quadrature that built the table, so `φ` is an
//! antiderivative of `φ'` to quadrature precision and the change of variables
//! `∫ f(φ(t)) φ'(t) dt = ∫ f(x) dx` holds to that precision. A monotone cubic
//! through the nodes is kept as a fast approximate evaluator.
//!
//! The ladder is anchored at the left end of its range by
//! `t₀ − φ(t₀) = (1 − γ) π(t₀)`.

mod io;
mod primes;

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate_with, invert_monotone, QuadConfig, QuadratureResult};
use crate::special::EULER_GAMMA;
use crate::zeta::{hardy_z, EvalAccuracy};

pub use primes::{prime_pi, PrimeCounter, DEFAULT_SIEVE_LIMIT};

/// Supported abscissa range for building ladders.
pub const MIN_T: f64 = 10.0;
pub const MAX_T: f64 = 1e6;

/// Relative tolerance for sub-step integrals evaluated on demand.
const SEGMENT_REL_TOL: f64 = 1e-14;
/// Value tolerance for inverting a segment integral.
const INVERSE_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LadderOrder {
    First,
    Second,
}

impl LadderOrder {
    pub fn derivative_def(self) -> &'static str {
        match self {
            LadderOrder::First => "Z(t)^2 / ln(t)",
            LadderOrder::Second => "2 pi^2 Z(t)^4 / ln(t)^4",
        }
    }

    pub fn as_number(self) -> u8 {
        match self {
            LadderOrder::First => 1,
            LadderOrder::Second => 2,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(LadderOrder::First),
            2 => Ok(LadderOrder::Second),
            _ => Err(Error::Precondition(format!("ladder order must be 1 or 2, got {n}"))),
        }
    }

    /// `φ'(t)`; NaN if `Z` cannot be evaluated at `t`.
    pub fn derivative(self, t: f64, acc: &EvalAccuracy) -> f64 {
        let Ok(z) = hardy_z(t, acc) else {
            return f64::NAN;
        };
        let l = t.ln();
        match self {
            LadderOrder::First => z * z / l,
            LadderOrder::Second => {
                let z2 = z * z;
                let l2 = l * l;
                2.0 * PI * PI * z2 * z2 / (l2 * l2)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub t: f64,
    pub phi: f64,
    /// Low-order part: the node value is `phi + phi_lo` in double-double, so
    /// rounding does not accumulate along the cumulative sum.
    pub phi_lo: f64,
    pub dphi: f64,
    /// Quadrature error estimate of the step that ends at this node.
    pub step_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderTable {
    order: LadderOrder,
    nodes: Vec<Node>,
    anchor: (f64, f64),
    tolerance: f64,
    accuracy: EvalAccuracy,
    // Fritsch–Carlson slopes for the cubic evaluator.
    slopes: Vec<f64>,
}

/// Grid step at `t`: `min(0.25, π / ln t)`.
pub fn grid_step(t: f64) -> f64 {
    (PI / t.ln()).min(0.25)
}

/// `(1 − γ) π(t)`.
pub fn lag_prediction(t: f64) -> Result<f64> {
    Ok((1.0 - EULER_GAMMA) * prime_pi(t)? as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderOptions {
    pub accuracy: EvalAccuracy,
    /// Multiplies the default grid step; values below 1 refine the grid.
    pub step_scale: f64,
}

impl Default for LadderOptions {
    fn default() -> Self {
        LadderOptions {
            accuracy: EvalAccuracy::default(),
            step_scale: 1.0,
        }
    }
}

pub fn build_ladder(order: LadderOrder, t_min: f64, t_max: f64, tol: f64) -> Result<LadderTable> {
    build_ladder_with(order, t_min, t_max, tol, &LadderOptions::default())
}

pub fn build_ladder_with(
    order: LadderOrder,
    t_min: f64,
    t_max: f64,
    tol: f64,
    opts: &LadderOptions,
) -> Result<LadderTable> {
    if !(MIN_T <= t_min && t_min < t_max && t_max <= MAX_T) {
        return Err(Error::Precondition(format!(
            "ladder range must satisfy {MIN_T} <= t_min < t_max <= {MAX_T}, got [{t_min}, {t_max}]"
        )));
    }
    build(order, t_min, tol, opts, |t, _| t < t_max, t_max)
}

/// Build from `t_min` until `φ` reaches `phi_target` (or `t` reaches `MAX_T`).
pub fn build_ladder_until(
    order: LadderOrder,
    t_min: f64,
    phi_target: f64,
    tol: f64,
    opts: &LadderOptions,
) -> Result<LadderTable> {
    if !(MIN_T..MAX_T).contains(&t_min) {
        return Err(Error::Precondition(format!(
            "ladder start must satisfy {MIN_T} <= t_min < {MAX_T}, got {t_min}"
        )));
    }
    let table = build(order, t_min, tol, opts, |t, phi| phi < phi_target && t < MAX_T, MAX_T)?;
    if table.phi_range().1 < phi_target {
        return Err(Error::OutOfRange {
            what: "phi",
            value: phi_target,
            lo: table.phi_range().0,
            hi: table.phi_range().1,
        });
    }
    Ok(table)
}

fn build(
    order: LadderOrder,
    t_min: f64,
    tol: f64,
    opts: &LadderOptions,
    keep_going: impl Fn(f64, f64) -> bool,
    t_cap: f64,
) -> Result<LadderTable> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    if !(opts.step_scale > 0.0 && opts.step_scale <= 1.0) {
        return Err(Error::Precondition(format!(
            "step scale must lie in (0, 1], got {}",
            opts.step_scale
        )));
    }
    let accuracy = opts.accuracy;
    let phi0 = t_min - lag_prediction(t_min)?;
    let dphi = |t: f64| order.derivative(t, &accuracy);

    let mut nodes = vec![Node {
        t: t_min,
        phi: phi0,
        phi_lo: 0.0,
        dphi: dphi(t_min),
        step_error: 0.0,
    }];
    let mut t = t_min;
    let mut phi = phi0;
    let mut phi_lo = 0.0;
    while keep_going(t, phi) {
        let next = (t + opts.step_scale * grid_step(t)).min(t_cap);
        let step = segment_integral(dphi, t, next, phi, tol)?;
        if !(step.value > 0.0) {
            return Err(Error::NonMonotone { lo: t, hi: next });
        }
        (phi, phi_lo) = dd_add(phi, phi_lo, step.value);
        t = next;
        nodes.push(Node {
            t,
            phi,
            phi_lo,
            dphi: dphi(t),
            step_error: step.error_estimate,
        });
    }
    Ok(LadderTable::from_parts(order, nodes, tol, accuracy))
}

impl LadderTable {
    pub(crate) fn from_parts(order: LadderOrder, nodes: Vec<Node>, tolerance: f64, accuracy: EvalAccuracy) -> Self {
        let anchor = (nodes[0].t, nodes[0].phi);
        let slopes = monotone_slopes(&nodes);
        LadderTable {
            order,
            nodes,
            anchor,
            tolerance,
            accuracy,
            slopes,
        }
    }

    pub fn order(&self) -> LadderOrder {
        self.order
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn anchor(&self) -> (f64, f64) {
        self.anchor
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn accuracy(&self) -> &EvalAccuracy {
        &self.accuracy
    }

    pub fn derivative_def(&self) -> &'static str {
        self.order.derivative_def()
    }

    /// Covered abscissa range `[t_0, t_last]`.
    pub fn t_range(&self) -> (f64, f64) {
        (self.nodes[0].t, self.nodes[self.nodes.len() - 1].t)
    }

    /// Covered value range `[φ(t_0), φ(t_last)]`.
    pub fn phi_range(&self) -> (f64, f64) {
        (self.nodes[0].phi, self.nodes[self.nodes.len() - 1].phi)
    }

    /// `φ'(t)`.
    pub fn derivative(&self, t: f64) -> f64 {
        self.order.derivative(t, &self.accuracy)
    }

    fn segment_containing(&self, t: f64) -> usize {
        let i = self.nodes.partition_point(|n| n.t <= t);
        i.saturating_sub(1).min(self.nodes.len() - 2)
    }

    fn segment_integral(&self, a: f64, b: f64, base: f64) -> Result<QuadratureResult> {
        segment_integral(|s| self.derivative(s), a, b, base, self.tolerance)
    }

    /// `φ(t)` to quadrature precision.
    pub fn value(&self, t: f64) -> Result<f64> {
        self.offset_from(t, 0.0)
    }

    /// `φ(t) − y` without rounding `φ(t)` to a double first.
    pub fn offset_from(&self, t: f64, y: f64) -> Result<f64> {
        let (lo, hi) = self.t_range();
        if !(lo <= t && t <= hi) {
            return Err(Error::OutOfRange {
                what: "t",
                value: t,
                lo,
                hi,
            });
        }
        let node = &self.nodes[self.segment_containing(t)];
        let q = if t == node.t {
            0.0
        } else {
            self.segment_integral(node.t, t, node.phi)?.value
        };
        Ok((node.phi - y) + (node.phi_lo + q))
    }

    /// Monotone cubic interpolant of the nodes (approximate, no quadrature).
    pub fn value_interpolated(&self, t: f64) -> Result<f64> {
        let (lo, hi) = self.t_range();
        if !(lo <= t && t <= hi) {
            return Err(Error::OutOfRange {
                what: "t",
                value: t,
                lo,
                hi,
            });
        }
        let i = self.segment_containing(t);
        let (a, b) = (&self.nodes[i], &self.nodes[i + 1]);
        let h = b.t - a.t;
        let s = (t - a.t) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        Ok(h00 * a.phi + h10 * h * self.slopes[i] + h01 * b.phi + h11 * h * self.slopes[i + 1])
    }

    /// `φ⁻¹(x)`.
    pub fn inverse(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.phi_range();
        if !(lo <= x && x <= hi) {
            return Err(Error::OutOfRange {
                what: "phi",
                value: x,
                lo,
                hi,
            });
        }
        let i = self
            .nodes
            .partition_point(|n| n.phi <= x)
            .saturating_sub(1)
            .min(self.nodes.len() - 2);
        let (a, b) = (&self.nodes[i], &self.nodes[i + 1]);
        // Solve ∫_{t_i}^s φ' = x − φ_i in local coordinates.
        let rest = (x - a.phi) - a.phi_lo;
        if rest <= 0.0 {
            return Ok(a.t);
        }
        if rest >= (b.phi - a.phi) + (b.phi_lo - a.phi_lo) {
            return Ok(b.t);
        }
        invert_monotone(
            |s| {
                if s <= a.t {
                    0.0
                } else {
                    self.segment_integral(a.t, s, a.phi)
                        .map(|r| r.value)
                        .unwrap_or(f64::NAN)
                }
            },
            rest,
            a.t,
            b.t,
            INVERSE_TOL,
        )
    }

    /// `(t − φ(t)) / ((1 − γ) π(t))`, the lag relative to its predicted size.
    pub fn lag_ratio(&self, t: f64) -> Result<f64> {
        Ok((t - self.value(t)?) / lag_prediction(t)?)
    }

    /// True when `φ(t_i) < t_i` at every node.
    pub fn lags_everywhere(&self) -> bool {
        self.nodes.iter().all(|n| n.phi < n.t)
    }
}

// Shared by the build and by off-grid evaluation, so that `φ` is continuous
// across nodes. Near a zero of Z the integrand is rounding noise relative to its
// size, hence the floor of one ulp of the accumulated value.
fn segment_integral<F: Fn(f64) -> f64>(dphi: F, a: f64, b: f64, base: f64, tol: f64) -> Result<QuadratureResult> {
    let abs_tol = tol.max(f64::EPSILON * base.abs().max(1.0));
    let cfg = QuadConfig::new(SEGMENT_REL_TOL).abs_tol(abs_tol);
    Ok(integrate_with(dphi, a, b, &cfg)?)
}

fn dd_add(hi: f64, lo: f64, x: f64) -> (f64, f64) {
    // Knuth two-sum, then renormalise.
    let s = hi + x;
    let bb = s - hi;
    let err = (hi - (s - bb)) + (x - bb);
    let lo = lo + err;
    let h = s + lo;
    (h, lo - (h - s))
}

fn monotone_slopes(nodes: &[Node]) -> Vec<f64> {
    let n = nodes.len();
    let mut m: Vec<f64> = nodes.iter().map(|node| node.dphi.max(0.0)).collect();
    for i in 0..n.saturating_sub(1) {
        let h = nodes[i + 1].t - nodes[i].t;
        let delta = (nodes[i + 1].phi - nodes[i].phi) / h;
        if delta <= 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = m[i] / delta;
        let b = m[i + 1] / delta;
        let r = a * a + b * b;
        if r > 9.0 {
            let tau = 3.0 / r.sqrt();
            m[i] = tau * a * delta;
            m[i + 1] = tau * b * delta;
        }
    }
    m
}

/// `lhs = ∫_{φ⁻¹(T)}^{φ⁻¹(T+U)} f(φ(t)) φ'(t) dt` against `rhs = ∫_T^{T+U} f(x) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstitutionCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Quadrature estimate of the left side, plus the endpoint mismatch
    /// `|f| · |φ(φ⁻¹(y)) − y|` at both limits, plus `|f(φ_i)|` times the build
    /// error of every node crossed.
    pub lhs_error: f64,
    pub rhs_error: f64,
    pub lower: f64,
    pub upper: f64,
}

impl SubstitutionCheck {
    pub fn residual(&self) -> f64 {
        self.lhs - self.rhs
    }

    pub fn error_budget(&self) -> f64 {
        self.lhs_error + self.rhs_error
    }
}

pub fn substitution_check<F>(ladder: &LadderTable, f: F, t: f64, u: f64) -> Result<SubstitutionCheck>
where
    F: Fn(f64) -> f64,
{
    substitution_check_with(ladder, f, t, u, 1e-10)
}

pub fn substitution_check_with<F>(ladder: &LadderTable, f: F, t: f64, u: f64, rel_tol: f64) -> Result<SubstitutionCheck>
where
    F: Fn(f64) -> f64,
{
    if !(u > 0.0 && u <= t / t.ln()) {
        return Err(Error::Precondition(format!(
            "U must lie in (0, T/ln T], got U = {u}, T = {t}"
        )));
    }
    let lower = ladder.inverse(t)?;
    let upper = ladder.inverse(t + u)?;
    let hint = Some(TAU / lower.ln());
    let cfg = QuadConfig::new(rel_tol).wavelength_hint(hint).relative_to_l1(true);
    let lhs = integrate_with(
        |s| match ladder.value(s) {
            Ok(x) => f(x) * ladder.derivative(s),
            Err(_) => f64::NAN,
        },
        lower,
        upper,
        &cfg,
    )?;
    let rhs = integrate_with(&f, t, t + u, &cfg)?;
    let endpoint =
        f(t).abs() * ladder.offset_from(lower, t)?.abs() + f(t + u).abs() * ladder.offset_from(upper, t + u)?.abs();
    // Each node carries the error of its build step.
    let seams: f64 = ladder
        .nodes()
        .iter()
        .filter(|n| lower < n.t && n.t <= upper)
        .map(|n| f(n.phi).abs() * n.step_error)
        .sum();
    Ok(SubstitutionCheck {
        lhs: lhs.value,
        rhs: rhs.value,
        lhs_error: lhs.error_estimate + endpoint + seams,
        rhs_error: rhs.error_estimate,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_ladder() -> LadderTable {
        build_ladder(LadderOrder::First, 990.0, 1100.0, 1e-12).unwrap()
    }

    #[test]
    fn range_preconditions() {
        assert!(build_ladder(LadderOrder::First, 5.0, 100.0, 1e-10).is_err());
        assert!(build_ladder(LadderOrder::First, 100.0, 100.0, 1e-10).is_err());
        assert!(build_ladder(LadderOrder::First, 100.0, 2e6, 1e-10).is_err());
        assert!(build_ladder(LadderOrder::First, 100.0, 200.0, 0.0).is_err());
    }

    #[test]
    fn anchored_by_prime_counting() {
        let l = small_ladder();
        let (t0, phi0) = l.anchor();
        assert_eq!(t0, 990.0);
        assert!((t0 - phi0 - (1.0 - EULER_GAMMA) * 166.0).abs() < 1e-12);
    }

    #[test]
    fn grid_is_fine_and_monotone() {
        let l = small_ladder();
        for w in l.nodes().windows(2) {
            assert!(w[1].phi > w[0].phi);
            assert!(w[1].t - w[0].t <= 0.5 * TAU / w[0].t.ln() + 1e-12);
        }
        assert!(l.lags_everywhere());
    }

    #[test]
    fn inverse_lands_right_of_the_argument() {
        let l = small_ladder();
        let x = 1000.0;
        let t = l.inverse(l.value(x).unwrap()).unwrap();
        assert!((t - x).abs() < 1e-8);
        assert!(l.inverse(x - 10.0).unwrap() > x - 10.0);
    }

    #[test]
    fn out_of_range_is_reported() {
        let l = small_ladder();
        assert!(matches!(l.value(10.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(l.inverse(5000.0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn interpolant_tracks_exact_value() {
        let l = small_ladder();
        for k in 0..50 {
            let t = 995.0 + 1.9 * k as f64 + 0.013;
            let exact = l.value(t).unwrap();
            let approx = l.value_interpolated(t).unwrap();
            assert!((exact - approx).abs() < 1e-2, "t = {t}");
        }
    }

    #[test]
    fn unit_weight_substitution_returns_u() {
        let l = small_ladder();
        let c = substitution_check(&l, |_| 1.0, 1000.0, 10.0).unwrap();
        assert!((c.lhs - 10.0).abs() < 1e-8, "{}", c.lhs);
        assert!((c.rhs - 10.0).abs() < 1e-12);
    }

    #[test]
    fn substitution_rejects_large_u() {
        let l = small_ladder();
        assert!(matches!(
            substitution_check(&l, |_| 1.0, 1000.0, 200.0),
            Err(Error::Precondition(_))
        ));
    }
}
