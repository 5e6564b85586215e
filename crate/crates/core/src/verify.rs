//! Both sides of the two theorems and of every step between them.
//!
//! Each comparison becomes a [`VerificationRecord`]. Steps that are exact
//! (the change of variables, the Bessel antiderivative, trigonometric algebra)
//! are compared at quadrature precision; asymptotic steps carry their residual
//! multiplied by the rate at which it should vanish, so a bounded scaled
//! residual confirms the rate.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::{j0, j1, j1_definite_integral, BesselZeroTable};
use crate::error::{Error, Result};
use crate::gram::{classify_points, gram_point, ExclusionMode};
use crate::ladder::{substitution_check_with, LadderOrder, LadderTable};
use crate::quad::{integrate_with, QuadConfig};
use crate::zeta::zeta_abs_sq;

/// Ratios are suppressed when `|rhs|` falls below this.
pub const RATIO_GUARD: f64 = 1e-12;

/// Absolute accuracy credited to a closed-form `J₀` difference.
const BESSEL_DIFFERENCE_ERROR: f64 = 1e-13;

pub const DEFAULT_THM1_REL_TOL: f64 = 1e-9;
pub const DEFAULT_THM2_REL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    /// `∫ J₁(φ₁) |ζ|²` against `2√(2π)/√t sin(t − π/4)`.
    Thm1,
    /// `∫ J₁(φ₁) φ₁'` against `J₀(t_ν) − J₀(t_{ν+1})` (exact).
    Thm1ExactMidchain,
    /// `1/√t_{ν+1}` against `1/√t_ν`.
    Chain36,
    /// `J₀(t_ν) − J₀(t_{ν+1})` against its leading Hankel term.
    Chain37,
    /// Cosine difference against `(2π/ln t) sin(t − π/4)`.
    Chain38,
    /// `J₀(t_ν) − J₀(t_{ν+1})` against `2√(2π)/(√t ln t) sin(t − π/4)`.
    Chain39,
    /// `∫ |ζ(½+iφ₂)|⁴ |ζ|⁴` against `U ln⁸T / (4π⁴)`.
    Thm2,
    /// `∫ |ζ(½+iφ₂)|⁴ φ₂'` against `∫_T^{T+U} |ζ|⁴` (exact).
    Thm2ExactMidchain,
}

impl RecordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordKind::Thm1 => "thm1",
            RecordKind::Thm1ExactMidchain => "thm1_exact_midchain",
            RecordKind::Chain36 => "chain36",
            RecordKind::Chain37 => "chain37",
            RecordKind::Chain38 => "chain38",
            RecordKind::Chain39 => "chain39",
            RecordKind::Thm2 => "thm2",
            RecordKind::Thm2ExactMidchain => "thm2_exact_midchain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub kind: RecordKind,
    pub nu: Option<u64>,
    /// `t_ν` for Gram-indexed records, `T` otherwise.
    pub t: f64,
    pub u: Option<f64>,
    pub epsilon: Option<f64>,
    pub mode: Option<ExclusionMode>,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, absent when `|rhs| < RATIO_GUARD`.
    pub ratio: Option<f64>,
    pub residual: f64,
    /// `residual` times the rate at which it should vanish.
    pub scaled_residual: Option<f64>,
    pub quad_error: f64,
    pub admissible: Option<bool>,
}

impl VerificationRecord {
    fn new(kind: RecordKind, t: f64, lhs: f64, rhs: f64, quad_error: f64) -> Self {
        VerificationRecord {
            kind,
            nu: None,
            t,
            u: None,
            epsilon: None,
            mode: None,
            lhs,
            rhs,
            ratio: (rhs.abs() >= RATIO_GUARD).then(|| lhs / rhs),
            residual: lhs - rhs,
            scaled_residual: None,
            quad_error,
            admissible: None,
        }
    }

    fn with_nu(mut self, nu: u64) -> Self {
        self.nu = Some(nu);
        self
    }

    fn scaled_by(mut self, rate: f64) -> Self {
        self.scaled_residual = Some(self.residual * rate);
        self
    }

    pub fn flagged(&self) -> bool {
        self.ratio.is_none()
    }
}

/// `2√(2π)/√t · sin(t − π/4)`.
pub fn thm1_rhs_at(t: f64) -> f64 {
    2.0 * TAU.sqrt() / t.sqrt() * (t - FRAC_PI_4).sin()
}

pub fn thm1_rhs(nu: u64) -> Result<f64> {
    Ok(thm1_rhs_at(gram_point(nu)?.t))
}

/// `2√(2π)/(√t ln t) · sin(t − π/4)`.
pub fn chain39_rhs_at(t: f64) -> f64 {
    thm1_rhs_at(t) / t.ln()
}

/// Weight multiplying `J₁(φ₁(t))` in the first theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `|ζ(½+it)|²`, the statement of the theorem.
    ZetaSquared,
    /// `φ₁'(t)`, which makes the integral exactly `J₀(t_ν) − J₀(t_{ν+1})`.
    LadderDerivative,
}

/// `∫_{φ⁻¹(t_lo)}^{φ⁻¹(t_hi)} J₁(φ(t)) w(t) dt`.
pub fn thm1_lhs_between(
    ladder: &LadderTable,
    t_lo: f64,
    t_hi: f64,
    weight: Weight,
    rel_tol: f64,
) -> Result<crate::quad::QuadratureResult> {
    if ladder.order() != LadderOrder::First {
        return Err(Error::Precondition(
            "the first theorem needs a first-order ladder".into(),
        ));
    }
    if t_hi < t_lo {
        return Err(Error::Ordering { a: t_lo, b: t_hi });
    }
    if t_hi == t_lo {
        return Ok(crate::quad::QuadratureResult::ZERO);
    }
    let a = ladder.inverse(t_lo)?;
    let b = ladder.inverse(t_hi)?;
    let acc = *ladder.accuracy();
    let cfg = QuadConfig::new(rel_tol)
        .wavelength_hint(Some(TAU / a.ln()))
        .relative_to_l1(true);
    let integrand = |s: f64| -> f64 {
        let x = match ladder.value(s) {
            Ok(x) => x,
            Err(_) => return f64::NAN,
        };
        let w = match weight {
            Weight::ZetaSquared => zeta_abs_sq(s, &acc).unwrap_or(f64::NAN),
            Weight::LadderDerivative => ladder.derivative(s),
        };
        j1(x).unwrap_or(f64::NAN) * w
    };
    Ok(integrate_with(integrand, a, b, &cfg)?)
}

pub fn thm1_lhs(ladder: &LadderTable, nu: u64) -> Result<crate::quad::QuadratureResult> {
    let lo = gram_point(nu)?.t;
    let hi = gram_point(nu + 1)?.t;
    thm1_lhs_between(ladder, lo, hi, Weight::ZetaSquared, DEFAULT_THM1_REL_TOL)
}

/// The four algebraically equal forms of `cos(a − π/4) − cos(b − π/4)` used
/// on the way from the cosine difference to a single sine.
///
/// Every form is built from the phase `a − π/4` and the step `b − a` (exact
/// for Gram neighbours), so rounding of a large argument enters once and
/// the forms agree to a few ulps.
pub fn cosine_difference_forms(a: f64, b: f64) -> [f64; 4] {
    let x = a - FRAC_PI_4;
    let (sa, ca) = x.sin_cos();
    let d = b - a;
    let (sd, cd) = d.sin_cos();
    let (sh, ch) = (0.5 * d).sin_cos();
    [
        ca - (ca * cd - sa * sd),
        2.0 * sh * (sa * ch + ca * sh),
        2.0 * sh * ch * sa + 2.0 * sh * sh * ca,
        2.0 * sh * sh * ca + sd * sa,
    ]
}

/// Records for the asymptotic steps between the exact Bessel identity and
/// the sharp form of the first theorem, in the order
/// `[chain36, chain37, chain38, chain39]`.
pub fn chain_records(nu: u64) -> Result<[VerificationRecord; 4]> {
    let t0 = gram_point(nu)?.t;
    let t1 = gram_point(nu + 1)?.t;
    Ok(chain_records_between(nu, t0, t1))
}

pub(crate) fn chain_records_between(nu: u64, t0: f64, t1: f64) -> [VerificationRecord; 4] {
    let l = t0.ln();
    let t32 = t0 * t0.sqrt();
    let j0_diff = j1_definite_integral(t0, t1).expect("Gram points are positive and ordered");
    let cos_diff = cosine_difference_forms(t0, t1)[0];
    let s = (t0 - FRAC_PI_4).sin();

    let r36 = VerificationRecord::new(RecordKind::Chain36, t0, 1.0 / t1.sqrt(), 1.0 / t0.sqrt(), 0.0)
        .with_nu(nu)
        .scaled_by(t32 * l);
    let r37 = VerificationRecord::new(
        RecordKind::Chain37,
        t0,
        j0_diff,
        (2.0 / (PI * t0)).sqrt() * cos_diff,
        BESSEL_DIFFERENCE_ERROR,
    )
    .with_nu(nu)
    .scaled_by(t32);
    let r38 = VerificationRecord::new(RecordKind::Chain38, t0, cos_diff, TAU / l * s, 0.0)
        .with_nu(nu)
        .scaled_by(l * l);
    let r39 = VerificationRecord::new(
        RecordKind::Chain39,
        t0,
        j0_diff,
        chain39_rhs_at(t0),
        BESSEL_DIFFERENCE_ERROR,
    )
    .with_nu(nu)
    .scaled_by(t0.sqrt() * l * l);
    [r36, r37, r38, r39]
}

pub fn chain_check_37_38(nu: u64) -> Result<(VerificationRecord, VerificationRecord)> {
    let [_, r37, r38, _] = chain_records(nu)?;
    Ok((r37, r38))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm1Options {
    pub rel_tol: f64,
    /// Evaluate inadmissible intervals instead of rejecting them.
    pub force: bool,
}

impl Default for Thm1Options {
    fn default() -> Self {
        Thm1Options {
            rel_tol: DEFAULT_THM1_REL_TOL,
            force: false,
        }
    }
}

/// Records produced for one Gram interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm1Records {
    /// `|ζ|²` weight against the statement of the theorem.
    pub full: VerificationRecord,
    /// `φ₁'` weight against `J₀(t_ν) − J₀(t_{ν+1})`.
    pub exact: VerificationRecord,
    /// `φ₁'` weight against the sharp asymptotic with the `1/ln t` factor.
    pub sharp: VerificationRecord,
}

impl Thm1Records {
    pub fn to_vec(&self) -> Vec<VerificationRecord> {
        vec![self.full, self.exact, self.sharp]
    }
}

pub fn thm1_verify(
    ladder: &LadderTable,
    nu: u64,
    epsilon: f64,
    mode: ExclusionMode,
    zeros: &BesselZeroTable,
    opts: &Thm1Options,
) -> Result<Thm1Records> {
    let t0 = gram_point(nu)?.t;
    let t1 = gram_point(nu + 1)?.t;
    let class = classify_points(nu, t0, t1, epsilon, zeros, mode)?;
    if !class.admissible && !opts.force {
        return Err(Error::Inadmissible { nu });
    }
    let tag = |mut r: VerificationRecord| {
        r.nu = Some(nu);
        r.epsilon = Some(epsilon);
        r.mode = Some(mode);
        r.admissible = Some(class.admissible);
        r
    };

    let full = thm1_lhs_between(ladder, t0, t1, Weight::ZetaSquared, opts.rel_tol)?;
    let full = tag(VerificationRecord::new(
        RecordKind::Thm1,
        t0,
        full.value,
        thm1_rhs_at(t0),
        full.error_estimate,
    ));

    let check = substitution_check_with(ladder, |x| j1(x).unwrap_or(f64::NAN), t0, t1 - t0, opts.rel_tol)?;
    let exact = tag(VerificationRecord::new(
        RecordKind::Thm1ExactMidchain,
        t0,
        check.lhs,
        j1_definite_integral(t0, t1)?,
        check.lhs_error + BESSEL_DIFFERENCE_ERROR,
    ));

    let l = t0.ln();
    let sharp = tag(
        VerificationRecord::new(RecordKind::Chain39, t0, check.lhs, chain39_rhs_at(t0), check.lhs_error)
            .scaled_by(t0.sqrt() * l * l),
    );
    Ok(Thm1Records { full, exact, sharp })
}

/// Which ladder's inverse supplies the integration limits of the second theorem.
#[derive(Debug, Clone, Copy, Default)]
pub enum Thm2Limits<'a> {
    /// `φ₂⁻¹(T)`, `φ₂⁻¹(T+U)`.
    #[default]
    SecondOrder,
    /// `φ₁⁻¹(T)`, `φ₁⁻¹(T+U)` from the given first-order ladder.
    FirstOrder(&'a LadderTable),
}

#[derive(Debug, Clone, Copy)]
pub struct Thm2Options<'a> {
    pub rel_tol: f64,
    pub limits: Thm2Limits<'a>,
}

impl Default for Thm2Options<'_> {
    fn default() -> Self {
        Thm2Options {
            rel_tol: DEFAULT_THM2_REL_TOL,
            limits: Thm2Limits::SecondOrder,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm2Records {
    pub full: VerificationRecord,
    pub exact: VerificationRecord,
}

impl Thm2Records {
    pub fn to_vec(&self) -> Vec<VerificationRecord> {
        vec![self.full, self.exact]
    }
}

/// `U ln⁸T / (4π⁴)`.
pub fn thm2_rhs(t: f64, u: f64) -> f64 {
    let l2 = t.ln().powi(2);
    u * l2 * l2 * l2 * l2 / (4.0 * PI.powi(4))
}

pub fn thm2_verify(ladder: &LadderTable, t: f64, u: f64, opts: &Thm2Options) -> Result<Thm2Records> {
    if ladder.order() != LadderOrder::Second {
        return Err(Error::Precondition(
            "the second theorem needs a second-order ladder".into(),
        ));
    }
    if !(u >= 0.0 && u <= t / t.ln()) {
        return Err(Error::Precondition(format!(
            "U must lie in [0, T/ln T], got U = {u}, T = {t}"
        )));
    }
    let tag = |mut r: VerificationRecord| {
        r.u = Some(u);
        r
    };
    if u == 0.0 {
        return Ok(Thm2Records {
            full: tag(VerificationRecord::new(RecordKind::Thm2, t, 0.0, 0.0, 0.0)),
            exact: tag(VerificationRecord::new(RecordKind::Thm2ExactMidchain, t, 0.0, 0.0, 0.0)),
        });
    }
    let acc = *ladder.accuracy();
    let fourth = |y: f64| zeta_abs_sq(y, &acc).map(|v| v * v).unwrap_or(f64::NAN);

    let check = substitution_check_with(ladder, fourth, t, u, opts.rel_tol)?;
    let exact = tag(VerificationRecord::new(
        RecordKind::Thm2ExactMidchain,
        t,
        check.lhs,
        check.rhs,
        check.error_budget(),
    ));

    let (a, b) = match opts.limits {
        Thm2Limits::SecondOrder => (check.lower, check.upper),
        Thm2Limits::FirstOrder(l1) => {
            if l1.order() != LadderOrder::First {
                return Err(Error::Precondition(
                    "first-order limits need a first-order ladder".into(),
                ));
            }
            (l1.inverse(t)?, l1.inverse(t + u)?)
        }
    };
    let (lo, hi) = ladder.t_range();
    if a < lo || b > hi {
        return Err(Error::OutOfRange {
            what: "t",
            value: if a < lo { a } else { b },
            lo,
            hi,
        });
    }
    let cfg = QuadConfig::new(opts.rel_tol).wavelength_hint(Some(TAU / a.ln()));
    let lhs = integrate_with(
        |s| match ladder.value(s) {
            Ok(x) => fourth(x) * fourth(s),
            Err(_) => f64::NAN,
        },
        a,
        b,
        &cfg,
    )?;
    let full = tag(VerificationRecord::new(
        RecordKind::Thm2,
        t,
        lhs.value,
        thm2_rhs(t, u),
        lhs.error_estimate,
    ));
    Ok(Thm2Records { full, exact })
}

/// A batch of verifications over disjoint parameters.
#[derive(Debug, Clone)]
pub enum Campaign<'a> {
    Thm1 {
        ladder: &'a LadderTable,
        nu_from: u64,
        nu_to: u64,
        epsilon: f64,
        mode: ExclusionMode,
        options: Thm1Options,
    },
    Chain {
        nu_from: u64,
        nu_to: u64,
    },
    Thm2 {
        ladder: &'a LadderTable,
        windows: Vec<(f64, f64)>,
        options: Thm2Options<'a>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignFailure {
    pub parameter: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CampaignOutcome {
    /// Ordered by parameter, then by kind within a parameter.
    pub records: Vec<VerificationRecord>,
    pub failures: Vec<CampaignFailure>,
    /// Inadmissible intervals skipped by a non-forced first-theorem campaign.
    pub skipped: u64,
}

enum Item {
    Records(Vec<VerificationRecord>),
    Skipped,
    Failed(CampaignFailure),
}

/// Runs on the current rayon pool; output order does not depend on scheduling.
pub fn run_campaign(campaign: &Campaign) -> CampaignOutcome {
    let items: Vec<Item> = match campaign {
        Campaign::Thm1 {
            ladder,
            nu_from,
            nu_to,
            epsilon,
            mode,
            options,
        } => {
            if nu_from > nu_to {
                return CampaignOutcome::default();
            }
            let zeros = match gram_point(nu_to + 1) {
                Ok(g) => BesselZeroTable::covering(g.t),
                Err(e) => {
                    return CampaignOutcome {
                        failures: vec![CampaignFailure {
                            parameter: format!("nu={}", nu_to + 1),
                            message: e.to_string(),
                        }],
                        ..Default::default()
                    }
                }
            };
            (*nu_from..=*nu_to)
                .into_par_iter()
                .map(|nu| match thm1_verify(ladder, nu, *epsilon, *mode, &zeros, options) {
                    Ok(r) => Item::Records(r.to_vec()),
                    Err(Error::Inadmissible { .. }) => Item::Skipped,
                    Err(e) => Item::Failed(CampaignFailure {
                        parameter: format!("nu={nu}"),
                        message: e.to_string(),
                    }),
                })
                .collect()
        }
        Campaign::Chain { nu_from, nu_to } => {
            if nu_from > nu_to {
                return CampaignOutcome::default();
            }
            (*nu_from..=*nu_to)
                .into_par_iter()
                .map(|nu| match chain_records(nu) {
                    Ok(r) => Item::Records(r.to_vec()),
                    Err(e) => Item::Failed(CampaignFailure {
                        parameter: format!("nu={nu}"),
                        message: e.to_string(),
                    }),
                })
                .collect()
        }
        Campaign::Thm2 {
            ladder,
            windows,
            options,
        } => windows
            .par_iter()
            .map(|&(t, u)| match thm2_verify(ladder, t, u, options) {
                Ok(r) => Item::Records(r.to_vec()),
                Err(e) => Item::Failed(CampaignFailure {
                    parameter: format!("T={t},U={u}"),
                    message: e.to_string(),
                }),
            })
            .collect(),
    };
    let mut out = CampaignOutcome::default();
    for item in items {
        match item {
            Item::Records(r) => out.records.extend(r),
            Item::Skipped => out.skipped += 1,
            Item::Failed(f) => out.failures.push(f),
        }
    }
    out
}

pub const CSV_COLUMNS: [&str; 13] = [
    "kind",
    "nu",
    "t",
    "u",
    "epsilon",
    "mode",
    "lhs",
    "rhs",
    "ratio",
    "residual",
    "scaled_residual",
    "quad_error",
    "admissible",
];

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_records_csv<W: Write>(records: &[VerificationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.write_record([
            r.kind.as_str().to_string(),
            r.nu.map(|n| n.to_string()).unwrap_or_default(),
            num(r.t),
            opt_num(r.u),
            opt_num(r.epsilon),
            r.mode.map(|m| m.as_str().to_string()).unwrap_or_default(),
            num(r.lhs),
            num(r.rhs),
            opt_num(r.ratio),
            num(r.residual),
            opt_num(r.scaled_residual),
            num(r.quad_error),
            r.admissible.map(|a| a.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `|ratio − 1|` statistics for one record kind within one decade of `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecadeSummary {
    pub kind: RecordKind,
    /// Records with `10^decade <= t < 10^(decade+1)`.
    pub decade: i32,
    pub count: usize,
    /// Records whose ratio was suppressed.
    pub flagged: usize,
    pub q1: Option<f64>,
    pub median: Option<f64>,
    pub q3: Option<f64>,
    pub max_abs_scaled_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub records: usize,
    pub failures: usize,
    pub skipped: u64,
    pub groups: Vec<DecadeSummary>,
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    let next = sorted[(i + 1).min(sorted.len() - 1)];
    Some(sorted[i] + frac * (next - sorted[i]))
}

pub fn median_abs_deviation_from_one(records: &[VerificationRecord]) -> Option<f64> {
    let mut d: Vec<f64> = records
        .iter()
        .filter_map(|r| r.ratio)
        .map(|q| (q - 1.0).abs())
        .collect();
    d.sort_by(f64::total_cmp);
    quantile(&d, 0.5)
}

pub fn summarize(outcome: &CampaignOutcome) -> CampaignSummary {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(RecordKind, i32), Vec<&VerificationRecord>> = BTreeMap::new();
    for r in &outcome.records {
        let decade = r.t.log10().floor() as i32;
        groups.entry((r.kind, decade)).or_default().push(r);
    }
    let groups = groups
        .into_iter()
        .map(|((kind, decade), rs)| {
            let mut dev: Vec<f64> = rs.iter().filter_map(|r| r.ratio).map(|q| (q - 1.0).abs()).collect();
            dev.sort_by(f64::total_cmp);
            let max_scaled = rs
                .iter()
                .filter_map(|r| r.scaled_residual)
                .map(f64::abs)
                .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
            DecadeSummary {
                kind,
                decade,
                count: rs.len(),
                flagged: rs.iter().filter(|r| r.flagged()).count(),
                q1: quantile(&dev, 0.25),
                median: quantile(&dev, 0.5),
                q3: quantile(&dev, 0.75),
                max_abs_scaled_residual: max_scaled,
            }
        })
        .collect();
    CampaignSummary {
        records: outcome.records.len(),
        failures: outcome.failures.len(),
        skipped: outcome.skipped,
        groups,
    }
}

/// Closed-form `J₀(a) − J₀(b)` for arbitrary (not Gram) limits.
pub fn bessel_difference(a: f64, b: f64) -> Result<f64> {
    Ok(j0(a)? - j0(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::build_ladder;

    #[test]
    fn rhs_closed_form() {
        assert_eq!(thm1_rhs_at(FRAC_PI_4), 0.0);
        for k in 0..200 {
            let t = 100.0 + 37.3 * k as f64;
            assert!(thm1_rhs_at(t).abs() <= 2.0 * TAU.sqrt() / t.sqrt());
        }
    }

    #[test]
    fn ratio_is_guarded() {
        let r = VerificationRecord::new(RecordKind::Thm1, 100.0, 1e-3, 1e-13, 0.0);
        assert!(r.flagged());
        assert_eq!(r.residual, 1e-3 - 1e-13);
        let r = VerificationRecord::new(RecordKind::Thm1, 100.0, 2.0, 4.0, 0.0);
        assert_eq!(r.ratio, Some(0.5));
    }

    #[test]
    fn trig_forms_agree() {
        for nu in [10u64, 100, 1000, 5000] {
            let a = gram_point(nu).unwrap().t;
            let b = gram_point(nu + 1).unwrap().t;
            let f = cosine_difference_forms(a, b);
            for g in &f[1..] {
                assert!((g - f[0]).abs() < 1e-13, "nu = {nu}");
            }
        }
    }

    #[test]
    fn chain_records_are_consistent() {
        let [r36, r37, r38, r39] = chain_records(500).unwrap();
        assert!(r36.lhs < r36.rhs);
        assert_eq!(r37.lhs, r39.lhs);
        assert_eq!(r38.kind, RecordKind::Chain38);
        for r in [r36, r37, r38, r39] {
            assert_eq!(r.nu, Some(500));
            assert!(r.scaled_residual.unwrap().is_finite());
        }
    }

    #[test]
    fn empty_interval_gives_zero() {
        let l = build_ladder(LadderOrder::First, 900.0, 1000.0, 1e-12).unwrap();
        let r = thm1_lhs_between(&l, 880.0, 880.0, Weight::ZetaSquared, 1e-9).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn thm2_zero_window() {
        let l = build_ladder(LadderOrder::Second, 900.0, 1000.0, 1e-12).unwrap();
        let r = thm2_verify(&l, 950.0, 0.0, &Thm2Options::default()).unwrap();
        assert_eq!((r.full.lhs, r.full.rhs), (0.0, 0.0));
        assert!(r.full.flagged());
    }

    #[test]
    fn order_is_checked() {
        let l = build_ladder(LadderOrder::Second, 900.0, 1000.0, 1e-12).unwrap();
        assert!(matches!(
            thm1_lhs_between(&l, 880.0, 881.0, Weight::ZetaSquared, 1e-9),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quantiles() {
        let d = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&d, 0.5), Some(2.5));
        assert_eq!(quantile(&d, 0.0), Some(1.0));
        assert_eq!(quantile(&[], 0.5), None);
    }

    #[test]
    fn empty_campaign() {
        let out = run_campaign(&Campaign::Chain { nu_from: 5, nu_to: 4 });
        assert!(out.records.is_empty() && out.failures.is_empty());
    }
}
