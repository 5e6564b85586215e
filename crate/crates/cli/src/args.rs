use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacobs_ladder::gram::{ExclusionMode, DEFAULT_EPSILON};
use jacobs_ladder::verify::{DEFAULT_THM1_REL_TOL, DEFAULT_THM2_REL_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "jladder",
    version,
    about = "Numerical Jacob's ladders, Gram points and Bessel-weighted integrals of |zeta(1/2+it)|^2",
    long_about = "Numerical Jacob's ladders, Gram points and Bessel-weighted integrals of |zeta(1/2+it)|^2.\n\n\
        Every command is deterministic: identical invocations write byte-identical CSV/JSON.\n\
        Exit status: 0 success, 1 usage error, 2 numerical failure."
)]
pub struct Cli {
    /// Worker threads for campaign fan-out (default: available cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gram points t_nu (theta(t_nu) = pi nu) and their classification.
    #[command(subcommand)]
    Gram(GramCommand),
    /// Zeros of the Bessel function J1.
    #[command(subcommand)]
    Bessel(BesselCommand),
    /// Build and inspect ladder tables.
    #[command(subcommand)]
    Ladder(LadderCommand),
    /// Evaluate both sides of the ladder theorems and the steps between them.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Recompute every golden fixture and report the largest deviations.
    #[command(
        long_about = "Recompute theta, Z, Gram points, J0/J1 values, J1 zeros, prime counts, zeta zeros and \
            zero counts, and compare with the 60-digit golden CSV fixtures.\n\n\
            The fixture directory defaults to the one shipped with the library; override it with \
            --fixtures or the JLADDER_FIXTURES environment variable. A missing or malformed fixture, \
            or any value outside tolerance, exits with status 2."
    )]
    OracleCheck(OracleArgs),
}

#[derive(Debug, Subcommand)]
pub enum GramCommand {
    /// List t_nu for nu in [from, to] with their interval classification.
    #[command(
        long_about = "List Gram points t_nu, the solutions of theta(t_nu) = pi nu, for nu in [from, to].\n\n\
            Columns: nu, t, spacing (t_{nu+1} - t_nu), residual (spacing minus spacing_prediction), \
            admissible, cell_index (n with mu_n <= t_nu < mu_{n+1}), sin_magnitude (|sin(t_nu - pi/4)|), \
            spacing_prediction (2 pi / ln t + 2 pi ln(2 pi) / ln^2 t), theta_residual, inside_bessel_cell, \
            clears_exclusion. An interval [t_nu, t_{nu+1}] is admissible when it lies inside one cell \
            [mu_n, mu_{n+1}] between consecutive zeros of J1 and stays clear of the epsilon-zones \
            around the points k pi (paper_literal) or around the zeros of sin(t - pi/4) (sin_zeros)."
    )]
    List(GramListArgs),
    /// Count Gram intervals inside each J1 zero cell [mu_n, mu_{n+1}].
    #[command(
        long_about = "For each cell [mu_n, mu_{n+1}] between consecutive zeros of J1, count the Gram intervals \
            lying wholly inside it and those that are also admissible, next to the prediction \
            N ~ (1/2) ln t that follows from cell width ~ pi and Gram spacing ~ 2 pi / ln t."
    )]
    Cells(GramCellsArgs),
}

#[derive(Debug, Args)]
pub struct GramListArgs {
    #[arg(long, value_name = "NU")]
    pub from: u64,
    #[arg(long, value_name = "NU")]
    pub to: u64,
    #[command(flatten)]
    pub admissibility: AdmissibilityArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GramCellsArgs {
    #[arg(long, value_name = "N")]
    pub from: usize,
    #[arg(long, value_name = "N")]
    pub to: usize,
    #[command(flatten)]
    pub admissibility: AdmissibilityArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct AdmissibilityArgs {
    /// Half-width of the exclusion zones.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::PaperLiteral)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Exclude neighbourhoods of k pi.
    PaperLiteral,
    /// Exclude neighbourhoods of k pi + pi/4, the zeros of sin(t - pi/4).
    SinZeros,
}

impl From<ModeArg> for ExclusionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PaperLiteral => ExclusionMode::PaperLiteral,
            ModeArg::SinZeros => ExclusionMode::SinZeros,
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BesselCommand {
    /// First COUNT positive zeros mu_n of J1.
    #[command(
        long_about = "First COUNT positive zeros mu_n of J1, refined by bisection to adjacent doubles. \
            Their spacing tends to pi. Columns: n, mu, j1_residual (J1(mu_n)), spacing (mu_n - mu_{n-1})."
    )]
    Zeros(BesselZerosArgs),
}

#[derive(Debug, Args)]
pub struct BesselZerosArgs {
    #[arg(long)]
    pub count: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum LadderCommand {
    /// Integrate a ladder derivative and write the table.
    #[command(
        long_about = "Build a ladder table on [t-min, t-max] by cumulative adaptive quadrature of its derivative:\n\
            \n  order 1: phi1'(t) = Z(t)^2 / ln t\n  order 2: phi2'(t) = 2 pi^2 Z(t)^4 / ln^4 t\n\n\
            anchored by t0 - phi(t0) = (1 - gamma) pi(t0), with gamma Euler's constant and pi(t) the \
            prime-counting function. Grid step min(0.25, pi / ln t). The file starts with a '# {json}' \
            header line followed by CSV columns t, phi, phi_lo, phi_prime, step_error (phi + phi_lo is \
            the node value in double-double). A JSON summary goes to standard output."
    )]
    Build(LadderBuildArgs),
    /// Plot-ready lag diagnostic t - phi(t) against (1 - gamma) pi(t).
    #[command(
        long_about = "Emit every K-th node of a ladder file with the lag t - phi(t), its prediction \
            (1 - gamma) pi(t) and their ratio. Columns: t, phi, phi_prime, lag, lag_prediction, lag_ratio."
    )]
    Series(LadderSeriesArgs),
}

#[derive(Debug, Args)]
pub struct LadderBuildArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub order: u8,
    #[arg(long)]
    pub t_min: f64,
    #[arg(long)]
    pub t_max: f64,
    /// Absolute error allowed per grid step.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LadderSeriesArgs {
    #[arg(long, value_name = "FILE")]
    pub ladder: PathBuf,
    /// Emit every K-th node.
    #[arg(long, default_value_t = 1, value_name = "K")]
    pub every: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Bessel-weighted |zeta|^2 integrals over inverse-ladder images of Gram intervals.
    #[command(
        long_about = "For each admissible Gram interval [t_nu, t_{nu+1}] with nu in [nu-from, nu-to], write three records:\n\
            \n  thm1                 int J1(phi1(t)) |zeta(1/2+it)|^2 dt over [phi1^-1(t_nu), phi1^-1(t_{nu+1})]\n\
            \x20                      against 2 sqrt(2 pi) / sqrt(t_nu) sin(t_nu - pi/4)\n\
            \x20 thm1_exact_midchain  the same integral with weight phi1'(t), against J0(t_nu) - J0(t_{nu+1})\n\
            \x20                      (exact change of variables plus the J1 antiderivative)\n\
            \x20 chain39              the phi1'-weighted integral against\n\
            \x20                      2 sqrt(2 pi) / (sqrt(t_nu) ln t_nu) sin(t_nu - pi/4),\n\
            \x20                      scaled residual x sqrt(t) ln^2 t\n\n\
            The ladder file must be first order and its phi range must cover [t_nu-from, t_{nu-to + 1}]; \
            otherwise the command exits with status 2 and reports the covered range. Inadmissible \
            intervals are skipped unless --force is given. CSV columns: kind, nu, t, u, epsilon, mode, \
            lhs, rhs, ratio, residual, scaled_residual, quad_error, admissible. Ratios with |rhs| < 1e-12 \
            are left empty."
    )]
    Thm1(VerifyThm1Args),
    /// Fourth-power ladder integral against U ln^8 T / (4 pi^4).
    #[command(long_about = "Write two records for the window [T, T+U]:\n\
            \n  thm2                 int |zeta(1/2+i phi2(t))|^4 |zeta(1/2+it)|^4 dt over [phi2^-1(T), phi2^-1(T+U)]\n\
            \x20                      against U ln^8 T / (4 pi^4)\n\
            \x20 thm2_exact_midchain  int |zeta(1/2+i phi2(t))|^4 phi2'(t) dt against int_T^{T+U} |zeta(1/2+iy)|^4 dy\n\
            \x20                      (exact change of variables)\n\n\
            The ladder must be second order. --phi1-ladder takes the limits from a first-order ladder \
            instead (phi1^-1(T), phi1^-1(T+U)). U must lie in [0, T / ln T].")]
    Thm2(VerifyThm2Args),
    /// Asymptotic steps from J0(t_nu) - J0(t_{nu+1}) to the sine law, with scaled remainders.
    #[command(
        long_about = "For nu in [nu-from, nu-to] write four records (residual = lhs - rhs):\n\
            \n  chain36  1/sqrt(t_{nu+1}) against 1/sqrt(t_nu), scaled by t^{3/2} ln t\n\
            \x20 chain37  J0(t_nu) - J0(t_{nu+1}) against sqrt(2/(pi t_nu)) [cos(t_nu - pi/4) - cos(t_{nu+1} - pi/4)],\n\
            \x20          scaled by t^{3/2}\n\
            \x20 chain38  cos(t_nu - pi/4) - cos(t_{nu+1} - pi/4) against (2 pi / ln t_nu) sin(t_nu - pi/4),\n\
            \x20          scaled by ln^2 t\n\
            \x20 chain39  J0(t_nu) - J0(t_{nu+1}) against 2 sqrt(2 pi) / (sqrt(t_nu) ln t_nu) sin(t_nu - pi/4),\n\
            \x20          scaled by sqrt(t) ln^2 t\n\n\
            Bounded scaled residuals confirm the remainder rates. No ladder is needed."
    )]
    Chain(VerifyChainArgs),
}

#[derive(Debug, Args)]
pub struct CampaignOutputArgs {
    /// Record CSV (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// JSON summary: quartiles of |ratio - 1| per record kind and decade of t.
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyThm1Args {
    #[arg(long)]
    pub nu_from: u64,
    #[arg(long)]
    pub nu_to: u64,
    #[command(flatten)]
    pub admissibility: AdmissibilityArgs,
    #[arg(long, value_name = "FILE")]
    pub ladder: PathBuf,
    /// Also evaluate intervals that fail the admissibility conditions.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = DEFAULT_THM1_REL_TOL)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: CampaignOutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyThm2Args {
    #[arg(long = "T", value_name = "T")]
    pub t: f64,
    #[arg(long = "U", value_name = "U")]
    pub u: f64,
    #[arg(long, value_name = "FILE")]
    pub ladder: PathBuf,
    /// First-order ladder supplying the integration limits.
    #[arg(long, value_name = "FILE")]
    pub phi1_ladder: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_THM2_REL_TOL)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: CampaignOutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyChainArgs {
    #[arg(long)]
    pub nu_from: u64,
    #[arg(long)]
    pub nu_to: u64,
    #[command(flatten)]
    pub output: CampaignOutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Fixture directory (default: $JLADDER_FIXTURES, else the shipped fixtures).
    #[arg(long, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
}
