#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

//! Numerical Jacob's ladders and the Bessel-weighted integrals of `|ζ(½+it)|²`
//! along Gram intervals.
//!
//! Layers, bottom up: `zeta` (θ, Hardy's `Z`), `bessel` (`J₀`, `J₁`, zeros of
//! `J₁`), `gram` (Gram points and interval classification), `quad` (adaptive
//! Gauss–Kronrod and monotone inversion), `ladder` (φ₁, φ₂ and the
//! substitution identity), `verify` (records for both theorems and the chain
//! between them) and `oracle` (golden-value checks).

pub mod bessel;
pub mod error;
pub mod gram;
pub mod ladder;
pub mod oracle;
pub mod quad;
pub mod special;
pub mod verify;
pub mod zeta;

pub use bessel::{j0, j1, j1_definite_integral, j1_zero, j1_zeros, BesselZeroTable};
pub use error::{Error, Result};
pub use gram::{
    classify_interval, count_admissible_in_cell, gram_point, gram_points, spacing_prediction, spacing_residual,
    CellCount, ExclusionMode, GramPoint, IntervalClassification,
};
pub use ladder::{
    build_ladder, build_ladder_until, build_ladder_with, prime_pi, substitution_check, substitution_check_with,
    LadderOptions, LadderOrder, LadderTable, PrimeCounter, SubstitutionCheck,
};
pub use oracle::{oracle_check, OracleReport};
pub use quad::{integrate, integrate_with, invert_monotone, QuadConfig, QuadError, QuadratureResult};
pub use verify::{
    chain_check_37_38, chain_records, run_campaign, thm1_lhs, thm1_rhs, thm1_verify, thm2_verify, Campaign,
    CampaignOutcome, RecordKind, Thm1Options, Thm1Records, Thm2Limits, Thm2Options, Thm2Records, VerificationRecord,
};
pub use zeta::{hardy_z, theta, zeta_abs_sq, EvalAccuracy, Method, ThetaValue};
