//! Recompute the shipped golden values and compare.
//!
//! The fixture CSVs under `fixtures/` were produced by an independent
//! 60-digit mpmath program (`tools/generate_fixtures.py`). Set
//! `JLADDER_FIXTURES` to check against another directory.

use std::fs::File;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bessel::{j0, j1, j1_zero};
use crate::error::{Error, Result};
use crate::gram::gram_point;
use crate::ladder::prime_pi;
use crate::zeta::{hardy_z, method_floor, theta, EvalAccuracy};

pub const FIXTURE_ENV: &str = "JLADDER_FIXTURES";

pub fn default_fixture_dir() -> PathBuf {
    match std::env::var_os(FIXTURE_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

/// Outcome for one fixture file. Deviations are reported both raw and as a
/// multiple of the per-row tolerance (`worst_ratio <= 1` means pass).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureCheck {
    pub name: &'static str,
    pub file: String,
    pub rows: usize,
    pub max_deviation: f64,
    pub worst_ratio: f64,
    pub failures: Vec<String>,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub directory: String,
    pub checks: Vec<FixtureCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(FixtureCheck::passed)
    }
}

struct Table {
    path: PathBuf,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn load(dir: &Path, file: &str, columns: &[&str]) -> Result<Table> {
        let path = dir.join(file);
        let fixture_err = |message: String| Error::Fixture {
            path: path.clone(),
            message,
        };
        let handle = File::open(&path).map_err(|e| fixture_err(e.to_string()))?;
        let mut reader = csv::Reader::from_reader(handle);
        let header = reader.headers().map_err(|e| fixture_err(e.to_string()))?.clone();
        for (i, c) in columns.iter().enumerate() {
            if header.get(i) != Some(*c) {
                return Err(fixture_err(format!(
                    "expected column {i} to be {c:?}, header is {header:?}"
                )));
            }
        }
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| fixture_err(e.to_string()))?;
            rows.push(rec.iter().map(str::to_string).collect());
        }
        if rows.is_empty() {
            return Err(fixture_err("no rows".into()));
        }
        Ok(Table { path, rows })
    }

    fn num(&self, row: usize, col: usize) -> Result<f64> {
        let cell = &self.rows[row][col];
        cell.trim().parse().map_err(|_| Error::Fixture {
            path: self.path.clone(),
            message: format!("row {}: column {col} is not a number: {cell:?}", row + 1),
        })
    }

    fn int(&self, row: usize, col: usize) -> Result<u64> {
        let cell = &self.rows[row][col];
        cell.trim().parse().map_err(|_| Error::Fixture {
            path: self.path.clone(),
            message: format!("row {}: column {col} is not an integer: {cell:?}", row + 1),
        })
    }
}

struct Tally {
    check: FixtureCheck,
}

impl Tally {
    fn new(name: &'static str, table: &Table) -> Tally {
        Tally {
            check: FixtureCheck {
                name,
                file: table.path.display().to_string(),
                rows: table.rows.len(),
                max_deviation: 0.0,
                worst_ratio: 0.0,
                failures: Vec::new(),
            },
        }
    }

    fn compare(&mut self, label: String, got: Result<f64>, want: f64, tol: f64) {
        match got {
            Ok(v) => {
                let dev = (v - want).abs();
                let ratio = dev / tol;
                self.check.max_deviation = self.check.max_deviation.max(dev);
                self.check.worst_ratio = self.check.worst_ratio.max(ratio);
                if !(ratio <= 1.0) {
                    self.check.failures.push(format!(
                        "{label}: got {v:.17e}, expected {want:.17e}, tolerance {tol:.1e}"
                    ));
                }
            }
            Err(e) => self.check.failures.push(format!("{label}: {e}")),
        }
    }
}

/// `θ` tolerance: `1e-10` absolute, or a few ulps of `|θ|` once that is coarser.
pub fn theta_tolerance(theta: f64) -> f64 {
    1e-10_f64.max(8.0 * f64::EPSILON * theta.abs())
}

/// `Z` tolerance: twice the claimed floor of the method used at `t`.
pub fn z_tolerance(t: f64, acc: &EvalAccuracy) -> f64 {
    2.0 * method_floor(t, acc.resolve(t)) + 1e-12
}

/// Bessel tolerance: `1e-12` up to `x = 1e4`, `1e-9` beyond.
pub fn bessel_tolerance(x: f64) -> f64 {
    if x <= 1e4 {
        1e-12
    } else {
        1e-9
    }
}

/// Gram point tolerance: the `1e-9` residual in `θ` divided by `θ' ≈ ½ ln(t/2π)`,
/// plus rounding of `t`.
pub fn gram_tolerance(t: f64) -> f64 {
    1e-9 / (0.5 * (t / std::f64::consts::TAU).ln()) + 4.0 * f64::EPSILON * t
}

fn check_theta_z(dir: &Path) -> Result<Vec<FixtureCheck>> {
    let table = Table::load(dir, "theta_z.csv", &["t", "theta", "z"])?;
    let acc = EvalAccuracy::default();
    let mut th = Tally::new("theta", &table);
    let mut z = Tally::new("hardy_z", &table);
    for i in 0..table.rows.len() {
        let t = table.num(i, 0)?;
        let want_theta = table.num(i, 1)?;
        let want_z = table.num(i, 2)?;
        th.compare(
            format!("theta({t})"),
            theta(t).map(|v| v.theta),
            want_theta,
            theta_tolerance(want_theta),
        );
        z.compare(format!("Z({t})"), hardy_z(t, &acc), want_z, z_tolerance(t, &acc));
    }
    Ok(vec![th.check, z.check])
}

fn check_gram(dir: &Path) -> Result<FixtureCheck> {
    let table = Table::load(dir, "gram_points.csv", &["nu", "t"])?;
    let mut tally = Tally::new("gram_points", &table);
    for i in 0..table.rows.len() {
        let nu = table.int(i, 0)?;
        let want = table.num(i, 1)?;
        tally.compare(
            format!("t_{nu}"),
            gram_point(nu).map(|g| g.t),
            want,
            gram_tolerance(want),
        );
    }
    Ok(tally.check)
}

fn check_bessel_zeros(dir: &Path) -> Result<FixtureCheck> {
    let table = Table::load(dir, "bessel_zeros.csv", &["n", "mu"])?;
    let mut tally = Tally::new("bessel_zeros", &table);
    for i in 0..table.rows.len() {
        let n = table.int(i, 0)?;
        let want = table.num(i, 1)?;
        if n == 0 {
            tally
                .check
                .failures
                .push(format!("row {}: zero index must be >= 1", i + 1));
            continue;
        }
        tally.compare(format!("mu_{n}"), Ok(j1_zero(n as usize)), want, 1e-12);
    }
    Ok(tally.check)
}

fn check_bessel_values(dir: &Path) -> Result<Vec<FixtureCheck>> {
    let table = Table::load(dir, "bessel_values.csv", &["x", "j0", "j1"])?;
    let mut t0 = Tally::new("bessel_j0", &table);
    let mut t1 = Tally::new("bessel_j1", &table);
    for i in 0..table.rows.len() {
        let x = table.num(i, 0)?;
        t0.compare(format!("J0({x})"), j0(x), table.num(i, 1)?, bessel_tolerance(x));
        t1.compare(format!("J1({x})"), j1(x), table.num(i, 2)?, bessel_tolerance(x));
    }
    Ok(vec![t0.check, t1.check])
}

fn check_prime_pi(dir: &Path) -> Result<FixtureCheck> {
    let table = Table::load(dir, "prime_pi.csv", &["t", "pi"])?;
    let mut tally = Tally::new("prime_pi", &table);
    for i in 0..table.rows.len() {
        let t = table.num(i, 0)?;
        let want = table.int(i, 1)?;
        // Exact: any difference fails.
        tally.compare(format!("pi({t})"), prime_pi(t).map(|p| p as f64), want as f64, 0.5);
    }
    Ok(tally.check)
}

fn check_zeta_zeros(dir: &Path) -> Result<FixtureCheck> {
    let table = Table::load(dir, "zeta_zeros.csv", &["n", "gamma"])?;
    let acc = EvalAccuracy::default();
    let mut tally = Tally::new("zeta_zeros", &table);
    for i in 0..table.rows.len() {
        let n = table.int(i, 0)?;
        let gamma = table.num(i, 1)?;
        // |Z'| is at most a few units here, so rounding γ costs ~1e-14.
        tally.compare(
            format!("Z(gamma_{n})"),
            hardy_z(gamma, &acc),
            0.0,
            z_tolerance(gamma, &acc) + 1e-13,
        );
    }
    Ok(tally.check)
}

/// Number of sign changes of `Z` on `[lo, hi]` sampled every `step`.
pub fn count_sign_changes(lo: f64, hi: f64, step: f64, acc: &EvalAccuracy) -> Result<u64> {
    let n = ((hi - lo) / step).ceil() as u64;
    let mut prev = hardy_z(lo, acc)?;
    let mut count = 0;
    for k in 1..=n {
        let t = (lo + k as f64 * step).min(hi);
        let z = hardy_z(t, acc)?;
        if z != 0.0 && prev != 0.0 && z.signum() != prev.signum() {
            count += 1;
        }
        if z != 0.0 {
            prev = z;
        }
    }
    Ok(count)
}

fn check_zero_counts(dir: &Path) -> Result<FixtureCheck> {
    let table = Table::load(dir, "zero_counts.csv", &["t_lo", "t_hi", "count"])?;
    let acc = EvalAccuracy::default();
    let mut tally = Tally::new("zero_counts", &table);
    for i in 0..table.rows.len() {
        let lo = table.num(i, 0)?;
        let hi = table.num(i, 1)?;
        let want = table.int(i, 2)?;
        let got = count_sign_changes(lo, hi, 0.01, &acc).map(|c| c as f64);
        tally.compare(format!("N({lo}, {hi})"), got, want as f64, 0.5);
    }
    Ok(tally.check)
}

/// Check every fixture in `dir`. A missing or malformed file is an error; a
/// value outside tolerance is a failed check in the report.
pub fn oracle_check(dir: &Path) -> Result<OracleReport> {
    let mut checks = check_theta_z(dir)?;
    checks.push(check_gram(dir)?);
    checks.push(check_bessel_zeros(dir)?);
    checks.extend(check_bessel_values(dir)?);
    checks.push(check_prime_pi(dir)?);
    checks.push(check_zeta_zeros(dir)?);
    checks.push(check_zero_counts(dir)?);
    Ok(OracleReport {
        directory: dir.display().to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_fixtures_pass() {
        let report = oracle_check(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.failures);
        }
    }

    #[test]
    fn missing_directory_is_an_error() {
        let err = oracle_check(Path::new("/nonexistent/fixtures")).unwrap_err();
        assert!(matches!(err, Error::Fixture { .. }));
    }

    #[test]
    fn tolerance_helpers() {
        assert_eq!(theta_tolerance(1.0), 1e-10);
        assert!(theta_tolerance(5.5e6) > 1e-10);
        assert_eq!(bessel_tolerance(1e5), 1e-9);
        assert!(gram_tolerance(100.0) < 1e-9);
    }
}
