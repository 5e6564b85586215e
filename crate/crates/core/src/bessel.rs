//! Bessel functions `J₀`, `J₁` of real non-negative argument and the zeros of `J₁`.
//!
//! Three evaluation regimes:
//!
//! * `x <= 8`: power series (at most two digits of cancellation).
//! * `8 < x <= 25`: Miller's backward recurrence normalised by
//!   `J₀ + 2 Σ J₂ₖ = 1`.
//! * `x > 25`: Hankel's asymptotic expansion, truncated at its smallest term.
//!
//! The power series alone cannot reach `1e-12` past `x ≈ 10` in double
//! precision, and the asymptotic series at `x = 12` stalls near `1e-11`, so
//! the recurrence bridges the gap.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::quad::bisect_root;

const SERIES_MAX_X: f64 = 8.0;
const ASYMPTOTIC_MIN_X: f64 = 25.0;

fn check_argument(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 || x.is_infinite() {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite and >= 0, got {x}"
        )));
    }
    Ok(())
}

pub fn j0(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(j0_unchecked(x))
}

pub fn j1(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(j1_unchecked(x))
}

pub(crate) fn j0_unchecked(x: f64) -> f64 {
    if x <= SERIES_MAX_X {
        series(x, 0)
    } else if x <= ASYMPTOTIC_MIN_X {
        miller(x).0
    } else {
        hankel(x, 0)
    }
}

pub(crate) fn j1_unchecked(x: f64) -> f64 {
    if x <= SERIES_MAX_X {
        series(x, 1)
    } else if x <= ASYMPTOTIC_MIN_X {
        miller(x).1
    } else {
        hankel(x, 1)
    }
}

fn series(x: f64, order: u32) -> f64 {
    let q = -0.25 * x * x;
    let mut term = if order == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + order as f64));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        k += 1.0;
    }
    sum
}

fn miller(x: f64) -> (f64, f64) {
    let start = 2 * (((x + 40.0 + 10.0 * x.sqrt()) / 2.0).ceil() as usize);
    let two_over_x = 2.0 / x;
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k
    let mut norm = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        // `cur` now holds J_{k-1}
        if k - 1 == 1 {
            j1 = cur;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e200 {
            cur *= 1e-200;
            next *= 1e-200;
            norm *= 1e-200;
            j1 *= 1e-200;
        }
    }
    norm += cur;
    (cur / norm, j1 / norm)
}

fn hankel(x: f64, order: u32) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let chi = x - (order as f64 * 0.5 + 0.25) * PI;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0; // a_k(ν) / x^k
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (mu - odd * odd) / (8.0 * kf * x);
        let mag = a.abs();
        if mag >= last || mag < 1e-17 {
            break;
        }
        last = mag;
        // P collects even k with sign (-1)^{k/2}, Q odd k with sign (-1)^{(k-1)/2}
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Ordered positive zeros `μ₁ < μ₂ < …` of `J₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselZeroTable {
    zeros: Vec<f64>,
}

impl BesselZeroTable {
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    /// `μ_n` with 1-based `n`.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }

    pub fn max_zero(&self) -> f64 {
        self.zeros.last().copied().unwrap_or(0.0)
    }

    /// The `n` with `μ_n <= t < μ_{n+1}`, if both zeros are in the table.
    pub fn cell_containing(&self, t: f64) -> Option<usize> {
        let i = self.zeros.partition_point(|&z| z <= t);
        (i >= 1 && i < self.zeros.len()).then_some(i)
    }

    /// Table extended until its last zero exceeds `t`.
    pub fn covering(t: f64) -> BesselZeroTable {
        let estimate = (t / PI).ceil().max(1.0) as usize + 2;
        let mut table = j1_zeros(estimate);
        while table.max_zero() <= t {
            let n = table.count() + 1;
            table.zeros.push(j1_zero(n));
        }
        table
    }
}

/// `n`-th positive zero of `J₁` (1-based).
pub fn j1_zero(n: usize) -> f64 {
    assert!(n >= 1, "Bessel zeros are numbered from 1");
    let beta = (n as f64 + 0.25) * PI;
    let seed = beta - 3.0 / (8.0 * beta);
    let lo = seed - 0.3;
    let hi = seed + 0.3;
    bisect_root(j1_unchecked, lo, hi, 0.0).expect("McMahon bracket always contains exactly one zero of J1")
}

pub fn j1_zeros(count: usize) -> BesselZeroTable {
    BesselZeroTable {
        zeros: (1..=count).map(j1_zero).collect(),
    }
}

/// `∫ₐᵇ J₁(x) dx = J₀(a) − J₀(b)`.
pub fn j1_definite_integral(a: f64, b: f64) -> Result<f64> {
    check_argument(a)?;
    check_argument(b)?;
    if b < a {
        return Err(Error::Ordering { a, b });
    }
    Ok(j0_unchecked(a) - j0_unchecked(b))
}

/// Leading-order approximation `√(2/(π t_lo)) [cos(t_lo − π/4) − cos(t_hi − π/4)]`
/// of `J₀(t_lo) − J₀(t_hi)`.
pub fn j0_asymptotic_difference(t_lo: f64, t_hi: f64) -> f64 {
    debug_assert!(t_lo > 0.0 && t_lo <= t_hi);
    (2.0 / (PI * t_lo)).sqrt() * ((t_lo - FRAC_PI_4).cos() - (t_hi - FRAC_PI_4).cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(j0(0.0).unwrap(), 1.0);
        assert_eq!(j1(0.0).unwrap(), 0.0);
    }

    #[test]
    fn negative_argument_is_domain_error() {
        assert!(matches!(j0(-1.0), Err(Error::Domain(_))));
        assert!(matches!(j1(-0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn regimes_agree_at_seams() {
        assert!((series(8.0, 0) - miller(8.0).0).abs() < 1e-13);
        assert!((series(8.0, 1) - miller(8.0).1).abs() < 1e-13);
        assert!((hankel(25.0, 0) - miller(25.0).0).abs() < 1e-13);
        assert!((hankel(25.0, 1) - miller(25.0).1).abs() < 1e-13);
    }

    #[test]
    fn derivative_of_j0_is_minus_j1() {
        let mut x = 0.3;
        while x < 2000.0 {
            let h = 1e-5;
            let fd = (j0_unchecked(x + h) - j0_unchecked(x - h)) / (2.0 * h);
            assert!((fd + j1_unchecked(x)).abs() < 1e-6, "x = {x}");
            x *= 1.17;
        }
    }

    #[test]
    fn zeros_are_bracketed_and_small() {
        let table = j1_zeros(120);
        for (i, &mu) in table.zeros().iter().enumerate() {
            assert!(j1_unchecked(mu).abs() <= 1e-11, "n = {}", i + 1);
            assert_ne!(j1_unchecked(mu - 0.1).signum(), j1_unchecked(mu + 0.1).signum());
            if i > 0 {
                assert!(mu > table.zeros()[i - 1]);
            }
        }
    }

    #[test]
    fn cell_lookup() {
        let table = j1_zeros(10);
        assert_eq!(table.cell_containing(1.0), None);
        assert_eq!(table.cell_containing(5.0), Some(1));
        assert_eq!(table.cell_containing(table.get(3).unwrap()), Some(3));
        assert_eq!(table.cell_containing(1e3), None);
        assert!(BesselZeroTable::covering(500.0).max_zero() > 500.0);
    }

    #[test]
    fn definite_integral_contract() {
        assert_eq!(j1_definite_integral(7.0, 7.0).unwrap(), 0.0);
        assert!(matches!(j1_definite_integral(2.0, 1.0), Err(Error::Ordering { .. })));
        assert_eq!(j0_asymptotic_difference(100.0, 100.0), 0.0);
    }
}
