//! Prime counting by a bit-packed sieve of Eratosthenes.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Limit of the shared counter behind [`prime_pi`].
pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

/// `π(t)` lookup for `t <= limit`: one bit per integer plus a running count
/// per 64-bit word.
#[derive(Debug, Clone)]
pub struct PrimeCounter {
    limit: u64,
    words: Vec<u64>,
    prefix: Vec<u32>,
}

impl PrimeCounter {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize + 1;
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        let clear = |words: &mut Vec<u64>, i: usize| words[i / 64] &= !(1u64 << (i % 64));
        clear(&mut words, 0);
        if n > 1 {
            clear(&mut words, 1);
        }
        let mut p = 2usize;
        while p * p < n {
            if words[p / 64] >> (p % 64) & 1 == 1 {
                let mut m = p * p;
                while m < n {
                    clear(&mut words, m);
                    m += p;
                }
            }
            p += 1;
        }
        // bits past the limit
        let tail = n % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        let mut prefix = Vec::with_capacity(words.len());
        let mut running = 0u32;
        for w in &words {
            prefix.push(running);
            running += w.count_ones();
        }
        PrimeCounter { limit, words, prefix }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes `<= t`.
    pub fn pi(&self, t: f64) -> Result<u64> {
        if t.is_nan() {
            return Err(Error::Domain("prime_pi of NaN".into()));
        }
        if t < 2.0 {
            return Ok(0);
        }
        if t > self.limit as f64 {
            return Err(Error::LimitExceeded { t, limit: self.limit });
        }
        let n = t.floor() as usize;
        let w = n / 64;
        let bit = n % 64;
        let mask = if bit == 63 { u64::MAX } else { (1u64 << (bit + 1)) - 1 };
        Ok(self.prefix[w] as u64 + (self.words[w] & mask).count_ones() as u64)
    }
}

/// `π(t)` on the shared counter with limit [`DEFAULT_SIEVE_LIMIT`].
pub fn prime_pi(t: f64) -> Result<u64> {
    static COUNTER: OnceLock<PrimeCounter> = OnceLock::new();
    COUNTER.get_or_init(|| PrimeCounter::new(DEFAULT_SIEVE_LIMIT)).pi(t)
}
