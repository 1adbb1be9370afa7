//! Distant rare-frequent thresholds and the pumping factor lemma.
//!
//! Words here are sequences of `usize` symbols over any alphabet, so the
//! same code serves letters and category arrows. A symbol is rare at
//! threshold `n` when it occurs at most `n` times.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("distance and threshold must be at least 1")]
    BadParameter,
    #[error("candidate threshold {base}^{exponent} overflows u64")]
    Overflow { base: u64, exponent: u32 },
    #[error("symbol is not frequent at this threshold")]
    NotFrequent,
    #[error("no factor with enough occurrences")]
    NoSuchFactor,
}

fn counts(w: &[usize]) -> HashMap<usize, u64> {
    let mut c = HashMap::new();
    for &x in w {
        *c.entry(x).or_insert(0) += 1;
    }
    c
}

/// Total number of occurrences of rare symbols.
pub fn rare_occurrences(w: &[usize], n: u64) -> u64 {
    counts(w).values().filter(|&&c| c <= n).sum()
}

/// `n` is an `m`-distant rare-frequent threshold for `w`:
/// the rare occurrences total at most `n/m - 1`.
pub fn is_distant(w: &[usize], n: u64, m: u64) -> bool {
    if n == 0 || m == 0 {
        return false;
    }
    let sum = rare_occurrences(w, n) as u128;
    (m as u128) * (sum + 1) <= n as u128
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistantThreshold {
    pub value: u64,
    pub exponent: u32,
    /// `m'd` with `m' = (m+1)m` and `d = 2|Σ|`.
    pub base: u64,
}

impl DistantThreshold {
    /// The exponent never exceeds `2^d + 1`.
    pub fn within_bound(&self, alphabet_len: usize) -> bool {
        let d = 2 * alphabet_len as u32;
        d >= 63 || self.exponent as u64 <= (1u64 << d) + 1
    }
}

/// Threshold that is `m`-distant for both words, found by the pigeonhole
/// argument on the candidates `(m'd)^1, (m'd)^2, ...`.
///
/// The count vector `T` lists the occurrences of every letter in `u1`
/// followed by those in `u2`. The rare coordinates grow with the candidate,
/// and the first candidate whose rare set repeats the previous one is
/// returned.
pub fn find_distant_threshold(
    u1: &[usize],
    u2: &[usize],
    alphabet_len: usize,
    m: u64,
) -> Result<DistantThreshold, ThresholdError> {
    if m == 0 || alphabet_len == 0 {
        return Err(ThresholdError::BadParameter);
    }
    let mut t = vec![0u64; 2 * alphabet_len];
    for &x in u1 {
        t[x] += 1;
    }
    for &x in u2 {
        t[alphabet_len + x] += 1;
    }
    let d = 2 * alphabet_len as u64;
    let base = (m + 1)
        .checked_mul(m)
        .and_then(|mp| mp.checked_mul(d))
        .ok_or(ThresholdError::Overflow { base: u64::MAX, exponent: 1 })?;
    let rare_set = |c: u64| -> Vec<bool> { t.iter().map(|&x| x <= c).collect() };
    let mut candidate = base;
    let mut previous = rare_set(candidate);
    let mut exponent = 1u32;
    loop {
        exponent += 1;
        candidate = candidate
            .checked_mul(base)
            .ok_or(ThresholdError::Overflow { base, exponent })?;
        let current = rare_set(candidate);
        if current == previous {
            return Ok(DistantThreshold {
                value: candidate,
                exponent,
                base,
            });
        }
        previous = current;
    }
}

/// Least `n' ≤ scan_cap` that is `m`-distant for both words.
pub fn minimal_distant_threshold(u1: &[usize], u2: &[usize], m: u64, scan_cap: u64) -> Option<u64> {
    (1..=scan_cap).find(|&n| is_distant(u1, n, m) && is_distant(u2, n, m))
}

/// Leftmost maximal factor of `w` free of rare symbols that contains at
/// least `m + 1` occurrences of the frequent symbol `a`, as a half-open
/// range of positions.
pub fn pump_factor(w: &[usize], n: u64, m: u64, a: usize) -> Result<(usize, usize), ThresholdError> {
    let c = counts(w);
    if c.get(&a).copied().unwrap_or(0) <= n {
        return Err(ThresholdError::NotFrequent);
    }
    let rare = |x: &usize| c[x] <= n;
    let mut start = 0;
    for end in 0..=w.len() {
        if end == w.len() || rare(&w[end]) {
            let hits = w[start..end].iter().filter(|&&x| x == a).count() as u64;
            if hits > m {
                return Ok((start, end));
            }
            start = end + 1;
        }
    }
    Err(ThresholdError::NoSuchFactor)
}
