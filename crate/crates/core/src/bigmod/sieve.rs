//! Mass factorization of `1..=bound` for exhaustive searches.
//!
//! Bounds up to [`SPF_LIMIT`] use a smallest-prime-factor table; larger
//! bounds (up to [`SEARCH_LIMIT`]) factor segment by segment against the
//! primes below `sqrt(bound)`. Both paths hand each `k` to a filter and
//! return the kept results in ascending order of `k`, whatever the
//! number of worker threads.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const SPF_LIMIT: u64 = 10_000_000;
pub const SEARCH_LIMIT: u64 = 100_000_000;

const SEGMENT: u64 = 1 << 16;

/// Most distinct primes a number below [`SEARCH_LIMIT`] can carry
/// (2·3·5·7·11·13·17·19·23 already exceeds it).
const MAX_DISTINCT: usize = 8;

/// Distinct prime factors of a small natural, ascending.
#[derive(Debug, Clone, Copy)]
pub struct SmallFactors<'a> {
    pub k: u64,
    pub primes: &'a [u64],
    pub squarefree: bool,
}

/// Smallest-prime-factor table over `0..=limit`.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Self {
        let limit = limit as usize;
        let mut spf = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let j = i * p as usize;
                if p > si || j > limit {
                    break;
                }
                spf[j] = p;
            }
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn smallest_factor(&self, k: u64) -> u64 {
        self.spf[k as usize] as u64
    }

    /// Writes the distinct primes of `k` into `out`; returns whether `k`
    /// is square-free.
    pub fn distinct_primes(&self, mut k: u64, out: &mut Vec<u64>) -> bool {
        out.clear();
        let mut squarefree = true;
        while k > 1 {
            let p = self.smallest_factor(k);
            k /= p;
            if k.is_multiple_of(p) {
                squarefree = false;
                while k.is_multiple_of(p) {
                    k /= p;
                }
            }
            out.push(p);
        }
        squarefree
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let sieve = SpfSieve::new(limit.max(2));
    (2..=limit).filter(|&i| sieve.smallest_factor(i) == i).collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn scan_spf<T, F>(bound: u64, f: &F) -> Vec<T>
where
    T: Send,
    F: Fn(SmallFactors<'_>) -> Option<T> + Sync,
{
    let sieve = SpfSieve::new(bound);
    let segments = bound.div_ceil(SEGMENT);
    (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT + 1;
            let hi = ((s + 1) * SEGMENT).min(bound);
            let mut buf = Vec::with_capacity(MAX_DISTINCT);
            let mut kept = Vec::new();
            for k in lo..=hi {
                let squarefree = sieve.distinct_primes(k, &mut buf);
                if let Some(t) = f(SmallFactors { k, primes: &buf, squarefree }) {
                    kept.push(t);
                }
            }
            kept
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn scan_segmented<T, F>(bound: u64, f: &F) -> Vec<T>
where
    T: Send,
    F: Fn(SmallFactors<'_>) -> Option<T> + Sync,
{
    let base = small_primes(isqrt(bound));
    let segments = bound.div_ceil(SEGMENT);
    (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT + 1;
            let hi = ((s + 1) * SEGMENT).min(bound);
            let len = (hi - lo + 1) as usize;
            let mut rem: Vec<u64> = (lo..=hi).collect();
            let mut found = vec![[0u64; MAX_DISTINCT]; len];
            let mut count = vec![0u8; len];
            let mut squarefree = vec![true; len];
            for &p in &base {
                let first = lo.div_ceil(p) * p;
                let mut m = first;
                while m <= hi {
                    let i = (m - lo) as usize;
                    rem[i] /= p;
                    if rem[i].is_multiple_of(p) {
                        squarefree[i] = false;
                        while rem[i].is_multiple_of(p) {
                            rem[i] /= p;
                        }
                    }
                    found[i][count[i] as usize] = p;
                    count[i] += 1;
                    m += p;
                }
            }
            let mut kept = Vec::new();
            for i in 0..len {
                // Whatever survives division by every prime up to sqrt(bound) is prime.
                if rem[i] > 1 {
                    found[i][count[i] as usize] = rem[i];
                    count[i] += 1;
                }
                let primes = &found[i][..count[i] as usize];
                let sf = SmallFactors { k: lo + i as u64, primes, squarefree: squarefree[i] };
                if let Some(t) = f(sf) {
                    kept.push(t);
                }
            }
            kept
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Applies `f` to every `k` in `1..=bound` with its distinct primes, keeping
/// the `Some` results in ascending order of `k`.
pub fn scan<T, F>(bound: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(SmallFactors<'_>) -> Option<T> + Sync,
{
    if bound > SEARCH_LIMIT {
        return Err(Error::Resource(format!(
            "search bound {bound} exceeds the sieve limit {SEARCH_LIMIT}"
        )));
    }
    if bound == 0 {
        return Ok(Vec::new());
    }
    Ok(if bound <= SPF_LIMIT { scan_spf(bound, &f) } else { scan_segmented(bound, &f) })
}

/// Segmented path exposed for cross-checking against the table path.
#[doc(hidden)]
pub fn scan_segmented_for_test<T, F>(bound: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(SmallFactors<'_>) -> Option<T> + Sync,
{
    scan_segmented(bound, &f)
}
