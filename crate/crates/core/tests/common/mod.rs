#![allow(dead_code)]

use emc_core::Natural;

pub fn n(v: u64) -> Natural {
    Natural::from(v)
}

/// Exact `Σ_{j=1}^{a} j^e`, no modular shortcuts.
pub fn exact_power_sum(e: u32, a: u64) -> Natural {
    (1..=a).map(|j| Natural::from(j).pow(e)).sum()
}

/// `Σ_e(a) mod m` for every `a` in `0..=kmax`, by repeated multiplication.
pub fn prefix_power_sums(e: u32, kmax: u64, m: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut acc = 0u64;
    out.push(0);
    for j in 1..=kmax {
        let mut t = 1 % m;
        for _ in 0..e {
            t = t * (j % m) % m;
        }
        acc = (acc + t) % m;
        out.push(acc);
    }
    out
}

pub fn small_primes(below: u64) -> Vec<u64> {
    (2..below).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Distinct primes and square-freeness by naive trial division.
pub fn naive_factor(mut k: u64) -> (Vec<u64>, bool) {
    let mut primes = Vec::new();
    let mut squarefree = true;
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            primes.push(d);
            k /= d;
            if k.is_multiple_of(d) {
                squarefree = false;
                while k.is_multiple_of(d) {
                    k /= d;
                }
            }
        }
        d += 1;
    }
    if k > 1 {
        primes.push(k);
    }
    (primes, squarefree)
}
