//! Strong-probable-prime testing and trial-division factorization.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{mul_mod, pow_mod_u64};
use crate::error::{domain, Error, Result};
use crate::natural::{decimal, Natural};

/// Bases 2..=41 make the strong-probable-prime test exact below
/// 3 317 044 064 679 887 385 961 981 (Sorenson and Webster).
const DETERMINISTIC_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub const DETERMINISTIC_PRIMALITY_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Extra bases applied beyond the deterministic bound.
const EXTRA_BASES: [u64; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Trial division runs over candidates up to this bound.
pub const TRIAL_DIVISION_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primality {
    Composite,
    Prime,
    /// Passed every base, but lies above the range where the base set is proven.
    ProbablePrime,
}

fn sprp_u64(n: u64, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn sprp_big(n: &BigUint, base: u64) -> bool {
    let a = BigUint::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().expect("n - 1 is nonzero");
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

pub fn primality(n: &Natural) -> Primality {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return Primality::Composite;
        }
        for &p in &DETERMINISTIC_BASES {
            if small == p {
                return Primality::Prime;
            }
            if small % p == 0 {
                return Primality::Composite;
            }
        }
        return if DETERMINISTIC_BASES.iter().all(|&b| sprp_u64(small, b)) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    if DETERMINISTIC_BASES.iter().any(|&p| (n % p).is_zero()) {
        return Primality::Composite;
    }
    if !DETERMINISTIC_BASES.iter().all(|&b| sprp_big(n, b)) {
        return Primality::Composite;
    }
    match n.to_u128() {
        Some(v) if v < DETERMINISTIC_PRIMALITY_BOUND => Primality::Prime,
        _ => {
            if EXTRA_BASES.iter().all(|&b| sprp_big(n, b)) {
                Primality::ProbablePrime
            } else {
                Primality::Composite
            }
        }
    }
}

/// Deterministic below [`DETERMINISTIC_PRIMALITY_BOUND`]; above it a pass
/// means "probable prime" (see [`primality`]).
pub fn is_prime(n: &Natural) -> bool {
    primality(n) != Primality::Composite
}

/// Prime powers of a natural, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    factors: Vec<(Natural, u32)>,
}

impl PrimeFactorization {
    /// Builds a factorization from prime powers, checking order and primality.
    pub fn from_prime_powers(factors: Vec<(Natural, u32)>) -> Result<Self> {
        for (i, (p, e)) in factors.iter().enumerate() {
            if *e == 0 {
                return Err(domain(format!("zero multiplicity for {p}")));
            }
            if !is_prime(p) {
                return Err(domain(format!("{p} is not prime")));
            }
            if i > 0 && factors[i - 1].0 >= *p {
                return Err(domain("primes must be strictly increasing"));
            }
        }
        Ok(PrimeFactorization { factors })
    }

    /// Square-free factorization from a list of distinct primes in any order.
    pub fn from_distinct_primes(primes: &[Natural]) -> Result<Self> {
        let mut sorted = primes.to_vec();
        sorted.sort();
        Self::from_prime_powers(sorted.into_iter().map(|p| (p, 1)).collect())
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn product(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// `true` when any prime lies above the proven primality range.
    pub fn has_probable_primes(&self) -> bool {
        self.primes().any(|p| primality(p) == Primality::ProbablePrime)
    }
}

impl Serialize for PrimeFactorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            #[serde(with = "decimal")]
            prime: &'a Natural,
            multiplicity: u32,
        }
        s.collect_seq(self.factors.iter().map(|(p, e)| Entry { prime: p, multiplicity: *e }))
    }
}

fn strip(rem: &mut Natural, p: u64) -> u32 {
    let mut e = 0;
    loop {
        let (q, r) = rem.div_rem(&Natural::from(p));
        if !r.is_zero() {
            return e;
        }
        *rem = q;
        e += 1;
    }
}

/// Trial division to [`TRIAL_DIVISION_BOUND`], then a primality test on the
/// cofactor. `1` factors as the empty product.
pub fn factorize(k: &Natural) -> Result<PrimeFactorization> {
    if k.is_zero() {
        return Err(domain("cannot factor 0"));
    }
    let mut factors = Vec::new();
    let mut rem = k.clone();
    if rem.is_one() {
        return Ok(PrimeFactorization { factors });
    }
    if is_prime(&rem) {
        factors.push((rem, 1));
        return Ok(PrimeFactorization { factors });
    }

    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND {
        // Cofactors that fit in 128 bits are far cheaper to divide.
        if let Some(small) = rem.to_u128() {
            let mut r = small;
            let mut dd = d as u128;
            while dd <= TRIAL_DIVISION_BOUND as u128 && dd * dd <= r {
                if r % dd == 0 {
                    let mut e = 0;
                    while r % dd == 0 {
                        r /= dd;
                        e += 1;
                    }
                    factors.push((Natural::from(dd), e));
                    if r > 1 && is_prime(&Natural::from(r)) {
                        break;
                    }
                }
                dd += if dd == 2 { 1 } else { 2 };
            }
            rem = Natural::from(r);
            break;
        }
        if (&rem % d).is_zero() {
            let e = strip(&mut rem, d);
            factors.push((Natural::from(d), e));
            if is_prime(&rem) {
                break;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }

    if rem.is_one() {
        return Ok(PrimeFactorization { factors });
    }
    if is_prime(&rem) {
        factors.push((rem, 1));
        return Ok(PrimeFactorization { factors });
    }
    Err(Error::IncompleteFactorization { partial: factors, cofactor: rem })
}
