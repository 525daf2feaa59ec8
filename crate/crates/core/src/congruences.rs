//! The power-sum congruence `1^n + ... + k^n ≡ (k+1)^n (mod k)`.
//!
//! A pair `(n, k)` solves it exactly when every prime `p | k` has
//! `(p-1) | n` and `k/p + 1 ≡ 0 (mod p)`; the second condition alone is the
//! Egyptian fraction condition `k | 1 + Σ_{p|k} k/p`, and the valid
//! exponents are then the multiples of `lcm{p-1}`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::bigmod::sieve::{self, SmallFactors};
use crate::bigmod::{factorize, mod_pow, power_sum_mod_capped, PrimeFactorization, DEFAULT_ORACLE_CAP};
use crate::error::{domain, Error, Result};
use crate::natural::{decimal, parse_natural, Natural};

/// Default bound for exhaustive searches.
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

/// An explicit exponent, or the class of all positive multiples of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    Value(Natural),
    MultipleOf(Natural),
}

impl Exponent {
    /// Parses `"42"` or `"multiple-of:42"`.
    pub fn parse(s: &str) -> Result<Self> {
        let e = match s.strip_prefix("multiple-of:") {
            Some(rest) => Exponent::MultipleOf(parse_natural(rest)?),
            None => Exponent::Value(parse_natural(s)?),
        };
        if e.base().is_zero() {
            return Err(domain("exponent must be positive"));
        }
        Ok(e)
    }

    pub fn base(&self) -> &Natural {
        match self {
            Exponent::Value(n) | Exponent::MultipleOf(n) => n,
        }
    }
}

impl From<Natural> for Exponent {
    fn from(n: Natural) -> Self {
        Exponent::Value(n)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Value(n) => write!(f, "{n}"),
            Exponent::MultipleOf(n) => write!(f, "multiple-of:{n}"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeCondition {
    #[serde(with = "decimal")]
    pub p: Natural,
    /// `(p-1) | n`.
    pub cond_i: bool,
    /// `k/p + 1 ≡ 0 (mod p)`.
    pub cond_ii: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    #[serde(with = "decimal")]
    pub k: Natural,
    pub n: Exponent,
    pub squarefree: bool,
    pub per_prime: Vec<PrimeCondition>,
    pub verdict: bool,
    /// Smallest exponent meeting every condition (within the class, for
    /// [`Exponent::MultipleOf`]); present only when condition (ii) holds at
    /// every prime.
    #[serde(with = "decimal::option")]
    pub minimal_valid_exponent: Option<Natural>,
}

/// Checks the congruence by summing all `k` terms. Use
/// [`theorem22_conditions`] beyond the brute-force cap.
pub fn emc_congruence_holds(n: &Natural, k: &Natural) -> Result<bool> {
    emc_congruence_holds_capped(n, k, DEFAULT_ORACLE_CAP)
}

pub fn emc_congruence_holds_capped(n: &Natural, k: &Natural, cap: u64) -> Result<bool> {
    if n.is_zero() || k.is_zero() {
        return Err(domain("n and k must be positive"));
    }
    let lhs = power_sum_mod_capped(n, k, k, cap)?;
    let rhs = mod_pow(&(k + 1u32), n, k)?;
    Ok(lhs == rhs)
}

/// `lcm{p - 1 : p | k}`, with the empty lcm equal to 1.
pub fn lcm_of_p_minus_one(f: &PrimeFactorization) -> Natural {
    f.primes().fold(Natural::one(), |acc, p| acc.lcm(&(p - 1u32)))
}

/// Per-prime evaluation of the two conditions for a known factorization.
pub fn theorem22_report(n: &Exponent, f: &PrimeFactorization) -> Result<ConditionReport> {
    if n.base().is_zero() {
        return Err(domain("exponent must be positive"));
    }
    let k = f.product();
    let per_prime: Vec<_> = f
        .primes()
        .map(|p| {
            let pm1 = p - 1u32;
            let cond_i = (n.base() % &pm1).is_zero();
            let cond_ii = ((&k / p + 1u32) % p).is_zero();
            PrimeCondition { p: p.clone(), cond_i, cond_ii }
        })
        .collect();
    let squarefree = f.is_squarefree();
    let verdict = squarefree && per_prime.iter().all(|c| c.cond_i && c.cond_ii);
    let minimal_valid_exponent = (squarefree && per_prime.iter().all(|c| c.cond_ii)).then(|| {
        let l = lcm_of_p_minus_one(f);
        match n {
            Exponent::MultipleOf(base) => base.lcm(&l),
            Exponent::Value(_) => l,
        }
    });
    Ok(ConditionReport { k, n: n.clone(), squarefree, per_prime, verdict, minimal_valid_exponent })
}

pub fn theorem22_conditions(n: &Exponent, k: &Natural) -> Result<ConditionReport> {
    theorem22_report(n, &factorize(k)?)
}

/// `k | 1 + Σ_{p|k} k/p` for a known factorization.
pub fn egyptian_condition_factored(f: &PrimeFactorization) -> bool {
    let k = f.product();
    let sum = f.primes().fold(Natural::one(), |acc, p| acc + &k / p);
    (sum % &k).is_zero()
}

pub fn egyptian_condition(k: &Natural) -> Result<bool> {
    if k.is_zero() {
        return Err(domain("k must be positive"));
    }
    Ok(egyptian_condition_factored(&factorize(k)?))
}

/// Generator of the valid exponents for a congruence solution `k`.
pub fn minimal_exponent_factored(f: &PrimeFactorization) -> Result<Natural> {
    if !f.is_squarefree() {
        return Err(domain(format!("{} is not square-free", f.product())));
    }
    if !egyptian_condition_factored(f) {
        return Err(domain(format!("{} fails the Egyptian fraction condition", f.product())));
    }
    Ok(lcm_of_p_minus_one(f))
}

pub fn minimal_exponent(k: &Natural) -> Result<Natural> {
    if k.is_zero() {
        return Err(domain("k must be positive"));
    }
    minimal_exponent_factored(&factorize(k)?)
}

/// The integer `q` with `q·∏_{p∈S} p = 1 + Σ_{p∈S} k/p`.
///
/// Inexact division means the Egyptian fraction condition was wrongly
/// reported upstream, and surfaces as a theorem violation.
pub fn product_sum_witness(k: &Natural, subset: &[Natural]) -> Result<Natural> {
    let f = factorize(k)?;
    if !egyptian_condition_factored(&f) {
        return Err(domain(format!("{k} fails the Egyptian fraction condition")));
    }
    let mut seen: Vec<&Natural> = Vec::with_capacity(subset.len());
    for p in subset {
        if !f.primes().any(|q| q == p) {
            return Err(domain(format!("{p} is not a prime divisor of {k}")));
        }
        if seen.contains(&p) {
            return Err(domain(format!("{p} repeated in subset")));
        }
        seen.push(p);
    }
    let product = subset.iter().fold(Natural::one(), |acc, p| acc * p);
    let sum = subset.iter().fold(Natural::one(), |acc, p| acc + k / p);
    let (q, r) = sum.div_rem(&product);
    if !r.is_zero() {
        return Err(Error::TheoremViolation(format!(
            "{product} does not divide 1 + Σ k/p = {sum} for k = {k}"
        )));
    }
    Ok(q)
}

/// Egyptian fraction condition on a sieve-factored `k`.
pub(crate) fn egyptian_small(f: &SmallFactors<'_>) -> bool {
    f.squarefree && (1 + f.primes.iter().map(|p| f.k / p).sum::<u64>()) % f.k == 0
}

fn search_bound(bound: &Natural) -> Result<u64> {
    bound
        .to_u64()
        .filter(|&b| b <= sieve::SEARCH_LIMIT)
        .ok_or_else(|| Error::Resource(format!("bound {bound} exceeds {}", sieve::SEARCH_LIMIT)))
}

/// All `k ≤ bound` meeting the Egyptian fraction condition, with their primes.
pub fn congruence_solutions(bound: &Natural) -> Result<Vec<(u64, Vec<u64>)>> {
    let b = search_bound(bound)?;
    sieve::scan(b, |f| egyptian_small(&f).then(|| (f.k, f.primes.to_vec())))
}

/// Square-free `k ≤ bound` with exactly `r` distinct primes that solve the
/// congruence for some exponent, ascending.
///
/// This is a finite search; that the lists for `r ≤ 4` are complete
/// without a bound is a theorem the search merely corroborates.
pub fn search_solutions_by_prime_count(r: usize, bound: &Natural) -> Result<Vec<u64>> {
    let b = search_bound(bound)?;
    sieve::scan(b, |f| (f.primes.len() == r && egyptian_small(&f)).then_some(f.k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn congruence_examples() {
        assert!(emc_congruence_holds(&n(42), &n(1806)).unwrap());
        assert!(emc_congruence_holds(&n(1), &n(2)).unwrap());
        assert!(emc_congruence_holds(&n(2), &n(6)).unwrap());
        assert!(!emc_congruence_holds(&n(3), &n(6)).unwrap());
        assert!(emc_congruence_holds(&n(5), &n(1)).unwrap());
        assert!(matches!(
            emc_congruence_holds_capped(&n(2), &n(2000), 1000),
            Err(Error::OracleRange { .. })
        ));
    }

    #[test]
    fn condition_examples() {
        let r = theorem22_conditions(&Exponent::Value(n(42)), &n(1806)).unwrap();
        assert!(r.verdict);
        assert_eq!(r.per_prime.len(), 4);

        let r = theorem22_conditions(&Exponent::Value(n(3)), &n(6)).unwrap();
        assert!(!r.verdict);
        let at3 = r.per_prime.iter().find(|c| c.p == n(3)).unwrap();
        assert!(!at3.cond_i && at3.cond_ii);

        for e in [1u64, 2, 7, 12] {
            let r = theorem22_conditions(&Exponent::Value(n(e)), &n(4)).unwrap();
            assert!(!r.verdict && !r.squarefree);
        }

        let r = theorem22_conditions(&Exponent::Value(n(7)), &n(1)).unwrap();
        assert!(r.verdict && r.per_prime.is_empty());
    }

    #[test]
    fn exponent_class_conditions() {
        let r = theorem22_conditions(&Exponent::MultipleOf(n(330)), &n(47058)).unwrap();
        assert!(r.verdict);
        assert_eq!(r.minimal_valid_exponent, Some(n(330)));

        // Multiples of 6 do not all work for 1806, but lcm(6, 42) = 42 does.
        let r = theorem22_conditions(&Exponent::MultipleOf(n(6)), &n(1806)).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.minimal_valid_exponent, Some(n(42)));

        let r = theorem22_conditions(&Exponent::MultipleOf(n(4)), &n(10)).unwrap();
        assert_eq!(r.minimal_valid_exponent, None);

        assert_eq!(Exponent::parse("multiple-of:42").unwrap(), Exponent::MultipleOf(n(42)));
        assert_eq!(Exponent::parse("42").unwrap().to_string(), "42");
        assert!(Exponent::parse("0").is_err());
        assert!(Exponent::parse("multiple-of:x").is_err());
    }

    #[test]
    fn egyptian_examples() {
        assert!(egyptian_condition(&n(1806)).unwrap());
        assert!(!egyptian_condition(&n(10)).unwrap());
        assert!(egyptian_condition(&n(1)).unwrap());
        assert!(egyptian_condition(&n(0)).is_err());
    }

    #[test]
    fn minimal_exponent_examples() {
        assert_eq!(minimal_exponent(&n(1806)).unwrap(), n(42));
        assert_eq!(minimal_exponent(&n(47058)).unwrap(), n(330));
        assert_eq!(minimal_exponent(&n(2_214_502_422)).unwrap(), n(235_290));
        assert_eq!(minimal_exponent(&n(1)).unwrap(), n(1));
        assert!(minimal_exponent(&n(10)).is_err());
        assert!(minimal_exponent(&n(12)).is_err());
    }

    #[test]
    fn witness_examples() {
        let all = [n(2), n(3), n(7), n(43)];
        assert_eq!(product_sum_witness(&n(1806), &all).unwrap(), n(1));
        assert_eq!(product_sum_witness(&n(1806), &[]).unwrap(), n(1));
        assert_eq!(product_sum_witness(&n(42), &[n(2), n(3), n(7)]).unwrap(), n(1));
        // q_r p_r = p_1 ... p_{r-1} + 1: 43 * 1 = 42 + 1.
        assert_eq!(product_sum_witness(&n(1806), &[n(43)]).unwrap(), n(1));
        assert!(product_sum_witness(&n(1806), &[n(5)]).is_err());
        assert!(product_sum_witness(&n(10), &[n(5)]).is_err());
        assert!(product_sum_witness(&n(42), &[n(7), n(7)]).is_err());
    }

    #[test]
    fn search_examples() {
        assert_eq!(search_solutions_by_prime_count(3, &n(10_000)).unwrap(), vec![42]);
        assert_eq!(search_solutions_by_prime_count(4, &n(10_000)).unwrap(), vec![1806]);
        assert_eq!(search_solutions_by_prime_count(5, &n(100_000)).unwrap(), vec![47058]);
        assert_eq!(search_solutions_by_prime_count(0, &n(10_000)).unwrap(), vec![1]);
        assert!(matches!(
            search_solutions_by_prime_count(2, &n(200_000_000)),
            Err(Error::Resource(_))
        ));
    }
}
