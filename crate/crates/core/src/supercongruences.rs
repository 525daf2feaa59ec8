//! The congruence lifted to `k²` and `k³`, and the `p³` exploration.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bigmod::{
    factorize, is_prime, mod_pow, power_sum_mod, power_sum_mod_periodic_capped, sigma_mod_p2_split,
    PrimeFactorization, DEFAULT_ORACLE_CAP,
};
use crate::congruences::{theorem22_report, Exponent};
use crate::error::{domain, Error, Result};
use crate::natural::{decimal, Natural, Residue};
use crate::quotients::wilson_quotient_mod;

/// Direct check of `Σ_n(k) ≡ (k+1)^n (mod k^e)` for `e ∈ {2, 3}`.
pub fn super_holds(n: &Natural, k: &Natural, e: u32) -> Result<bool> {
    super_holds_capped(n, k, e, DEFAULT_ORACLE_CAP)
}

pub fn super_holds_capped(n: &Natural, k: &Natural, e: u32, cap: u64) -> Result<bool> {
    if !(2..=3).contains(&e) {
        return Err(domain("modulus power must be 2 or 3"));
    }
    if n.is_zero() || k.is_zero() {
        return Err(domain("n and k must be positive"));
    }
    let m = k.pow(e);
    let lhs = power_sum_mod_periodic_capped(n, k, &m, cap)?;
    let rhs = mod_pow(&(k + 1u32), n, &m)?;
    Ok(lhs == rhs)
}

/// Which part of the mod-`k²` classification decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuperBranch {
    /// `n = 1`: solutions are exactly `k ∈ {1, 2}`.
    ExponentOne,
    /// `n ≥ 3` odd: the only solution is `k = 1`.
    OddExponent,
    /// `n` even: per-prime conditions.
    EvenExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperPrimeCondition {
    #[serde(with = "decimal")]
    pub p: Natural,
    /// `(p-1) | n`.
    pub cond_i: bool,
    /// `k/p + 1 mod p²`.
    pub cond_ii_lhs: Residue,
    /// `p·(n(W_p + 1) - 1) mod p²`.
    pub cond_ii_rhs: Residue,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperReport {
    #[serde(with = "decimal")]
    pub k: Natural,
    #[serde(with = "decimal")]
    pub n: Natural,
    pub modulus_power: u32,
    pub branch: SuperBranch,
    pub squarefree: bool,
    pub per_prime: Vec<SuperPrimeCondition>,
    pub direct_check: Option<bool>,
    pub verdict: bool,
}

fn even_prime_condition(n: &Natural, k: &Natural, p: &Natural) -> Result<SuperPrimeCondition> {
    let p2 = p * p;
    let cond_i = (n % (p - 1u32)).is_zero();
    let cond_ii_lhs = Residue::new(k / p + 1u32, p2.clone())?;
    // Only n(W_p + 1) mod p survives the outer factor p.
    let w = wilson_quotient_mod(p, 1)?;
    let t = (n % p) * (w.value() + 1u32) % p;
    let inner = (t + p - 1u32) % p;
    let cond_ii_rhs = Residue::new(p * inner, p2)?;
    let passes = cond_i && cond_ii_lhs == cond_ii_rhs;
    Ok(SuperPrimeCondition { p: p.clone(), cond_i, cond_ii_lhs, cond_ii_rhs, passes })
}

/// Mod-`k²` classification for a known factorization of `k`.
pub fn theorem45_report(n: &Natural, f: &PrimeFactorization) -> Result<SuperReport> {
    if n.is_zero() {
        return Err(domain("exponent must be positive"));
    }
    let k = f.product();
    let squarefree = f.is_squarefree();
    let (branch, per_prime, verdict) = if n.is_odd() {
        let one = n == &Natural::from(1u8);
        let verdict = if one { k <= Natural::from(2u8) } else { k == Natural::from(1u8) };
        let branch = if one { SuperBranch::ExponentOne } else { SuperBranch::OddExponent };
        (branch, Vec::new(), verdict)
    } else {
        let per_prime = f
            .primes()
            .map(|p| even_prime_condition(n, &k, p))
            .collect::<Result<Vec<_>>>()?;
        let verdict = squarefree && per_prime.iter().all(|c| c.passes);
        (SuperBranch::EvenExponent, per_prime, verdict)
    };
    Ok(SuperReport {
        k,
        n: n.clone(),
        modulus_power: 2,
        branch,
        squarefree,
        per_prime,
        direct_check: None,
        verdict,
    })
}

pub fn theorem45_conditions(n: &Natural, k: &Natural) -> Result<SuperReport> {
    theorem45_report(n, &factorize(k)?)
}

/// Condition report plus the direct mod-`k²` check; a disagreement is a
/// theorem violation.
pub fn theorem45_checked(n: &Natural, k: &Natural, cap: u64) -> Result<SuperReport> {
    let mut report = theorem45_conditions(n, k)?;
    let direct = super_holds_capped(n, k, 2, cap)?;
    report.direct_check = Some(direct);
    if direct != report.verdict {
        return Err(Error::TheoremViolation(format!(
            "mod k^2 conditions give {} but direct check gives {direct} at n = {n}, k = {k}",
            report.verdict
        )));
    }
    Ok(report)
}

/// Whether `Σ_n(k) ≡ (k/p)·Σ_n(p) (mod p²)` for a congruence solution
/// `(n, k)` and `p | k`.
///
/// `Σ_n(k) mod p²` is taken both from the periodic evaluator and from the
/// expansion in `a = k/p`; the two must agree.
pub fn corollary41_check(n: &Natural, k: &Natural, p: &Natural) -> Result<bool> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    if k.is_zero() || !(k % p).is_zero() {
        return Err(domain(format!("{p} does not divide {k}")));
    }
    let f = factorize(k)?;
    if !theorem22_report(&Exponent::Value(n.clone()), &f)?.verdict {
        return Err(domain(format!("({n}, {k}) does not solve the congruence mod k")));
    }
    let p2 = p * p;
    let periodic = power_sum_mod_periodic_capped(n, k, &p2, DEFAULT_ORACLE_CAP)?;
    let split = sigma_mod_p2_split(n, k, p)?;
    if periodic != split {
        return Err(Error::TheoremViolation(format!(
            "Σ_{n}({k}) mod {p2}: periodic {} vs expansion {}",
            periodic.value(),
            split.value()
        )));
    }
    let sp = power_sum_mod(n, p, &p2)?;
    let rhs = Residue::new((k / p) * sp.value(), p2)?;
    Ok(periodic == rhs)
}

/// Whether `1 + 2^n ≡ 3^n (mod 2^d)`.
pub fn power_of_two_family(n: &Natural, d: u32) -> Result<bool> {
    if n.is_zero() || d == 0 {
        return Err(domain("n and d must be positive"));
    }
    let m = Natural::from(1u8) << d as usize;
    let lhs = Residue::new(mod_pow(&Natural::from(2u8), n, &m)?.value() + 1u32, m.clone())?;
    let rhs = mod_pow(&Natural::from(3u8), n, &m)?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeRow {
    #[serde(with = "decimal")]
    pub p: Natural,
    /// `Σ_n(k) mod p³`.
    pub lhs: Residue,
    /// `(k/p)·Σ_n(p) mod p³`.
    pub rhs: Residue,
    pub holds: bool,
}

/// Both sides of the conjectured `Σ_n(k) ≡ (k/p)·Σ_n(p) (mod p³)` at every
/// `p | k`. Pure data: nothing here asserts the conjecture.
pub fn conjecture49_explore(n: &Natural, k: &Natural) -> Result<Vec<CubeRow>> {
    conjecture49_explore_capped(n, k, DEFAULT_ORACLE_CAP)
}

pub fn conjecture49_explore_capped(n: &Natural, k: &Natural, cap: u64) -> Result<Vec<CubeRow>> {
    if n.is_zero() || k.is_zero() {
        return Err(domain("n and k must be positive"));
    }
    factorize(k)?
        .primes()
        .map(|p| {
            let m = p.pow(3);
            let lhs = power_sum_mod_periodic_capped(n, k, &m, cap)?;
            let sp = power_sum_mod_periodic_capped(n, p, &m, cap)?;
            let rhs = Residue::new((k / p) * sp.value(), m)?;
            let holds = lhs == rhs;
            Ok(CubeRow { p: p.clone(), lhs, rhs, holds })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RemarkRow {
    pub n: u64,
    /// `p² | Σ_{n-1}(p)`.
    pub divisible: bool,
}

/// For `n = 6, 12, ... ≤ nmax`, whether `p² | Σ_{n-1}(p)`.
pub fn remark_explore(p: &Natural, nmax: &Natural) -> Result<Vec<RemarkRow>> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    let nmax = nmax
        .to_u64()
        .filter(|&v| v >= 6)
        .ok_or_else(|| domain("nmax must be at least 6 and fit in 64 bits"))?;
    if nmax / 6 > DEFAULT_ORACLE_CAP {
        return Err(Error::OracleRange { requested: Natural::from(nmax / 6), cap: DEFAULT_ORACLE_CAP });
    }
    let p2 = p * p;
    (1..=nmax / 6)
        .map(|t| {
            let n = 6 * t;
            let s = power_sum_mod(&Natural::from(n - 1), p, &p2)?;
            Ok(RemarkRow { n, divisible: s.is_zero() })
        })
        .collect()
}

pub fn remark_seven_explore(nmax: &Natural) -> Result<Vec<RemarkRow>> {
    remark_explore(&Natural::from(7u8), nmax)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn super_examples() {
        assert!(super_holds(&n(12), &n(42), 2).unwrap());
        assert!(super_holds(&n(4), &n(2), 3).unwrap());
        assert!(!super_holds(&n(2), &n(2), 3).unwrap());
        assert!(super_holds(&n(2), &n(2), 2).unwrap());
        assert!(super_holds(&n(2), &n(2), 4).is_err());
        assert!(matches!(super_holds_capped(&n(2), &n(2000), 2, 1000), Err(Error::OracleRange { .. })));
    }

    #[test]
    fn theorem45_examples() {
        let r = theorem45_conditions(&n(12), &n(42)).unwrap();
        assert!(r.verdict);
        let at7 = r.per_prime.iter().find(|c| c.p == n(7)).unwrap();
        assert_eq!(at7.cond_ii_lhs.value(), &n(7));
        assert_eq!(at7.cond_ii_rhs.value(), &n(7));
        assert_eq!(at7.cond_ii_rhs.modulus(), &n(49));

        let r = theorem45_conditions(&n(2), &n(6)).unwrap();
        assert!(!r.verdict);
        let at2 = r.per_prime.iter().find(|c| c.p == n(2)).unwrap();
        assert_eq!(at2.cond_ii_lhs.value(), &n(0));
        assert_eq!(at2.cond_ii_rhs.value(), &n(2));

        let r = theorem45_conditions(&n(3), &n(1)).unwrap();
        assert!(r.verdict);
        assert_eq!(r.branch, SuperBranch::OddExponent);
        assert!(theorem45_conditions(&n(1), &n(2)).unwrap().verdict);
        assert!(!theorem45_conditions(&n(3), &n(2)).unwrap().verdict);
        assert!(!theorem45_conditions(&n(2), &n(4)).unwrap().verdict);
    }

    #[test]
    fn theorem45_checked_fills_direct() {
        let r = theorem45_checked(&n(12), &n(42), DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.direct_check, Some(true));
        let r = theorem45_checked(&n(6), &n(42), DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.direct_check, Some(false));
    }

    #[test]
    fn corollary41_examples() {
        assert!(corollary41_check(&n(42), &n(1806), &n(7)).unwrap());
        assert!(corollary41_check(&n(2), &n(6), &n(3)).unwrap());
        assert!(corollary41_check(&n(1), &n(2), &n(2)).unwrap());
        assert!(corollary41_check(&n(3), &n(6), &n(3)).is_err());
        assert!(corollary41_check(&n(2), &n(6), &n(5)).is_err());
    }

    #[test]
    fn family_examples() {
        assert!(power_of_two_family(&n(4), 3).unwrap());
        assert!(power_of_two_family(&n(8), 4).unwrap());
        assert!(!power_of_two_family(&n(2), 3).unwrap());
        assert!(power_of_two_family(&n(0), 3).is_err());
    }

    #[test]
    fn cube_examples() {
        let rows = conjecture49_explore(&n(12), &n(42)).unwrap();
        let ps: Vec<_> = rows.iter().map(|r| r.p.to_u64().unwrap()).collect();
        assert_eq!(ps, vec![2, 3, 7]);
        assert!(rows.iter().all(|r| r.holds));
        assert!(conjecture49_explore(&n(54), &n(42)).unwrap().iter().all(|r| r.holds));
        let rows = conjecture49_explore(&n(1), &n(2)).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].holds && rows[0].lhs.value() == &n(3));
    }

    #[test]
    fn remark_examples() {
        let rows = remark_seven_explore(&n(12)).unwrap();
        assert_eq!(rows, vec![RemarkRow { n: 6, divisible: true }, RemarkRow { n: 12, divisible: true }]);
        let two = remark_explore(&n(2), &n(6)).unwrap();
        assert_eq!(two, vec![RemarkRow { n: 6, divisible: false }]);
        assert!(remark_seven_explore(&n(5)).is_err());
    }
}
