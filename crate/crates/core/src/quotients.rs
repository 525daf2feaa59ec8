//! Fermat and Wilson quotients and the identities tying them together.
//!
//! `q_p(j) = (j^(p-1) - 1)/p` and `W_p = ((p-1)! + 1)/p`. Both have an exact
//! big-integer route, kept as an oracle, and a residue route that only ever
//! works modulo a small power of `p`.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::bigmod::{is_prime, mul_mod, pow_mod_u64};
use crate::error::{domain, Error, Result};
use crate::natural::{decimal, Natural, Residue};

/// Largest prime accepted by the factorial-based Wilson routines.
pub const WILSON_PRIME_CAP: u64 = 100_000;

fn require_prime(p: &Natural) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(domain(format!("{p} is not prime")))
    }
}

fn wilson_prime(p: &Natural) -> Result<u64> {
    require_prime(p)?;
    match p.to_u64() {
        Some(v) if v <= WILSON_PRIME_CAP => Ok(v),
        _ => Err(Error::OracleRange { requested: p.clone(), cap: WILSON_PRIME_CAP }),
    }
}

/// Exact Fermat quotient `(j^(p-1) - 1)/p`.
pub fn fermat_quotient(p: &Natural, j: &Natural) -> Result<Natural> {
    require_prime(p)?;
    if j.is_zero() {
        return Err(domain("j must be positive"));
    }
    if (j % p).is_zero() {
        return Err(domain(format!("{p} divides {j}")));
    }
    let e = (p - 1u32).to_u32().ok_or_else(|| domain("p too large for an exact quotient"))?;
    let (q, r) = (j.pow(e) - 1u32).div_rem(p);
    if !r.is_zero() {
        return Err(Error::TheoremViolation(format!("{p} does not divide {j}^{e} - 1")));
    }
    Ok(q)
}

/// `q_p(j) mod p`, read off from `j^(p-1) mod p²`.
pub fn fermat_quotient_mod(p: &Natural, j: &Natural) -> Result<Residue> {
    require_prime(p)?;
    fermat_quotient_mod_unchecked(p, j)
}

fn fermat_quotient_mod_unchecked(p: &Natural, j: &Natural) -> Result<Residue> {
    if (j % p).is_zero() {
        return Err(domain(format!("{p} divides {j}")));
    }
    let p2 = p * p;
    let x = match (p.to_u64(), p2.to_u64()) {
        (Some(pw), Some(p2w)) => {
            let jw = (j % &p2).to_u64().expect("reduced below p^2");
            Natural::from(pow_mod_u64(jw, pw - 1, p2w))
        }
        _ => j.modpow(&(p - 1u32), &p2),
    };
    // x ≡ 1 (mod p) by Fermat's little theorem.
    let (q, r) = (&x + &p2 - 1u32).div_rem(p);
    if !r.is_zero() {
        return Err(Error::TheoremViolation(format!("{j}^({p}-1) is not 1 mod {p}")));
    }
    Residue::new(q, p.clone())
}

/// Exact Wilson quotient `((p-1)! + 1)/p`, for `p ≤ WILSON_PRIME_CAP`.
pub fn wilson_quotient(p: &Natural) -> Result<Natural> {
    let pw = wilson_prime(p)?;
    let fact = (1..pw).fold(Natural::one(), |acc, i| acc * i);
    let (w, r) = (fact + 1u32).div_rem(p);
    if !r.is_zero() {
        return Err(Error::TheoremViolation(format!("{p} does not divide ({p}-1)! + 1")));
    }
    Ok(w)
}

/// `(p-1)! mod p^e`, accumulated without ever forming the factorial.
pub fn factorial_mod_prime_power(p: &Natural, e: u32) -> Result<Residue> {
    let pw = wilson_prime(p)?;
    let m = p.pow(e);
    match m.to_u64() {
        Some(mw) => {
            let f = (1..pw).fold(1 % mw, |acc, i| mul_mod(acc, i, mw));
            Ok(Residue::from_u64(f, mw))
        }
        None => {
            let f = (1..pw).fold(Natural::one(), |acc, i| acc * i % &m);
            Residue::new(f, m)
        }
    }
}

/// `W_p mod p^e`, computed from `(p-1)! mod p^(e+1)`.
pub fn wilson_quotient_mod(p: &Natural, e: u32) -> Result<Residue> {
    if e == 0 {
        return Err(domain("exponent must be positive"));
    }
    let f = factorial_mod_prime_power(p, e + 1)?;
    let big = f.modulus();
    let (w, r) = ((f.value() + 1u32) % big).div_rem(p);
    if !r.is_zero() {
        return Err(Error::TheoremViolation(format!("Wilson's theorem fails at {p}")));
    }
    Residue::new(w, p.pow(e))
}

/// The Wilson quotient together with the Fermat-quotient sum it is
/// congruent to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientPair {
    #[serde(with = "decimal")]
    pub prime: Natural,
    #[serde(with = "decimal")]
    pub wilson: Natural,
    /// `Σ_{j=1}^{p-1} q_p(j) mod p`.
    pub fermat_sum_mod_p: Residue,
}

impl QuotientPair {
    pub fn compute(p: &Natural) -> Result<Self> {
        let wilson = wilson_quotient(p)?;
        let fermat_sum_mod_p = fermat_sum_mod(p)?;
        Ok(QuotientPair { prime: p.clone(), wilson, fermat_sum_mod_p })
    }
}

fn fermat_sum_mod(p: &Natural) -> Result<Residue> {
    require_prime(p)?;
    let pw = p.to_u64().ok_or_else(|| domain("p too large to sum over"))?;
    let mut acc = Natural::zero();
    for j in 1..pw {
        acc += fermat_quotient_mod_unchecked(p, &Natural::from(j))?.value();
    }
    Residue::new(acc, p.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LerchCheck {
    #[serde(with = "decimal")]
    pub prime: Natural,
    /// `Σ q_p(j) mod p`.
    pub lhs: Residue,
    /// `W_p mod p`.
    pub rhs: Residue,
    pub holds: bool,
}

/// Evaluates both sides of `Σ_{j=1}^{p-1} q_p(j) ≡ W_p (mod p)` for an odd prime.
pub fn lerch_check(p: &Natural) -> Result<LerchCheck> {
    require_prime(p)?;
    if p == &Natural::from(2u8) {
        return Err(domain("Lerch's formula is stated for odd primes"));
    }
    let lhs = fermat_sum_mod(p)?;
    let rhs = wilson_quotient_mod(p, 1)?;
    let holds = lhs == rhs;
    Ok(LerchCheck { prime: p.clone(), lhs, rhs, holds })
}

/// Whether `q_p(ab) ≡ q_p(a) + q_p(b) (mod p)`.
pub fn eisenstein_check(p: &Natural, a: &Natural, b: &Natural) -> Result<bool> {
    require_prime(p)?;
    if (a % p).is_zero() || (b % p).is_zero() {
        return Err(domain(format!("{p} divides a*b")));
    }
    let qab = fermat_quotient_mod_unchecked(p, &(a * b))?;
    let qa = fermat_quotient_mod_unchecked(p, a)?;
    let qb = fermat_quotient_mod_unchecked(p, b)?;
    Ok(*qab.value() == (qa.value() + qb.value()) % p)
}
