//! Power sums `1^n + 2^n + ... + a^n` reduced modulo `m`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{add_mod, is_prime, mul_mod, pow_mod_u64_big, DEFAULT_ORACLE_CAP};
use crate::error::{domain, Error, Result};
use crate::natural::{Natural, Residue};
use crate::quotients::wilson_quotient_mod;

fn check_cap(terms: &Natural, cap: u64) -> Result<u64> {
    match terms.to_u64() {
        Some(t) if t <= cap => Ok(t),
        _ => Err(Error::OracleRange { requested: terms.clone(), cap }),
    }
}

/// Sum of `j^n mod m` for `j` in `1..=a`, machine-word modulus.
fn sum_u64(n: &BigUint, a: u64, m: u64) -> u64 {
    let mut acc = 0u64;
    for j in 1..=a {
        acc = add_mod(acc, pow_mod_u64_big(j % m, n, m), m);
    }
    acc
}

fn sum_big(n: &BigUint, a: u64, m: &BigUint) -> BigUint {
    let mut acc = BigUint::zero();
    for j in 1..=a {
        acc += BigUint::from(j).modpow(n, m);
        if &acc >= m {
            acc -= m;
        }
    }
    acc
}

/// Direct evaluation of the power sum `Σ_n(a) mod m`, one term at a time.
///
/// This is the oracle every closed form is checked against, so it refuses
/// to run past the default cap rather than switch method.
pub fn power_sum_mod(n: &Natural, a: &Natural, m: &Natural) -> Result<Residue> {
    power_sum_mod_capped(n, a, m, DEFAULT_ORACLE_CAP)
}

pub fn power_sum_mod_capped(n: &Natural, a: &Natural, m: &Natural, cap: u64) -> Result<Residue> {
    if m.is_zero() {
        return Err(Error::InvalidModulus);
    }
    let terms = check_cap(a, cap)?;
    match m.to_u64() {
        Some(mw) => Ok(Residue::from_u64(sum_u64(n, terms, mw), mw)),
        None => Residue::new(sum_big(n, terms, m), m.clone()),
    }
}

/// `Σ_n(k) mod m` using that `j ↦ j^n mod m` has period `m`:
/// `Σ_n(k) ≡ ⌊k/m⌋·Σ_n(m) + Σ_n(k mod m)`.
///
/// Iterates at most one period, so `k` may be astronomically large. When
/// `k < m` the sum is evaluated term by term and the cap applies to `k`.
pub fn power_sum_mod_periodic(n: &Natural, k: &Natural, m: &Natural) -> Result<Residue> {
    power_sum_mod_periodic_capped(n, k, m, DEFAULT_ORACLE_CAP)
}

pub fn power_sum_mod_periodic_capped(
    n: &Natural,
    k: &Natural,
    m: &Natural,
    cap: u64,
) -> Result<Residue> {
    if m.is_zero() {
        return Err(Error::InvalidModulus);
    }
    if k < m {
        return power_sum_mod_capped(n, k, m, cap);
    }
    let period = check_cap(m, cap)?;
    let (q, r) = k.div_rem(m);
    let r = r.to_u64().expect("remainder below a capped modulus");
    // One pass over the period yields both Σ_n(r) and Σ_n(m).
    let mut acc = 0u64;
    let mut partial = 0u64;
    for j in 1..=period {
        acc = add_mod(acc, pow_mod_u64_big(j % period, n, period), period);
        if j == r {
            partial = acc;
        }
    }
    let q = (q % m).to_u64().expect("reduced below a u64 modulus");
    let total = add_mod(mul_mod(q, acc, period), partial, period);
    Ok(Residue::from_u64(total, period))
}

/// `Σ_n(p) mod p` in closed form: `-1` when `(p-1) | n`, otherwise `0`.
pub fn sigma_prime_mod(n: &Natural, p: &Natural) -> Result<Residue> {
    if n.is_zero() {
        return Err(domain("exponent n must be positive"));
    }
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    let pm1 = p - 1u32;
    if (n % &pm1).is_zero() {
        Residue::new(pm1, p.clone())
    } else {
        Residue::new(Natural::zero(), p.clone())
    }
}

/// `Σ_n(p) mod p²` in closed form `p - 1 - n·p·W_p`, valid for `n ≥ 2`
/// with `(p-1) | n` (and `n` even when `p = 2`).
///
/// Only `n mod p` and `W_p mod p` enter the product.
pub fn sigma_prime_mod_p2(n: &Natural, p: &Natural) -> Result<Residue> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    if *n < Natural::from(2u8) {
        return Err(domain("closed form mod p^2 needs n >= 2"));
    }
    let pm1 = p - 1u32;
    if !(n % &pm1).is_zero() {
        return Err(domain(format!("(p-1) = {pm1} does not divide n = {n}")));
    }
    if p == &Natural::from(2u8) && n.is_odd() {
        return Err(domain("closed form at p = 2 needs n even"));
    }
    let p2 = p * p;
    let w = wilson_quotient_mod(p, 1)?;
    let npw = (n % p) * p * w.value() % &p2;
    // (p - 1 - npw) mod p², kept nonnegative.
    let value = (&pm1 + &p2 - npw) % &p2;
    Residue::new(value, p2)
}

/// Evaluates the expansion
/// `Σ_n(k) ≡ a·Σ_n(p) + ½·a(a-1)·n·p·Σ_{n-1}(p)  (mod p²)`, `a = k/p`.
///
/// The even product `a(a-1)` is halved exactly before any reduction, so no
/// inverse of 2 is needed at `p = 2`.
pub fn sigma_mod_p2_split(n: &Natural, k: &Natural, p: &Natural) -> Result<Residue> {
    if n.is_zero() {
        return Err(domain("exponent n must be positive"));
    }
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    let (a, rem) = k.div_rem(p);
    if !rem.is_zero() {
        return Err(domain(format!("{p} does not divide {k}")));
    }
    if a.is_zero() || (&a % p).is_zero() {
        return Err(domain(format!("{p}^2 divides {k}")));
    }
    let p2 = p * p;
    let s_n = power_sum_mod(n, p, &p2)?;
    let s_nm1 = power_sum_mod(&(n - 1u32), p, &p2)?;
    let half = (&a * (&a - BigUint::one())) >> 1usize;
    let first = (&a % &p2) * s_n.value();
    let second = (half % &p2) * (n % &p2) % &p2 * p % &p2 * s_nm1.value();
    Residue::new(first + second, p2)
}
