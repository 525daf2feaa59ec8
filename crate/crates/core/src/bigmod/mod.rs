//! Modular arithmetic, power sums, primality and factorization.
//!
//! Values are [`Natural`]s at the API boundary. Whenever the modulus fits in
//! a machine word the evaluators drop to `u64` residues with `u128`
//! products, which covers every brute-force range used in practice.

mod power_sum;
mod primes;
pub mod sieve;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::natural::{Natural, Residue};

pub use power_sum::{
    power_sum_mod, power_sum_mod_capped, power_sum_mod_periodic, power_sum_mod_periodic_capped,
    sigma_mod_p2_split, sigma_prime_mod, sigma_prime_mod_p2,
};
pub use primes::{
    factorize, is_prime, primality, PrimeFactorization, Primality, DETERMINISTIC_PRIMALITY_BOUND,
    TRIAL_DIVISION_BOUND,
};

/// Default number of terms a brute-force evaluator may iterate.
pub const DEFAULT_ORACLE_CAP: u64 = 100_000_000;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// `base^exp mod m` for a machine-word modulus and a small exponent.
pub(crate) fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// `base^exp mod m` where the exponent is arbitrarily large.
pub(crate) fn pow_mod_u64_big(base: u64, exp: &BigUint, m: u64) -> u64 {
    if let Some(e) = exp.to_u64() {
        return pow_mod_u64(base, e, m);
    }
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    for digit in exp.iter_u64_digits() {
        let mut d = digit;
        for _ in 0..64 {
            if d & 1 == 1 {
                result = mul_mod(result, b, m);
            }
            b = mul_mod(b, b, m);
            d >>= 1;
        }
    }
    result
}

/// `base^exp mod m`. `exp = 0` gives `1 mod m`.
pub fn mod_pow(base: &Natural, exp: &Natural, m: &Natural) -> Result<Residue> {
    if m.is_zero() {
        return Err(Error::InvalidModulus);
    }
    if let Some(mw) = m.to_u64() {
        let b = (base % m).to_u64().expect("reduced below a u64 modulus");
        return Ok(Residue::from_u64(pow_mod_u64_big(b, exp, mw), mw));
    }
    Residue::new(base.modpow(exp, m), m.clone())
}
