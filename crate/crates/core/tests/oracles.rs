//! Closed-form and fast evaluators against independent brute force.

mod common;

use common::{exact_power_sum, n, naive_factor, prefix_power_sums, small_primes};
use emc_core::bigmod::{
    mod_pow, power_sum_mod, power_sum_mod_periodic, sigma_mod_p2_split, sigma_prime_mod,
    sigma_prime_mod_p2,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

#[test]
fn brute_force_matches_exact_sums() {
    for e in 0..=12u32 {
        for a in 0..=40u64 {
            let exact = exact_power_sum(e, a);
            for m in [1u64, 2, 7, 49, 100, 1806] {
                let got = power_sum_mod(&n(e as u64), &n(a), &n(m)).unwrap();
                assert_eq!(got.value(), &(&exact % m), "Σ_{e}({a}) mod {m}");
            }
        }
    }
}

#[test]
fn periodic_matches_prefix_oracle() {
    for e in [1u32, 2, 5, 12, 30] {
        for m in 1..=200u64 {
            let prefix = prefix_power_sums(e, 500, m);
            for k in (0..=500u64).step_by(7).chain([m, 2 * m, 499, 500]) {
                if k > 500 {
                    continue;
                }
                let got = power_sum_mod_periodic(&n(e as u64), &n(k), &n(m)).unwrap();
                assert_eq!(got.value_u64(), Some(prefix[k as usize]), "n={e} k={k} m={m}");
            }
        }
    }
}

#[test]
fn closed_form_mod_p_matches_brute_force() {
    for p in small_primes(100) {
        for e in 1..=60u64 {
            let closed = sigma_prime_mod(&n(e), &n(p)).unwrap();
            assert_eq!(closed, power_sum_mod(&n(e), &n(p), &n(p)).unwrap(), "n={e} p={p}");
        }
    }
}

#[test]
fn closed_form_mod_p2_matches_brute_force() {
    for p in small_primes(50) {
        for e in (2..=60u64).filter(|e| e % (p - 1) == 0 && (p != 2 || e % 2 == 0)) {
            let closed = sigma_prime_mod_p2(&n(e), &n(p)).unwrap();
            assert_eq!(closed, power_sum_mod(&n(e), &n(p), &n(p * p)).unwrap(), "n={e} p={p}");
        }
    }
}

#[test]
fn split_matches_brute_force() {
    for k in 1..=300u64 {
        let (primes, squarefree) = naive_factor(k);
        if !squarefree {
            continue;
        }
        for &p in &primes {
            for e in 1..=30u64 {
                let split = sigma_mod_p2_split(&n(e), &n(k), &n(p)).unwrap();
                assert_eq!(split, power_sum_mod(&n(e), &n(k), &n(p * p)).unwrap(), "n={e} k={k} p={p}");
            }
        }
    }
}

proptest! {
    #[test]
    fn periodic_equals_direct(e in 0u64..40, k in 0u64..3000, m in 1u64..400) {
        prop_assert_eq!(
            power_sum_mod_periodic(&n(e), &n(k), &n(m)).unwrap(),
            power_sum_mod(&n(e), &n(k), &n(m)).unwrap()
        );
    }

    #[test]
    fn mod_pow_agrees_with_bigint(base in 0u64..1_000_000, e in 0u64..200, m in 1u64..u64::MAX) {
        let got = mod_pow(&n(base), &n(e), &n(m)).unwrap();
        prop_assert_eq!(got.value().clone(), n(base).modpow(&n(e), &n(m)));
        prop_assert!(got.value() < got.modulus());
    }

    #[test]
    fn residues_are_canonical(e in 1u64..50, a in 0u64..500, m in 1u64..10_000) {
        let r = power_sum_mod(&n(e), &n(a), &n(m)).unwrap();
        prop_assert!(r.value().to_u64().unwrap() < m);
    }
}
