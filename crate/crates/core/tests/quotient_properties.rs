mod common;

use common::{n, small_primes};
use emc_core::quotients::{
    eisenstein_check, factorial_mod_prime_power, fermat_quotient, lerch_check, wilson_quotient,
    wilson_quotient_mod,
};
use emc_core::Natural;

#[test]
fn lerch_for_odd_primes_below_2000() {
    for p in small_primes(2000).into_iter().filter(|&p| p > 2) {
        assert!(lerch_check(&n(p)).unwrap().holds, "p={p}");
    }
}

#[test]
fn eisenstein_for_small_primes() {
    for p in small_primes(200) {
        for a in 1..p {
            for b in 1..p {
                assert!(eisenstein_check(&n(p), &n(a), &n(b)).unwrap(), "p={p} a={a} b={b}");
            }
        }
    }
}

#[test]
fn fermat_quotient_division_is_exact() {
    for p in small_primes(50) {
        for j in (1..3 * p).filter(|j| j % p != 0) {
            let q = fermat_quotient(&n(p), &n(j)).unwrap();
            assert_eq!(q * p + 1u32, n(j).pow(p as u32 - 1));
        }
    }
}

#[test]
fn wilson_quotient_exactness() {
    for p in small_primes(2001) {
        let pn = n(p);
        let p3 = pn.pow(3);
        let w = wilson_quotient_mod(&pn, 2).unwrap();
        let f = factorial_mod_prime_power(&pn, 3).unwrap();
        // p·W_p - 1 = (p-1)! read modulo p³.
        assert_eq!((&pn * w.value() + &p3 - 1u32) % &p3, *f.value(), "p={p}");
        if p <= 200 {
            let exact = wilson_quotient(&pn).unwrap();
            let fact: Natural = (1..p).map(n).product();
            assert_eq!(&pn * &exact - 1u32, fact, "p={p}");
        }
    }
}
