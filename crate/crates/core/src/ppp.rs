//! Primary pseudoperfect numbers: `K > 1` with `1/K + Σ_{p|K} 1/p = 1`.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::bigmod::sieve::{self, SmallFactors};
use crate::bigmod::{factorize, is_prime, mod_pow, PrimeFactorization};
use crate::congruences::{
    congruence_solutions, emc_congruence_holds, theorem22_report, Exponent,
};
use crate::error::{domain, Error, Result};
use crate::natural::{decimal, Natural};

/// Largest `k` for which Zagier's condition (i) is checked over every base.
pub const ZAGIER_BRUTE_FORCE_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PppRecord {
    #[serde(with = "decimal")]
    pub k: Natural,
    pub r: usize,
    #[serde(with = "decimal::vec")]
    pub primes: Vec<Natural>,
    #[serde(with = "decimal")]
    pub minimal_exponent: Natural,
}

impl PppRecord {
    fn from_small(k: u64, primes: &[u64]) -> Self {
        let primes: Vec<Natural> = primes.iter().map(|&p| Natural::from(p)).collect();
        let minimal_exponent = lcm_p_minus_one(&primes);
        PppRecord { k: Natural::from(k), r: primes.len(), primes, minimal_exponent }
    }
}

fn lcm_p_minus_one(primes: &[Natural]) -> Natural {
    primes.iter().fold(Natural::one(), |acc, p| acc.lcm(&(p - 1u32)))
}

/// `1 + Σ K/p = K` over a known factorization, `K > 1`.
pub fn is_primary_pseudoperfect_factored(f: &PrimeFactorization) -> bool {
    let k = f.product();
    if k <= Natural::one() || !f.is_squarefree() {
        return false;
    }
    let sum = f.primes().fold(Natural::one(), |acc, p| acc + &k / p);
    sum == k
}

pub fn is_primary_pseudoperfect(k: &Natural) -> Result<bool> {
    if k.is_zero() {
        return Err(domain("K must be positive"));
    }
    Ok(is_primary_pseudoperfect_factored(&factorize(k)?))
}

fn is_ppp_small(f: &SmallFactors<'_>) -> bool {
    f.k > 1 && f.squarefree && 1 + f.primes.iter().map(|p| f.k / p).sum::<u64>() == f.k
}

fn limit_u64(limit: &Natural) -> Result<u64> {
    limit
        .to_u64()
        .filter(|&b| b <= sieve::SEARCH_LIMIT)
        .ok_or_else(|| Error::Resource(format!("limit {limit} exceeds {}", sieve::SEARCH_LIMIT)))
}

/// Every primary pseudoperfect `K ≤ limit`, ascending.
pub fn ppp_search(limit: &Natural) -> Result<Vec<PppRecord>> {
    let b = limit_u64(limit)?;
    sieve::scan(b, |f| is_ppp_small(&f).then(|| PppRecord::from_small(f.k, f.primes)))
}

/// `k > 1` up to `bound` meeting the Egyptian fraction congruence but not
/// the equation. None are known; any hit is worth reporting.
pub fn separating_solutions(bound: &Natural) -> Result<Vec<u64>> {
    Ok(congruence_solutions(bound)?
        .into_iter()
        .filter(|(k, primes)| {
            *k > 1 && 1 + primes.iter().map(|p| k / p).sum::<u64>() != *k
        })
        .map(|(k, _)| k)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordVerification {
    #[serde(with = "decimal")]
    pub k: Natural,
    #[serde(with = "decimal::vec")]
    pub primes: Vec<Natural>,
    pub checks: Vec<RecordCheck>,
    #[serde(with = "decimal::option")]
    pub minimal_exponent: Option<Natural>,
    /// Some claimed prime lies above the proven primality range.
    pub probable_primes: bool,
    pub passed: bool,
}

/// Verifies a claimed primary pseudoperfect number from its factor list.
/// Each sub-check is reported separately.
pub fn verify_record(
    k: &Natural,
    claimed_primes: &[Natural],
    claimed_exponent: Option<&Natural>,
) -> RecordVerification {
    let mut checks = Vec::new();

    let composite: Vec<String> =
        claimed_primes.iter().filter(|p| !is_prime(p)).map(|p| p.to_string()).collect();
    checks.push(RecordCheck {
        name: "factors-prime",
        passed: composite.is_empty(),
        detail: if composite.is_empty() {
            format!("{} factors pass the primality test", claimed_primes.len())
        } else {
            format!("not prime: {}", composite.join(", "))
        },
    });

    let mut sorted = claimed_primes.to_vec();
    sorted.sort();
    let distinct = sorted.windows(2).all(|w| w[0] < w[1]);
    checks.push(RecordCheck {
        name: "distinct",
        passed: distinct,
        detail: if distinct { "factors distinct".into() } else { "repeated factor".into() },
    });

    let product = sorted.iter().fold(Natural::one(), |acc, p| acc * p);
    let product_ok = &product == k;
    checks.push(RecordCheck {
        name: "product",
        passed: product_ok,
        detail: format!("product of factors is {product}"),
    });

    let equation_ok = k > &Natural::one()
        && product_ok
        && sorted.iter().fold(Natural::one(), |acc, p| acc + k / p) == *k;
    checks.push(RecordCheck {
        name: "egyptian-equation",
        passed: equation_ok,
        detail: if equation_ok {
            "1 + Σ K/p = K".into()
        } else {
            "1 + Σ K/p ≠ K, or K ≤ 1".into()
        },
    });

    let minimal_exponent = (composite.is_empty() && distinct).then(|| lcm_p_minus_one(&sorted));
    if let Some(claimed) = claimed_exponent {
        let ok = minimal_exponent.as_ref() == Some(claimed);
        checks.push(RecordCheck {
            name: "minimal-exponent",
            passed: ok,
            detail: match &minimal_exponent {
                Some(m) => format!("lcm(p-1) = {m}, claimed {claimed}"),
                None => format!("not computable, claimed {claimed}"),
            },
        });
    }

    let probable_primes = PrimeFactorization::from_distinct_primes(&sorted)
        .map(|f| f.has_probable_primes())
        .unwrap_or(false);
    let passed = checks.iter().all(|c| c.passed);
    RecordVerification { k: k.clone(), primes: sorted, checks, minimal_exponent, probable_primes, passed }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FermatMethod {
    BruteForce,
    Criterion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZagierVerdict {
    #[serde(with = "decimal")]
    pub k: Natural,
    /// `a^(k+1) ≡ a (mod k)` for every `a`.
    pub cond_fermat_all_a: bool,
    pub fermat_method: FermatMethod,
    /// Square-free with `(p-1) | k` for each `p | k`.
    pub cond_squarefree_pm1: bool,
    /// Primes `p_1 < ... < p_r` with `p_i = p_1 ... p_{i-1} + 1`.
    pub in_chain: bool,
    pub agree: bool,
}

/// `a^(k+1) ≡ a (mod k)` tested for every residue `a`.
pub fn fermat_all_bases(k: u64) -> Result<bool> {
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    if k > ZAGIER_BRUTE_FORCE_LIMIT {
        return Err(Error::OracleRange { requested: Natural::from(k), cap: ZAGIER_BRUTE_FORCE_LIMIT });
    }
    let m = Natural::from(k);
    let e = Natural::from(k + 1);
    for a in 0..k {
        let a = Natural::from(a);
        if mod_pow(&a, &e, &m)?.value() != &a {
            return Ok(false);
        }
    }
    Ok(true)
}

fn squarefree_pm1_divides(f: &PrimeFactorization, k: &Natural) -> bool {
    f.is_squarefree() && f.primes().all(|p| (k % (p - 1u32)).is_zero())
}

fn in_chain(f: &PrimeFactorization) -> bool {
    let mut prefix = Natural::one();
    for (p, e) in f.factors() {
        if *e != 1 || *p != &prefix + 1u32 {
            return false;
        }
        prefix *= p;
    }
    true
}

pub fn zagier_check(k: &Natural) -> Result<ZagierVerdict> {
    if k.is_zero() {
        return Err(domain("k must be positive"));
    }
    let f = factorize(k)?;
    let cond_squarefree_pm1 = squarefree_pm1_divides(&f, k);
    let (cond_fermat_all_a, fermat_method) = match k.to_u64() {
        Some(small) if small <= ZAGIER_BRUTE_FORCE_LIMIT => {
            (fermat_all_bases(small)?, FermatMethod::BruteForce)
        }
        _ => (cond_squarefree_pm1, FermatMethod::Criterion),
    };
    let in_chain = in_chain(&f);
    let agree = cond_fermat_all_a == cond_squarefree_pm1 && cond_squarefree_pm1 == in_chain;
    Ok(ZagierVerdict {
        k: k.clone(),
        cond_fermat_all_a,
        fermat_method,
        cond_squarefree_pm1,
        in_chain,
        agree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZagierChain {
    #[serde(with = "decimal::vec")]
    pub primes: Vec<Natural>,
    /// Prefix products, starting from the empty product 1.
    #[serde(with = "decimal::vec")]
    pub products: Vec<Natural>,
    /// First `p_1 ... p_r + 1` that is not prime.
    #[serde(with = "decimal")]
    pub stop_witness: Natural,
    pub stop_factorization: PrimeFactorization,
}

/// Builds `p_i = p_1 ... p_{i-1} + 1` while it stays prime.
pub fn zagier_chain() -> Result<ZagierChain> {
    let mut primes = Vec::new();
    let mut products = vec![Natural::one()];
    loop {
        let prefix = products.last().expect("starts non-empty");
        let candidate = prefix + 1u32;
        if !is_prime(&candidate) {
            let stop_factorization = factorize(&candidate)?;
            return Ok(ZagierChain { primes, products, stop_witness: candidate, stop_factorization });
        }
        products.push(prefix * &candidate);
        primes.push(candidate);
    }
}

/// Every primary pseudoperfect `K ≤ limit` solves the congruence with its
/// minimal exponent. Checked directly when `K` is small enough, through the
/// per-prime conditions otherwise.
pub fn corollary32_check(limit: &Natural) -> Result<bool> {
    for rec in ppp_search(limit)? {
        let holds = match emc_congruence_holds(&rec.minimal_exponent, &rec.k) {
            Ok(h) => h,
            Err(Error::OracleRange { .. }) => {
                let f = PrimeFactorization::from_distinct_primes(&rec.primes)?;
                theorem22_report(&Exponent::Value(rec.minimal_exponent.clone()), &f)?.verdict
            }
            Err(e) => return Err(e),
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn ks(v: &[PppRecord]) -> Vec<u64> {
        v.iter().map(|r| r.k.to_u64().unwrap()).collect()
    }

    #[test]
    fn definition_examples() {
        assert!(is_primary_pseudoperfect(&n(42)).unwrap());
        assert!(!is_primary_pseudoperfect(&n(30)).unwrap());
        assert!(is_primary_pseudoperfect(&n(2)).unwrap());
        assert!(!is_primary_pseudoperfect(&n(1)).unwrap());
    }

    #[test]
    fn search_examples() {
        assert_eq!(ks(&ppp_search(&n(100)).unwrap()), vec![2, 6, 42]);
        assert!(ppp_search(&n(1)).unwrap().is_empty());
        let recs = ppp_search(&n(50_000)).unwrap();
        assert_eq!(ks(&recs), vec![2, 6, 42, 1806, 47058]);
        let last = recs.last().unwrap();
        assert_eq!(last.r, 5);
        assert_eq!(last.minimal_exponent, n(330));
    }

    #[test]
    fn verify_record_examples() {
        let primes: Vec<_> = [2u64, 3, 11, 23, 31, 47059].iter().map(|&p| n(p)).collect();
        let v = verify_record(&n(2_214_502_422), &primes, Some(&n(235_290)));
        assert!(v.passed, "{v:?}");
        assert_eq!(v.minimal_exponent, Some(n(235_290)));

        let mut bad = primes.clone();
        bad[5] = n(47057);
        let v = verify_record(&n(2_214_502_422), &bad, None);
        assert!(!v.passed);
        assert!(!v.checks.iter().find(|c| c.name == "product").unwrap().passed);

        let v = verify_record(&n(2_214_502_422), &primes, Some(&n(235_291)));
        assert!(!v.passed);
        let failing: Vec<_> = v.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failing, vec!["minimal-exponent"]);
    }

    #[test]
    fn zagier_examples() {
        for k in [1806u64, 6, 1] {
            let v = zagier_check(&n(k)).unwrap();
            assert!(v.cond_fermat_all_a && v.cond_squarefree_pm1 && v.in_chain && v.agree);
        }
        let v = zagier_check(&n(12)).unwrap();
        assert!(!v.cond_fermat_all_a && !v.cond_squarefree_pm1 && !v.in_chain && v.agree);
        // 2^13 = 8192 ≡ 8 (mod 12).
        assert_eq!(mod_pow(&n(2), &n(13), &n(12)).unwrap().value(), &n(8));
        let v = zagier_check(&n(47058)).unwrap();
        assert_eq!(v.fermat_method, FermatMethod::Criterion);
        assert!(!v.cond_fermat_all_a && v.agree);
    }

    #[test]
    fn chain_stops_at_1807() {
        let c = zagier_chain().unwrap();
        assert_eq!(c.products, vec![n(1), n(2), n(6), n(42), n(1806)]);
        assert_eq!(c.primes, vec![n(2), n(3), n(7), n(43)]);
        assert_eq!(c.stop_witness, n(1807));
        assert_eq!(c.stop_factorization.factors(), &[(n(13), 1), (n(139), 1)]);
    }

    #[test]
    fn corollary32_examples() {
        assert!(corollary32_check(&n(100_000)).unwrap());
        assert!(corollary32_check(&n(50)).unwrap());
        assert!(corollary32_check(&n(1)).unwrap());
    }

    #[test]
    fn no_separating_solutions_below_bound() {
        assert!(separating_solutions(&n(1_000_000)).unwrap().is_empty());
    }
}
