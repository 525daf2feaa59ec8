use emc_core::bigmod::{factorize, is_prime, PrimeFactorization};
use emc_core::congruences::{
    egyptian_condition_factored, emc_congruence_holds_capped, lcm_of_p_minus_one,
    minimal_exponent_factored, search_solutions_by_prime_count, theorem22_report, Exponent,
};
use emc_core::ppp::{
    ppp_search, separating_solutions, verify_record, zagier_chain, zagier_check,
};
use emc_core::quotients::{eisenstein_check, lerch_check};
use emc_core::records::{default_records, load_records, SolutionRecord, RECORDS_ENV};
use emc_core::supercongruences::{
    conjecture49_explore_capped, power_of_two_family, remark_explore, super_holds_capped,
    theorem45_report,
};
use emc_core::tables::reproduce_tables_capped;
use emc_core::{Error, Natural, Result};
use num_bigint::BigUint;
use serde_json::json;

use crate::report::{Report, Verdict};
use crate::{CheckMode, Cli, Command, TablesAction};

fn factor_with_hint(k: &Natural, hint: Option<&[Natural]>) -> Result<PrimeFactorization> {
    let Some(primes) = hint else {
        return factorize(k);
    };
    let mut sorted = primes.to_vec();
    sorted.sort();
    let mut powers: Vec<(Natural, u32)> = Vec::new();
    for p in sorted {
        match powers.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => powers.push((p, 1)),
        }
    }
    let f = PrimeFactorization::from_prime_powers(powers)?;
    if &f.product() != k {
        return Err(Error::Domain(format!("supplied primes multiply to {}, not {k}", f.product())));
    }
    Ok(f)
}

fn primes_json(f: &PrimeFactorization) -> Vec<String> {
    f.primes().map(|p| p.to_string()).collect()
}

fn records(cli: &Cli) -> Result<Vec<SolutionRecord>> {
    if let Some(path) = &cli.records {
        return load_records(path);
    }
    match std::env::var_os(RECORDS_ENV) {
        Some(path) => load_records(path.as_ref()),
        None => Ok(default_records()),
    }
}

/// `Ok(None)` when the brute-force route is out of range.
fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::OracleRange { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub(crate) fn execute(cli: &Cli) -> Result<Report> {
    let cap = cli.cap;
    match &cli.command {
        Command::Check { n, k, primes, mode } => check(n, k, primes.as_deref(), mode, cap),
        Command::Super { n, k, power } => super_cmd(n, k, *power, cap),
        Command::Conditions { k, n, exponent_class, primes } => {
            let f = factor_with_hint(k, primes.as_deref())?;
            let exponent = match (n, exponent_class) {
                (Some(n), _) => Exponent::Value(n.clone()),
                (None, Some(c)) => Exponent::MultipleOf(c.clone()),
                (None, None) => Exponent::MultipleOf(lcm_of_p_minus_one(&f)),
            };
            if exponent.base() == &BigUint::ZERO {
                return Err(Error::Domain("exponent must be positive".into()));
            }
            let report = theorem22_report(&exponent, &f)?;
            Ok(Report::new("conditions")
                .input("k", k)
                .input("n", &exponent)
                .verdict(Verdict::Holds(report.verdict))
                .details(report))
        }
        Command::Egyptian { k, primes } => {
            let f = factor_with_hint(k, primes.as_deref())?;
            let holds = egyptian_condition_factored(&f);
            let sum = f.primes().fold(Natural::from(1u8), |acc, p| acc + k / p);
            Ok(Report::new("egyptian")
                .input("k", k)
                .verdict(Verdict::Holds(holds))
                .details(json!({
                    "primes": primes_json(&f),
                    "one_plus_sum_k_over_p": sum.to_string(),
                    "squarefree": f.is_squarefree(),
                })))
        }
        Command::MinimalExponent { k, primes } => {
            let f = factor_with_hint(k, primes.as_deref())?;
            let report = Report::new("minimal-exponent").input("k", k);
            Ok(match minimal_exponent_factored(&f) {
                Ok(m) => report.details(json!({
                    "primes": primes_json(&f),
                    "minimal_exponent": m.to_string(),
                })),
                Err(Error::Domain(reason)) => report
                    .verdict(Verdict::Holds(false))
                    .details(json!({ "primes": primes_json(&f), "minimal_exponent": null, "reason": reason })),
                Err(e) => return Err(e),
            })
        }
        Command::Search { r, bound } => {
            let found = search_solutions_by_prime_count(*r, bound)?;
            Ok(Report::new("search")
                .input("r", r)
                .input("bound", bound)
                .details(json!({
                    "solutions": found.iter().map(u64::to_string).collect::<Vec<_>>(),
                    "scope": "exhaustive up to bound",
                })))
        }
        Command::PppSearch { limit } => {
            let found = ppp_search(limit)?;
            let mut report = Report::new("ppp-search").input("limit", limit).details(&found);
            for k in separating_solutions(limit)? {
                report.finding(format!(
                    "k = {k} meets the Egyptian fraction congruence but is not primary pseudoperfect"
                ));
            }
            Ok(report)
        }
        Command::VerifyRecord { k, primes, exponent } => {
            let v = verify_record(k, primes, exponent.as_ref());
            let joined: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
            let mut report = Report::new("verify-record").input("k", k).input("primes", joined.join(","));
            if let Some(e) = exponent {
                report = report.input("exponent", e);
            }
            let mut report = report.verdict(Verdict::Holds(v.passed)).details(&v);
            if v.probable_primes {
                report.finding("some factors exceed the proven primality range and are probable primes");
            }
            Ok(report)
        }
        Command::Zagier { k, limit } => zagier(k.as_ref(), *limit),
        Command::Lerch { pmax } => lerch(*pmax),
        Command::Eisenstein { pmax } => eisenstein(*pmax),
        Command::ExploreP3 { n, k } => {
            let rows = conjecture49_explore_capped(n, k, cap)?;
            let hypothesis = optional(super_holds_capped(n, k, 2, cap))?;
            let mut report = Report::new("explore-p3")
                .input("n", n)
                .input("k", k)
                .verdict(Verdict::Exploration)
                .details(json!({
                    "status": "conjecture; exploration only",
                    "mod_k2_hypothesis": hypothesis,
                    "rows": rows,
                }));
            for row in rows.iter().filter(|r| !r.holds) {
                let qualifier = if hypothesis == Some(true) { "counterexample" } else { "mismatch" };
                report.finding(format!("{qualifier} at p = {}: {} vs {}", row.p, row.lhs, row.rhs));
            }
            Ok(report)
        }
        Command::Remark7 { nmax } => {
            let seven = remark_explore(&Natural::from(7u8), nmax)?;
            let two = remark_explore(&Natural::from(2u8), nmax)?;
            let three = remark_explore(&Natural::from(3u8), nmax)?;
            let mut report = Report::new("remark7")
                .input("nmax", nmax)
                .verdict(Verdict::Exploration)
                .details(json!({
                    "status": "observation; exploration only",
                    "p7": seven,
                    "companion_p2": two,
                    "companion_p3": three,
                }));
            for row in seven.iter().filter(|r| !r.divisible) {
                report.finding(format!("49 does not divide Σ_{}(7)", row.n - 1));
            }
            Ok(report)
        }
        Command::Family2 { n, d } => {
            let holds = power_of_two_family(n, *d)?;
            let premise = *d >= 1 && (n % (BigUint::from(1u8) << (*d as usize - 1))) == BigUint::ZERO;
            if premise && !holds {
                return Err(Error::TheoremViolation(format!(
                    "2^{} divides {n} but 1 + 2^n ≢ 3^n (mod 2^{d})",
                    d - 1
                )));
            }
            Ok(Report::new("family2")
                .input("n", n)
                .input("d", d)
                .verdict(Verdict::Holds(holds))
                .details(json!({ "premise_2_pow_d_minus_1_divides_n": premise })))
        }
        Command::Tables { action: TablesAction::Reproduce { limit } } => {
            let recs = records(cli)?;
            let repro = reproduce_tables_capped(&recs, limit, cap)?;
            let mut report = Report::new("tables reproduce")
                .input("limit", limit)
                .verdict(Verdict::Holds(repro.passed));
            for f in &repro.findings {
                report.finding(f.clone());
            }
            Ok(report.details(&repro))
        }
    }
}

fn check(n: &Natural, k: &Natural, hint: Option<&[Natural]>, mode: &CheckMode, cap: u64) -> Result<Report> {
    let want_direct = mode.direct || mode.both || !mode.conditions;
    let want_conditions = mode.conditions || mode.both || !mode.direct;
    let report = Report::new("check").input("n", n).input("k", k);

    let direct = if want_direct {
        if mode.direct {
            Some(emc_congruence_holds_capped(n, k, cap)?)
        } else {
            optional(emc_congruence_holds_capped(n, k, cap))?
        }
    } else {
        None
    };
    let conditions = if want_conditions {
        let f = factor_with_hint(k, hint)?;
        Some(theorem22_report(&Exponent::Value(n.clone()), &f)?)
    } else {
        None
    };
    if let (Some(d), Some(c)) = (direct, &conditions) {
        if d != c.verdict {
            return Err(Error::TheoremViolation(format!(
                "direct check gives {d} but the per-prime conditions give {} at n = {n}, k = {k}",
                c.verdict
            )));
        }
    }
    let verdict = direct.or(conditions.as_ref().map(|c| c.verdict)).expect("some route ran");
    Ok(report.verdict(Verdict::Holds(verdict)).details(json!({
        "direct": direct,
        "conditions": conditions,
    })))
}

fn super_cmd(n: &Natural, k: &Natural, power: u32, cap: u64) -> Result<Report> {
    let report = Report::new("super").input("n", n).input("k", k).input("power", power);
    if power == 3 {
        let holds = super_holds_capped(n, k, 3, cap)?;
        return Ok(report.verdict(Verdict::Holds(holds)).details(json!({ "direct": holds })));
    }
    let mut conditions = theorem45_report(n, &factorize(k)?)?;
    let direct = optional(super_holds_capped(n, k, 2, cap))?;
    if let Some(d) = direct {
        if d != conditions.verdict {
            return Err(Error::TheoremViolation(format!(
                "mod k^2: direct {d}, conditions {} at n = {n}, k = {k}",
                conditions.verdict
            )));
        }
    }
    conditions.direct_check = direct;
    Ok(report.verdict(Verdict::Holds(conditions.verdict)).details(conditions))
}

fn zagier(k: Option<&Natural>, limit: Option<u64>) -> Result<Report> {
    if let Some(k) = k {
        let v = zagier_check(k)?;
        if !v.agree {
            return Err(Error::TheoremViolation(format!("Zagier's conditions disagree at k = {k}")));
        }
        return Ok(Report::new("zagier").input("k", k).verdict(Verdict::Holds(v.in_chain)).details(v));
    }
    let limit = limit.expect("clap requires k or limit");
    let mut truth_set = Vec::new();
    for k in 1..=limit {
        let v = zagier_check(&Natural::from(k))?;
        if !v.agree {
            return Err(Error::TheoremViolation(format!("Zagier's conditions disagree at k = {k}")));
        }
        if v.in_chain {
            truth_set.push(k.to_string());
        }
    }
    let chain = zagier_chain()?;
    Ok(Report::new("zagier").input("limit", limit).details(json!({
        "checked": limit.to_string(),
        "truth_set": truth_set,
        "chain": chain,
    })))
}

fn primes_up_to(limit: u64) -> impl Iterator<Item = u64> {
    (2..=limit).filter(|&p| is_prime(&Natural::from(p)))
}

fn lerch(pmax: u64) -> Result<Report> {
    let mut rows = Vec::new();
    for p in primes_up_to(pmax).filter(|&p| p > 2) {
        let c = lerch_check(&Natural::from(p))?;
        if !c.holds {
            return Err(Error::TheoremViolation(format!("Lerch's formula fails at p = {p}")));
        }
        rows.push(c);
    }
    Ok(Report::new("lerch").input("pmax", pmax).details(json!({
        "checked": rows.len().to_string(),
        "rows": rows,
    })))
}

fn eisenstein(pmax: u64) -> Result<Report> {
    let mut primes = 0u64;
    let mut pairs = 0u64;
    for p in primes_up_to(pmax) {
        let pn = Natural::from(p);
        for a in 1..p {
            for b in 1..p {
                if !eisenstein_check(&pn, &Natural::from(a), &Natural::from(b))? {
                    return Err(Error::TheoremViolation(format!(
                        "Eisenstein's relation fails at p = {p}, a = {a}, b = {b}"
                    )));
                }
                pairs += 1;
            }
        }
        primes += 1;
    }
    Ok(Report::new("eisenstein").input("pmax", pmax).details(json!({
        "primes": primes.to_string(),
        "pairs": pairs.to_string(),
    })))
}
