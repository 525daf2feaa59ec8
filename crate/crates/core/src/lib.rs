//! Power-sum congruences attached to the Erdős–Moser equation
//! `1^n + 2^n + ... + k^n = (k+1)^n`.
//!
//! Every closed-form evaluator here has a brute-force counterpart in
//! [`bigmod`], and the test suites bind each pair together:
//!
//! - [`congruences`]: the equation reduced mod `k`, the Egyptian fraction
//!   condition, minimal exponents and bounded classification searches.
//! - [`supercongruences`]: the lift to `k²` and `k³`, and the `p³` exploration.
//! - [`quotients`]: Fermat and Wilson quotients, Lerch's and Eisenstein's relations.
//! - [`ppp`]: primary pseudoperfect numbers and Zagier's characterizations.
//! - [`records`] and [`tables`]: the shipped table of known solutions.

pub mod bigmod;
pub mod congruences;
pub mod error;
pub mod natural;
pub mod ppp;
pub mod quotients;
pub mod records;
pub mod supercongruences;
pub mod tables;

pub use bigmod::{
    factorize, is_prime, mod_pow, power_sum_mod, power_sum_mod_periodic, primality,
    PrimeFactorization, Primality, DEFAULT_ORACLE_CAP,
};
pub use congruences::{ConditionReport, Exponent};
pub use error::{Error, Result};
pub use natural::{parse_natural, Natural, Residue};
pub use ppp::{PppRecord, ZagierVerdict};
pub use quotients::QuotientPair;
pub use records::SolutionRecord;
pub use supercongruences::SuperReport;
