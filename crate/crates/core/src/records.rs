//! The shipped records file of known congruence solutions.
//!
//! TOML, one `[[record]]` table per solution, every integer a decimal
//! string so that 31-digit entries round-trip exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::natural::{decimal, Natural};

/// The bundled data file.
pub const DEFAULT_RECORDS: &str = include_str!("../data/records.toml");

/// Environment variable naming an alternative records file.
pub const RECORDS_ENV: &str = "EMC_RECORDS";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    #[serde(with = "decimal")]
    pub k: Natural,
    #[serde(with = "decimal::vec")]
    pub primes: Vec<Natural>,
    #[serde(with = "decimal")]
    pub minimal_exponent: Natural,
}

#[derive(Deserialize)]
struct RecordsFile {
    #[serde(default)]
    record: Vec<SolutionRecord>,
}

pub fn parse_records(text: &str) -> Result<Vec<SolutionRecord>> {
    let file: RecordsFile = toml::from_str(text).map_err(|e| Error::Records(e.to_string()))?;
    Ok(file.record)
}

pub fn load_records(path: &Path) -> Result<Vec<SolutionRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Records(format!("{}: {e}", path.display())))?;
    parse_records(&text)
}

pub fn default_records() -> Vec<SolutionRecord> {
    parse_records(DEFAULT_RECORDS).expect("bundled records file parses")
}

/// Renders records in the canonical layout of the bundled file (without
/// its header comment).
pub fn render_records(records: &[SolutionRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let primes: Vec<String> = r.primes.iter().map(|p| format!("\"{p}\"")).collect();
        writeln!(out, "[[record]]").unwrap();
        writeln!(out, "k = \"{}\"", r.k).unwrap();
        writeln!(out, "primes = [{}]", primes.join(", ")).unwrap();
        writeln!(out, "minimal_exponent = \"{}\"", r.minimal_exponent).unwrap();
    }
    out
}
