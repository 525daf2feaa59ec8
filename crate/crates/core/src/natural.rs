//! Arbitrary-precision naturals and canonical residues.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Nonnegative integer of unbounded size.
pub type Natural = BigUint;

/// Parses a decimal string into a [`Natural`].
pub fn parse_natural(s: &str) -> Result<Natural> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Domain(format!("not a decimal natural: {s:?}")));
    }
    t.parse::<BigUint>()
        .map_err(|e| Error::Domain(format!("not a decimal natural: {s:?} ({e})")))
}

/// `value` mod `modulus`, always held in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: Natural,
    modulus: Natural,
}

impl Residue {
    pub fn new(value: Natural, modulus: Natural) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::InvalidModulus);
        }
        let value = if value < modulus { value } else { value.mod_floor(&modulus) };
        Ok(Residue { value, modulus })
    }

    pub(crate) fn from_u64(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus > 0);
        Residue {
            value: Natural::from(value % modulus),
            modulus: Natural::from(modulus),
        }
    }

    /// The class of `-value`.
    pub fn negated(value: &Natural, modulus: &Natural) -> Result<Self> {
        let r = Residue::new(value.clone(), modulus.clone())?;
        if r.value.is_zero() {
            Ok(r)
        } else {
            Ok(Residue { value: modulus - &r.value, modulus: r.modulus })
        }
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Serialize for Residue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Residue", 2)?;
        s.serialize_field("value", &self.value.to_string())?;
        s.serialize_field("modulus", &self.modulus.to_string())?;
        s.end()
    }
}

/// Serde helpers rendering naturals as decimal strings, so that 31-digit
/// values survive JSON consumers that parse numbers as doubles.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_natural(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use num_bigint::BigUint;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for n in v {
                seq.serialize_element(&n.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| super::super::parse_natural(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use num_bigint::BigUint;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match n {
                Some(n) => s.collect_str(n),
                None => s.serialize_none(),
            }
        }
    }
}
