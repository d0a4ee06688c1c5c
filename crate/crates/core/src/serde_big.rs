//! Decimal-string serialization for big integers, so reports and caches stay
//! readable and portable.

use num_bigint::BigInt;
use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

pub mod nested {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = v
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let strings = Vec::<Vec<String>>::deserialize(d)?;
        strings
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| x.parse::<BigInt>().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod single {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// `BigRational` as "p/q" (or "p" when integral).
pub mod ratio {
    use num_rational::BigRational;

    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub mod ratio_opt {
    use num_rational::BigRational;

    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(ToString::to_string).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|x| x.parse().map_err(D::Error::custom))
            .transpose()
    }
}

pub mod nested_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        Option::<Vec<String>>::deserialize(d)?
            .map(|r| {
                r.into_iter()
                    .map(|x| x.parse::<BigInt>().map_err(D::Error::custom))
                    .collect()
            })
            .transpose()
    }
}
