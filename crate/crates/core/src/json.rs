//! Serde adapters writing every exact number as a string.

use serde::de::Error;
use serde::{Deserialize, Deserializer, Serializer};

use crate::exact::matrix::ExactText;

fn parse<'de, D: Deserializer<'de>, T: ExactText>(text: &str) -> Result<T, D::Error> {
    T::parse_text(text).map_err(D::Error::custom)
}

pub mod rational {
    use super::*;
    use crate::exact::rational::Rational;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_text())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse::<D, Rational>(&text)
    }
}

pub mod rational_vec {
    use super::*;
    use crate::exact::rational::Rational;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_text())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse::<D, Rational>(t))
            .collect()
    }
}

pub mod gaussian_vec {
    use super::*;
    use crate::exact::gaussian::GaussianRational;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[GaussianRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_text())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<GaussianRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse::<D, GaussianRational>(t))
            .collect()
    }
}

pub mod gaussian {
    use super::*;
    use crate::exact::gaussian::GaussianRational;

    pub fn serialize<S: Serializer>(v: &GaussianRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_text())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<GaussianRational, D::Error> {
        let text = String::deserialize(d)?;
        parse::<D, GaussianRational>(&text)
    }
}

pub mod bigint {
    use super::*;
    use num_bigint::BigInt;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let t = String::deserialize(d)?;
        t.parse::<BigInt>()
            .map_err(|_| D::Error::custom(format!("malformed integer {t:?}")))
    }
}

pub mod bigint_vec {
    use super::*;
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("malformed integer {t:?}")))
            })
            .collect()
    }
}

pub mod opt_bigint_vec {
    use super::*;
    use num_bigint::BigInt;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::bigint_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        super::bigint_vec::deserialize(d).map(Some)
    }
}
