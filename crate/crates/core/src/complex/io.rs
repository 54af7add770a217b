//! JSON formats for complexes and multicomplexes.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Facet, Multiset, Pure, PureComplex, PureMulticomplex};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_default() -> u32 {
    SCHEMA_VERSION
}

/// `{"schema": 1, "n": .., "d": .., "facets": [[v, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    #[serde(default = "schema_default")]
    pub schema: u32,
    /// Free-form note on the vertex encoding, if the labels stand for something.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoding: Option<String>,
    pub n: usize,
    pub d: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Multicomplex facets as exponent rows of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MulticomplexJson {
    #[serde(default = "schema_default")]
    pub schema: u32,
    pub n: usize,
    pub d: usize,
    pub facets: Vec<Vec<u32>>,
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA_VERSION {
        return Err(Error::invalid(format!("unsupported schema version {schema}")));
    }
    Ok(())
}

impl TryFrom<ComplexJson> for PureComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        check_schema(j.schema)?;
        PureComplex::from_lists(j.n, j.d, j.facets)
    }
}

impl From<&PureComplex> for ComplexJson {
    fn from(c: &PureComplex) -> Self {
        ComplexJson {
            schema: SCHEMA_VERSION,
            encoding: None,
            n: c.n(),
            d: c.d(),
            facets: c.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }
}

impl TryFrom<MulticomplexJson> for PureMulticomplex {
    type Error = Error;

    fn try_from(j: MulticomplexJson) -> Result<Self> {
        check_schema(j.schema)?;
        if let Some(row) = j.facets.iter().find(|r| r.len() != j.n) {
            return Err(Error::invalid(format!("exponent row {row:?} does not have length {}", j.n)));
        }
        PureMulticomplex::from_exponent_rows(j.n, j.d, j.facets)
    }
}

impl From<&PureMulticomplex> for MulticomplexJson {
    fn from(c: &PureMulticomplex) -> Self {
        MulticomplexJson {
            schema: SCHEMA_VERSION,
            n: c.n(),
            d: c.d(),
            facets: c.facets().iter().map(|f| f.exponents().to_vec()).collect(),
        }
    }
}

impl Serialize for Pure<Facet> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pure<Facet> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ComplexJson::deserialize(d)?;
        PureComplex::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Pure<Multiset> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MulticomplexJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pure<Multiset> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MulticomplexJson::deserialize(d)?;
        PureMulticomplex::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl PureComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(text).map_err(|e| Error::invalid(e.to_string()))?;
        j.try_into()
    }
}

impl PureMulticomplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("multicomplex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: MulticomplexJson = serde_json::from_str(text).map_err(|e| Error::invalid(e.to_string()))?;
        j.try_into()
    }
}
