//! JSON wire formats.
//!
//! ```text
//! poset: {"elements":[ids], "lt":[[a,b],...], "labels":{"id":"name"}}
//! pair:  {"poset":<poset>, "f":[[a,b],...], "g":[[a,b],...]}
//! pa:    {"poset":<poset>, "map":[[a,b],...]}
//! ```
//!
//! `lt` may be any acyclic generating relation; readers close it
//! transitively and writers emit the covering pairs. `labels`, `f`, `g` are
//! optional on input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partial_auto::{check_partial_iso, PaPair, PartialAutomorphism, PartialMap};
use crate::poset::{Elem, Poset};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<Elem>,
    #[serde(default)]
    pub lt: Vec<(Elem, Elem)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<Elem, String>,
}

impl TryFrom<PosetJson> for Poset {
    type Error = Error;

    fn try_from(j: PosetJson) -> Result<Poset> {
        let p = Poset::new(j.elements, j.lt)?;
        if let Some(&e) = j.labels.keys().find(|&&e| !p.contains(e)) {
            return Err(Error::UnknownElement(e));
        }
        Ok(p.with_labels(j.labels))
    }
}

impl From<Poset> for PosetJson {
    fn from(p: Poset) -> Self {
        PosetJson { elements: p.elements().to_vec(), lt: p.covers(), labels: p.labels().clone() }
    }
}

impl TryFrom<Vec<(Elem, Elem)>> for PartialMap {
    type Error = Error;

    fn try_from(v: Vec<(Elem, Elem)>) -> Result<Self> {
        PartialMap::from_pairs(v)
    }
}

impl From<PartialMap> for Vec<(Elem, Elem)> {
    fn from(m: PartialMap) -> Self {
        m.pairs().collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaPairJson {
    pub poset: Poset,
    #[serde(default)]
    pub f: PartialMap,
    #[serde(default)]
    pub g: PartialMap,
}

impl TryFrom<PaPairJson> for PaPair {
    type Error = Error;

    fn try_from(j: PaPairJson) -> Result<Self> {
        check_partial_iso(&j.poset, &j.f)?;
        check_partial_iso(&j.poset, &j.g)?;
        Ok(PaPair { poset: j.poset, f: j.f, g: j.g })
    }
}

impl From<PaPair> for PaPairJson {
    fn from(p: PaPair) -> Self {
        PaPairJson { poset: p.poset, f: p.f, g: p.g }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaJson {
    pub poset: Poset,
    #[serde(default)]
    pub map: PartialMap,
}

impl TryFrom<PaJson> for PartialAutomorphism {
    type Error = Error;

    fn try_from(j: PaJson) -> Result<Self> {
        check_partial_iso(&j.poset, &j.map)?;
        Ok(PartialAutomorphism { poset: j.poset, map: j.map })
    }
}

impl From<PartialAutomorphism> for PaJson {
    fn from(p: PartialAutomorphism) -> Self {
        PaJson { poset: p.poset, map: p.map }
    }
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_pair(text: &str) -> Result<PaPair> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_pa(text: &str) -> Result<PartialAutomorphism> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("in-memory values serialize")
}
