//! JSON documents for morphisms, monoids, modules, bimodules, functors,
//! certificates and probe families. A workspace is a single document with named
//! entries; see `docs/format.md`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::base::{Base, Morphism, Obj};
use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;

/// A base morphism. Finite-set maps carry the image table, vector-space maps the
/// row-major matrix (`cod` rows, `dom` columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorDoc {
    Map { dom: Obj, cod: Obj, map: Vec<usize> },
    Mat { dom: Obj, cod: Obj, mat: Vec<Vec<usize>> },
}

impl MorDoc {
    pub fn from_morphism(f: &Morphism) -> MorDoc {
        match f.base() {
            Base::FinSet => MorDoc::Map { dom: f.dom(), cod: f.cod(), map: f.table().to_vec() },
            Base::FinVec { .. } => MorDoc::Mat { dom: f.dom(), cod: f.cod(), mat: f.rows() },
        }
    }

    pub fn to_morphism(&self, base: Base) -> Result<Morphism> {
        match (self, base) {
            (MorDoc::Map { dom, cod, map }, Base::FinSet) => base.map(*dom, *cod, map.clone()),
            (MorDoc::Mat { dom, cod, mat }, Base::FinVec { .. }) => {
                if mat.len() != *cod {
                    return Err(Error::ShapeMismatch(format!("matrix has {} rows, expected {cod}", mat.len())));
                }
                base.matrix(*dom, mat)
            }
            (MorDoc::Map { .. }, _) => Err(Error::BaseMismatch("\"map\" given over a vector-space base".into())),
            (MorDoc::Mat { .. }, _) => Err(Error::BaseMismatch("\"mat\" given over the finite-set base".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub base: Base,
    pub b: Obj,
    pub unit: MorDoc,
    pub mult: MorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub monoid: String,
    pub z: Obj,
    pub gamma: MorDoc,
}

/// `carrier` names a module over `right`; `rho` is the left action of `left`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub left: String,
    pub right: String,
    pub carrier: String,
    pub rho: MorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub x: String,
    pub y: String,
    pub phi: MorDoc,
    pub psi: MorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeDoc {
    pub monoid: String,
    #[serde(default)]
    pub seeds: Vec<String>,
    #[serde(default)]
    pub shallow: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetDoc {
    Base,
    Modules { monoid: String },
}

/// A target object: carrier and, over a non-trivial target monoid, its action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub z: Obj,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<MorDoc>,
}

/// Explicit functor data over a probe family. Keys of `objects` and `morphisms`
/// are probe indices; keys of `strength` are `"(w,i)"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDataDoc {
    pub target: TargetDoc,
    pub objects: BTreeMap<String, ObjectDoc>,
    pub morphisms: BTreeMap<String, MorDoc>,
    pub strength: BTreeMap<String, MorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctorDoc {
    Identity { monoid: String },
    Forgetful { monoid: String },
    /// `- (*) X` for a bimodule (or left module object) `X`.
    Tensor { bimodule: String },
    /// `D(X, -)` for a bimodule `X`, or a module with the trivial left action.
    Hom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bimodule: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<String>,
    },
    Data { probes: String, data: FunctorDataDoc },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    pub schema: u32,
    pub base: Base,
    #[serde(default)]
    pub monoids: BTreeMap<String, MonoidDoc>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleDoc>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorDoc>,
    #[serde(default)]
    pub certificates: BTreeMap<String, CertificateDoc>,
    #[serde(default)]
    pub probes: BTreeMap<String, ProbeDoc>,
}

impl WorkspaceDoc {
    pub fn parse(text: &str) -> Result<WorkspaceDoc> {
        let doc: WorkspaceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {}", doc.schema)));
        }
        Ok(doc)
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

pub fn strength_key(w: Obj, i: usize) -> String {
    format!("({w},{i})")
}

pub fn parse_strength_key(key: &str) -> Result<(Obj, usize)> {
    let bad = || Error::Parse(format!("strength key {key:?} is not \"(w,i)\""));
    let inner = key.strip_prefix('(').and_then(|k| k.strip_suffix(')')).ok_or_else(bad)?;
    let (w, i) = inner.split_once(',').ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, i.trim().parse().map_err(|_| bad())?))
}
