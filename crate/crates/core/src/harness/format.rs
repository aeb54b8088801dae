//! Instance files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "kind": "cover",
//!   "payload": { "n_elements": 4, "weights": [1.0, 1.0, 1.0, 1.0], "sets": [[0, 1], [1, 2], [2, 3]] },
//!   "declared_p": { "superseparable": 2.0 }
//! }
//! ```
//!
//! `kind` is one of `cover`, `owa` or `bmatching`; the payload mirrors
//! [`CoverInstance`], [`OwaInstance`] or [`BMatchingInstance`] field for field.
//! b-matching edges are `[x, y, weight]` triples.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::ValueOracle;
use crate::problems::{BMatchingInstance, CoverInstance, OwaInstance, StructuralReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum Instance {
    Cover(CoverInstance),
    Owa(OwaInstance),
    Bmatching(BMatchingInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Cover(_) => "cover",
            Instance::Owa(_) => "owa",
            Instance::Bmatching(_) => "bmatching",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Instance::Cover(c) => c.validate(),
            Instance::Owa(o) => o.validate(),
            Instance::Bmatching(b) => b.validate(),
        }
    }

    /// Number of elements the oracle is defined over (sets, items or
    /// X-vertices).
    pub fn ground_size(&self) -> usize {
        match self {
            Instance::Cover(c) => c.n_sets(),
            Instance::Owa(o) => o.m_items,
            Instance::Bmatching(b) => b.nx,
        }
    }

    pub fn structural(&self) -> StructuralReport {
        match self {
            Instance::Cover(c) => c.structural(),
            Instance::Owa(o) => o.structural(),
            Instance::Bmatching(b) => b.structural(),
        }
    }

    /// Whether the adapter's value function is submodular by construction.
    pub fn submodular(&self) -> bool {
        match self {
            Instance::Cover(_) | Instance::Bmatching(_) => true,
            Instance::Owa(o) => o.is_non_increasing(),
        }
    }

    /// Oracle for the instance. OWA objectives are truncated at `committee`,
    /// defaulting to the length of the OWA vector.
    pub fn oracle(&self, committee: Option<usize>) -> Result<(ValueOracle, StructuralReport)> {
        match self {
            Instance::Cover(c) => c.oracle(),
            Instance::Owa(o) => o.oracle(committee.unwrap_or(o.owa.len())),
            Instance::Bmatching(b) => b.oracle(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub instance: Instance,
    /// Separability parameters claimed by whoever wrote the file.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub declared_p: Option<StructuralReport>,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile { schema_version: SCHEMA_VERSION, instance, declared_p: None }
    }

    pub fn with_declared_p(mut self, declared: StructuralReport) -> Self {
        self.declared_p = Some(declared);
        self
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        if let Some(declared) = &file.declared_p {
            for (kind, p) in declared.entries() {
                if !(p.is_finite() && p >= 0.0) {
                    return Err(Error::InvalidInstance(format!("declared {kind} parameter {p} is not a valid p")));
                }
            }
        }
        file.instance.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        super::to_pretty(self)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}
