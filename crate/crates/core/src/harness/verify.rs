//! Separability verification of instance files.

use serde::{Deserialize, Serialize};

use super::format::InstanceFile;
use super::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::problems::StructuralReport;
use crate::separability::{
    self, SeparabilityKind, SeparabilityReport, StructureReport, ValueTable, EXHAUSTIVE_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub instance_kind: String,
    pub ground_size: usize,
    pub structural_p: StructuralReport,
    pub separability: SeparabilityReport,
    pub structure: StructureReport,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        super::to_pretty(self)
    }
}

/// Checks `kind` at `p` (defaulting to the instance's structural parameter).
///
/// Ground sets above the exhaustive limit need `sampled`, the number of
/// random states to try.
pub fn verify_instance(
    file: &InstanceFile,
    kind: SeparabilityKind,
    p: Option<f64>,
    sampled: Option<usize>,
    seed: u64,
) -> Result<VerifyReport> {
    let (oracle, structural) = file.instance.oracle(None)?;
    let p = match p.or(structural.get(kind)) {
        Some(p) => p,
        None => {
            return Err(Error::InvalidParams(format!(
                "the instance certifies no {kind} parameter; pass --p"
            )))
        }
    };
    let m = oracle.size();
    let (report, structure) = if m <= EXHAUSTIVE_LIMIT {
        let table = ValueTable::build(&oracle)?;
        let mut report = separability::verify_table(&table, kind, p);
        report.extremal_p = Some(separability::extremal_p_table(&table, kind));
        (report, separability::check_structure_table(&table))
    } else if let Some(trials) = sampled {
        (
            separability::verify_sampled(&oracle, kind, p, trials, seed)?,
            separability::check_structure_sampled(&oracle, trials, seed)?,
        )
    } else {
        return Err(Error::ExhaustiveLimit { size: m, limit: EXHAUSTIVE_LIMIT });
    };
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        instance_kind: file.instance.kind().to_string(),
        ground_size: m,
        structural_p: structural,
        separability: report,
        structure,
    })
}
