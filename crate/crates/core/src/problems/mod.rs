//! Concrete problem families expressed as value oracles.
//!
//! Each adapter also reports the separability parameters its structure
//! certifies, so solvers can be handed a `p` without exhaustive checking:
//!
//! | family      | superseparable | at-most-subseparable | at-least-subseparable |
//! |-------------|----------------|----------------------|-----------------------|
//! | cover       | max frequency  | max frequency        | min frequency         |
//! | OWA         | k              | k                    | –                     |
//! | b-matching  | Y-degree bound | –                    | –                     |

mod bmatching;
mod cover;
mod flow;
mod owa;

use serde::{Deserialize, Serialize};

pub use bmatching::{BMatchingFunction, BMatchingInstance, Edge};
pub use cover::{CoverFunction, CoverInstance};
pub use owa::{chamberlin_courant, pav, OwaFunction, OwaInstance};

use crate::separability::SeparabilityKind;

/// Separability parameters certified by an instance's structure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StructuralReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub superseparable: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub at_most_subseparable: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub at_least_subseparable: Option<f64>,
}

impl StructuralReport {
    pub fn get(&self, kind: SeparabilityKind) -> Option<f64> {
        match kind {
            SeparabilityKind::Superseparable => self.superseparable,
            SeparabilityKind::AtMostSubseparable => self.at_most_subseparable,
            SeparabilityKind::AtLeastSubseparable => self.at_least_subseparable,
        }
    }

    /// `(kind, p)` pairs that are present.
    pub fn entries(&self) -> Vec<(SeparabilityKind, f64)> {
        SeparabilityKind::ALL.iter().filter_map(|&k| self.get(k).map(|p| (k, p))).collect()
    }
}

/// Small reference instances used throughout the tests and docs.
pub mod fixtures {
    use super::*;

    /// Universe {e1..e4}, unit weights, S1={e1,e2}, S2={e2,e3}, S3={e3,e4}.
    pub fn inst_a() -> CoverInstance {
        CoverInstance::new(4, vec![1.0; 4], vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap()
    }

    /// Items {x1,x2,x3}; a1 approves {x1,x2}, a2 approves {x2,x3}; α=(1,0).
    pub fn inst_b() -> OwaInstance {
        OwaInstance::new(3, 2, vec![vec![0, 1], vec![1, 2]], vec![1.0, 0.0]).unwrap()
    }

    /// X={x1,x2}, Y={y1,y2}; edges (x1,y1,3), (x1,y2,2), (x2,y2,4); c(x1)=2, c(x2)=1.
    pub fn inst_c() -> BMatchingInstance {
        BMatchingInstance::new(
            2,
            2,
            vec![Edge::new(0, 0, 3.0), Edge::new(0, 1, 2.0), Edge::new(1, 1, 4.0)],
            vec![2, 1],
        )
        .unwrap()
    }
}
