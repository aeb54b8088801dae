//! Parameterized approximation schemes for choosing `K` elements that
//! maximize a monotone set function given by a value oracle.
//!
//! The schemes are parameterized by how the function's marginal gains relate
//! to its values (its *p-separability*). Problems with bounded structure,
//! such as set cover with bounded element frequency, OWA-based multiwinner
//! elections with k-approval ballots and capacitated b-matching, come with a
//! certified `p`.
//!
//! ```
//! use fptsub::problems::CoverInstance;
//! use fptsub::solvers::{preselect_enumerate, Budgets, SchemeParams};
//!
//! let cover = CoverInstance::new(4, vec![1.0; 4], vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
//! let (oracle, structural) = cover.oracle().unwrap();
//! let p = structural.superseparable.unwrap();
//! let params = SchemeParams::max(2, 0.5, p).unwrap();
//! let result = preselect_enumerate(&oracle, &params, &Budgets::default()).unwrap();
//! assert_eq!(result.value, 4.0);
//! ```

pub mod error;
pub mod harness;
pub mod oracle;
pub mod problems;
pub mod separability;
pub mod solvers;
pub mod subset;

pub use error::{Error, Result};
pub use oracle::{SetFunction, ValueOracle};
pub use subset::{ElementId, GroundSet, Subset};
