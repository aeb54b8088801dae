//! File formats, instance generators and the drivers behind the `fptsub`
//! command line.
//!
//! Every file carries `schema_version`. Floats are written with enough digits
//! to read back bit-identically.

pub mod bench;
pub mod format;
pub mod generate;
pub mod solve;
pub mod verify;

use crate::error::Error;

pub use format::{Instance, InstanceFile, SCHEMA_VERSION};

/// Process exit status for an error: 2 parse/validation, 3 budget,
/// 4 infeasible generator parameters.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::EnumerationBudget { .. } | Error::RunBudget { .. } => 3,
        Error::Infeasible(_) => 4,
        _ => 2,
    }
}

/// Short machine-readable tag for an error.
pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidSubset { .. } => "invalid-subset",
        Error::InvalidValue { .. } => "invalid-value",
        Error::ExhaustiveLimit { .. } => "exhaustive-limit",
        Error::EnumerationBudget { .. } => "enumeration-budget",
        Error::RunBudget { .. } => "run-budget",
        Error::InvalidK { .. } => "invalid-k",
        Error::InvalidParams(_) => "invalid-params",
        Error::DegenerateInstance => "degenerate-instance",
        Error::InvalidInstance(_) => "invalid-instance",
        Error::Infeasible(_) => "infeasible",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
    }
}

/// `{"error": {"kind": ..., "message": ...}}`, written to stderr by the CLI.
pub fn error_json(err: &Error) -> String {
    serde_json::json!({ "error": { "kind": error_kind(err), "message": err.to_string() } }).to_string()
}

fn to_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::InvalidK { k: 3, size: 2 }), 2);
        assert_eq!(exit_code(&Error::RunBudget { required: 5.0, budget: 1 }), 3);
        assert_eq!(exit_code(&Error::EnumerationBudget { required: 5, budget: 1 }), 3);
        assert_eq!(exit_code(&Error::Infeasible("x".into())), 4);
    }

    #[test]
    fn error_json_shape() {
        let v: serde_json::Value = serde_json::from_str(&error_json(&Error::DegenerateInstance)).unwrap();
        assert_eq!(v["error"]["kind"], "degenerate-instance");
        assert!(v["error"]["message"].as_str().unwrap().contains("v(X) = 0"));
    }
}
