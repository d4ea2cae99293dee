//! The versioned JSON report written by every subcommand.

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};
use serde_json::Value;

pub const SCHEMA: &str = "goodred-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn ser_biguint_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| n.to_string()))
}

pub fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    /// The arguments as given, after defaults were filled in.
    pub input: Value,
    pub payload: Value,
    /// False when some search or factorization hit its budget.
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

impl ReportDocument {
    pub fn new(command: &str, input: Value, payload: Value, complete: bool) -> Self {
        ReportDocument {
            schema: SCHEMA,
            tool_version: TOOL_VERSION,
            command: command.to_string(),
            input,
            payload,
            complete,
            generated_unix: None,
        }
    }

    pub fn with_timestamp(mut self) -> Self {
        self.generated_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Serialized form with the timestamp dropped, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut doc = self.clone();
        doc.generated_unix = None;
        serde_json::to_string(&doc).expect("report serializes")
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const BUDGET: i32 = 3;
}
