//! Versioned JSON reports with deterministic bytes.
//!
//! `serde_json`'s default map keeps keys sorted, so serializing the same
//! report twice yields byte-identical output.

use serde_json::{json, Value};

use crate::TOOL_VERSION;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub input_name: String,
    pub payload: Value,
}

impl Report {
    pub fn new(command: impl Into<String>, input_name: impl Into<String>, payload: Value) -> Report {
        Report {
            command: command.into(),
            input_name: input_name.into(),
            payload,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "input": self.input_name,
            "tool_version": TOOL_VERSION,
            "payload": self.payload,
        })
    }

    pub fn from_value(value: &Value) -> Option<Report> {
        Some(Report {
            command: value.get("command")?.as_str()?.to_string(),
            input_name: value.get("input")?.as_str()?.to_string(),
            payload: value.get("payload")?.clone(),
        })
    }
}

/// Deterministic, key-sorted JSON bytes, newline terminated.
pub fn emit_report(report: &Report) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(&report.to_value()).expect("report JSON serializes");
    bytes.push(b'\n');
    bytes
}

/// Pretty variant for terminal output; equally deterministic.
pub fn emit_report_pretty(report: &Report) -> Vec<u8> {
    let mut bytes =
        serde_json::to_vec_pretty(&report.to_value()).expect("report JSON serializes");
    bytes.push(b'\n');
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_reports_emit_identical_bytes() {
        let r = Report::new("dim", "zigzag", json!({"total": 17, "alpha": [1, 2]}));
        assert_eq!(emit_report(&r), emit_report(&r.clone()));
    }

    #[test]
    fn keys_are_sorted() {
        let r = Report::new("x", "y", json!({"zeta": 1, "alpha": 2}));
        let text = String::from_utf8(emit_report(&r)).unwrap();
        let alpha = text.find("alpha").unwrap();
        let zeta = text.find("zeta").unwrap();
        assert!(alpha < zeta);
        assert!(text.find("command").unwrap() < text.find("input").unwrap());
    }

    #[test]
    fn empty_payload_is_valid_skeleton() {
        let r = Report::new("noop", "none", json!({}));
        let bytes = emit_report(&r);
        let parsed: Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(parsed["schema"], 1);
        let back = Report::from_value(&parsed).unwrap();
        assert_eq!(back, r);
    }
}
