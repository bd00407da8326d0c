//! Machine-readable pass/fail records.
//!
//! A [`Certificate`] serializes to JSON with sorted keys, so identical runs
//! produce identical bytes. Wall-clock timings are kept out of the record.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default)]
    pub metrics: BTreeMap<String, Value>,
}

impl Certificate {
    pub fn pass(claim_id: impl Into<String>) -> Self {
        Self {
            claim_id: claim_id.into(),
            status: Status::Pass,
            witness: None,
            metrics: BTreeMap::new(),
        }
    }

    pub fn fail(claim_id: impl Into<String>, witness: Value) -> Self {
        Self {
            claim_id: claim_id.into(),
            status: Status::Fail,
            witness: Some(witness),
            metrics: BTreeMap::new(),
        }
    }

    /// Pass when `violation` is `None`, otherwise fail with it as witness.
    pub fn from_check(claim_id: impl Into<String>, violation: Option<Value>) -> Self {
        match violation {
            None => Self::pass(claim_id),
            Some(w) => Self::fail(claim_id, w),
        }
    }

    pub fn metric(mut self, key: &str, value: impl Serialize) -> Self {
        let value = serde_json::to_value(value).expect("metric serializes");
        self.metrics.insert(key.to_string(), value);
        self
    }

    /// Attach a witness without changing the status; passing certificates
    /// may carry one too (e.g. an achieving pair).
    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_id(mut self, claim_id: impl Into<String>) -> Self {
        self.claim_id = claim_id.into();
        self
    }

    /// Downgrade to a failure, recording `reason` if no witness is present.
    pub fn and_require(mut self, ok: bool, reason: Value) -> Self {
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
            if self.witness.is_none() {
                self.witness = Some(reason);
            } else {
                self.metrics.insert("failure".into(), reason);
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "[{tag}] {}", self.claim_id)?;
        let metrics: Vec<String> = self
            .metrics
            .iter()
            .filter(|(_, v)| !v.is_object() && !v.is_array())
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if !metrics.is_empty() {
            write!(f, "  {}", metrics.join(" "))?;
        }
        if self.status == Status::Fail {
            if let Some(w) = &self.witness {
                write!(f, "  witness={w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn failing_certificates_carry_a_witness() {
        let c = Certificate::from_check("x", Some(json!({"pair": [1, 2]})));
        assert!(!c.passed());
        assert!(c.witness.is_some());
        let c = Certificate::pass("y").and_require(false, json!("count mismatch"));
        assert!(!c.passed());
        assert_eq!(c.witness, Some(json!("count mismatch")));
    }

    #[test]
    fn json_is_key_sorted_and_round_trips() {
        let c = Certificate::pass("prop2.1.rank")
            .metric("zeta", 1)
            .metric("alpha", 2);
        let text = c.to_json();
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
