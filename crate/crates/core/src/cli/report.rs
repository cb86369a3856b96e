use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::decide::{Certificate, Reason, Status};

/// The report printed by every command except `levels`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub group: String,
    pub order: usize,
    pub ring: String,
    pub involution: String,
    #[serde(rename = "verdict")]
    pub status: Option<Status>,
    pub reasons: Vec<Reason>,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Value>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    #[serde(skip)]
    pub code: i32,
}

impl Report {
    pub fn new(command: &str, group: &str, order: usize, ring: &str, involution: impl fmt::Display) -> Self {
        Report {
            command: command.into(),
            group: group.into(),
            order,
            ring: ring.into(),
            involution: involution.to_string(),
            status: None,
            reasons: Vec::new(),
            certificates: Vec::new(),
            timings: None,
            extra: Map::new(),
            code: 2,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group: {} (order {})", self.group, self.order);
        let _ = writeln!(out, "ring: {}", self.ring);
        let _ = writeln!(out, "involution: {}", self.involution);
        if let Some(s) = self.status {
            let _ = writeln!(out, "verdict: {s}");
        }
        if !self.reasons.is_empty() {
            let _ = writeln!(out, "reasons:");
            for r in &self.reasons {
                let _ = writeln!(out, "  [{}] {}: {}", r.citation, r.criterion, r.data);
            }
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(out, "certificates:");
            for c in &self.certificates {
                let _ = writeln!(out, "  {}: {}", c.kind, c.data);
            }
        }
        for (k, v) in &self.extra {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(out, "timings: {t}");
        }
        out
    }
}
