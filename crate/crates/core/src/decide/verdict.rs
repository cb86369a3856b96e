use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    StarClean,
    NotStarClean,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::StarClean => "StarClean",
            Status::NotStarClean => "NotStarClean",
            Status::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// One step of the argument behind a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reason {
    pub criterion: String,
    pub citation: String,
    pub data: Value,
}

impl Reason {
    pub fn new(criterion: impl Into<String>, citation: impl Into<String>, data: Value) -> Self {
        Reason { criterion: criterion.into(), citation: citation.into(), data }
    }
}

/// Machine-checkable evidence: a witness pair, a solution of the
/// three-squares equation, a non-decomposable element, or a decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub data: Value,
}

impl Certificate {
    pub fn new(kind: impl Into<String>, data: Value) -> Self {
        Certificate { kind: kind.into(), data }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<Reason>,
    pub certificates: Vec<Certificate>,
}

impl Verdict {
    pub fn new(status: Status) -> Self {
        Verdict { status, reasons: Vec::new(), certificates: Vec::new() }
    }

    pub fn unknown(reason: Reason) -> Self {
        Verdict { status: Status::Unknown, reasons: vec![reason], certificates: Vec::new() }
    }

    pub fn with_reason(mut self, reason: Reason) -> Self {
        self.reasons.push(reason);
        self
    }

    pub fn with_certificate(mut self, certificate: Certificate) -> Self {
        self.certificates.push(certificate);
        self
    }

    /// Citation tags of all reasons, in order.
    pub fn citations(&self) -> Vec<&str> {
        self.reasons.iter().map(|r| r.citation.as_str()).collect()
    }

    pub fn cites(&self, tag: &str) -> bool {
        self.reasons.iter().any(|r| r.citation == tag)
    }

    /// A negative verdict must carry at least one certificate.
    pub fn is_well_formed(&self) -> bool {
        self.status != Status::NotStarClean || !self.certificates.is_empty()
    }
}

/// Combines verdicts of the summands `R_i` of `R = R_1 + ... + R_n`:
/// *-clean exactly when every summand is.
pub fn direct_sum_reduce(components: Vec<Verdict>) -> Verdict {
    if components.is_empty() {
        return Verdict::new(Status::StarClean).with_reason(Reason::new(
            "direct sum of no components",
            "Proposition2.6",
            serde_json::json!({ "degenerate": true }),
        ));
    }
    let status = if components.iter().any(|v| v.status == Status::NotStarClean) {
        Status::NotStarClean
    } else if components.iter().all(|v| v.status == Status::StarClean) {
        Status::StarClean
    } else {
        Status::Unknown
    };
    let mut out = Verdict::new(status);
    for v in components {
        out.reasons.extend(v.reasons);
        out.certificates.extend(v.certificates);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn verdict(status: Status) -> Verdict {
        let v = Verdict::new(status).with_reason(Reason::new("c", "t", json!(null)));
        if status == Status::NotStarClean {
            v.with_certificate(Certificate::new("k", json!(1)))
        } else {
            v
        }
    }

    #[test]
    fn direct_sum_combinator() {
        assert_eq!(direct_sum_reduce(vec![verdict(Status::StarClean); 3]).status, Status::StarClean);
        let mixed = vec![verdict(Status::StarClean), verdict(Status::Unknown), verdict(Status::NotStarClean)];
        let v = direct_sum_reduce(mixed);
        assert_eq!(v.status, Status::NotStarClean);
        assert!(v.is_well_formed());
        assert_eq!(direct_sum_reduce(vec![verdict(Status::StarClean), verdict(Status::Unknown)]).status, Status::Unknown);
        let empty = direct_sum_reduce(Vec::new());
        assert_eq!(empty.status, Status::StarClean);
        assert_eq!(empty.reasons[0].data["degenerate"], json!(true));
    }

    #[test]
    fn json_round_trip() {
        let v = verdict(Status::NotStarClean);
        let text = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }
}
