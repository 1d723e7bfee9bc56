//! Run reports: one JSON document or a short text block per invocation.

use nil2::verdict::Witness;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub label: String,
    pub value: String,
}

impl Item {
    pub fn new(label: &str, value: impl Into<String>) -> Item {
        Item { label: label.into(), value: value.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub clause: String,
    pub items: Vec<Item>,
}

impl From<&Witness> for WitnessReport {
    fn from(w: &Witness) -> Self {
        WitnessReport { clause: w.clause.clone(), items: w.items.iter().map(|(l, v)| Item::new(l, v.as_str())).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub oracle: String,
    pub agrees: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub command: Vec<String>,
    pub variety: Option<String>,
    /// `None` for commands that compute an object rather than decide a property.
    pub verdict: Option<bool>,
    pub witness: Option<WitnessReport>,
    pub details: Vec<Item>,
    pub cross_check: Option<CrossCheck>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            tool: format!("nil2 {}", env!("CARGO_PKG_VERSION")),
            command,
            variety: None,
            verdict: None,
            witness: None,
            details: Vec::new(),
            cross_check: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn detail(&mut self, label: &str, value: impl Into<String>) {
        self.details.push(Item::new(label, value));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command.join(" "));
        if let Some(v) = &self.variety {
            let _ = writeln!(s, "variety: {v}");
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(s, "verdict: {v}");
        }
        if let Some(w) = &self.witness {
            let items: Vec<String> = w.items.iter().map(|i| format!("{}={}", i.label, i.value)).collect();
            let _ = writeln!(s, "witness: clause ({}) {}", w.clause, items.join(" "));
        }
        for d in &self.details {
            let _ = writeln!(s, "{}: {}", d.label, d.value);
        }
        if let Some(c) = &self.cross_check {
            let status = if c.agrees { "agrees" } else { "DISAGREES" };
            let _ = writeln!(s, "cross-check ({}): {status}; {}", c.oracle, c.detail);
        }
        let _ = writeln!(s, "elapsed: {:.3} ms ({})", self.elapsed_ms, self.tool);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new(vec!["check-weak".into(), "guidingex".into()]);
        r.variety = Some("(4,2)".into());
        r.verdict = Some(false);
        r.witness = Some((&Witness::new("1").with("element", "x^2")).into());
        r.detail("note", "text with \"quotes\"");
        r.cross_check = Some(CrossCheck { oracle: "oracle_weak".into(), agrees: true, detail: "false".into() });
        r.elapsed_ms = 0.1 + 0.2;
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn text_mentions_witness() {
        let mut r = Report::new(vec!["x".into()]);
        r.witness = Some((&Witness::new("b").with("q", "2")).into());
        assert!(r.to_text().contains("witness: clause (b) q=2"));
    }
}
