//! Decision results with reproducible counterexamples.

use std::fmt;

/// A failing clause and the elements that make it fail, each rendered as a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub clause: String,
    pub items: Vec<(String, String)>,
}

impl Witness {
    pub fn new(clause: &str) -> Witness {
        Witness { clause: clause.to_string(), items: Vec::new() }
    }

    pub fn with(mut self, label: &str, value: impl Into<String>) -> Witness {
        self.items.push((label.to_string(), value.into()));
        self
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.items.iter().find(|(l, _)| l == label).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.clause)?;
        for (l, v) in &self.items {
            write!(f, " {l}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes() -> Verdict {
        Verdict { value: true, witness: None }
    }

    pub fn no(w: Witness) -> Verdict {
        Verdict { value: false, witness: Some(w) }
    }

    pub fn clause(&self) -> Option<&str> {
        self.witness.as_ref().map(|w| w.clause.as_str())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}", self.value),
            Some(w) => write!(f, "{} {w}", self.value),
        }
    }
}
