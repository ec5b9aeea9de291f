//! Elimination certificates: ordered, replayable proof steps.

use super::cases::Group;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Mechanical,
    CitedLemma,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub name: String,
    /// Verbatim phrase locating the cited statement.
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub rule: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub domain_size: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub visited: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub citation: Option<Citation>,
    pub outcome: String,
    pub contradiction: bool,
}

impl Step {
    pub fn mechanical(rule: impl Into<String>, description: impl Into<String>, outcome: impl Into<String>) -> Self {
        Step {
            kind: StepKind::Mechanical,
            rule: rule.into(),
            description: description.into(),
            domain_size: None,
            visited: None,
            citation: None,
            outcome: outcome.into(),
            contradiction: false,
        }
    }

    pub fn cited(name: impl Into<String>, anchor: impl Into<String>, description: impl Into<String>) -> Self {
        let name = name.into();
        Step {
            kind: StepKind::CitedLemma,
            rule: name.clone(),
            description: description.into(),
            domain_size: None,
            visited: None,
            citation: Some(Citation { name, anchor: anchor.into() }),
            outcome: "assumed".into(),
            contradiction: false,
        }
    }

    pub fn with_search(mut self, domain_size: u128, visited: u128) -> Self {
        self.domain_size = Some(domain_size);
        self.visited = Some(visited);
        self
    }

    pub fn contradicts(mut self) -> Self {
        self.contradiction = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub case_id: u32,
    pub group: Group,
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn new(case_id: u32, group: Group) -> Self {
        Certificate { case_id, group, steps: Vec::new() }
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn has_contradiction(&self) -> bool {
        self.steps.iter().any(|s| s.contradiction)
    }

    pub fn is_fully_mechanical(&self) -> bool {
        self.steps.iter().all(|s| s.kind == StepKind::Mechanical)
    }

    /// Names of cited lemmas, in step order.
    pub fn cited_lemmas(&self) -> Vec<String> {
        self.steps
            .iter()
            .filter_map(|s| s.citation.as_ref().map(|c| c.name.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub eliminated: bool,
    pub certificate: Certificate,
}

impl Verdict {
    /// Eliminated iff some step records a contradiction.
    pub fn from_certificate(certificate: Certificate) -> Self {
        Verdict { eliminated: certificate.has_contradiction(), certificate }
    }
}
