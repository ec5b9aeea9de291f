//! Elimination of the candidates, each verdict backed by a replayable certificate.

pub mod cases;
pub mod certificate;
pub mod curves;
pub mod group_a;
pub mod group_b;
pub mod group_c;
pub mod system;

use crate::arith::exact_string;
use crate::lb::LbError;
use crate::rr::{Dropped, RrError};
use crate::search::{self, Candidate, SearchConfig, SearchError};
use cases::Group;
use certificate::{Certificate, Step, StepKind, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use system::{ResidueConstraintSystem, SystemError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminateError {
    #[error("unknown case #{0}")]
    UnknownCase(u32),
    #[error("case #{id} belongs to group {group}")]
    WrongGroup { id: u32, group: Group },
    #[error("candidate does not match any case")]
    Unidentified,
    #[error("s = {0} outside 0 < s < 66")]
    SOutOfRange(i64),
    #[error("n = {0} exceeds 59")]
    TooLarge(u64),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Rr(#[from] RrError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Lb(#[from] LbError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

fn describe_drops(drops: &[Dropped]) -> String {
    if drops.is_empty() {
        return String::new();
    }
    let d: Vec<String> = drops.iter().map(|d| format!("{} ({})", d.label, d.reason)).collect();
    format!("; dropped: {}", d.join(", "))
}

fn describe_system(sys: &ResidueConstraintSystem) -> String {
    sys.constraints
        .iter()
        .map(|c| format!("{}: base {}, {} unknown terms", c.label, exact_string(&c.base()), c.terms.len()))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Exhaustive solve; a contradiction when nothing is integral.
pub(crate) fn solve_step(
    rule: &str,
    setup: &str,
    sys: &ResidueConstraintSystem,
    drops: &[Dropped],
) -> Result<Step, EliminateError> {
    let out = sys.solve()?;
    let description = format!("{setup}; {}{}", describe_system(sys), describe_drops(drops));
    let step = if out.solvable {
        let w = out.witness.unwrap_or_default();
        let w: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
        Step::mechanical(rule, description, format!("witness {{{}}}", w.join(", ")))
    } else {
        Step::mechanical(rule, description, "no integral assignment").contradicts()
    };
    Ok(step.with_search(out.domain_size, out.visited))
}

/// Projection of the solution set onto `vars`.
pub(crate) fn project_step(
    rule: &str,
    setup: &str,
    sys: &ResidueConstraintSystem,
    drops: &[Dropped],
    vars: &[&str],
) -> Result<(Step, BTreeSet<Vec<i64>>), EliminateError> {
    let set = sys.project(vars)?;
    let rows: Vec<String> = set
        .iter()
        .map(|r| format!("({})", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    let description = format!("{setup}; {}{}", describe_system(sys), describe_drops(drops));
    let outcome = if set.is_empty() {
        "no integral assignment".to_string()
    } else {
        format!("({}) ∈ {{{}}}", vars.join(", "), rows.join(", "))
    };
    let mut step = Step::mechanical(rule, description, outcome);
    step.domain_size = Some(sys.domain_size());
    if set.is_empty() {
        step = step.contradicts();
    }
    Ok((step, set))
}

/// Routes a candidate to its group eliminator.
pub fn eliminate_candidate(c: &Candidate) -> Result<Verdict, EliminateError> {
    let id = cases::identify(c).ok_or(EliminateError::Unidentified)?;
    let group = cases::case(id).expect("identified").group;
    match group {
        Group::A => group_a::eliminate_group_a(c),
        Group::B => group_b::run_group_b_script_on(id, c),
        Group::CMinus => group_c::eliminate_group_c_minus_on(id, c),
        Group::CPlus => group_c::eliminate_group_c_plus_on(id, c),
    }
}

pub fn eliminate_case(id: u32) -> Result<Verdict, EliminateError> {
    let data = cases::case(id).ok_or(EliminateError::UnknownCase(id))?;
    eliminate_candidate(&data.candidate())
}

/// Re-runs the elimination a certificate records and checks it reproduces exactly.
pub fn replay(cert: &Certificate) -> Result<bool, EliminateError> {
    let fresh = eliminate_case(cert.case_id)?;
    Ok(&fresh.certificate == cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case_id: Option<u32>,
    pub group: Option<Group>,
    pub eliminated: bool,
    pub fully_mechanical: bool,
    pub cited_lemmas: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub total: usize,
    pub eliminated: usize,
    pub fully_mechanical: usize,
    pub modulo_cited_lemmas: usize,
    pub survivors: Vec<CaseReport>,
    pub cases: Vec<CaseReport>,
    pub certificates: Vec<Certificate>,
}

impl PipelineReport {
    pub fn all_eliminated(&self) -> bool {
        self.survivors.is_empty() && self.eliminated == self.total
    }
}

/// Eliminates each candidate independently; failures are reported, never raised.
pub fn run_pipeline_on(candidates: &[Candidate]) -> PipelineReport {
    let results: Vec<(CaseReport, Option<Certificate>)> = candidates
        .par_iter()
        .map(|c| {
            let id = cases::identify(c);
            let group = id.and_then(cases::case).map(|d| d.group);
            match eliminate_candidate(c) {
                Ok(v) => (
                    CaseReport {
                        case_id: id,
                        group,
                        eliminated: v.eliminated,
                        fully_mechanical: v.certificate.is_fully_mechanical(),
                        cited_lemmas: v.certificate.cited_lemmas(),
                        error: None,
                    },
                    Some(v.certificate),
                ),
                Err(e) => (
                    CaseReport {
                        case_id: id,
                        group,
                        eliminated: false,
                        fully_mechanical: false,
                        cited_lemmas: vec![],
                        error: Some(e.to_string()),
                    },
                    None,
                ),
            }
        })
        .collect();
    let mut results = results;
    results.sort_by_key(|(r, _)| r.case_id.unwrap_or(u32::MAX));
    let cases: Vec<CaseReport> = results.iter().map(|(r, _)| r.clone()).collect();
    let certificates = results.into_iter().filter_map(|(_, c)| c).collect();
    let survivors: Vec<CaseReport> = cases.iter().filter(|r| !r.eliminated).cloned().collect();
    let eliminated = cases.iter().filter(|r| r.eliminated).count();
    let fully_mechanical = cases.iter().filter(|r| r.eliminated && r.fully_mechanical).count();
    PipelineReport {
        total: cases.len(),
        eliminated,
        fully_mechanical,
        modulo_cited_lemmas: eliminated - fully_mechanical,
        survivors,
        cases,
        certificates,
    }
}

/// Search for `q > 66`, then eliminate every candidate found.
pub fn run_full_pipeline(workers: usize) -> Result<PipelineReport, EliminateError> {
    let candidates = search::run_search(&SearchConfig { workers, ..SearchConfig::default() })?;
    Ok(run_pipeline_on(&candidates))
}

/// Counts of step kinds in a certificate.
pub fn step_counts(cert: &Certificate) -> (usize, usize) {
    let m = cert.steps.iter().filter(|s| s.kind == StepKind::Mechanical).count();
    (m, cert.steps.len() - m)
}
