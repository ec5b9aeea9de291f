//! Exact enumeration and elimination engine for ℚ-Fano index candidates of
//! canonical weak Fano 3-folds.
//!
//! The crate reproduces the candidate tables for index above a threshold, the
//! LB degree bounds, and the congruence eliminations, producing certificates
//! that can be replayed.

pub mod arith;
pub mod basket;
pub mod duval;
pub mod eliminate;
pub mod lb;
pub mod rr;
pub mod search;
pub mod wps;

pub use arith::{ArithError, Rational, Valuation};
pub use basket::{Basket, BasketError, OrbifoldPoint};
pub use duval::{DuValType, WeilClass};
pub use eliminate::certificate::{Certificate, Step, StepKind, Verdict};
pub use eliminate::system::{ResidueConstraintSystem, SolveOutcome};
pub use lb::LbContext;
pub use rr::{CrepantCurve, CurveConfig};
pub use search::{Candidate, Mode, SearchConfig};
pub use wps::WeightedP3;
