//! Inputs shared by the engine benchmarks.

use qfano_core::basket::enumerate_r;
use qfano_core::eliminate::cases::CASES;
use qfano_core::{Candidate, LbContext};

/// The 36 table candidates, built from their defining data.
pub fn table_candidates() -> Vec<Candidate> {
    CASES.iter().map(|c| c.candidate()).collect()
}

/// Every admissible index multiset with its LB context.
pub fn lb_contexts() -> Vec<LbContext> {
    enumerate_r().iter().map(|r| LbContext::new(r)).collect()
}

/// Sum of `LB(N)` over all contexts and `2 ≤ N ≤ 24`.
pub fn lb_sweep(ctxs: &[LbContext]) -> u64 {
    ctxs.iter().flat_map(|c| (2..=24).map(move |n| c.lb(n).unwrap())).sum()
}
