//! Crepant-curve configurations forced by the ∇ budget.

use crate::arith::{self, int, rat, Rational};
use crate::lb::{LbContext, LbError};
use crate::rr::{A1Aggregate, CrepantCurve, CurveConfig, UnitKnowledge};
use crate::search::Candidate;
use serde::{Deserialize, Serialize};

/// Name of the aggregate A₁ degree unknown.
pub const X_A1: &str = "x_A1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Determination {
    Determined {
        config: CurveConfig,
        /// Right-hand side of the hypothesis `∇ < bound`; absent for `J_A ≤ 2`.
        #[serde(with = "arith::serde_rational_opt")]
        bound: Option<Rational>,
    },
    Undetermined {
        #[serde(with = "arith::serde_rational")]
        bound: Rational,
    },
}

impl Determination {
    pub fn config(&self) -> Option<&CurveConfig> {
        match self {
            Determination::Determined { config, .. } => Some(config),
            Determination::Undetermined { .. } => None,
        }
    }
}

/// `(n − 1/n)·LB(n)`.
pub fn weighted_lb(ctx: &LbContext, n: u64) -> Result<Rational, LbError> {
    Ok(rat((n * n - 1) as i64, n as i64) * int(ctx.lb(n)? as i64))
}

/// One `A_{p^a−1}` curve of degree `LB(p^a)` per prime power of `J_A` when the budget forces it.
pub fn determine_curves(c: &Candidate) -> Result<Determination, LbError> {
    let j = c.j_a;
    if j == 1 {
        return Ok(Determination::Determined { config: CurveConfig::default(), bound: None });
    }
    if j == 2 {
        let config = CurveConfig { curves: vec![], x_a1: A1Aggregate::Symbolic(X_A1.into()) };
        return Ok(Determination::Determined { config, bound: None });
    }
    let ctx = LbContext::new(&c.basket.indices());
    let a0 = arith::nu(j, 2);
    let odd: Vec<(u64, u32)> = arith::factor(j).into_iter().filter(|&(p, _)| p != 2).collect();
    let p1 = odd.first().map(|&(p, _)| p);

    let mut powers: Vec<u64> = odd.iter().map(|&(p, a)| p.pow(a)).collect();
    let extra = if a0 <= 1 {
        p1.expect("J_A > 2 with a₀ ≤ 1 has an odd prime")
    } else {
        powers.insert(0, 1 << a0);
        p1.map_or(4, |p| p.min(4))
    };
    let mut bound = weighted_lb(&ctx, extra)?;
    for &n in &powers {
        bound += weighted_lb(&ctx, n)?;
    }
    if c.nabla >= bound {
        return Ok(Determination::Undetermined { bound });
    }
    let curves = powers
        .iter()
        .map(|&n| Ok(CrepantCurve::new(n, ctx.lb(n)?, UnitKnowledge::AnyUnit)))
        .collect::<Result<_, LbError>>()?;
    let x_a1 = if a0 == 0 { A1Aggregate::Absent } else { A1Aggregate::Symbolic(X_A1.into()) };
    Ok(Determination::Determined { config: CurveConfig { curves, x_a1 }, bound: Some(bound) })
}

/// `A2, A3, A6 (A1)`-style summary.
pub fn describe(cfg: &CurveConfig) -> String {
    let mut parts: Vec<String> = cfg
        .curves
        .iter()
        .map(|c| match &c.degree {
            crate::rr::Degree::Known(d) => format!("A{} of degree {d}", c.j - 1),
            crate::rr::Degree::Multiple { base, var } => format!("A{} of total degree {base}·{var}", c.j - 1),
        })
        .collect();
    match &cfg.x_a1 {
        A1Aggregate::Absent => {}
        A1Aggregate::Known(x) => parts.push(format!("A1 of total degree {x}")),
        A1Aggregate::Symbolic(v) => parts.push(format!("A1 of total degree {v}")),
    }
    if parts.is_empty() {
        "no crepant curves".into()
    } else {
        parts.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eliminate::cases::case;

    fn curves_of(id: u32) -> Vec<(u64, u64)> {
        let d = determine_curves(&case(id).unwrap().candidate()).unwrap();
        d.config()
            .unwrap()
            .curves
            .iter()
            .map(|c| match c.degree {
                crate::rr::Degree::Known(d) => (c.j, d),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn group_a_rows() {
        assert_eq!(curves_of(1), vec![(4, 5), (3, 5), (7, 5)]);
        assert_eq!(curves_of(5), vec![(9, 35)]);
        assert_eq!(curves_of(16), vec![(3, 14), (5, 42)]);
        assert_eq!(curves_of(28), vec![(3, 70)]);
    }

    #[test]
    fn group_c_rows() {
        assert_eq!(curves_of(3), vec![(5, 33)]);
        let d = determine_curves(&case(21).unwrap().candidate()).unwrap();
        assert_eq!(d.config().unwrap(), &CurveConfig::default());
        let d = determine_curves(&case(13).unwrap().candidate()).unwrap();
        assert!(d.config().unwrap().curves.is_empty());
        assert_eq!(d.config().unwrap().x_a1, A1Aggregate::Symbolic(X_A1.into()));
    }

    #[test]
    fn a1_absent_for_odd_j() {
        let d = determine_curves(&case(16).unwrap().candidate()).unwrap();
        assert_eq!(d.config().unwrap().x_a1, A1Aggregate::Absent);
    }

    #[test]
    fn scripted_cases_are_undetermined() {
        for id in [20, 24, 27, 32, 33, 36] {
            let d = determine_curves(&case(id).unwrap().candidate()).unwrap();
            assert!(matches!(d, Determination::Undetermined { .. }), "#{id}");
        }
    }
}
