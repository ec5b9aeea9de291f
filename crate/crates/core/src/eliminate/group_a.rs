//! Group A: the canonical-part constraint for `D = 2A` has no integral assignment.

use super::cases::{identify, Group};
use super::certificate::{Certificate, Step, Verdict};
use super::curves::{describe, determine_curves, Determination};
use super::system::Unknown;
use super::{solve_step, EliminateError};
use crate::arith::exact_string;
use crate::rr::{self, CurveConfig, RrContext, UnitKnowledge};
use crate::search::Candidate;

/// Replaces every curve unit by a free residue, as in the canonical-part constraint.
fn free_units(cfg: &CurveConfig) -> CurveConfig {
    let mut cfg = cfg.clone();
    for c in &mut cfg.curves {
        c.unit = UnitKnowledge::FreeResidue;
    }
    cfg
}

pub fn eliminate_group_a(c: &Candidate) -> Result<Verdict, EliminateError> {
    let mut cert = Certificate::new(identify(c).unwrap_or(0), Group::A);
    let config = match determine_curves(c)? {
        Determination::Determined { config, bound } => {
            let hyp = bound.map_or("J_A ≤ 2".to_string(), |b| format!("∇ = {} < {}", exact_string(&c.nabla), exact_string(&b)));
            cert.push(Step::mechanical("curve-determination", format!("{hyp}; curves forced"), describe(&config)));
            config
        }
        Determination::Undetermined { bound } => {
            cert.push(Step::mechanical(
                "curve-determination",
                format!("∇ = {} is not below {}", exact_string(&c.nabla), exact_string(&bound)),
                "curve configuration not forced",
            ));
            return Ok(Verdict::from_certificate(cert));
        }
    };
    let ctx = RrContext { q: c.q, rxc13: c.rxc13, basket: c.basket.clone(), curves: free_units(&config) };
    let r_prime = 2 * ctx.rx();
    let (mut sys, drops) = rr::residue_term_builder(r_prime, 2, &ctx)?;
    // dropped curves still range over their residues, so the exhaustion covers Π j
    for (n, cv) in ctx.curves.curves.iter().enumerate() {
        sys.add_unknown(Unknown::residue(format!("c[2A]@C{n}"), cv.j))?;
    }
    cert.push(solve_step("canonical-part", &format!("r' = 2r_X = {r_prime}, D = 2A"), &sys, &drops)?);
    Ok(Verdict::from_certificate(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::Basket;
    use crate::eliminate::cases::{case, ids};

    #[test]
    fn case_1_exhausts_84() {
        let v = eliminate_group_a(&case(1).unwrap().candidate()).unwrap();
        assert!(v.eliminated);
        assert!(v.certificate.is_fully_mechanical());
        assert_eq!(v.certificate.steps[1].domain_size, Some(84));
    }

    #[test]
    fn all_of_group_a() {
        for id in ids(Group::A) {
            let v = eliminate_group_a(&case(id).unwrap().candidate()).unwrap();
            assert!(v.eliminated, "#{id}");
        }
    }

    #[test]
    fn solvable_system_survives_with_witness() {
        // Same data as #1 with the degree scaled so the constant part is integral.
        let c = Candidate::from_data(Basket::from_pairs(&[(5, 1)]).unwrap(), 84, 84, 84 * 21).unwrap();
        let v = eliminate_group_a(&c).unwrap();
        assert!(!v.eliminated);
        assert!(v.certificate.steps.last().unwrap().outcome.starts_with("witness"));
    }
}
