//! Group B: one scripted argument per case.

use super::cases::{self, Group};
use super::certificate::{Certificate, Step, Verdict};
use super::curves::{describe, determine_curves, weighted_lb, Determination, X_A1};
use super::system::{Constraint, ResidueConstraintSystem, Term, Unknown, VarKind};
use super::{project_step, solve_step, EliminateError};
use crate::arith::{self, exact_string, int, rat, Rational};
use crate::lb::LbContext;
use crate::rr::{self, A1Aggregate, CrepantCurve, CurveConfig, CurveSource, Degree, RrContext, UnitKnowledge};
use crate::search::Candidate;
use num_traits::ToPrimitive;
use std::collections::BTreeSet;

pub const GROUP_B: [u32; 9] = [10, 20, 23, 24, 27, 32, 33, 35, 36];

pub fn run_group_b_script(case_id: u32) -> Result<Verdict, EliminateError> {
    let data = cases::case(case_id).ok_or(EliminateError::UnknownCase(case_id))?;
    run_group_b_script_on(case_id, &data.candidate())
}

/// Runs the script for `case_id` against the numbers in `c`.
pub fn run_group_b_script_on(case_id: u32, c: &Candidate) -> Result<Verdict, EliminateError> {
    let data = cases::case(case_id).ok_or(EliminateError::UnknownCase(case_id))?;
    if data.group != Group::B {
        return Err(EliminateError::WrongGroup { id: case_id, group: data.group });
    }
    let mut cert = Certificate::new(case_id, Group::B);
    match case_id {
        10 => case_10(c, &mut cert)?,
        20 => case_20(c, &mut cert)?,
        23 => case_23(c, &mut cert)?,
        24 => case_24(c, &mut cert)?,
        27 => case_27(c, &mut cert)?,
        32 | 33 => case_32_33(c, &mut cert)?,
        35 => case_35(c, &mut cert)?,
        36 => case_36(c, &mut cert)?,
        _ => unreachable!("group B table"),
    }
    Ok(Verdict::from_certificate(cert))
}

fn ctx(c: &Candidate, curves: CurveConfig) -> RrContext {
    RrContext { q: c.q, rxc13: c.rxc13, basket: c.basket.clone(), curves }
}

fn lb_ctx(c: &Candidate) -> LbContext {
    LbContext::new(&c.basket.indices())
}

// Pushes the curve-determination step; None when the budget does not force the configuration.
fn determined(c: &Candidate, cert: &mut Certificate) -> Result<Option<CurveConfig>, EliminateError> {
    match determine_curves(c)? {
        Determination::Determined { config, bound } => {
            let hyp = bound.map_or("J_A ≤ 2".to_string(), |b| format!("∇ = {} < {}", exact_string(&c.nabla), exact_string(&b)));
            cert.push(Step::mechanical("curve-determination", format!("{hyp}; curves forced"), describe(&config)));
            Ok(Some(config))
        }
        Determination::Undetermined { bound } => {
            cert.push(Step::mechanical(
                "curve-determination",
                format!("∇ = {} is not below {}", exact_string(&c.nabla), exact_string(&bound)),
                "curve configuration not forced",
            ));
            Ok(None)
        }
    }
}

/// Divisors `j ≥ 2` of `J_A` whose single curve already exceeds ∇; returns the surviving types.
fn exclude_types(c: &Candidate, cert: &mut Certificate) -> Result<Vec<u64>, EliminateError> {
    let ctx = lb_ctx(c);
    let mut kept = Vec::new();
    let mut gone = Vec::new();
    for j in arith::divisors(c.j_a).into_iter().filter(|&j| j >= 2) {
        let w = weighted_lb(&ctx, j)?;
        if w > c.nabla {
            gone.push(format!("j = {j}: (j − 1/j)·LB(j) = {} > ∇", exact_string(&w)));
        } else {
            kept.push(j);
        }
    }
    cert.push(Step::mechanical(
        "type-exclusion",
        format!("every j_C divides J_A = {}; {}", c.j_a, if gone.is_empty() { "nothing excluded".into() } else { gone.join("; ") }),
        format!("possible types j ∈ {kept:?}"),
    ));
    Ok(kept)
}

// Smallest x ≥ lower with x mod m in `residues`.
fn least_at_least(residues: &BTreeSet<i64>, m: u64, lower: u64) -> Option<u64> {
    (lower..lower + m).find(|x| residues.contains(&((x % m) as i64)))
}

fn budget_step(c: &Candidate, cert: &mut Certificate, terms: &[(String, Rational)]) -> bool {
    let total: Rational = terms.iter().map(|(_, v)| v.clone()).sum();
    let desc: Vec<String> = terms.iter().map(|(l, v)| format!("{l} = {}", exact_string(v))).collect();
    let over = total > c.nabla;
    let step = Step::mechanical(
        "curve-budget",
        format!("{} ; total {} vs ∇ = {}", desc.join(" + "), exact_string(&total), exact_string(&c.nabla)),
        if over { "exceeds ∇" } else { "within ∇" },
    );
    cert.push(if over { step.contradicts() } else { step });
    over
}

fn a1_weight(x: u64) -> (String, Rational) {
    (format!("(3/2)·x_A1 with x_A1 = {x}"), rat(3 * x as i64, 2))
}

fn curve_weight(j: u64, deg: u64) -> (String, Rational) {
    (format!("({j} − 1/{j})·{deg}"), rat((j * j - 1) as i64, j as i64) * int(deg as i64))
}

fn case_10(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let Some(cfg) = determined(c, cert)? else { return Ok(()) };
    let even_curve = cfg.curves.iter().any(|cv| cv.j % 2 == 0);
    if c.j_a % 2 == 0 && !even_curve {
        cert.push(Step::mechanical("a1-existence", "2 | J_A and no forced curve has even type", "x_A1 ≥ 1"));
    }
    let lower = if c.j_a % 2 == 0 && !even_curve { 1 } else { 0 };
    let ctx = ctx(c, cfg.clone());
    let mut sys = ResidueConstraintSystem::new();
    let mut drops = Vec::new();
    for s in [1, 3] {
        drops.extend(rr::add_integrality_constraint(&mut sys, &ctx, 40, s, CurveSource::Listed)?);
    }
    let (step, set) = project_step("integrality", "r' = 40, D = sA for s = 1, 3", &sys, &drops, &[X_A1])?;
    cert.push(step);
    if set.is_empty() {
        return Ok(());
    }
    let m = sys.modulus_of(X_A1)?;
    let residues: BTreeSet<i64> = set.iter().map(|r| r[0]).collect();
    let Some(x) = least_at_least(&residues, m, lower) else { return Ok(()) };
    cert.push(Step::mechanical(
        "residue-bound",
        format!("x_A1 mod {m} ∈ {residues:?} and x_A1 ≥ {lower}"),
        format!("x_A1 ≥ {x}"),
    ));
    let mut terms = vec![a1_weight(x)];
    for cv in &cfg.curves {
        if let Degree::Known(d) = cv.degree {
            terms.push(curve_weight(cv.j, d));
        }
    }
    budget_step(c, cert, &terms);
    Ok(())
}

fn case_20(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let s = c.j_a as i64;
    cert.push(Step::mechanical(
        "cartier-in-codimension-2",
        format!("D = J_A·A = {s}A is Cartier in codimension 2"),
        "crepant curves contribute nothing",
    ));
    let ctx = ctx(c, CurveConfig::default());
    let mut sys = ResidueConstraintSystem::new();
    let drops = rr::add_integrality_constraint(&mut sys, &ctx, 1, s, CurveSource::CartierInCodim2)?;
    cert.push(solve_step("integrality", &format!("r' = 1, D = {s}A"), &sys, &drops)?);
    Ok(())
}

fn case_23(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let Some(cfg) = determined(c, cert)? else { return Ok(()) };
    let ctx = ctx(c, cfg);
    let r_prime = ctx.rx() * c.j_a;
    let (sys, drops) = rr::residue_term_builder(r_prime, 1, &ctx)?;
    cert.push(solve_step("integrality", &format!("r' = r_X·J_A = {r_prime}, D = A"), &sys, &drops)?);
    Ok(())
}

fn case_36(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let kept = exclude_types(c, cert)?;
    let mut powers = c.prime_powers.clone();
    powers.sort();
    if kept != powers {
        return Ok(());
    }
    // every prime power now occurs as an exact curve type
    let lb = lb_ctx(c);
    let big = 7;
    let mut terms = vec![];
    for &n in &powers {
        let w = weighted_lb(&lb, n)?;
        let k = if n == big { 2 } else { 1 };
        terms.push((format!("{k}·({n} − 1/{n})·LB({n})"), w * int(k)));
    }
    let total: Rational = terms.iter().map(|(_, v)| v.clone()).sum();
    let forced = total > c.nabla;
    cert.push(Step::mechanical(
        "curve-budget",
        format!(
            "each of j ∈ {powers:?} occurs; A6 total degree ≥ 2·LB(7) gives {} = {} > ∇ = {}",
            terms.iter().map(|t| t.0.clone()).collect::<Vec<_>>().join(" + "),
            exact_string(&total),
            exact_string(&c.nabla)
        ),
        if forced { "a single A6 curve of degree LB(7)" } else { "A6 degree not forced" },
    ));
    if !forced {
        return Ok(());
    }
    let lb7 = lb.lb(7)?;
    let lb5 = lb.lb(5)?;
    let cfg = CurveConfig {
        curves: vec![
            CrepantCurve::new(7, lb7, UnitKnowledge::AnyUnit),
            CrepantCurve { j: 5, degree: Degree::Multiple { base: lb5, var: "y5".into() }, unit: UnitKnowledge::AnyUnit },
        ],
        x_a1: A1Aggregate::Symbolic(X_A1.into()),
    };
    let ctx = ctx(c, cfg);
    let r_prime = 20 * ctx.rx();
    let (sys, drops) = rr::residue_term_builder(r_prime, 1, &ctx)?;
    cert.push(solve_step("integrality", &format!("r' = {r_prime}, D = A"), &sys, &drops)?);
    Ok(())
}

fn case_32_33(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let kept = exclude_types(c, cert)?;
    if kept != vec![2, 3] {
        return Ok(());
    }
    let lb3 = lb_ctx(c).lb(3)?;
    let cfg = CurveConfig {
        curves: vec![CrepantCurve { j: 3, degree: Degree::Multiple { base: lb3, var: "y".into() }, unit: UnitKnowledge::AnyUnit }],
        x_a1: A1Aggregate::Symbolic(X_A1.into()),
    };
    let ctx = ctx(c, cfg);
    let (sys, drops) = rr::residue_term_builder(2 * ctx.rx(), 2, &ctx)?;
    let (step, ys) = project_step("canonical-part", &format!("r' = 2r_X = {}, D = 2A, A2 total degree {lb3}·y", 2 * ctx.rx()), &sys, &drops, &["y"])?;
    cert.push(step);
    let m = sys.modulus_of("y")?;
    let ys: BTreeSet<i64> = ys.iter().map(|r| r[0]).collect();
    let Some(y) = least_at_least(&ys, m, 1) else { return Ok(()) };
    cert.push(Step::mechanical("residue-bound", format!("y mod {m} ∈ {ys:?} and y ≥ 1"), format!("y ≥ {y}")));

    let mut sys = ResidueConstraintSystem::new();
    let mut drops = Vec::new();
    for s in [1, 3, 5] {
        drops.extend(rr::add_integrality_constraint(&mut sys, &ctx, 18, s, CurveSource::Listed)?);
    }
    let (step, xs) = project_step("integrality", "r' = 18, D = sA for s = 1, 3, 5", &sys, &drops, &[X_A1])?;
    cert.push(step);
    if xs.is_empty() {
        return Ok(());
    }
    let m = sys.modulus_of(X_A1)?;
    let xs: BTreeSet<i64> = xs.iter().map(|r| r[0]).collect();
    cert.push(Step::mechanical("a1-existence", "2 | J_A and the only other type is A2", "x_A1 ≥ 1"));
    let Some(x) = least_at_least(&xs, m, 1) else { return Ok(()) };
    cert.push(Step::mechanical("residue-bound", format!("x_A1 mod {m} ∈ {xs:?} and x_A1 ≥ 1"), format!("x_A1 ≥ {x}")));
    budget_step(c, cert, &[a1_weight(x), curve_weight(3, lb3 * y)]);
    Ok(())
}

fn h0_values(c: &Candidate, cfg: &CurveConfig, s: i64) -> Result<(BTreeSet<Rational>, u128, u128), EliminateError> {
    let ctx = ctx(c, cfg.clone());
    let mut sys = ResidueConstraintSystem::new();
    rr::add_integrality_constraint(&mut sys, &ctx, 1, s, CurveSource::Listed)?;
    sys.constraints[0] = sys.constraints[0].clone().fixed("χ(O_X)-part", int(2));
    let (vals, visited) = sys.integral_values(0)?;
    Ok((vals, sys.domain_size(), visited))
}

fn case_24(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let kept = exclude_types(c, cert)?;
    if kept != vec![2, 3, 4] {
        return Ok(());
    }
    let lb = lb_ctx(c);
    let (lb3, lb4) = (lb.lb(3)?, lb.lb(4)?);
    let w3 = rat(8, 3) * int(lb3 as i64);
    let w4 = rat(15, 4) * int(lb4 as i64);
    let x_max = arith::floor(&((&c.nabla - &w3 - &w4) / rat(3, 2))).to_i64().unwrap_or(-1);
    let y4_max = arith::floor(&((&c.nabla - &w3) / &w4)).to_i64().unwrap_or(0);
    cert.push(Step::mechanical(
        "curve-budget",
        format!(
            "A2 and A3 occur (3, 4 | J_A) with totals {lb3}·y3, {lb4}·y4, y3, y4 ≥ 1; ∇ = {} ≥ (3/2)x_A1 + {}·y3 + {}·y4",
            exact_string(&c.nabla),
            exact_string(&w3),
            exact_string(&w4)
        ),
        format!("0 ≤ x_A1 ≤ {x_max}, 1 ≤ y4 ≤ {y4_max}"),
    ));
    if x_max < 0 || y4_max < 1 {
        return Ok(());
    }
    let cfg = CurveConfig {
        curves: vec![
            CrepantCurve { j: 3, degree: Degree::Multiple { base: lb3, var: "y3".into() }, unit: UnitKnowledge::AnyUnit },
            CrepantCurve { j: 4, degree: Degree::Multiple { base: lb4, var: "y4".into() }, unit: UnitKnowledge::AnyUnit },
        ],
        x_a1: A1Aggregate::Symbolic(X_A1.into()),
    };
    let rctx = ctx(c, cfg);
    let mut sys = ResidueConstraintSystem::new();
    let mut drops = Vec::new();
    for s in [1, 3] {
        drops.extend(rr::add_integrality_constraint(&mut sys, &rctx, 9, s, CurveSource::Listed)?);
    }
    sys.restrict(X_A1, VarKind::Integer { values: Some((0..=x_max).collect()) })?;
    sys.restrict("y4", VarKind::Integer { values: Some((1..=y4_max).collect()) })?;
    let (step, set) = project_step("integrality", "r' = 9, D = sA for s = 1, 3", &sys, &drops, &[X_A1, "y4"])?;
    cert.push(step);
    if set.len() != 1 {
        return Ok(());
    }
    let row = set.iter().next().unwrap();
    let (x, y4) = (row[0] as u64, row[1] as u64);
    let rest = &c.nabla - rat(3 * x as i64, 2) - &w4 * int(y4 as i64);
    let y3_max = arith::floor(&(rest / &w3)).to_i64().unwrap_or(0);
    cert.push(Step::mechanical(
        "curve-budget",
        format!("x_A1 = {x}, y4 = {y4}, y3 ≥ 1"),
        format!("y3 ≤ {y3_max}"),
    ));
    if y3_max != 1 {
        return Ok(());
    }
    let cfg = CurveConfig {
        curves: vec![
            CrepantCurve::new(3, lb3, UnitKnowledge::Known(1)),
            CrepantCurve::new(4, lb4 * y4, UnitKnowledge::Known(1)),
        ],
        x_a1: A1Aggregate::Known(x),
    };
    let mut h0 = std::collections::BTreeMap::new();
    for s in [2, 3, 6, 30, 31] {
        let (vals, domain, visited) = h0_values(c, &cfg, s)?;
        let shown: Vec<String> = vals.iter().map(exact_string).collect();
        let mut step = Step::mechanical(
            "h0-enumeration",
            format!("h⁰({s}A) over all local indices; curve contributions do not depend on the unit for j = 3, 4"),
            format!("h⁰({s}A) ∈ {{{}}}", shown.join(", ")),
        )
        .with_search(domain, visited);
        if vals.len() != 1 {
            if vals.is_empty() {
                step = step.contradicts();
            }
            cert.push(step);
            return Ok(());
        }
        cert.push(step);
        h0.insert(s, vals.into_iter().next().unwrap());
    }
    let one = int(1);
    if h0[&2] == one && h0[&3] == one && h0[&6] == one {
        cert.push(Step::mechanical(
            "unique-members",
            "|2A| = {A₂}, |3A| = {A₃}, |6A| = {3A₂} = {2A₃}",
            "A₃ − A₂ ∈ |A|, so h⁰(A) > 0",
        ));
        let step = Step::mechanical(
            "monotonicity",
            format!("h⁰(A) > 0 forces h⁰(31A) ≥ h⁰(30A); here h⁰(30A) = {}, h⁰(31A) = {}", exact_string(&h0[&30]), exact_string(&h0[&31])),
            if h0[&31] < h0[&30] { "violated" } else { "satisfied" },
        );
        cert.push(if h0[&31] < h0[&30] { step.contradicts() } else { step });
    }
    Ok(())
}

pub(crate) const NO_NON_GORENSTEIN_CREPANT_POINT: (&str, &str) =
    ("no-non-gorenstein-crepant-point", "$X$ has no non-Gorenstein crepant point");
pub(crate) const EXCEPTIONAL_KC_INTEGRALITY: (&str, &str) =
    ("exceptional-divisor-kc-integrality", "let $E, E'$ be prime $f$-exceptional divisors centered at $C$");
pub(crate) const PULLBACK_DIFFERENCE_EXCEPTIONAL: (&str, &str) =
    ("weil-pullback-difference-exceptional", "which is an $f$-exceptional Weil divisor by construction");
pub(crate) const PULLBACK_ADDITIVITY: (&str, &str) = (
    "weil-pullback-additivity",
    "over $U$ the equality $f^{\\lfloor*\\rfloor}(5A)=f^{\\lfloor*\\rfloor}(A)+f^{\\lfloor*\\rfloor}(4A)$ holds",
);
pub(crate) const INDEX_TWO_PARITY: (&str, &str) =
    ("index-two-crepant-point-parity", "whose Gorenstein index is $2$");

fn point_index(c: &Candidate, r: u64) -> Option<usize> {
    c.basket.points().iter().position(|p| p.r == r)
}

fn case_27(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let kept = exclude_types(c, cert)?;
    if kept != vec![3] {
        return Ok(());
    }
    let lb3 = lb_ctx(c).lb(3)?;
    let w = rat(8, 3) * int(lb3 as i64);
    let y_max = arith::floor(&(&c.nabla / &w)).to_i64().unwrap_or(0);
    cert.push(Step::mechanical(
        "curve-budget",
        format!("A2 total degree {lb3}·y with y ≥ 1 and ∇ = {} ≥ {}·y", exact_string(&c.nabla), exact_string(&w)),
        format!("y ≤ {y_max}"),
    ));
    if y_max < 1 {
        return Ok(());
    }
    let cfg = CurveConfig {
        curves: vec![CrepantCurve { j: 3, degree: Degree::Multiple { base: lb3, var: "y".into() }, unit: UnitKnowledge::AnyUnit }],
        x_a1: A1Aggregate::Absent,
    };
    let rctx = ctx(c, cfg);
    let (mut sys, drops) = rr::residue_term_builder(2 * rctx.rx(), 1, &rctx)?;
    sys.restrict("y", VarKind::Integer { values: Some((1..=y_max).collect()) })?;
    let (step, ys) = project_step("canonical-part", &format!("r' = 2r_X = {}, D = A", 2 * rctx.rx()), &sys, &drops, &["y"])?;
    cert.push(step);
    if ys.len() != 1 {
        return Ok(());
    }
    let total = lb3 * ys.iter().next().unwrap()[0] as u64;
    // splittings of the total A2 degree into curve degrees, each a multiple of LB(3)
    let splits: Vec<Vec<u64>> = partitions(total / lb3).into_iter().map(|p| p.into_iter().map(|k| k * lb3).collect()).collect();
    cert.push(Step::mechanical(
        "case-split",
        format!("A2 curve degrees are multiples of LB(3) = {lb3} summing to {total}"),
        format!("curve degrees ∈ {splits:?}"),
    ));

    let (q3, q6) = match (point_index(c, 3), point_index(c, 6)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(()),
    };
    cert.push(Step::cited(NO_NON_GORENSTEIN_CREPANT_POINT.0, NO_NON_GORENSTEIN_CREPANT_POINT.1, "every prime exceptional divisor over a point has local index 0 at each basket point"));
    cert.push(Step::cited(EXCEPTIONAL_KC_INTEGRALITY.0, EXCEPTIONAL_KC_INTEGRALITY.1, "(K·C) − Σ F_r(b·i_E) ∈ ℤ for E centered at a crepant curve C"));

    // per split: which of Q3 / Q6 is forced to index 0 on every exceptional divisor
    let rx = c.r_x;
    let mut forced: Vec<(u64, bool, bool)> = Vec::new();
    for split in &splits {
        let deg = split[0];
        let mut sys = ResidueConstraintSystem::new();
        let mut con = Constraint::new(format!("K·C = −{deg}/{rx}"), -rat(deg as i64, rx as i64));
        for (k, p) in c.basket.points().iter().enumerate() {
            let name = format!("i_E@Q{k}({},{})", p.r, p.b);
            sys.add_unknown(Unknown::residue(&name, p.r))?;
            con = con.term(Term::quadratic_at(-int(1), name, p.r, p.b as i64, 0));
        }
        sys.add_constraint(con);
        let names = [c.basket.points()[q3], c.basket.points()[q6]]
            .iter()
            .zip([q3, q6])
            .map(|(p, k)| format!("i_E@Q{k}({},{})", p.r, p.b))
            .collect::<Vec<_>>();
        let (step, set) = project_step(
            "exceptional-index",
            &format!("curve degrees {split:?}: E centered at a curve of degree {deg}"),
            &sys,
            &[],
            &[&names[0], &names[1]],
        )?;
        let zero3 = set.iter().all(|r| r[0] == 0);
        let zero6 = set.iter().all(|r| r[1] == 0);
        let mut step = step;
        step.contradiction = false;
        step.outcome = format!("{}; i_E,Q3 ≡ 0: {zero3}, i_E,Q6 ≡ 0: {zero6}", step.outcome);
        cert.push(step);
        forced.push((deg, zero3, zero6));
    }

    let mut proj = Vec::new();
    for s in [2, 4] {
        let cfg = CurveConfig { curves: vec![CrepantCurve::new(3, total, UnitKnowledge::AnyUnit)], x_a1: A1Aggregate::Absent };
        let rctx = ctx(c, cfg);
        let (sys, drops) = rr::residue_term_builder(70, s, &rctx)?;
        let v3 = rr::index_var(s, q3, &c.basket.points()[q3]);
        let v6 = rr::index_var(s, q6, &c.basket.points()[q6]);
        let (step, set) = project_step("integrality", &format!("r' = 70, D = {s}A"), &sys, &drops, &[&v3, &v6])?;
        cert.push(step);
        proj.push(set);
    }
    cert.push(Step::cited(PULLBACK_DIFFERENCE_EXCEPTIONAL.0, PULLBACK_DIFFERENCE_EXCEPTIONAL.1, "G = f(4A) − 2f(2A) is exceptional and local indices are additive"));
    let mut g3 = BTreeSet::new();
    let mut g6 = BTreeSet::new();
    for a in &proj[0] {
        for b in &proj[1] {
            g3.insert((b[0] - 2 * a[0]).rem_euclid(3));
            g6.insert((b[1] - 2 * a[1]).rem_euclid(6));
        }
    }
    let consistent: Vec<u64> = forced
        .iter()
        .filter(|(_, z3, z6)| !((*z3 && !g3.contains(&0)) || (*z6 && !g6.contains(&0))))
        .map(|f| f.0)
        .collect();
    let step = Step::mechanical(
        "pullback-difference",
        format!("i_G,Q3 ∈ {g3:?} mod 3, i_G,Q6 ∈ {g6:?} mod 6 against the forced zero indices of each split"),
        if consistent.is_empty() { "every split contradicted".to_string() } else { format!("consistent for curve degree {consistent:?}") },
    );
    cert.push(if consistent.is_empty() { step.contradicts() } else { step });
    Ok(())
}

// Partitions of n into positive parts, each listed in non-increasing order.
fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn case_35(c: &Candidate, cert: &mut Certificate) -> Result<(), EliminateError> {
    let Some(cfg) = determined(c, cert)? else { return Ok(()) };
    let rctx = ctx(c, cfg.clone());
    let mut sys = ResidueConstraintSystem::new();
    let mut drops = Vec::new();
    for s in [1, 3, 5] {
        drops.extend(rr::add_integrality_constraint(&mut sys, &rctx, 1, s, CurveSource::Listed)?);
    }
    let (step, xs) = project_step("integrality", "r' = 1, D = sA for s = 1, 3, 5", &sys, &drops, &[X_A1])?;
    cert.push(step);
    if xs.is_empty() {
        return Ok(());
    }
    let m = sys.modulus_of(X_A1)?;
    let xs: BTreeSet<i64> = xs.iter().map(|r| r[0]).collect();
    let Some(x_pos) = least_at_least(&xs, m, 1) else { return Ok(()) };
    let mut terms = vec![a1_weight(x_pos)];
    for cv in &cfg.curves {
        if let Degree::Known(d) = cv.degree {
            terms.push(curve_weight(cv.j, d));
        }
    }
    let total: Rational = terms.iter().map(|t| t.1.clone()).sum();
    if total <= c.nabla || !xs.contains(&0) {
        cert.push(Step::mechanical("residue-bound", format!("x_A1 mod {m} ∈ {xs:?}"), "x_A1 not forced to 0"));
        return Ok(());
    }
    cert.push(Step::mechanical(
        "residue-bound",
        format!("x_A1 mod {m} ∈ {xs:?}; the least positive value {x_pos} costs {} > ∇ = {}", exact_string(&total), exact_string(&c.nabla)),
        "x_A1 = 0",
    ));

    let twos: Vec<usize> = c.basket.points().iter().enumerate().filter(|(_, p)| p.r == 2).map(|(k, _)| k).collect();
    let cfg0 = CurveConfig { x_a1: A1Aggregate::Known(0), ..cfg };
    let rctx = ctx(c, cfg0);
    let r_prime = 35;
    let mut parities = Vec::new();
    for s in [1, 4, 5] {
        let (sys, drops) = rr::residue_term_builder(r_prime, s, &rctx)?;
        let names: Vec<String> = twos.iter().map(|&k| rr::index_var(s, k, &c.basket.points()[k])).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let (step, set) = project_step("integrality", &format!("r' = {r_prime}, D = {s}A, parities at the (2,1) points"), &sys, &drops, &refs)?;
        cert.push(step);
        parities.push(set);
    }
    cert.push(Step::cited(PULLBACK_ADDITIVITY.0, PULLBACK_ADDITIVITY.1, "G = f(5A) − f(A) − f(4A) is supported over points where 4A is not Cartier"));
    cert.push(Step::cited(INDEX_TWO_PARITY.0, INDEX_TWO_PARITY.1, "each component of G has equal parity at the four (2,1) points"));
    let n = twos.len();
    let equal: Vec<Vec<i64>> = vec![vec![0; n], vec![1; n]];
    let mut implied = BTreeSet::new();
    for v5 in &parities[2] {
        for v4 in &parities[1] {
            for g in &equal {
                implied.insert((0..n).map(|i| (v5[i] - v4[i] - g[i]).rem_euclid(2)).collect::<Vec<_>>());
            }
        }
    }
    let meet: Vec<&Vec<i64>> = parities[0].intersection(&implied).collect();
    let step = Step::mechanical(
        "parity",
        format!("f(A) parities allowed by D = A: {:?}; implied by f(5A) − f(4A) − G: {:?}", parities[0], implied),
        if meet.is_empty() { "no common parity vector".to_string() } else { format!("common {meet:?}") },
    );
    cert.push(if meet.is_empty() { step.contradicts() } else { step });
    Ok(())
}
