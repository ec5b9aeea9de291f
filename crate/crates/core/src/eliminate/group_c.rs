//! Group C: the closed-form h⁰, the residue derivation behind it, and both eliminators.

use super::cases::{self, Group};
use super::certificate::{Certificate, Step, Verdict};
use super::curves::{describe, determine_curves, Determination};
use super::system::{Constraint, ResidueConstraintSystem, Term, Unknown};
use super::{project_step, EliminateError};
use crate::arith::{self, exact_string, int, rat, sigma_pair, Rational};
use crate::rr::{self, A1Aggregate, CurveConfig};
use crate::search::Candidate;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub const GROUP_C_MINUS: [u32; 6] = [4, 7, 8, 12, 14, 15];
pub const GROUP_C_PLUS: [u32; 6] = [3, 6, 11, 13, 21, 22];

/// Upper end of the range where the closed form holds.
pub const CLOSED_FORM_LIMIT: i64 = 66;
/// `ι(D)` bound below which the movable classification applies.
pub const MOVABLE_LIMIT: u64 = 34;
/// `ι(D)` bound of the non-reduced classification.
pub const NON_REDUCED_LIMIT: u64 = 59;

const RESIDUE_PRIMES: [u64; 3] = [3, 5, 11];

fn f(x: i64, r: u64) -> Rational {
    sigma_pair(x, r as i64).expect("positive modulus")
}

/// `h⁰(sA) = s²/660 + 2 − F₂(s) − F₃(s) − F₅(2s) − F₁₁(2s)` for `0 < s < 66`.
pub fn group_c_closed_form(s: i64) -> Result<i64, EliminateError> {
    if s <= 0 || s >= CLOSED_FORM_LIMIT {
        return Err(EliminateError::SOutOfRange(s));
    }
    let v = rat(s * s, 660) + int(2) - f(s, 2) - f(s, 3) - f(2 * s, 5) - f(2 * s, 11);
    if !v.is_integer() {
        return Err(EliminateError::Precondition(format!("closed form at s = {s} is {}", exact_string(&v))));
    }
    Ok(v.to_integer().to_i64().expect("small"))
}

/// `h⁰(sA)` for `s = 1..=n`.
pub fn closed_form_table(n: i64) -> Result<Vec<i64>, EliminateError> {
    (1..=n).map(group_c_closed_form).collect()
}

/// `{0} ∪ {s : h(s) > h(s−5) and h(s) > h(s−6)}` where `h0[s−1] = h(s)`, `h(0) = 1`, `h(s<0) = 0`.
pub fn movable_thresholds(h0: &[i64]) -> BTreeSet<u64> {
    let h = |s: i64| -> i64 {
        match s {
            0 => 1,
            s if s < 0 => 0,
            s => h0[(s - 1) as usize],
        }
    };
    let mut out = BTreeSet::from([0]);
    for s in 1..=h0.len() as i64 {
        if h(s) > h(s - 5) && h(s) > h(s - 6) {
            out.insert(s as u64);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposeMode {
    /// `n = d₀ + 5a + 6b` with `d₀` avoiding `A₅, A₆`.
    Effective,
    /// Divisors of class `n` with a component of multiplicity at least 2.
    NonReduced,
}

/// One shape `Σ mult·ι`; `open` marks a `d₀ > 34` the classification says nothing about.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<(u64, u64)>,
    pub open: bool,
}

impl Decomposition {
    fn new(raw: &[(u64, u64)], open: bool) -> Self {
        let mut m: BTreeMap<u64, u64> = BTreeMap::new();
        for &(i, k) in raw {
            if i > 0 && k > 0 {
                *m.entry(i).or_default() += k;
            }
        }
        let key = |i: u64| match i {
            5 => (1, 0),
            6 => (2, 0),
            i => (0, i),
        };
        let mut parts: Vec<(u64, u64)> = m.into_iter().collect();
        parts.sort_by_key(|&(i, _)| key(i));
        Decomposition { parts, open }
    }

    pub fn iota(&self) -> u64 {
        self.parts.iter().map(|(i, k)| i * k).sum()
    }

    /// `ι(D − D_red)`.
    pub fn non_reduced_part(&self) -> u64 {
        self.parts.iter().map(|(i, k)| i * (k - 1)).sum()
    }

    pub fn contains(&self, iota: u64) -> bool {
        self.parts.iter().any(|&(i, _)| i == iota)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|&(i, k)| if k == 1 { i.to_string() } else { format!("{k}·{i}") }).collect();
        write!(f, "{}", s.join("+"))?;
        if self.open {
            write!(f, " (open)")?;
        }
        Ok(())
    }
}

fn movable_set() -> Result<BTreeSet<u64>, EliminateError> {
    Ok(movable_thresholds(&closed_form_table(MOVABLE_LIMIT as i64)?))
}

fn effective(n: u64, movable: &BTreeSet<u64>, min_a: u64, min_b: u64, extra: &[(u64, u64)], out: &mut BTreeSet<Decomposition>) {
    for a in 0..=n / 5 {
        for b in 0..=(n - 5 * a) / 6 {
            let d0 = n - 5 * a - 6 * b;
            if !(a >= min_a && b >= min_b) {
                continue;
            }
            let open = d0 > MOVABLE_LIMIT;
            if open || movable.contains(&d0) {
                let mut parts = extra.to_vec();
                parts.extend([(d0, 1), (5, a), (6, b)]);
                out.insert(Decomposition::new(&parts, open));
            }
        }
    }
}

/// All shapes of an effective divisor of class `n ≤ 59` under `mode`.
pub fn decompose(n: u64, mode: DecomposeMode) -> Result<Vec<Decomposition>, EliminateError> {
    if n > NON_REDUCED_LIMIT {
        return Err(EliminateError::TooLarge(n));
    }
    let movable = movable_set()?;
    let mut out = BTreeSet::new();
    match mode {
        DecomposeMode::Effective => effective(n, &movable, 0, 0, &[], &mut out),
        DecomposeMode::NonReduced => {
            let primes: BTreeSet<u64> = [5, 6].into_iter().chain(movable.iter().copied().filter(|&m| m > 0 && m < 30)).collect();
            for &e in &primes {
                match e {
                    5 => effective(n, &movable, 2, 0, &[], &mut out),
                    6 => effective(n, &movable, 0, 2, &[], &mut out),
                    e if 2 * e <= n => effective(n - 2 * e, &movable, 0, 0, &[(e, 2)], &mut out),
                    _ => {}
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoliationBounds {
    pub p_min: u64,
    pub feasible: Vec<u64>,
}

/// Integers `p ∈ (2q/3, q)` with `r_Xc₂c₁ − ((−4p² + 6pq − q²)/(4q²))·r_Xc₁³ ≥ δ`.
pub fn foliation_bounds(c: &Candidate, delta: &Rational) -> Result<FoliationBounds, EliminateError> {
    let c21 = int(c.rxc2c1 as i64);
    let c13 = int(c.rxc13 as i64);
    if &c21 - rat(5, 16) * &c13 >= *delta {
        return Err(EliminateError::Precondition(format!(
            "r_Xc₂c₁ − (5/16)r_Xc₁³ = {} is not below δ = {}",
            exact_string(&(&c21 - rat(5, 16) * &c13)),
            exact_string(delta)
        )));
    }
    let q = c.q as i64;
    let feasible: Vec<u64> = ((2 * q / 3 + 1)..q)
        .filter(|&p| &c21 - rat(-4 * p * p + 6 * p * q - q * q, 4 * q * q) * &c13 >= *delta)
        .map(|p| p as u64)
        .collect();
    let p_min = *feasible.first().ok_or_else(|| EliminateError::Precondition("no feasible ι(−K_F)".into()))?;
    Ok(FoliationBounds { p_min, feasible })
}

/// Outcome of the residue derivation for a Group C candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCResidues {
    /// Solutions for `x_r` before normalization.
    pub x_solutions: BTreeMap<u64, Vec<i64>>,
    pub x: BTreeMap<u64, i64>,
    pub y: BTreeMap<u64, i64>,
    pub y2: i64,
    pub x_a1: u64,
    pub steps: Vec<Step>,
}

const CHERN_DIFFERENCE: (&str, &str) = ("chern-difference-bound", "-r_X\\hat{c}_2(X)\\cdot c_1(X)=\\delta_X");
const RANK_TWO_FOLIATION: (&str, &str) =
    ("rank-two-foliation", "Hence $\\mathcal F$ is an algebraically integrable foliation of rank $2$ on $X$");
const RATIONAL_CONNECTEDNESS: (&str, &str) = ("rational-connectedness", "As $X$ is rationally connected");
const MOVABLE_LEAF_SYSTEM: (&str, &str) = ("movable-leaf-system", "$|e_*G|$ is a movable linear system");
const FIBERS_WITHOUT_COMMON: (&str, &str) =
    ("fibers-without-common-components", "pairwisely $D_1, \\dots, D_k$ have no common components");
const HIRZEBRUCH_BOUND: (&str, &str) = (
    "hirzebruch-surface-bound",
    "there is a birational morphism $\\phi\\colon F\\to \\mathbb{F}_n$ for some $n\\in\\{1,2\\}$",
);

fn cited(c: (&str, &str), description: &str) -> Step {
    Step::cited(c.0, c.1, description)
}

fn precondition(msg: impl Into<String>) -> EliminateError {
    EliminateError::Precondition(msg.into())
}

fn config_of(c: &Candidate) -> Result<CurveConfig, EliminateError> {
    match determine_curves(c)? {
        Determination::Determined { config, .. } => Ok(config),
        Determination::Undetermined { bound } => {
            Err(precondition(format!("curves not forced: ∇ = {} ≥ {}", exact_string(&c.nabla), exact_string(&bound))))
        }
    }
}

/// Derives every residue parameter of the Group C Riemann–Roch form and checks the closed form.
pub fn solve_group_c_residues(c: &Candidate) -> Result<GroupCResidues, EliminateError> {
    let cfg = config_of(c)?;
    let ctx = rr::RrContext { q: c.q, rxc13: c.rxc13, basket: c.basket.clone(), curves: cfg.clone() };
    let a2mk = ctx.a2mk();
    let rx = c.r_x as i64;
    let mut steps = Vec::new();

    let mut odd: Vec<u64> = c.basket.points().iter().map(|p| p.r).filter(|&r| r != 2).collect();
    let r0: Vec<u64> = cfg.curves.iter().map(|cv| cv.j).collect();
    odd.extend(&r0);
    odd.sort();
    if odd != RESIDUE_PRIMES {
        return Err(precondition(format!("non-2 indices and curve types {odd:?} are not {{3, 5, 11}}")));
    }
    steps.push(Step::mechanical(
        "residue-moduli",
        format!("{}; basket indices ≠ 2 together with r₀ = {r0:?}", describe(&cfg)),
        "{3, 5, 11}",
    ));
    steps.push(Step::mechanical(
        "index-linearity",
        "local index terms parametrized as i·b ≡ ⌊s/2⌋x_r + (s mod 2)y_r mod r",
        "unknowns x_r, y_r for r ∈ {2, 3, 5, 11}",
    ));

    let has_two = c.basket.points().iter().any(|p| p.r == 2);
    let mut moduli: Vec<u64> = RESIDUE_PRIMES.to_vec();
    if has_two {
        moduli.insert(0, 2);
    }

    // h⁰(2A) = 2A²(−K) + 2 − Σ F_r(x_r)
    let mut sys = ResidueConstraintSystem::new();
    let mut con = Constraint::new("h⁰(2A)", &a2mk * int(2) + int(2));
    for &r in &moduli {
        let v = format!("x{r}");
        sys.add_unknown(Unknown::residue(&v, r))?;
        con = con.term(Term::quadratic(-int(1), v, r));
    }
    sys.add_constraint(con);
    let names: Vec<String> = moduli.iter().map(|r| format!("x{r}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let (step, xs) = project_step("h0-2A", "h⁰(2A) ∈ ℤ over all x_r", &sys, &[], &refs)?;
    steps.push(step);
    if xs.is_empty() {
        return Err(precondition("h⁰(2A) never integral"));
    }
    let (vals, visited) = sys.integral_values(0)?;
    let zero = vals == BTreeSet::from([arith::zero()]);
    steps.push(
        Step::mechanical(
            "h0-2A-value",
            "integral values of h⁰(2A)",
            format!("{{{}}}{}", vals.iter().map(exact_string).collect::<Vec<_>>().join(", "), if zero { "; h⁰(A) = 0" } else { "" }),
        )
        .with_search(sys.domain_size(), visited),
    );
    if !zero {
        return Err(precondition("h⁰(2A) not forced to 0"));
    }

    let mut x_solutions: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    for (k, &r) in moduli.iter().enumerate() {
        let set: BTreeSet<i64> = xs.iter().map(|row| row[k]).collect();
        x_solutions.insert(r, set.into_iter().collect());
    }
    let product: usize = x_solutions.values().map(Vec::len).product();
    if product != xs.len() {
        return Err(precondition("x solutions are not a product set"));
    }
    let mut x: BTreeMap<u64, i64> = BTreeMap::new();
    for (&r, sols) in &x_solutions {
        let even: Vec<i64> = sols.iter().copied().filter(|v| v % 2 == 0).collect();
        let rep = match (r, even.as_slice(), sols.as_slice()) {
            (2, _, [v]) => *v,
            (_, [v], [a, b]) if (a + b) as u64 == r => *v,
            _ => return Err(precondition(format!("x_{r} ∈ {sols:?} is not a ± pair"))),
        };
        x.insert(r, rep);
    }
    steps.push(Step::mechanical(
        "sign-normalization",
        format!("x_r ∈ {x_solutions:?}; replace (x_r, y_r) by (−x_r, −y_r) to pick the even representative"),
        format!("x = {x:?}"),
    ));

    // h⁰(A) − h⁰(3A) = −4A²(−K) − Σ F_r(y_r) + Σ F_r(x_r + y_r)
    let mut sys = ResidueConstraintSystem::new();
    let mut con = Constraint::new("h⁰(A) − h⁰(3A)", -(&a2mk * int(4)));
    for &r in &RESIDUE_PRIMES {
        let v = format!("y{r}");
        sys.add_unknown(Unknown::residue(&v, r))?;
        con = con.term(Term::quadratic_at(-int(1), v.clone(), r, 1, 0));
        con = con.term(Term::quadratic_at(int(1), v, r, 1, x[&r]));
    }
    sys.add_constraint(con);
    let (step, ys) = project_step("h0-difference", "h⁰(A) − h⁰(3A) ∈ ℤ with x normalized", &sys, &[], &["y3", "y5", "y11"])?;
    steps.push(step);
    if ys.len() != 1 {
        return Err(precondition(format!("y not unique: {ys:?}")));
    }
    let row = ys.into_iter().next().unwrap();
    let y: BTreeMap<u64, i64> = RESIDUE_PRIMES.iter().copied().zip(row).collect();

    // h⁰(A) = 0: x_A1/(4r_X) + F₂(y₂) = rem
    let mut rem = &a2mk / int(2) + int(2);
    for &r in &RESIDUE_PRIMES {
        rem -= f(y[&r], r);
    }
    let y2_range: Vec<i64> = if has_two { vec![0, 1] } else { vec![0] };
    let mut sols = Vec::new();
    for y2 in y2_range {
        let xa = (&rem - f(y2, 2)) * int(4 * rx);
        if xa.is_integer() && xa >= arith::zero() {
            let xa = xa.to_integer().to_u64().expect("small");
            if xa == 0 || cfg.x_a1 != A1Aggregate::Absent {
                sols.push((xa, y2));
            }
        }
    }
    let a1_note = if cfg.x_a1 == A1Aggregate::Absent { "; no A₁ curves, so x_A1 = 0" } else { "" };
    steps.push(Step::mechanical(
        "h0-A-vanishes",
        format!("h⁰(A) = 0 gives x_A1/(4r_X) + F₂(y₂) = {}{a1_note}", exact_string(&rem)),
        format!("(x_A1, y₂) ∈ {sols:?}"),
    ));
    let [(x_a1, y2)] = sols[..] else {
        return Err(precondition(format!("(x_A1, y₂) not unique: {sols:?}")));
    };

    let q = (c.q as i64).min(CLOSED_FORM_LIMIT);
    for s in 1..q {
        let (h, o) = (s / 2, s % 2);
        let mut v = rat(s * s, 2) * &a2mk + int(2) - rat(x_a1 as i64 * o, 4 * rx) - f(o * y2 + h * x.get(&2).copied().unwrap_or(0), 2);
        for &r in &RESIDUE_PRIMES {
            v -= f(h * x[&r] + o * y[&r], r);
        }
        if v != int(group_c_closed_form(s)?) {
            return Err(precondition(format!("closed form fails at s = {s}")));
        }
    }
    steps.push(Step::mechanical(
        "closed-form",
        format!("substitute the solved residues for 0 < s < {q}"),
        "h⁰(sA) = s²/660 + 2 − F₂(s) − F₃(s) − F₅(2s) − F₁₁(2s)",
    ));
    Ok(GroupCResidues { x_solutions, x, y, y2, x_a1, steps })
}

fn check_group(id: u32, want: Group) -> Result<(), EliminateError> {
    let data = cases::case(id).ok_or(EliminateError::UnknownCase(id))?;
    if data.group != want {
        return Err(EliminateError::WrongGroup { id, group: data.group });
    }
    Ok(())
}

/// `δ` with `x_A1` fixed by the residue derivation.
fn delta_step(c: &Candidate, res: &GroupCResidues) -> Result<(Rational, Step), EliminateError> {
    let mut cfg = config_of(c)?;
    if cfg.x_a1 != A1Aggregate::Absent || res.x_a1 > 0 {
        cfg.x_a1 = A1Aggregate::Known(res.x_a1);
    }
    let delta = rr::delta_lower_bound(&cfg)?;
    let step = Step::mechanical(
        "delta",
        format!("Σ (j − 1/j)(−r_XK_X·C) over {} with x_A1 = {}", describe(&cfg), res.x_a1),
        format!("δ = {} ≈ {}", exact_string(&delta), rr::display_hundredths(&delta)),
    );
    Ok((delta, step))
}

pub fn eliminate_group_c_minus(case_id: u32) -> Result<Verdict, EliminateError> {
    let data = cases::case(case_id).ok_or(EliminateError::UnknownCase(case_id))?;
    eliminate_group_c_minus_on(case_id, &data.candidate())
}

pub fn eliminate_group_c_minus_on(case_id: u32, c: &Candidate) -> Result<Verdict, EliminateError> {
    check_group(case_id, Group::CMinus)?;
    let mut cert = Certificate::new(case_id, Group::CMinus);
    let res = solve_group_c_residues(c)?;
    cert.steps.extend(res.steps.iter().cloned());
    let (delta, step) = delta_step(c, &res)?;
    cert.push(step);
    let over = delta > c.nabla;
    let step = Step::mechanical(
        "curve-budget",
        format!("δ = {} against ∇ = {}", exact_string(&delta), exact_string(&c.nabla)),
        if over { "δ > ∇" } else { "δ ≤ ∇" },
    );
    cert.push(if over { step.contradicts() } else { step });
    Ok(Verdict::from_certificate(cert))
}

pub fn eliminate_group_c_plus(case_id: u32) -> Result<Verdict, EliminateError> {
    let data = cases::case(case_id).ok_or(EliminateError::UnknownCase(case_id))?;
    eliminate_group_c_plus_on(case_id, &data.candidate())
}

pub fn eliminate_group_c_plus_on(case_id: u32, c: &Candidate) -> Result<Verdict, EliminateError> {
    check_group(case_id, Group::CPlus)?;
    let mut cert = Certificate::new(case_id, Group::CPlus);
    let res = solve_group_c_residues(c)?;
    cert.steps.extend(res.steps.iter().cloned());
    let (delta, step) = delta_step(c, &res)?;
    cert.push(step);
    if delta > c.nabla {
        cert.push(Step::mechanical("curve-budget", "δ > ∇", "violated").contradicts());
        return Ok(Verdict::from_certificate(cert));
    }

    cert.push(cited(CHERN_DIFFERENCE, "r_Xc₂c₁ − r_Xĉ₂c₁ = δ"));
    cert.push(cited(RANK_TWO_FOLIATION, "the Harder–Narasimhan piece F of rank 2 is an algebraically integrable foliation with p = ι(−K_F) < q"));
    let bounds = foliation_bounds(c, &delta)?;
    let q = c.q;
    let near = bounds.feasible.iter().all(|&p| q - p <= 10 && 6 * p > 5 * q);
    cert.push(Step::mechanical(
        "foliation-index",
        format!("r_Xc₂c₁ − (5/16)r_Xc₁³ < δ; p ∈ (2q/3, q) with r_Xc₂c₁ − ((−4p² + 6pq − q²)/(4q²))r_Xc₁³ ≥ δ, q = {q}"),
        format!("p ≥ {}; feasible p = {:?}", bounds.p_min, bounds.feasible),
    ));
    if !near {
        cert.push(Step::mechanical("foliation-index", "q − p ≤ 10 and p > 5q/6", "not satisfied"));
        return Ok(Verdict::from_certificate(cert));
    }

    let table = closed_form_table(MOVABLE_LIMIT as i64)?;
    let movable = movable_thresholds(&table);
    let g_min = (1..CLOSED_FORM_LIMIT).find(|&s| group_c_closed_form(s).map_or(false, |h| h >= 2)).expect("h⁰(33A) = 3") as u64;
    cert.push(Step::mechanical(
        "movable-classes",
        "h⁰(sA) for 0 < s ≤ 34 from the closed form; ι(D) of D avoiding A₅, A₆",
        format!("ι ∈ {movable:?}; a movable class has ι ≥ {g_min}"),
    ));
    cert.push(cited(RATIONAL_CONNECTEDNESS, "the leaf family is over ℙ¹ and ι(e_*R(g)) = 2g − q + p with g = ι(e_*G)"));
    cert.push(cited(MOVABLE_LEAF_SYSTEM, "g ≥ 22 since |e_*G| moves"));

    // leaf bound: g ≤ 59 is impossible
    let gap_max = q - bounds.p_min;
    cert.push(Step::mechanical(
        "leaf-k1",
        format!("k = 1 needs 2g − q + p < g, i.e. g < q − p ≤ {gap_max} < {g_min}"),
        "k ≥ 2",
    ));
    cert.push(cited(FIBERS_WITHOUT_COMMON, "the non-reduced members D_i of |e_*G| pairwise share no component"));
    let k2 = gap_max < 11;
    cert.push(Step::mechanical(
        "leaf-k2",
        format!("k = 2 gives ι(e_*R(g)) ≤ 2g − 5 − 6, so q − p ≥ 11 > {gap_max}"),
        if k2 { "k ≥ 3" } else { "k = 2 not excluded" },
    ));
    if !k2 {
        return Ok(Verdict::from_certificate(cert));
    }
    let mut avoiding = Vec::new();
    for g in g_min as u64..=NON_REDUCED_LIMIT {
        let shapes = decompose(g, DecomposeMode::NonReduced)?;
        if shapes.iter().any(|d| !d.contains(5) && !d.contains(6)) {
            avoiding.push(g);
        }
    }
    cert.push(Step::mechanical(
        "leaf-k3",
        format!("k ≥ 3 members with disjoint supports: at most one contains A₅ and one A₆; non-reduced shapes for {g_min} ≤ g ≤ 59"),
        format!("a shape avoiding A₅ and A₆ exists only for g ∈ {avoiding:?}"),
    ));
    let mut residues = BTreeSet::new();
    for &g in &avoiding {
        for d in decompose(g, DecomposeMode::NonReduced)? {
            residues.insert((g, d.to_string(), d.non_reduced_part(), d.open));
        }
    }
    let eleven = avoiding.iter().all(|&g| g % 11 == 0) && residues.iter().all(|(_, _, nr, open)| !open && nr % 11 == 0);
    let listed: Vec<String> = residues.iter().map(|(g, s, nr, _)| format!("{g} = {s} (non-reduced part {nr})")).collect();
    let step = Step::mechanical(
        "leaf-divisibility",
        format!("{}; then 11 | g and 11 | ι(e_*R(g)), so 11 | q − p ∈ [1, {gap_max}]", listed.join("; ")),
        if eleven { "impossible; ι(e_*G) ≥ 60" } else { "11-divisibility fails" },
    );
    cert.push(step);
    if !eleven {
        return Ok(Verdict::from_certificate(cert));
    }

    cert.push(cited(HIRZEBRUCH_BOUND, "p > 5q/6 gives F → 𝔽ₙ with n ∈ {1, 2}, so (−K_F − Δ_F)² ≤ 8"));
    let worst = bounds.feasible.iter().map(|&p| rat(60 * (p * p) as i64, 330 * q as i64)).min().expect("nonempty");
    let over = worst > int(8);
    let step = Step::mechanical(
        "final-inequality",
        format!("(−K_F − Δ_F)² ≥ 60p²/(330q) for p ∈ {:?}; least value {}", bounds.feasible, exact_string(&worst)),
        if over { "> 8" } else { "≤ 8" },
    );
    cert.push(if over { step.contradicts() } else { step });
    Ok(Verdict::from_certificate(cert))
}
