//! Riemann–Roch quantities for `h⁰(sA)` and the integrality constraints built from them.

use crate::arith::{self, int, rat, Rational};
use crate::basket::{Basket, BasketError, OrbifoldPoint};
use crate::eliminate::system::{Constraint, ResidueConstraintSystem, SystemError, Term, Unknown};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrError {
    #[error("s = {s} outside 0 < s < {q}")]
    SOutOfRange { s: i64, q: u64 },
    #[error(transparent)]
    Basket(#[from] BasketError),
    #[error("(l, r1) = ({0}, {1}) is not a Kawamata–Miyaoka case")]
    BadKmCase(u64, u64),
    #[error("unit {unit} is not coprime to {j}")]
    NotAUnit { unit: u64, j: u64 },
    #[error("curve type j = {0} must be at least 2")]
    BadCurveType(u64),
    #[error("{0} must be known here")]
    Symbolic(String),
    #[error("local index list has {got} entries for {want} basket points")]
    IndexLength { got: usize, want: usize },
    #[error("a symbolic degree needs a unit-independent contribution on a curve of type j = {0}")]
    NeedsConstantUnit(u64),
    #[error(transparent)]
    System(#[from] SystemError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degree {
    /// `−r_X K·C`.
    Known(u64),
    /// `base · var` for an integer unknown `var ≥ 1`.
    Multiple { base: u64, var: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitKnowledge {
    Known(u64),
    /// Some unit mod j; one unknown per curve, shared across multiples of A.
    AnyUnit,
    /// An unconstrained residue mod j, fresh for each multiple of A.
    FreeResidue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum A1Aggregate {
    Absent,
    Known(u64),
    Symbolic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrepantCurve {
    /// The curve has type `A_{j−1}`.
    pub j: u64,
    pub degree: Degree,
    pub unit: UnitKnowledge,
}

impl CrepantCurve {
    pub fn new(j: u64, degree: u64, unit: UnitKnowledge) -> Self {
        CrepantCurve { j, degree: Degree::Known(degree), unit }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub curves: Vec<CrepantCurve>,
    pub x_a1: A1Aggregate,
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig { curves: Vec::new(), x_a1: A1Aggregate::Absent }
    }
}

/// Residue `i mod r` of the local index at each basket point, in basket order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalIndexAssignment(pub Vec<u64>);

/// Numerical data an integrality constraint is built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrContext {
    pub q: u64,
    pub rxc13: u64,
    pub basket: Basket,
    pub curves: CurveConfig,
}

impl RrContext {
    pub fn rx(&self) -> u64 {
        self.basket.gorenstein_index()
    }

    /// `−A²·K_X = r_Xc₁³ / (r_X q²)`.
    pub fn a2mk(&self) -> Rational {
        rat(self.rxc13 as i64, (self.rx() * self.q * self.q) as i64)
    }
}

/// How crepant curves enter a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveSource {
    Listed,
    /// `D` is Cartier in codimension 2, so curves contribute nothing.
    CartierInCodim2,
}

/// A term removed because it is always integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dropped {
    pub label: String,
    pub reason: String,
}

/// Orbifold-point contribution `c_Q(D)` for a local index `i`.
pub fn c_orbifold(r: u64, b: u64, i: u64) -> Result<Rational, RrError> {
    let p = OrbifoldPoint::new(r, b)?;
    let (r, b) = (p.r as i64, p.b as i64);
    let i = (i % p.r) as i64;
    let mut v = rat(-i * (r * r - 1), 12 * r);
    for k in 0..i {
        v += arith::sigma_pair(k * b, r).expect("r ≥ 2");
    }
    Ok(v)
}

/// Crepant-curve contribution `c_C(sA) = −F_j(s·unit)`.
pub fn c_curve(j: u64, unit: u64, s: i64) -> Result<Rational, RrError> {
    if j < 2 {
        return Err(RrError::BadCurveType(j));
    }
    if arith::gcd(unit % j, j) != 1 {
        return Err(RrError::NotAUnit { unit, j });
    }
    Ok(-arith::sigma_pair(s * unit as i64, j as i64).expect("j ≥ 2"))
}

/// `h⁰(sA)` from Riemann–Roch with every residue known.
pub fn h0_sa(
    q: u64,
    a2mk: &Rational,
    cfg: &CurveConfig,
    basket: &Basket,
    idx: &LocalIndexAssignment,
    s: i64,
) -> Result<Rational, RrError> {
    if s <= 0 || s >= q as i64 {
        return Err(RrError::SOutOfRange { s, q });
    }
    if idx.0.len() != basket.len() {
        return Err(RrError::IndexLength { got: idx.0.len(), want: basket.len() });
    }
    let rx = basket.gorenstein_index() as i64;
    let mut h = rat(s * s, 2) * a2mk + int(2);
    for c in &cfg.curves {
        let deg = match &c.degree {
            Degree::Known(d) => *d as i64,
            Degree::Multiple { var, .. } => return Err(RrError::Symbolic(var.clone())),
        };
        let unit = match c.unit {
            UnitKnowledge::Known(u) => u,
            _ => return Err(RrError::Symbolic(format!("unit of an A{} curve", c.j - 1))),
        };
        h += rat(deg, rx) * c_curve(c.j, unit, s)?;
    }
    match &cfg.x_a1 {
        A1Aggregate::Absent => {}
        A1Aggregate::Known(x) => h -= rat(*x as i64 * s.rem_euclid(2), 4 * rx),
        A1Aggregate::Symbolic(v) => return Err(RrError::Symbolic(v.clone())),
    }
    for (p, &i) in basket.points().iter().zip(&idx.0) {
        h -= arith::sigma_pair(i as i64 * p.b as i64, p.r as i64).expect("r ≥ 2");
    }
    Ok(h)
}

// r'·deg/r_X·F_j is always integral.
fn ignorable(k: &Rational, j: u64) -> bool {
    if !k.is_integer() {
        return false;
    }
    let k = k.to_integer();
    let m = if j % 2 == 1 { j } else { 2 * j };
    (k % num_bigint::BigInt::from(m)).is_zero()
}

fn unit_constant(j: u64, s: i64) -> Option<Rational> {
    let mut vals = (1..j).filter(|&u| arith::gcd(u, j) == 1).map(|u| arith::sigma_pair(s * u as i64, j as i64).unwrap());
    let first = vals.next()?;
    vals.all(|v| v == first).then_some(first)
}

/// Name of the unknown local index of `sA` at the `k`-th basket point.
pub fn index_var(s: i64, k: usize, p: &OrbifoldPoint) -> String {
    format!("i[{s}A]@Q{k}({},{})", p.r, p.b)
}

/// Adds the integrality constraint for `D = sA` with multiplier `r'` to `sys`.
pub fn add_integrality_constraint(
    sys: &mut ResidueConstraintSystem,
    ctx: &RrContext,
    r_prime: u64,
    s: i64,
    source: CurveSource,
) -> Result<Vec<Dropped>, RrError> {
    let rx = ctx.rx() as i64;
    let rp = r_prime as i64;
    let mut drops = Vec::new();
    let label = format!("r'={r_prime}, D={s}A");
    let mut c = Constraint::new(label, rat(rp * s * s, 2) * ctx.a2mk());

    match source {
        CurveSource::CartierInCodim2 => {
            if !ctx.curves.curves.is_empty() || ctx.curves.x_a1 != A1Aggregate::Absent {
                drops.push(Dropped { label: "crepant curves".into(), reason: "D is Cartier in codimension 2".into() });
            }
        }
        CurveSource::Listed => {
            for (n, cv) in ctx.curves.curves.iter().enumerate() {
                let lbl = format!("C{n}:A{}", cv.j - 1);
                let (k, var) = match &cv.degree {
                    Degree::Known(d) => (rat(rp * *d as i64, rx), None),
                    Degree::Multiple { base, var } => (rat(rp * *base as i64, rx), Some(var.clone())),
                };
                if ignorable(&k, cv.j) {
                    drops.push(Dropped { label: lbl, reason: format!("r'·deg/r_X = {k} is a multiple of {}", if cv.j % 2 == 1 { cv.j } else { 2 * cv.j }) });
                    continue;
                }
                if s.rem_euclid(cv.j as i64) == 0 {
                    drops.push(Dropped { label: lbl, reason: format!("{} divides s", cv.j) });
                    continue;
                }
                let constant = match cv.unit {
                    UnitKnowledge::Known(u) => {
                        if arith::gcd(u % cv.j, cv.j) != 1 {
                            return Err(RrError::NotAUnit { unit: u, j: cv.j });
                        }
                        Some(arith::sigma_pair(s * u as i64, cv.j as i64).unwrap())
                    }
                    UnitKnowledge::AnyUnit => unit_constant(cv.j, s),
                    UnitKnowledge::FreeResidue => None,
                };
                match (var, constant) {
                    (None, Some(f)) => c = c.fixed(lbl, -(&k * f)),
                    (Some(v), Some(f)) => {
                        sys.add_unknown(Unknown::integer(&v))?;
                        c = c.term(Term::linear(-(&k * f), v));
                    }
                    (Some(_), None) => return Err(RrError::NeedsConstantUnit(cv.j)),
                    (None, None) => {
                        if cv.unit == UnitKnowledge::AnyUnit {
                            let name = format!("unit@C{n}");
                            let units = (1..cv.j).filter(|&u| arith::gcd(u, cv.j) == 1).collect();
                            sys.add_unknown(Unknown::residue_in(&name, cv.j, units))?;
                            c = c.term(Term::quadratic_at(-k, name, cv.j, s, 0));
                        } else {
                            let name = format!("c[{s}A]@C{n}");
                            sys.add_unknown(Unknown::residue(&name, cv.j))?;
                            c = c.term(Term::quadratic(-k, name, cv.j));
                        }
                    }
                }
            }
            let a1 = match &ctx.curves.x_a1 {
                A1Aggregate::Absent => None,
                A1Aggregate::Known(x) => Some((rat(rp * *x as i64, rx), None)),
                A1Aggregate::Symbolic(v) => Some((rat(rp, rx), Some(v.clone()))),
            };
            if let Some((k, var)) = a1 {
                if ignorable(&k, 2) {
                    drops.push(Dropped { label: "A1 aggregate".into(), reason: format!("r'·x/r_X = {k}·x is a multiple of 4") });
                } else if s % 2 == 0 {
                    drops.push(Dropped { label: "A1 aggregate".into(), reason: "s is even".into() });
                } else {
                    let coeff = -(k * rat(1, 4));
                    match var {
                        None => c = c.fixed("A1 aggregate", coeff),
                        Some(v) => {
                            sys.add_unknown(Unknown::integer(&v))?;
                            c = c.term(Term::linear(coeff, v));
                        }
                    }
                }
            }
        }
    }

    for (k, p) in ctx.basket.points().iter().enumerate() {
        let lbl = format!("Q{k}({},{})", p.r, p.b);
        if (p.r % 2 == 1 && r_prime % p.r == 0) || (p.r % 2 == 0 && r_prime % (2 * p.r) == 0) {
            drops.push(Dropped { label: lbl, reason: format!("r' = {r_prime} kills the 1/{} denominator", 2 * p.r) });
            continue;
        }
        let name = index_var(s, k, p);
        sys.add_unknown(Unknown::residue(&name, p.r))?;
        c = c.term(Term::quadratic_at(-int(rp), name, p.r, p.b as i64, 0));
    }
    sys.add_constraint(c);
    Ok(drops)
}

/// The single-constraint system for `r'` and `D = sA`.
pub fn residue_term_builder(
    r_prime: u64,
    s: i64,
    ctx: &RrContext,
) -> Result<(ResidueConstraintSystem, Vec<Dropped>), RrError> {
    let mut sys = ResidueConstraintSystem::new();
    let drops = add_integrality_constraint(&mut sys, ctx, r_prime, s, CurveSource::Listed)?;
    Ok((sys, drops))
}

/// Kawamata–Miyaoka bound on `c₁³ / ĉ₂c₁` by Harder–Narasimhan type.
pub fn km_bound(l: u64, r1: u64, p: u64, q: u64) -> Result<Rational, RrError> {
    let (p, q) = (p as i64, q as i64);
    match (l, r1) {
        (1, 3) => Ok(int(3)),
        (2, 1) => Ok(rat(16, 5)),
        (2, 2) => Ok(rat(4 * q * q, p * (4 * q - 3 * p))),
        (3, 1) => Ok(rat(4 * q * q, -4 * p * p + 6 * p * q - q * q)),
        _ => Err(RrError::BadKmCase(l, r1)),
    }
}

/// `∇_X = r_Xc₂c₁ − (q²+2q−4)/(4q²) · r_Xc₁³`.
pub fn nabla(q: u64, rxc13: u64, rxc2c1: u64) -> Rational {
    let q = q as i64;
    int(rxc2c1 as i64) - rat(q * q + 2 * q - 4, 4 * q * q) * int(rxc13 as i64)
}

/// `⌈100x⌉/100` with trailing zeros trimmed.
pub fn display_hundredths(x: &Rational) -> String {
    let c = arith::ceil(&(x * int(100)));
    let c = c.to_i64().expect("display range");
    let sign = if c < 0 { "-" } else { "" };
    let (w, f) = (c.abs() / 100, c.abs() % 100);
    match f {
        0 => format!("{sign}{w}"),
        f if f % 10 == 0 => format!("{sign}{w}.{}", f / 10),
        f => format!("{sign}{w}.{f:02}"),
    }
}

/// `Σ (j − 1/j)·deg` over curves, plus `(3/2)·x_A1`.
pub fn delta_lower_bound(cfg: &CurveConfig) -> Result<Rational, RrError> {
    let mut d = Rational::zero();
    for c in &cfg.curves {
        let deg = match &c.degree {
            Degree::Known(v) => *v as i64,
            Degree::Multiple { var, .. } => return Err(RrError::Symbolic(var.clone())),
        };
        let j = c.j as i64;
        d += rat(j * j - 1, j) * int(deg);
    }
    match &cfg.x_a1 {
        A1Aggregate::Absent => {}
        A1Aggregate::Known(x) => d += rat(3 * *x as i64, 2),
        A1Aggregate::Symbolic(v) => return Err(RrError::Symbolic(v.clone())),
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(pairs: &[(u64, u64)]) -> Basket {
        Basket::from_pairs(pairs).unwrap()
    }

    #[test]
    fn orbifold_contributions() {
        assert_eq!(c_orbifold(5, 2, 0).unwrap(), int(0));
        assert_eq!(c_orbifold(5, 2, 1).unwrap(), rat(-2, 5));
        assert_eq!(c_orbifold(5, 2, 6).unwrap(), c_orbifold(5, 2, 1).unwrap());
        assert!(c_orbifold(4, 2, 1).is_err());
    }

    #[test]
    fn curve_contributions() {
        assert_eq!(c_curve(2, 1, 1).unwrap(), rat(-1, 4));
        assert_eq!(c_curve(3, 1, 1).unwrap(), rat(-1, 3));
        assert_eq!(c_curve(4, 1, 2).unwrap(), rat(-1, 2));
        assert!(c_curve(4, 2, 1).is_err());
    }

    // #13 with the local indices forced by the closed form s²/660 + 2 − F2(s) − F3(s) − F5(2s) − F11(2s).
    fn group_c_h0(s: i64) -> Rational {
        let basket = b(&[(3, 1), (5, 1), (11, 4)]);
        let cfg = CurveConfig { curves: vec![], x_a1: A1Aggregate::Known(165) };
        let idx = LocalIndexAssignment(vec![
            s.rem_euclid(3) as u64,
            (2 * s).rem_euclid(5) as u64,
            (6 * s).rem_euclid(11) as u64,
        ]);
        h0_sa(68, &rat(1, 330), &cfg, &basket, &idx, s).unwrap()
    }

    #[test]
    fn h0_group_c_rows() {
        assert_eq!(group_c_h0(5), int(1));
        assert_eq!(group_c_h0(1), int(0));
        assert_eq!(group_c_h0(33), int(3));
    }

    #[test]
    fn h0_trivial_and_range() {
        let e = Basket::default();
        let cfg = CurveConfig::default();
        let idx = LocalIndexAssignment(vec![]);
        assert_eq!(h0_sa(5, &int(2), &cfg, &e, &idx, 1).unwrap(), int(3));
        assert!(h0_sa(5, &int(2), &cfg, &e, &idx, 5).is_err());
        assert!(h0_sa(5, &int(2), &cfg, &e, &idx, 0).is_err());
    }

    #[test]
    fn builder_group_a_case_one() {
        let ctx = RrContext {
            q: 84,
            rxc13: 84,
            basket: b(&[(5, 1)]),
            curves: CurveConfig {
                curves: [3, 4, 7].iter().map(|&j| CrepantCurve::new(j, 5, UnitKnowledge::FreeResidue)).collect(),
                x_a1: A1Aggregate::Absent,
            },
        };
        let (sys, drops) = residue_term_builder(10, 2, &ctx).unwrap();
        assert_eq!(sys.constraints[0].constant, rat(1, 21));
        assert_eq!(sys.constraints[0].terms.len(), 3);
        assert_eq!(sys.domain_size(), 84);
        assert_eq!(drops.len(), 1);
        assert!(!sys.solve().unwrap().solvable);
    }

    #[test]
    fn builder_case_twenty() {
        let ctx = RrContext {
            q: 72,
            rxc13: 864,
            basket: b(&[(2, 1), (3, 1), (5, 1), (6, 1)]),
            curves: CurveConfig { curves: vec![], x_a1: A1Aggregate::Symbolic("x".into()) },
        };
        let mut sys = ResidueConstraintSystem::new();
        add_integrality_constraint(&mut sys, &ctx, 1, 6, CurveSource::CartierInCodim2).unwrap();
        let c = &sys.constraints[0];
        assert_eq!(c.constant, rat(18, 1) * ctx.a2mk());
        assert_eq!(c.constant, rat(1, 10));
        assert_eq!(c.terms.len(), 4);
        assert_eq!(sys.domain_size(), 180);
        assert!(!sys.solve().unwrap().solvable);
    }

    #[test]
    fn builder_empty_context() {
        let ctx = RrContext { q: 2, rxc13: 8, basket: Basket::default(), curves: CurveConfig::default() };
        let (sys, drops) = residue_term_builder(1, 1, &ctx).unwrap();
        assert!(sys.constraints[0].terms.is_empty());
        assert!(sys.unknowns.is_empty());
        assert!(drops.is_empty());
    }

    #[test]
    fn km_cases() {
        assert_eq!(km_bound(1, 3, 0, 0).unwrap(), int(3));
        assert_eq!(km_bound(2, 1, 0, 0).unwrap(), rat(16, 5));
        assert_eq!(km_bound(3, 1, 57, 67).unwrap(), rat(17956, 5429));
        assert!(km_bound(1, 1, 1, 2).is_err());
    }

    #[test]
    fn nabla_rows() {
        assert_eq!(nabla(84, 84, 96), rat(6259, 84));
        assert_eq!(display_hundredths(&nabla(84, 84, 96)), "74.52");
        assert_eq!(nabla(82, 3362, 928), rat(135, 2));
        assert_eq!(display_hundredths(&nabla(82, 3362, 928)), "67.5");
        assert_eq!(nabla(70, 490, 218), rat(921, 10));
        assert_eq!(display_hundredths(&nabla(70, 490, 218)), "92.1");
    }

    #[test]
    fn delta_bounds() {
        let cfg = CurveConfig { curves: vec![CrepantCurve::new(5, 33, UnitKnowledge::AnyUnit)], x_a1: A1Aggregate::Known(33) };
        assert_eq!(delta_lower_bound(&cfg).unwrap(), rat(2079, 10));
        assert_eq!(delta_lower_bound(&CurveConfig::default()).unwrap(), int(0));
        let a1 = CurveConfig { curves: vec![], x_a1: A1Aggregate::Known(2) };
        assert_eq!(delta_lower_bound(&a1).unwrap(), int(3));
        let sym = CurveConfig { curves: vec![], x_a1: A1Aggregate::Symbolic("x".into()) };
        assert!(delta_lower_bound(&sym).is_err());
    }
}
