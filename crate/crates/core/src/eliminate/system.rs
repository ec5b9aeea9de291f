//! Residue constraint systems: a rational constant plus unknown-residue terms,
//! asked whether some assignment makes every constraint integral.

use crate::arith::{self, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

pub const DEFAULT_CAP: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("search space of {work} assignments exceeds the cap {cap}")]
    CapExceeded { work: u128, cap: u128 },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable {0} declared twice with different domains")]
    Conflict(String),
    #[error("term on {var} is not well defined: {reason}")]
    BadTerm { var: String, reason: String },
    #[error("constraint index {0} out of range")]
    NoSuchConstraint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarKind {
    /// A residue `u ∈ [0, modulus)`, optionally restricted.
    Residue { modulus: u64, domain: Option<Vec<u64>> },
    /// An integer; free integers are enumerated modulo the lcm of their coefficient denominators.
    Integer { values: Option<Vec<i64>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unknown {
    pub name: String,
    pub kind: VarKind,
}

impl Unknown {
    pub fn residue(name: impl Into<String>, modulus: u64) -> Self {
        Unknown { name: name.into(), kind: VarKind::Residue { modulus, domain: None } }
    }

    pub fn residue_in(name: impl Into<String>, modulus: u64, domain: Vec<u64>) -> Self {
        let mut d: Vec<u64> = domain.into_iter().map(|v| v % modulus).collect();
        d.sort();
        d.dedup();
        Unknown { name: name.into(), kind: VarKind::Residue { modulus, domain: Some(d) } }
    }

    pub fn integer(name: impl Into<String>) -> Self {
        Unknown { name: name.into(), kind: VarKind::Integer { values: None } }
    }

    pub fn integer_in(name: impl Into<String>, values: Vec<i64>) -> Self {
        let mut v = values;
        v.sort();
        v.dedup();
        Unknown { name: name.into(), kind: VarKind::Integer { values: Some(v) } }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    /// `F_modulus(mult·u + offset)`.
    Quadratic { modulus: u64, mult: i64, offset: i64 },
    /// `u` itself.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "arith::serde_rational")]
    pub coeff: Rational,
    pub var: String,
    pub shape: Shape,
}

impl Term {
    pub fn quadratic(coeff: Rational, var: impl Into<String>, modulus: u64) -> Self {
        Term { coeff, var: var.into(), shape: Shape::Quadratic { modulus, mult: 1, offset: 0 } }
    }

    pub fn quadratic_at(coeff: Rational, var: impl Into<String>, modulus: u64, mult: i64, offset: i64) -> Self {
        Term { coeff, var: var.into(), shape: Shape::Quadratic { modulus, mult, offset } }
    }

    pub fn linear(coeff: Rational, var: impl Into<String>) -> Self {
        Term { coeff, var: var.into(), shape: Shape::Linear }
    }

    pub fn eval(&self, v: i64) -> Rational {
        match self.shape {
            Shape::Quadratic { modulus, mult, offset } => {
                &self.coeff * arith::sigma_pair(mult * v + offset, modulus as i64).expect("modulus ≥ 1")
            }
            Shape::Linear => &self.coeff * arith::int(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedTerm {
    pub label: String,
    #[serde(with = "arith::serde_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub label: String,
    #[serde(with = "arith::serde_rational")]
    pub constant: Rational,
    pub fixed_terms: Vec<FixedTerm>,
    pub terms: Vec<Term>,
}

impl Constraint {
    pub fn new(label: impl Into<String>, constant: Rational) -> Self {
        Constraint { label: label.into(), constant, fixed_terms: Vec::new(), terms: Vec::new() }
    }

    pub fn fixed(mut self, label: impl Into<String>, value: Rational) -> Self {
        self.fixed_terms.push(FixedTerm { label: label.into(), value });
        self
    }

    pub fn term(mut self, t: Term) -> Self {
        self.terms.push(t);
        self
    }

    /// Constant plus fixed terms.
    pub fn base(&self) -> Rational {
        self.fixed_terms.iter().fold(self.constant.clone(), |acc, f| acc + &f.value)
    }

    pub fn value(&self, assignment: &BTreeMap<String, i64>) -> Option<Rational> {
        let mut v = self.base();
        for t in &self.terms {
            v += t.eval(*assignment.get(&t.var)?);
        }
        Some(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    PrimeSplit,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub solvable: bool,
    pub witness: Option<BTreeMap<String, i64>>,
    /// Size of the full product of unknown domains.
    pub domain_size: u128,
    /// Assignments actually examined.
    pub visited: u128,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueConstraintSystem {
    pub unknowns: Vec<Unknown>,
    pub constraints: Vec<Constraint>,
    pub cap: u128,
}

impl Default for ResidueConstraintSystem {
    fn default() -> Self {
        ResidueConstraintSystem { unknowns: Vec::new(), constraints: Vec::new(), cap: DEFAULT_CAP }
    }
}

// One enumerable piece of the search: a whole variable, or a free integer's p-part.
#[derive(Debug, Clone)]
enum Part {
    Whole { var: usize },
    PrimePart { var: usize, p: u64, pe: u64 },
}

#[derive(Debug)]
struct Prepared {
    atoms: Vec<Vec<i64>>,
    moduli: Vec<u64>,
    // per variable: list of (constraint, term index)
    uses: Vec<Vec<(usize, usize)>>,
    primes: Vec<u64>,
    exps: Vec<u32>,
}

impl ResidueConstraintSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    /// Adds an unknown; re-adding an identical declaration is a no-op.
    pub fn add_unknown(&mut self, u: Unknown) -> Result<(), SystemError> {
        match self.unknowns.iter().find(|v| v.name == u.name) {
            Some(v) if *v == u => Ok(()),
            Some(_) => Err(SystemError::Conflict(u.name)),
            None => {
                self.unknowns.push(u);
                Ok(())
            }
        }
    }

    pub fn add_constraint(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    /// Replaces the domain of an existing unknown.
    pub fn restrict(&mut self, name: &str, kind: VarKind) -> Result<(), SystemError> {
        let u = self
            .unknowns
            .iter_mut()
            .find(|v| v.name == name)
            .ok_or_else(|| SystemError::UnknownVariable(name.to_string()))?;
        u.kind = kind;
        Ok(())
    }

    fn index(&self, name: &str) -> Result<usize, SystemError> {
        self.unknowns
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| SystemError::UnknownVariable(name.to_string()))
    }

    pub fn validate(&self) -> Result<(), SystemError> {
        for c in &self.constraints {
            for t in &c.terms {
                let v = &self.unknowns[self.index(&t.var)?];
                let bad = |reason: &str| SystemError::BadTerm { var: t.var.clone(), reason: reason.to_string() };
                match (&v.kind, &t.shape) {
                    (VarKind::Residue { modulus, .. }, Shape::Quadratic { modulus: m, mult, .. }) => {
                        if *m == 0 || (*mult as i128 * *modulus as i128) % *m as i128 != 0 {
                            return Err(bad("inner modulus must divide mult times the residue modulus"));
                        }
                    }
                    (VarKind::Integer { .. }, Shape::Quadratic { modulus: m, .. }) if *m == 0 => {
                        return Err(bad("zero modulus"));
                    }
                    (VarKind::Integer { .. }, _) => {}
                    (VarKind::Residue { .. }, Shape::Linear) => {
                        return Err(bad("linear terms need an integer unknown"));
                    }
                }
            }
        }
        for v in &self.unknowns {
            if let VarKind::Residue { modulus, domain } = &v.kind {
                if *modulus == 0 || domain.as_ref().is_some_and(|d| d.iter().any(|x| x >= modulus)) {
                    return Err(SystemError::BadTerm { var: v.name.clone(), reason: "bad residue domain".into() });
                }
            }
        }
        Ok(())
    }

    /// Modulus a free integer is enumerated over.
    fn integer_modulus(&self, var: usize) -> u64 {
        let name = &self.unknowns[var].name;
        let mut m = 1u64;
        for c in &self.constraints {
            for t in c.terms.iter().filter(|t| &t.var == name) {
                let d = match t.shape {
                    Shape::Linear => t.coeff.denom().to_u64().expect("small denominator"),
                    Shape::Quadratic { modulus, mult, .. } => {
                        // F_m(mult·v + c) has period m/gcd(m, mult)
                        modulus / modulus.gcd(&mult.unsigned_abs())
                    }
                };
                m = m.lcm(&d);
            }
        }
        m
    }

    fn atoms(&self, var: usize) -> Vec<i64> {
        match &self.unknowns[var].kind {
            VarKind::Residue { modulus, domain } => match domain {
                Some(d) => d.iter().map(|&x| x as i64).collect(),
                None => (0..*modulus as i64).collect(),
            },
            VarKind::Integer { values: Some(v) } => v.clone(),
            VarKind::Integer { values: None } => (0..self.integer_modulus(var) as i64).collect(),
        }
    }

    fn is_free_integer(&self, var: usize) -> bool {
        matches!(self.unknowns[var].kind, VarKind::Integer { values: None })
            && self.constraints.iter().flat_map(|c| &c.terms).all(|t| {
                t.var != self.unknowns[var].name || matches!(t.shape, Shape::Linear)
            })
    }

    /// Logical size of the assignment space.
    pub fn domain_size(&self) -> u128 {
        (0..self.unknowns.len()).map(|i| self.atoms(i).len() as u128).product()
    }

    fn prepare(&self) -> Result<Prepared, SystemError> {
        self.validate()?;
        let n = self.unknowns.len();
        let atoms: Vec<Vec<i64>> = (0..n).map(|i| self.atoms(i)).collect();
        let moduli: Vec<u64> = (0..n).map(|i| self.integer_modulus(i)).collect();
        let mut uses = vec![Vec::new(); n];
        for (ci, c) in self.constraints.iter().enumerate() {
            for (ti, t) in c.terms.iter().enumerate() {
                uses[self.index(&t.var)?].push((ci, ti));
            }
        }
        let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
        let mut note = |x: &Rational| {
            let d = x.denom().to_u64().expect("small denominator");
            for (p, a) in arith::factor(d) {
                let e = exps.entry(p).or_insert(0);
                *e = (*e).max(a);
            }
        };
        for c in &self.constraints {
            note(&c.base());
        }
        for (v, vs) in uses.iter().enumerate() {
            for &(ci, ti) in vs {
                let t = &self.constraints[ci].terms[ti];
                if self.is_free_integer(v) {
                    note(&t.coeff);
                } else {
                    for &a in &atoms[v] {
                        note(&t.eval(a));
                    }
                }
            }
        }
        let primes: Vec<u64> = exps.keys().copied().collect();
        let exps: Vec<u32> = exps.values().copied().collect();
        Ok(Prepared { atoms, moduli, uses, primes, exps })
    }

    /// Components of primes linked by shared whole variables, with their parts.
    fn components(&self, prep: &Prepared) -> Vec<(Vec<usize>, Vec<Part>)> {
        let np = prep.primes.len();
        let mut parent: Vec<usize> = (0..np).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut whole_primes: Vec<Vec<usize>> = vec![Vec::new(); self.unknowns.len()];
        for v in 0..self.unknowns.len() {
            if self.is_free_integer(v) {
                continue;
            }
            let mut ps = BTreeSet::new();
            for &(ci, ti) in &prep.uses[v] {
                let t = &self.constraints[ci].terms[ti];
                for &a in &prep.atoms[v] {
                    let d = t.eval(a).denom().to_u64().expect("small denominator");
                    for (p, _) in arith::factor(d) {
                        ps.insert(prep.primes.iter().position(|&q| q == p).expect("prime noted"));
                    }
                }
            }
            let ps: Vec<usize> = ps.into_iter().collect();
            for w in ps.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
            whole_primes[v] = ps;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..np {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out = Vec::new();
        for (_, ps) in groups {
            let mut parts = Vec::new();
            for v in 0..self.unknowns.len() {
                if self.is_free_integer(v) {
                    for &pi in &ps {
                        let p = prep.primes[pi];
                        let e = arith::nu(prep.moduli[v], p);
                        if e > 0 && e != u32::MAX {
                            parts.push(Part::PrimePart { var: v, p, pe: p.pow(e) });
                        }
                    }
                } else if whole_primes[v].first().is_some_and(|f| ps.contains(f)) {
                    parts.push(Part::Whole { var: v });
                }
            }
            out.push((ps, parts));
        }
        out
    }

    fn part_values(&self, prep: &Prepared, part: &Part) -> Vec<i64> {
        match part {
            Part::Whole { var } => prep.atoms[*var].clone(),
            Part::PrimePart { pe, .. } => (0..*pe as i64).collect(),
        }
    }

    /// Enumerates one component, calling `visit` on every satisfying choice of part indices.
    /// Returns the number of assignments examined. `visit` returns false to stop.
    fn enumerate_component(
        &self,
        prep: &Prepared,
        primes: &[usize],
        parts: &[Part],
        mut visit: impl FnMut(&[usize]) -> bool,
    ) -> u128 {
        // slots: (constraint, prime) pairs, each reduced modulo p^e
        let slots: Vec<(usize, usize)> =
            (0..self.constraints.len()).flat_map(|c| primes.iter().map(move |&p| (c, p))).collect();
        let pes: Vec<u64> = slots.iter().map(|&(_, pi)| prep.primes[pi].pow(prep.exps[pi])).collect();
        let reduce = |x: &Rational, slot: usize| -> u64 {
            let (_, pi) = slots[slot];
            p_part(x, prep.primes[pi], prep.exps[pi], pes[slot])
        };
        let base: Vec<u64> = slots.iter().enumerate().map(|(s, &(c, _))| reduce(&self.constraints[c].base(), s)).collect();
        let values: Vec<Vec<i64>> = parts.iter().map(|p| self.part_values(prep, p)).collect();
        let tables: Vec<Vec<Vec<u64>>> = parts
            .iter()
            .zip(&values)
            .map(|(part, vals)| {
                let (var, only) = match part {
                    Part::Whole { var } => (*var, None),
                    Part::PrimePart { var, p, .. } => (*var, Some(*p)),
                };
                vals.iter()
                    .map(|&a| {
                        slots
                            .iter()
                            .enumerate()
                            .map(|(s, &(c, pi))| {
                                if only.is_some_and(|p| p != prep.primes[pi]) {
                                    return 0;
                                }
                                let mut acc = Rational::zero();
                                for &(ci, ti) in &prep.uses[var] {
                                    if ci == c {
                                        acc += self.constraints[ci].terms[ti].eval(a);
                                    }
                                }
                                reduce(&acc, s)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; parts.len()];
        let mut visited = 0u128;
        loop {
            visited += 1;
            let ok = (0..slots.len()).all(|s| {
                let mut sum = base[s] as u128;
                for (f, &k) in idx.iter().enumerate() {
                    sum += tables[f][k][s] as u128;
                }
                sum % pes[s] as u128 == 0
            });
            if ok && !visit(&idx) {
                return visited;
            }
            // advance the mixed-radix counter, last part fastest
            let mut f = parts.len();
            loop {
                if f == 0 {
                    return visited;
                }
                f -= 1;
                idx[f] += 1;
                if idx[f] < values[f].len() {
                    break;
                }
                idx[f] = 0;
            }
        }
    }

    fn work(&self, prep: &Prepared, comps: &[(Vec<usize>, Vec<Part>)]) -> u128 {
        comps
            .iter()
            .map(|(_, parts)| parts.iter().map(|p| self.part_values(prep, p).len() as u128).product::<u128>())
            .sum()
    }

    fn check_cap(&self, work: u128) -> Result<(), SystemError> {
        if work > self.cap {
            return Err(SystemError::CapExceeded { work, cap: self.cap });
        }
        Ok(())
    }

    /// Whether some assignment makes every constraint integral, with a witness or the exhaustion counts.
    pub fn exists_integral_solution(&self) -> Result<SolveOutcome, SystemError> {
        self.solve()
    }

    /// Exhaustive decision, prime by prime.
    pub fn solve(&self) -> Result<SolveOutcome, SystemError> {
        let prep = self.prepare()?;
        let comps = self.components(&prep);
        self.check_cap(self.work(&prep, &comps))?;
        let mut visited = 0u128;
        let mut chosen: Vec<(Part, i64)> = Vec::new();
        for (primes, parts) in &comps {
            let values: Vec<Vec<i64>> = parts.iter().map(|p| self.part_values(&prep, p)).collect();
            let mut found: Option<Vec<usize>> = None;
            visited += self.enumerate_component(&prep, primes, parts, |idx| {
                found = Some(idx.to_vec());
                false
            });
            match found {
                Some(idx) => {
                    for (f, &k) in idx.iter().enumerate() {
                        chosen.push((parts[f].clone(), values[f][k]));
                    }
                }
                None => {
                    return Ok(SolveOutcome {
                        solvable: false,
                        witness: None,
                        domain_size: self.domain_size(),
                        visited,
                        strategy: Strategy::PrimeSplit,
                    });
                }
            }
        }
        let witness = self.assemble(&prep, &chosen);
        Ok(SolveOutcome {
            solvable: true,
            witness: Some(witness),
            domain_size: self.domain_size(),
            visited,
            strategy: Strategy::PrimeSplit,
        })
    }

    fn assemble(&self, prep: &Prepared, chosen: &[(Part, i64)]) -> BTreeMap<String, i64> {
        let mut out = BTreeMap::new();
        let mut crt_parts: HashMap<usize, Vec<(u64, u64)>> = HashMap::new();
        for (part, v) in chosen {
            match part {
                Part::Whole { var } => {
                    out.insert(self.unknowns[*var].name.clone(), *v);
                }
                Part::PrimePart { var, pe, .. } => crt_parts.entry(*var).or_default().push((*v as u64, *pe)),
            }
        }
        for (v, u) in self.unknowns.iter().enumerate() {
            if out.contains_key(&u.name) {
                continue;
            }
            let val = if self.is_free_integer(v) {
                arith::crt(crt_parts.get(&v).map_or(&[][..], |x| &x[..])).0 as i64
            } else {
                prep.atoms[v].first().copied().unwrap_or(0)
            };
            out.insert(u.name.clone(), val);
        }
        out
    }

    /// Full product enumeration with exact arithmetic.
    pub fn solve_direct(&self) -> Result<SolveOutcome, SystemError> {
        self.validate()?;
        let size = self.domain_size();
        self.check_cap(size)?;
        let atoms: Vec<Vec<i64>> = (0..self.unknowns.len()).map(|i| self.atoms(i)).collect();
        let mut visited = 0u128;
        let mut witness = None;
        self.for_each_assignment(&atoms, |a| {
            visited += 1;
            if self.constraints.iter().all(|c| c.value(a).is_some_and(|v| v.is_integer())) {
                witness = Some(a.clone());
                return false;
            }
            true
        });
        Ok(SolveOutcome {
            solvable: witness.is_some(),
            witness,
            domain_size: size,
            visited,
            strategy: Strategy::Direct,
        })
    }

    fn for_each_assignment(&self, atoms: &[Vec<i64>], mut f: impl FnMut(&BTreeMap<String, i64>) -> bool) {
        if atoms.iter().any(|a| a.is_empty()) {
            return;
        }
        let mut idx = vec![0usize; atoms.len()];
        let mut a: BTreeMap<String, i64> =
            self.unknowns.iter().zip(atoms).map(|(u, v)| (u.name.clone(), v[0])).collect();
        loop {
            if !f(&a) {
                return;
            }
            let mut i = 0;
            loop {
                if i == atoms.len() {
                    return;
                }
                idx[i] += 1;
                if idx[i] < atoms[i].len() {
                    a.insert(self.unknowns[i].name.clone(), atoms[i][idx[i]]);
                    break;
                }
                idx[i] = 0;
                a.insert(self.unknowns[i].name.clone(), atoms[i][0]);
                i += 1;
            }
        }
    }

    /// All tuples of values of `vars` extendable to a full solution.
    /// Free integers are reported modulo their enumeration modulus.
    pub fn project(&self, vars: &[&str]) -> Result<BTreeSet<Vec<i64>>, SystemError> {
        let prep = self.prepare()?;
        let comps = self.components(&prep);
        self.check_cap(self.work(&prep, &comps))?;
        let targets: Vec<usize> = vars.iter().map(|v| self.index(v)).collect::<Result<_, _>>()?;
        // per component: set of partial assignments restricted to target parts
        let mut per_comp: Vec<(Vec<Part>, BTreeSet<Vec<i64>>)> = Vec::new();
        let mut covered: BTreeSet<usize> = BTreeSet::new();
        for (primes, parts) in &comps {
            let keep: Vec<usize> = (0..parts.len())
                .filter(|&f| {
                    let v = match &parts[f] {
                        Part::Whole { var } | Part::PrimePart { var, .. } => *var,
                    };
                    targets.contains(&v)
                })
                .collect();
            for &f in &keep {
                let (Part::Whole { var } | Part::PrimePart { var, .. }) = &parts[f];
                covered.insert(*var);
            }
            let values: Vec<Vec<i64>> = parts.iter().map(|p| self.part_values(&prep, p)).collect();
            let mut seen = BTreeSet::new();
            self.enumerate_component(&prep, primes, parts, |idx| {
                seen.insert(keep.iter().map(|&f| values[f][idx[f]]).collect::<Vec<_>>());
                true
            });
            if seen.is_empty() {
                return Ok(BTreeSet::new());
            }
            per_comp.push((keep.iter().map(|&f| parts[f].clone()).collect(), seen));
        }
        // targets untouched by any prime take every value in their domain
        for &v in &targets {
            if !covered.contains(&v) {
                let vals: BTreeSet<Vec<i64>> = if self.is_free_integer(v) {
                    BTreeSet::from([vec![0]])
                } else {
                    prep.atoms[v].iter().map(|&a| vec![a]).collect()
                };
                per_comp.push((vec![Part::Whole { var: v }], vals));
                covered.insert(v);
            }
        }
        let mut combos: Vec<Vec<(Part, i64)>> = vec![Vec::new()];
        for (parts, set) in &per_comp {
            let mut next = Vec::new();
            for c in &combos {
                for row in set {
                    let mut c2 = c.clone();
                    c2.extend(parts.iter().cloned().zip(row.iter().copied()));
                    next.push(c2);
                }
            }
            combos = next;
        }
        let mut out = BTreeSet::new();
        for combo in combos {
            let mut crt_parts: HashMap<usize, Vec<(u64, u64)>> = HashMap::new();
            let mut whole: HashMap<usize, i64> = HashMap::new();
            for (part, v) in combo {
                match part {
                    Part::Whole { var } => {
                        whole.insert(var, v);
                    }
                    Part::PrimePart { var, pe, .. } => crt_parts.entry(var).or_default().push((v as u64, pe)),
                }
            }
            out.insert(
                targets
                    .iter()
                    .map(|v| match whole.get(v) {
                        Some(&x) => x,
                        None => arith::crt(crt_parts.get(v).map_or(&[][..], |x| &x[..])).0 as i64,
                    })
                    .collect(),
            );
        }
        Ok(out)
    }

    /// Values taken by constraint `idx` over assignments satisfying every constraint.
    pub fn integral_values(&self, idx: usize) -> Result<(BTreeSet<Rational>, u128), SystemError> {
        self.validate()?;
        if idx >= self.constraints.len() {
            return Err(SystemError::NoSuchConstraint(idx));
        }
        self.check_cap(self.domain_size())?;
        let atoms: Vec<Vec<i64>> = (0..self.unknowns.len()).map(|i| self.atoms(i)).collect();
        let mut out = BTreeSet::new();
        let mut visited = 0u128;
        self.for_each_assignment(&atoms, |a| {
            visited += 1;
            let vals: Vec<Rational> = self.constraints.iter().map(|c| c.value(a).expect("validated")).collect();
            if vals.iter().all(|v| v.is_integer()) {
                out.insert(vals[idx].clone());
            }
            true
        });
        Ok((out, visited))
    }

    pub fn is_free_integer_named(&self, name: &str) -> Result<bool, SystemError> {
        Ok(self.is_free_integer(self.index(name)?))
    }

    /// Enumeration modulus of a free integer unknown.
    pub fn modulus_of(&self, name: &str) -> Result<u64, SystemError> {
        Ok(self.integer_modulus(self.index(name)?))
    }
}

// `x · p^e mod p^e` for a rational with ν_p(den x) ≤ e.
fn p_part(x: &Rational, p: u64, e: u32, pe: u64) -> u64 {
    if e == 0 {
        return 0;
    }
    let pb = BigInt::from(p);
    let mut d = x.denom().clone();
    let mut k = 0u32;
    while (&d % &pb).is_zero() {
        d /= &pb;
        k += 1;
    }
    debug_assert!(k <= e);
    let m = BigInt::from(pe);
    let d_inv = BigInt::from(
        arith::mod_inverse((&d % &m).to_i64().expect("fits"), pe as i64).expect("unit") as u64,
    );
    let scale = BigInt::from(p).pow(e - k);
    let v = (x.numer() * scale * d_inv).mod_floor(&m);
    v.to_u64().expect("reduced")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn group_a_one() -> ResidueConstraintSystem {
        let mut s = ResidueConstraintSystem::new();
        let mut c = Constraint::new("D=2A", rat(1, 21));
        for j in [3u64, 4, 7] {
            let name = format!("a{j}");
            s.add_unknown(Unknown::residue(&name, j)).unwrap();
            c = c.term(Term::quadratic(arith::int(-10), name, j));
        }
        s.add_constraint(c);
        s
    }

    #[test]
    fn group_a_case_one_is_unsolvable() {
        let s = group_a_one();
        let out = s.solve().unwrap();
        assert!(!out.solvable);
        assert_eq!(out.domain_size, 84);
        let d = s.solve_direct().unwrap();
        assert!(!d.solvable);
        assert_eq!(d.visited, 84);
    }

    #[test]
    fn empty_system_is_solvable() {
        let mut s = ResidueConstraintSystem::new();
        s.add_constraint(Constraint::new("c", arith::int(0)));
        let out = s.solve().unwrap();
        assert!(out.solvable);
        assert_eq!(out.witness, Some(BTreeMap::new()));
    }

    #[test]
    fn lone_fraction_is_unsolvable() {
        let mut s = ResidueConstraintSystem::new();
        s.add_constraint(Constraint::new("c", rat(1, 2)));
        assert!(!s.solve().unwrap().solvable);
    }

    #[test]
    fn free_integer_split_by_crt() {
        // 1/70 − 3x/70 ∈ ℤ  ⇔  3x ≡ 1 (mod 70)  ⇔  x ≡ 47
        let mut s = ResidueConstraintSystem::new();
        s.add_unknown(Unknown::integer("x")).unwrap();
        s.add_constraint(Constraint::new("c", rat(1, 70)).term(Term::linear(rat(-3, 70), "x")));
        let out = s.solve().unwrap();
        assert_eq!(out.witness.unwrap()["x"], 47);
        assert_eq!(s.project(&["x"]).unwrap(), BTreeSet::from([vec![47]]));
    }

    #[test]
    fn witness_satisfies_every_constraint() {
        let mut s = ResidueConstraintSystem::new();
        s.add_unknown(Unknown::residue("a", 5)).unwrap();
        s.add_unknown(Unknown::integer("x")).unwrap();
        s.add_constraint(
            Constraint::new("c1", rat(1, 5))
                .term(Term::linear(rat(-2, 5), "x"))
                .term(Term::quadratic(arith::int(-2), "a", 5)),
        );
        let out = s.solve().unwrap();
        assert!(out.solvable);
        let w = out.witness.unwrap();
        assert!(s.constraints[0].value(&w).unwrap().is_integer());
    }

    #[test]
    fn cap_is_enforced() {
        let s = group_a_one().with_cap(10);
        assert_eq!(s.solve_direct(), Err(SystemError::CapExceeded { work: 84, cap: 10 }));
    }

    #[test]
    fn unknown_variable_rejected() {
        let mut s = ResidueConstraintSystem::new();
        s.add_constraint(Constraint::new("c", rat(1, 2)).term(Term::quadratic(arith::int(1), "nope", 2)));
        assert_eq!(s.solve(), Err(SystemError::UnknownVariable("nope".into())));
    }

    #[test]
    fn conflicting_declarations_rejected() {
        let mut s = ResidueConstraintSystem::new();
        s.add_unknown(Unknown::residue("a", 5)).unwrap();
        s.add_unknown(Unknown::residue("a", 5)).unwrap();
        assert!(s.add_unknown(Unknown::residue("a", 7)).is_err());
    }

    #[test]
    fn integral_values_collects_totals() {
        let mut s = ResidueConstraintSystem::new();
        s.add_unknown(Unknown::residue("a", 3)).unwrap();
        s.add_constraint(Constraint::new("h", rat(4, 3)).term(Term::quadratic(arith::int(-1), "a", 3)));
        let (vals, visited) = s.integral_values(0).unwrap();
        assert_eq!(vals, BTreeSet::from([arith::int(1)]));
        assert_eq!(visited, 3);
    }
}
