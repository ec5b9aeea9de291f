//! Random residue systems and an independent exhaustive enumerator.

use proptest::prelude::*;
use qfano_core::eliminate::system::{Constraint, ResidueConstraintSystem, Term, Unknown};
use qfano_core::arith::rat;
use qfano_core::Rational;

// Independent evaluation: F_m(x) = a·b/(2m) with a = x mod m, b = (−x) mod m.
fn f_manual(x: i64, m: i64) -> Rational {
    let a = ((x % m) + m) % m;
    let b = (m - a) % m;
    rat(a * b, 2 * m)
}

#[derive(Debug, Clone)]
pub struct Spec {
    vars: Vec<(u64, Option<Vec<u64>>)>,
    // (constant num, den, terms: (var, coeff num, coeff den, mult, offset))
    cons: Vec<(i64, i64, Vec<(usize, i64, i64, i64, i64, bool)>)>,
}

pub fn spec() -> impl Strategy<Value = Spec> {
    let var = (2u64..=13).prop_flat_map(|m| {
        let dom = proptest::option::of(proptest::collection::btree_set(0..m, 1..=m as usize));
        (Just(m), dom.prop_map(|d| d.map(|s| s.into_iter().collect::<Vec<u64>>())))
    });
    proptest::collection::vec(var, 1..=4)
        .prop_filter("domain ≤ 10⁵", |vs| vs.iter().map(|(m, d)| d.as_ref().map_or(*m, |d| d.len() as u64)).product::<u64>() <= 100_000)
        .prop_flat_map(|vars| {
            let n = vars.len();
            let term = (0..n, -6i64..=6, 1i64..=12, 0i64..=3, -5i64..=5, any::<bool>());
            let con = (-20i64..=20, 1i64..=60, proptest::collection::vec(term, 1..=5));
            (Just(vars), proptest::collection::vec(con, 1..=3))
        })
        .prop_map(|(vars, cons)| Spec { vars, cons })
}

fn inner_modulus(m: i64, mult: i64, wide: bool) -> i64 {
    match (mult, wide) {
        (0, _) => 1,
        (_, true) => m * mult,
        (_, false) => m,
    }
}

pub fn build(s: &Spec) -> ResidueConstraintSystem {
    let mut sys = ResidueConstraintSystem::new();
    for (i, (m, d)) in s.vars.iter().enumerate() {
        let u = match d {
            Some(d) => Unknown::residue_in(format!("v{i}"), *m, d.clone()),
            None => Unknown::residue(format!("v{i}"), *m),
        };
        sys.add_unknown(u).unwrap();
    }
    for (k, (cn, cd, terms)) in s.cons.iter().enumerate() {
        let mut c = Constraint::new(format!("c{k}"), rat(*cn, *cd));
        for &(v, a, b, mult, off, wide) in terms {
            // the inner modulus divides mult·m
            let m = s.vars[v].0 as i64;
            let inner = inner_modulus(m, mult, wide);
            c = c.term(Term::quadratic_at(rat(a, b), format!("v{v}"), inner as u64, mult, off));
        }
        sys.add_constraint(c);
    }
    sys
}

// Reverse-lexicographic enumeration over the last variable first.
pub fn oracle(s: &Spec) -> bool {
    let doms: Vec<Vec<i64>> = s
        .vars
        .iter()
        .map(|(m, d)| d.clone().unwrap_or_else(|| (0..*m).collect()).into_iter().rev().map(|x| x as i64).collect())
        .collect();
    let n = doms.len();
    let mut idx = vec![0usize; n];
    loop {
        let ok = s.cons.iter().all(|(cn, cd, terms)| {
            let mut v = rat(*cn, *cd);
            for &(var, a, b, mult, off, wide) in terms {
                let m = s.vars[var].0 as i64;
                let inner = inner_modulus(m, mult, wide);
                v += rat(a, b) * f_manual(mult * doms[var][idx[var]] + off, inner);
            }
            v.is_integer()
        });
        if ok {
            return true;
        }
        let mut k = n;
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < doms[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}


/// Solver, direct solver and enumerator agree; any witness satisfies every constraint.
pub fn check(s: &Spec) -> Result<(), TestCaseError> {
    let sys = build(s);
    let out = sys.exists_integral_solution().unwrap();
    prop_assert_eq!(out.solvable, oracle(s));
    prop_assert_eq!(sys.solve_direct().unwrap().solvable, out.solvable);
    if let Some(w) = out.witness {
        for c in &sys.constraints {
            prop_assert!(c.value(&w).unwrap().is_integer());
        }
    }
    Ok(())
}
