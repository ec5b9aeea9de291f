use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use qfano_core::arith::{rat, sigma_pair, Rational};
use qfano_core::basket::{enumerate_r, half_units};
use qfano_core::rr::c_orbifold;
use qfano_core::search::run_search;
use qfano_core::{DuValType, LbContext, Mode, SearchConfig, WeightedP3};

fn all_r() -> &'static [Vec<u64>] {
    static R: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    R.get_or_init(enumerate_r)
}

proptest! {
    #[test]
    fn sigma_pair_is_periodic_and_even(r in 1i64..=50, x in -500i64..500, k in -5i64..5) {
        let f = sigma_pair(x, r).unwrap();
        prop_assert_eq!(sigma_pair(x + k * r, r).unwrap(), f.clone());
        prop_assert_eq!(sigma_pair(-x, r).unwrap(), f);
    }
}

#[test]
fn sigma_pair_sums_over_a_period() {
    for r in 1..=50i64 {
        let total: Rational = (0..r).map(|x| sigma_pair(x, r).unwrap()).sum();
        assert_eq!(total, rat(r * r - 1, 12), "r = {r}");
    }
}

// −i(r²−1)/12r + Σ_{k<i} F_r(kb) without reducing i
fn c_raw(r: u64, b: u64, i: u64) -> Rational {
    let (r, b, i) = (r as i64, b as i64, i as i64);
    let mut v = rat(-i * (r * r - 1), 12 * r);
    for k in 0..i {
        v += rat((k * b).rem_euclid(r) * (-k * b).rem_euclid(r), 2 * r);
    }
    v
}

#[test]
fn c_orbifold_is_periodic_in_the_index() {
    for r in 2..=24u64 {
        for b in half_units(r) {
            for i in 0..3 * r {
                assert_eq!(c_orbifold(r, b, i).unwrap(), c_raw(r, b, i), "r={r} b={b} i={i}");
                assert_eq!(c_raw(r, b, i + r), c_raw(r, b, i));
            }
        }
    }
}

fn du_val_types() -> Vec<DuValType> {
    let mut out: Vec<_> = (1..=24).map(DuValType::A).collect();
    out.extend((4..=24).map(DuValType::D));
    out.extend([DuValType::E6, DuValType::E7, DuValType::E8]);
    out
}

#[test]
fn class_group_order_is_j() {
    for t in du_val_types() {
        let j = t.invariants().3;
        assert_eq!(t.class_group_order(), j, "{t}");
        assert_eq!(t.classes().len() as u64, j, "{t}");
    }
}

#[test]
fn integral_multiplicity_dichotomy() {
    for t in du_val_types() {
        for c in t.classes() {
            if t.is_trivial_class(&c).unwrap() {
                continue;
            }
            let integral = t.has_integral_multiplicity(&c).unwrap();
            match t {
                DuValType::A(n) => {
                    // position of the class in Z/(n+1)
                    let k = c
                        .pairing
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| (i as i64 + 1) * x)
                        .sum::<i64>()
                        .rem_euclid(n as i64 + 1) as usize;
                    assert_eq!(integral, k.gcd(&(n + 1)) != 1, "{t} {:?}", c.pairing);
                }
                _ => assert!(integral, "{t} {:?}", c.pairing),
            }
        }
    }
}

// coefficient of t^s in Π 1/(1 − t^w) by direct monomial enumeration
fn count_monomials(w: [u64; 4], s: u64) -> u64 {
    let mut n = 0;
    for a in 0..=s / w[0] {
        let ra = s - a * w[0];
        for b in 0..=ra / w[1] {
            let rb = ra - b * w[1];
            for c in 0..=rb / w[2] {
                if (rb - c * w[2]) % w[3] == 0 {
                    n += 1;
                }
            }
        }
    }
    n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wps_generating_function(w in prop::array::uniform4(1u64..=40)) {
        let table = WeightedP3::new(w).unwrap().h0_table(200);
        for s in 0..=200u64 {
            prop_assert_eq!(table[s as usize], count_monomials(w, s), "s = {}", s);
        }
    }
}

#[test]
fn wps_5_6_22_33_low_degrees() {
    let p = WeightedP3::new([5, 6, 22, 33]).unwrap();
    assert_eq!(p.h0_table(12), vec![1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1]);
}

#[test]
fn search_is_independent_of_worker_count() {
    for q_min in [60, 66] {
        let run = |workers| run_search(&SearchConfig { q_min, mode: Mode::Equal, workers }).unwrap();
        let base = run(1);
        for w in [4, 8] {
            assert_eq!(run(w), base, "q = {q_min}, workers = {w}");
        }
    }
}

#[test]
fn lb_of_two_is_one() {
    for r in all_r() {
        assert_eq!(LbContext::new(r).lb(2), Ok(1), "{r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn lb_grows_by_divisibility(idx in any::<prop::sample::Index>()) {
        let r = idx.get(all_r());
        let ctx = LbContext::new(r);
        let values: Vec<u64> = (2..=24).map(|n| ctx.lb(n).unwrap()).collect();
        for (i, &a) in values.iter().enumerate() {
            prop_assert_eq!(ctx.rx() % a, 0);
            for &b in &values[i..] {
                prop_assert_eq!(b % a, 0, "R = {:?}", r);
            }
        }
    }
}

fn squarefree(n: u64) -> bool {
    (2..=n).all(|d| n % (d * d) != 0)
}

#[test]
fn coprime_squarefree_lb_is_rx() {
    let mut seen = 0;
    for r in all_r() {
        let coprime = r.iter().enumerate().all(|(i, &a)| r[i + 1..].iter().all(|&b| a.gcd(&b) == 1));
        if r.is_empty() || !coprime || !r.iter().all(|&a| squarefree(a)) {
            continue;
        }
        seen += 1;
        let ctx = LbContext::new(r);
        assert_eq!(ctx.lb(4), Ok(ctx.rx()), "{r:?}");
        if ctx.rx() % 3 != 0 {
            assert_eq!(ctx.lb(3), Ok(ctx.rx()), "{r:?}");
        }
    }
    assert!(seen > 0);
}
