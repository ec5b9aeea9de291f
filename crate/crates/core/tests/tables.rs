use qfano_core::eliminate::{cases, run_pipeline_on};
use qfano_core::search::{run_search, Candidate, Mode, SearchConfig};
use qfano_core::{LbContext, WeightedP3};
use std::collections::BTreeSet;
use std::sync::OnceLock;

const ABOVE_66: &str = include_str!("fixtures/candidates_q_above_66.txt");

const AT_66: &str = include_str!("fixtures/candidates_q_66.txt");

type Row = (Vec<(u64, u64)>, u64, u64, u64, u64, Vec<(u64, u64)>, String);

fn nums(s: &str) -> Vec<u64> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| t.parse().unwrap()).collect()
}

fn parse(table: &str) -> BTreeSet<Row> {
    table
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('|').map(str::trim).collect();
            let basket = f[0]
                .split_whitespace()
                .map(|p| {
                    let (r, b) = p.split_once('/').unwrap();
                    (r.parse().unwrap(), b.parse().unwrap())
                })
                .collect();
            let mut pl: Vec<(u64, u64)> = nums(f[5]).into_iter().zip(nums(f[6])).collect();
            pl.sort();
            (basket, f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap(), f[4].parse().unwrap(), pl, f[7].to_string())
        })
        .collect()
}

fn row_of(c: &Candidate) -> Row {
    let basket = c.basket.points().iter().map(|p| (p.r, p.b)).collect();
    let mut pl: Vec<(u64, u64)> = c.prime_powers.iter().copied().zip(c.lb_values.iter().copied()).collect();
    pl.sort();
    (basket, c.q, c.r_x, c.rxc13, c.rxc2c1, pl, c.nabla_display.clone())
}

fn search(mode: Mode) -> Vec<Candidate> {
    static GREATER: OnceLock<Vec<Candidate>> = OnceLock::new();
    static EQUAL: OnceLock<Vec<Candidate>> = OnceLock::new();
    let cell = if mode == Mode::Greater { &GREATER } else { &EQUAL };
    cell.get_or_init(|| run_search(&SearchConfig { q_min: 66, mode, workers: 4 }).unwrap()).clone()
}

#[test]
fn search_above_66_reproduced() {
    let found = search(Mode::Greater);
    assert_eq!(found.len(), 36);
    let got: BTreeSet<Row> = found.iter().map(row_of).collect();
    assert_eq!(got.len(), 36);
    assert_eq!(got, parse(ABOVE_66));
}

#[test]
fn search_at_66_reproduced() {
    let found = search(Mode::Equal);
    assert_eq!(found.len(), 7);
    let got: BTreeSet<Row> = found.iter().map(row_of).collect();
    assert_eq!(got, parse(AT_66));
}

#[test]
fn search_at_66_first_row_is_the_weighted_projective_space() {
    let p = WeightedP3::new([5, 6, 22, 33]).unwrap();
    assert_eq!(p.anticanonical_degree(), 66);
    let found = search(Mode::Equal);
    let row = found.iter().find(|c| c.basket.indices() == [5]).unwrap();
    assert_eq!(row.q, p.anticanonical_degree());
    // r_X·(Σw)³/Πw
    let rxc13 = p.anticanonical_volume() * qfano_core::arith::int(row.r_x as i64);
    assert_eq!(rxc13, qfano_core::arith::int(row.rxc13 as i64));
}

#[test]
fn lb_column_per_row() {
    for c in search(Mode::Greater) {
        let ctx = LbContext::new(&c.basket.indices());
        for (&n, &lb) in c.prime_powers.iter().zip(&c.lb_values) {
            assert_eq!(ctx.lb(n).unwrap(), lb);
        }
    }
}

#[test]
fn every_table_row_is_a_case() {
    let found = search(Mode::Greater);
    let ids: BTreeSet<u32> = found.iter().map(|c| cases::identify(c).expect("listed")).collect();
    assert_eq!(ids, (1..=36).collect());
}

#[test]
fn full_pipeline_eliminates_everything() {
    let report = run_pipeline_on(&search(Mode::Greater));
    assert_eq!(report.total, 36);
    assert_eq!(report.eliminated, 36);
    assert!(report.all_eliminated(), "{:?}", report.survivors);
    assert_eq!(report.modulo_cited_lemmas, 2 + 6);
}
