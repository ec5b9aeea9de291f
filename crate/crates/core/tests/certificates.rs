use std::collections::BTreeMap;

use qfano_core::arith::{int, parse_rational, rat, Rational};
use qfano_core::eliminate::cases::{case, ids, Group, CASES};
use qfano_core::eliminate::curves::determine_curves;
use qfano_core::eliminate::{eliminate_candidate, eliminate_case, replay};
use qfano_core::rr::{A1Aggregate, Degree};
use qfano_core::{Certificate, Verdict};

struct CurveRow {
    id: u32,
    types: Vec<u64>,
    degrees: Vec<u64>,
    a1: bool,
}

fn nums(s: &str) -> Vec<u64> {
    s.split(',').map(|t| t.trim().parse().unwrap()).collect()
}

fn group_a_curves() -> Vec<CurveRow> {
    include_str!("fixtures/group_a_curves.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('|').map(str::trim).collect();
            CurveRow { id: f[0].parse().unwrap(), types: nums(f[1]), degrees: nums(f[2]), a1: f[3] == "yes" }
        })
        .collect()
}

fn verdict(id: u32) -> Verdict {
    eliminate_case(id).unwrap_or_else(|e| panic!("#{id}: {e}"))
}

fn step<'a>(cert: &'a Certificate, rule: &str) -> &'a qfano_core::Step {
    cert.steps.iter().find(|s| s.rule == rule).unwrap_or_else(|| panic!("#{} has no {rule} step", cert.case_id))
}

#[test]
fn group_a_curves_and_exhaustion_domains() {
    let rows = group_a_curves();
    assert_eq!(ids(Group::A), rows.iter().map(|r| r.id).collect::<Vec<_>>());
    for CurveRow { id, types, degrees, a1 } in rows {
        let det = determine_curves(&case(id).unwrap().candidate()).unwrap();
        let cfg = det.config().unwrap_or_else(|| panic!("#{id} undetermined"));
        let mut got: Vec<(u64, u64)> = cfg
            .curves
            .iter()
            .map(|c| match c.degree {
                Degree::Known(d) => (c.j, d),
                _ => panic!("#{id} symbolic degree"),
            })
            .collect();
        got.sort();
        let want: Vec<(u64, u64)> = types.iter().copied().zip(degrees.iter().copied()).collect();
        assert_eq!(got, want, "#{id}");
        assert_eq!(cfg.x_a1 != A1Aggregate::Absent, a1, "#{id}");

        let v = verdict(id);
        assert!(v.eliminated, "#{id}");
        assert!(v.certificate.is_fully_mechanical(), "#{id}");
        let domain: u128 = types.iter().map(|&j| j as u128).product();
        assert_eq!(step(&v.certificate, "canonical-part").domain_size, Some(domain), "#{id}");
    }
}

#[test]
fn group_b_cited_lemmas_match_golden() {
    let golden: BTreeMap<String, Vec<String>> =
        serde_json::from_str(include_str!("fixtures/cited_lemmas.json")).unwrap();
    assert_eq!(golden.len(), ids(Group::B).len());
    for id in ids(Group::B) {
        let v = verdict(id);
        assert!(v.eliminated, "#{id}");
        let want = &golden[&id.to_string()];
        assert_eq!(&v.certificate.cited_lemmas(), want, "#{id}");
        assert_eq!(v.certificate.is_fully_mechanical(), want.is_empty(), "#{id}");
    }
}

#[test]
fn group_c_minus_is_mechanical() {
    for id in ids(Group::CMinus) {
        let v = verdict(id);
        assert!(v.eliminated && v.certificate.is_fully_mechanical(), "#{id}");
    }
}

fn delta_of(cert: &Certificate) -> Rational {
    let out = &step(cert, "delta").outcome;
    let exact = out.strip_prefix("δ = ").and_then(|s| s.split(' ').next()).unwrap();
    parse_rational(exact).unwrap()
}

#[test]
fn foliation_deltas_and_final_inequality() {
    // №, r_X, δ/r_X, p_min
    let rows: [(u32, i64, Rational, i64); 6] = [
        (3, 33, rat(3, 2) + rat(24, 5), 66),
        (6, 55, rat(3, 2) + rat(8, 3), 71),
        (11, 110, rat(8, 3), 64),
        (13, 165, rat(3, 2), 61),
        (21, 330, int(0), 57),
        (22, 330, int(0), 68),
    ];
    for (id, rx, per_rx, p_min) in rows {
        let c = case(id).unwrap();
        assert_eq!(c.candidate().r_x as i64, rx);
        let v = verdict(id);
        assert!(v.eliminated, "#{id}");
        assert_eq!(delta_of(&v.certificate), per_rx * int(rx), "#{id}");

        let last = v.certificate.steps.last().unwrap();
        assert_eq!(last.rule, "final-inequality");
        assert!(last.contradiction);
        assert_eq!(last.outcome, "> 8");
        let least = last.description.rsplit(' ').next().and_then(parse_rational).unwrap();
        let q = c.q as i64;
        assert_eq!(least, rat(60 * p_min * p_min, 330 * q), "#{id}");
        assert!(least > int(8));
    }
    assert_eq!(delta_of(&verdict(3).certificate), rat(2079, 10));
    assert_eq!(delta_of(&verdict(6).certificate), int(229) + rat(1, 6));
    assert_eq!(delta_of(&verdict(11).certificate), int(293) + rat(1, 3));
    assert_eq!(rat(60 * 57 * 57, 330 * 67), rat(194940, 22110));
}

#[test]
fn certificates_round_trip_and_replay() {
    for c in &CASES {
        let v = verdict(c.id);
        assert!(v.eliminated, "#{}", c.id);
        assert_eq!(v.certificate.case_id, c.id);
        assert_eq!(v.certificate.group, c.group);
        let json = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v, "#{}", c.id);
        assert!(replay(&back.certificate).unwrap(), "#{}", c.id);
    }
}

#[test]
fn replay_rejects_an_edited_certificate() {
    let mut cert = verdict(1).certificate;
    cert.steps.last_mut().unwrap().outcome = "witness {}".into();
    assert!(!replay(&cert).unwrap());
}

#[test]
fn tampered_nabla_is_not_eliminated() {
    for id in ids(Group::A).into_iter().chain(ids(Group::CMinus)) {
        let mut c = case(id).unwrap().candidate();
        c.nabla = int(1_000_000);
        match eliminate_candidate(&c) {
            Ok(v) => assert!(!v.eliminated, "#{id}"),
            Err(_) => {} // rejected before any step
        }
    }
    for c in &CASES {
        let mut cand = c.candidate();
        cand.nabla = int(-1);
        // must return, never panic
        let _ = eliminate_candidate(&cand);
    }
}
