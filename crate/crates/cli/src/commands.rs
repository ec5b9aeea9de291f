//! Command bodies. Each returns an [`Output`] and, when the result breaks an
//! expected invariant, a message that turns into exit code 1.

use qfano_core::arith::Rational;
use qfano_core::eliminate::cases::{self, CASES};
use qfano_core::eliminate::group_c::{group_c_closed_form, CLOSED_FORM_LIMIT};
use qfano_core::eliminate::{eliminate_case, run_pipeline_on, PipelineReport};
use qfano_core::search::run_search;
use qfano_core::{Candidate, DuValType, LbContext, Mode, SearchConfig, Verdict, WeightedP3};
use serde_json::{json, Value};

use crate::output::{Output, Table};
use crate::UsageError;

pub struct Outcome {
    pub output: Output,
    pub violation: Option<String>,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome { output, violation: None }
    }
}

/// Always `num/den`, even for integers.
fn frac(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn joined(xs: &[u64], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn set(xs: &[u64]) -> String {
    if xs.is_empty() {
        String::new()
    } else {
        format!("{{{}}}", joined(xs, ","))
    }
}

/// Candidates plus a description of any that fail re-verification.
fn find(q_min: u64, mode: Mode, workers: usize) -> anyhow::Result<(Vec<Candidate>, Option<String>)> {
    let cfg = SearchConfig { q_min, mode, workers };
    let found = run_search(&cfg).map_err(|e| match e {
        qfano_core::search::SearchError::QMinTooSmall(_) | qfano_core::search::SearchError::NoWorkers => {
            anyhow::Error::new(UsageError(e.to_string()))
        }
        e => e.into(),
    })?;
    let bad: Vec<String> = found
        .iter()
        .filter_map(|c| c.verify().err().map(|e| format!("{} q={}: {e}", c.basket, c.q)))
        .collect();
    Ok((found, (!bad.is_empty()).then(|| bad.join("; "))))
}

pub fn search(q_min: u64, mode: Mode, workers: usize) -> anyhow::Result<Outcome> {
    let (found, violation) = find(q_min, mode, workers)?;
    Ok(Outcome { output: candidates_output(&found), violation })
}

pub fn candidates_output(found: &[Candidate]) -> Output {
    let mut csv = Table::new(&[
        "no", "basket", "q", "j_a", "r_x", "rxc13", "rxc2c1", "prime_powers", "lb_values", "nabla", "nabla_display",
    ]);
    let mut md = Table::new(&["№", "B_X", "q", "r_X", "r_Xc₁³", "r_Xc₂c₁", "{p^a}", "{LB(p^a)}", "∇"]);
    for (i, c) in found.iter().enumerate() {
        let no = (i + 1).to_string();
        let basket = serde_json::to_string(&c.basket).expect("basket serializes");
        csv.push(vec![
            no.clone(),
            basket,
            c.q.to_string(),
            c.j_a.to_string(),
            c.r_x.to_string(),
            c.rxc13.to_string(),
            c.rxc2c1.to_string(),
            joined(&c.prime_powers, " "),
            joined(&c.lb_values, " "),
            frac(&c.nabla),
            c.nabla_display.clone(),
        ]);
        md.push(vec![
            no,
            c.basket.to_string(),
            c.q.to_string(),
            c.r_x.to_string(),
            c.rxc13.to_string(),
            c.rxc2c1.to_string(),
            set(&c.prime_powers),
            set(&c.lb_values),
            c.nabla_display.clone(),
        ]);
    }
    Output {
        kind: "candidates",
        payload: serde_json::to_value(found).expect("candidates serialize"),
        csv,
        md: vec![(None, md)],
    }
}

pub fn eliminate(case: Option<u32>) -> anyhow::Result<Outcome> {
    let ids: Vec<u32> = match case {
        Some(id) if cases::case(id).is_none() => {
            return Err(UsageError(format!("unknown case #{id}; cases are 1..=36")).into())
        }
        Some(id) => vec![id],
        None => CASES.iter().map(|c| c.id).collect(),
    };
    let verdicts = ids.iter().map(|&id| eliminate_case(id)).collect::<Result<Vec<_>, _>>()?;
    let survivors: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.eliminated)
        .map(|v| format!("#{}", v.certificate.case_id))
        .collect();
    Ok(Outcome {
        output: verdicts_output(&verdicts),
        violation: (!survivors.is_empty()).then(|| format!("not eliminated: {}", survivors.join(", "))),
    })
}

fn verdicts_output(verdicts: &[Verdict]) -> Output {
    let mut csv = Table::new(&[
        "case", "group", "eliminated", "step", "kind", "rule", "description", "outcome", "contradiction",
        "domain_size", "visited", "citation",
    ]);
    let mut summary = Table::new(&["№", "group", "eliminated", "fully mechanical", "cited lemmas"]);
    let mut md = Vec::new();
    for v in verdicts {
        let cert = &v.certificate;
        summary.push(vec![
            cert.case_id.to_string(),
            cert.group.to_string(),
            v.eliminated.to_string(),
            cert.is_fully_mechanical().to_string(),
            cert.cited_lemmas().join(", "),
        ]);
        let mut steps = Table::new(&["step", "rule", "outcome", "domain", "contradiction"]);
        for (i, s) in cert.steps.iter().enumerate() {
            let opt = |x: Option<u128>| x.map(|v| v.to_string()).unwrap_or_default();
            csv.push(vec![
                cert.case_id.to_string(),
                cert.group.to_string(),
                v.eliminated.to_string(),
                (i + 1).to_string(),
                serde_json::to_value(s.kind).ok().and_then(|k| k.as_str().map(String::from)).unwrap_or_default(),
                s.rule.clone(),
                s.description.clone(),
                s.outcome.clone(),
                s.contradiction.to_string(),
                opt(s.domain_size),
                opt(s.visited),
                s.citation.as_ref().map(|c| c.anchor.clone()).unwrap_or_default(),
            ]);
            steps.push(vec![
                (i + 1).to_string(),
                s.rule.clone(),
                s.outcome.clone(),
                opt(s.domain_size),
                if s.contradiction { "yes".into() } else { String::new() },
            ]);
        }
        md.push((Some(format!("№{} (group {})", cert.case_id, cert.group)), steps));
    }
    md.insert(0, (None, summary));
    Output {
        kind: "certificates",
        payload: serde_json::to_value(verdicts).expect("verdicts serialize"),
        csv,
        md,
    }
}

pub fn report(q_min: u64, workers: usize) -> anyhow::Result<Outcome> {
    let (candidates, bad) = find(q_min, Mode::Greater, workers)?;
    if let Some(v) = bad {
        return Ok(Outcome { output: candidates_output(&candidates), violation: Some(v) });
    }
    let report = run_pipeline_on(&candidates);
    let violation = (!report.all_eliminated()).then(|| format!("{} survivor(s)", report.survivors.len()));
    Ok(Outcome { output: report_output(&report), violation })
}

fn report_output(r: &PipelineReport) -> Output {
    let mut csv = Table::new(&["case", "group", "eliminated", "fully_mechanical", "cited_lemmas", "error"]);
    for c in &r.cases {
        csv.push(vec![
            c.case_id.map(|i| i.to_string()).unwrap_or_default(),
            c.group.map(|g| g.to_string()).unwrap_or_default(),
            c.eliminated.to_string(),
            c.fully_mechanical.to_string(),
            c.cited_lemmas.join(";"),
            c.error.clone().unwrap_or_default(),
        ]);
    }
    let mut totals = Table::new(&["candidates", "eliminated", "fully mechanical", "modulo cited lemmas", "survivors"]);
    totals.push(vec![
        r.total.to_string(),
        r.eliminated.to_string(),
        r.fully_mechanical.to_string(),
        r.modulo_cited_lemmas.to_string(),
        r.survivors.len().to_string(),
    ]);
    let mut cases = csv.clone();
    cases.headers = ["№", "group", "eliminated", "fully mechanical", "cited lemmas", "error"].map(String::from).to_vec();
    Output {
        kind: "report",
        payload: serde_json::to_value(r).expect("report serializes"),
        csv,
        md: vec![(None, totals), (Some("Cases".into()), cases)],
    }
}

/// `A..B` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<(i64, i64), UsageError> {
    let bad = || UsageError(format!("bad range {s:?}; expected A..B or A"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let a = s.trim().parse().map_err(|_| bad())?;
            (a, a)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn values_output(kind: &'static str, mut payload: Value, values: &[(i64, u64)]) -> Output {
    let mut t = Table::new(&["s", "h0"]);
    for (s, h) in values {
        t.push(vec![s.to_string(), h.to_string()]);
    }
    payload["values"] = json!(values.iter().map(|(s, h)| json!({ "s": s, "h0": h })).collect::<Vec<_>>());
    Output::single(kind, payload, t)
}

pub fn h0(range: &str) -> anyhow::Result<Outcome> {
    let (a, b) = parse_range(range)?;
    if a < 1 || b >= CLOSED_FORM_LIMIT {
        return Err(UsageError(format!("s must lie in 1..{}", CLOSED_FORM_LIMIT - 1)).into());
    }
    let values = (a..=b).map(|s| Ok((s, group_c_closed_form(s)? as u64))).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(values_output("h0", json!({}), &values).into())
}

pub fn wps(weights: &[u64], smax: u64) -> anyhow::Result<Outcome> {
    let w: [u64; 4] = weights
        .try_into()
        .map_err(|_| UsageError(format!("expected 4 weights, got {}", weights.len())))?;
    let p = WeightedP3::new(w).map_err(|e| UsageError(e.to_string()))?;
    if !p.is_well_formed() {
        eprintln!("warning: P({}) is not well formed", joined(&w, ","));
    }
    let table = p.h0_table(smax);
    let values: Vec<(i64, u64)> = (1..=smax).map(|s| (s as i64, table[s as usize])).collect();
    let payload = json!({
        "weights": w,
        "anticanonical_degree": p.anticanonical_degree(),
        "anticanonical_volume": frac(&p.anticanonical_volume()),
    });
    Ok(values_output("wps", payload, &values).into())
}

pub fn lb(r: &[u64], n: Option<u64>) -> anyhow::Result<Outcome> {
    if let Some(&bad) = r.iter().find(|&&x| !(2..=qfano_core::basket::MAX_R).contains(&x)) {
        return Err(UsageError(format!("indices must lie in 2..=24, got {bad}")).into());
    }
    let ns: Vec<u64> = match n {
        Some(n) if n < 2 => return Err(UsageError(format!("N must be at least 2, got {n}")).into()),
        Some(n) => vec![n],
        None => (2..=qfano_core::basket::MAX_R).collect(),
    };
    let ctx = LbContext::new(r);
    let mut t = Table::new(&["N", "LB"]);
    let mut values = Vec::new();
    for n in ns {
        let v = ctx.lb(n)?;
        t.push(vec![n.to_string(), v.to_string()]);
        values.push(json!({ "N": n, "lb": v }));
    }
    let payload = json!({ "R": ctx.r(), "r_x": ctx.rx(), "values": values });
    Ok(Output::single("lb", payload, t).into())
}

pub fn duval(ty: &str) -> anyhow::Result<Outcome> {
    let t: DuValType = ty.parse().map_err(|e: qfano_core::duval::DuValError| UsageError(e.to_string()))?;
    let (e, e2, g, j) = t.invariants();
    let group = t.class_group();
    let mut table = Table::new(&["type", "rank", "e", "e'", "g", "j", "class group"]);
    table.push(vec![
        t.to_string(),
        t.rank().to_string(),
        e.to_string(),
        e2.to_string(),
        g.to_string(),
        j.to_string(),
        group.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x "),
    ]);
    let payload = json!({
        "type": t.to_string(), "rank": t.rank(), "e": e, "e_prime": e2, "g": g, "j": j, "class_group": group,
    });
    Ok(Output::single("duval", payload, table).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..65").unwrap(), (1, 65));
        assert_eq!(parse_range("3..=4").unwrap(), (3, 4));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn lb_value() {
        let o = lb(&[2, 4, 4, 7], Some(3)).unwrap();
        assert_eq!(o.output.payload["values"][0]["lb"], 14);
        assert!(lb(&[1], Some(3)).is_err());
    }

    #[test]
    fn duval_d5() {
        let o = duval("D5").unwrap();
        let p = &o.output.payload;
        assert_eq!((p["e"].as_u64(), p["e_prime"].as_u64(), p["g"].as_u64(), p["j"].as_u64()), (Some(6), Some(5), Some(12), Some(4)));
        assert!(duval("F4").is_err());
    }

    #[test]
    fn h0_bounds() {
        assert!(h0("1..65").is_ok());
        assert!(h0("1..66").is_err());
        assert!(h0("0..3").is_err());
    }
}
