use std::process::{Command, Output};

use serde_json::Value;

fn qfano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfano")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qfano(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn payload(args: &[&str]) -> Value {
    let doc: Value = serde_json::from_str(&stdout(args)).unwrap();
    assert_eq!(doc["schema_version"], "1");
    doc["payload"].clone()
}

#[test]
fn exit_codes() {
    assert_eq!(qfano(&["eliminate", "--case", "99"]).status.code(), Some(2));
    assert_eq!(qfano(&["eliminate"]).status.code(), Some(2));
    assert_eq!(qfano(&["wps", "--weights", "5,6,22", "--smax", "3"]).status.code(), Some(2));
    assert_eq!(qfano(&["wps", "--weights", "5,0,22,33", "--smax", "3"]).status.code(), Some(2));
    assert_eq!(qfano(&["duval", "--type", "E9"]).status.code(), Some(2));
    assert_eq!(qfano(&["search", "--qmin", "3"]).status.code(), Some(2));
    assert_eq!(qfano(&["search", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(qfano(&["h0", "--s", "1..66"]).status.code(), Some(2));
    assert_eq!(qfano(&["--help"]).status.code(), Some(0));
    assert_eq!(qfano(&["eliminate", "--case", "27"]).status.code(), Some(0));
}

#[test]
fn lb_and_duval_values() {
    assert_eq!(payload(&["lb", "--R", "2,4,4,7", "--N", "3"])["values"][0]["lb"], 14);
    let d = payload(&["duval", "--type", "D5"]);
    let inv: Vec<u64> = ["e", "e_prime", "g", "j"].iter().map(|k| d[k].as_u64().unwrap()).collect();
    assert_eq!(inv, [6, 5, 12, 4]);
    assert_eq!(stdout(&["lb", "--R", "3,3", "--N", "5", "--format", "csv"]), "N,LB\n5,3\n");
}

#[test]
fn wps_matches_closed_form() {
    let w = payload(&["wps", "--weights", "5,6,22,33", "--smax", "65"]);
    let h = payload(&["h0", "--s", "1..65"]);
    assert_eq!(w["values"].as_array().unwrap().len(), 65);
    assert_eq!(w["values"], h["values"]);
    assert_eq!(w["anticanonical_degree"], 66);
}

#[test]
fn csv_and_json_agree() {
    let json = payload(&["search", "--mode", "equal"]);
    let csv = stdout(&["search", "--mode", "equal", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let cands = json.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(cands.len(), rows.len());
    let ints = |v: &Value| v.as_array().unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    for (row, c) in rows.iter().zip(cands) {
        let basket: Value = serde_json::from_str(&row[1]).unwrap();
        assert_eq!(basket, c["basket"]);
        for (i, key) in [(2, "q"), (3, "j_a"), (4, "r_x"), (5, "rxc13"), (6, "rxc2c1")] {
            assert_eq!(&row[i], c[key].to_string(), "{key}");
        }
        assert_eq!(&row[7], ints(&c["prime_powers"]));
        assert_eq!(&row[8], ints(&c["lb_values"]));
        let n = &c["nabla"];
        assert_eq!(&row[9], format!("{}/{}", n["num"].as_str().unwrap(), n["den"].as_str().unwrap()));
        assert_eq!(&row[10], c["nabla_display"].as_str().unwrap());
        let exact = if n["den"] == "1" { n["num"].as_str().unwrap().to_string() } else { row[9].to_string() };
        assert_eq!(n["display"].as_str().unwrap(), exact);
    }
}

#[test]
fn jobs_do_not_change_bytes() {
    let one = stdout(&["search", "--mode", "equal", "--jobs", "1"]);
    let eight = stdout(&["search", "--mode", "equal", "--jobs", "8"]);
    assert_eq!(one, eight);
}

#[test]
fn markdown_table_layout() {
    let md = stdout(&["search", "--mode", "equal", "--format", "md"]);
    let lines: Vec<&str> = md.lines().collect();
    assert_eq!(lines[0], "| № | B_X | q | r_X | r_Xc₁³ | r_Xc₂c₁ | {p^a} | {LB(p^a)} | ∇ |");
    assert_eq!(lines.len(), 2 + 7);
    assert!(lines.iter().any(|l| l.contains("| {(5,2)} | 66 | 5 | 66 | 96 | {2,3,11} | {1,5,5} | 79.02 |")));
}

#[test]
fn out_flag_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lb.csv");
    let o = qfano(&["lb", "--R", "5", "--N", "7", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "N,LB\n7,5\n");

    let cfg = dir.path().join("qfano.conf");
    let target = dir.path().join("results");
    std::fs::write(&cfg, format!("qmin = 66\njobs = 2\nout_dir = {}\n", target.display())).unwrap();
    let o = qfano(&["--config", cfg.to_str().unwrap(), "search", "--mode", "equal"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(target.join("candidates.json")).unwrap()).unwrap();
    assert_eq!(doc["payload"].as_array().unwrap().len(), 7);

    // flags override the file
    let o = qfano(&["--config", cfg.to_str().unwrap(), "search", "--mode", "equal", "--qmin", "70"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(target.join("candidates.json")).unwrap()).unwrap();
    assert!(doc["payload"].as_array().unwrap().iter().all(|c| c["q"] == 70));

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(qfano(&["--config", cfg.to_str().unwrap(), "duval", "--type", "A1"]).status.code(), Some(2));
}

#[test]
fn certificates_round_trip_through_json() {
    let v = payload(&["eliminate", "--case", "35"]);
    let verdicts: Vec<qfano_core::Verdict> = serde_json::from_value(v).unwrap();
    assert_eq!(verdicts.len(), 1);
    assert!(verdicts[0].eliminated);
    assert_eq!(
        verdicts[0].certificate.cited_lemmas(),
        ["weil-pullback-additivity", "index-two-crepant-point-parity"]
    );
}
