use std::process::{Command, Output};

use g2skt_core::context::Context;
use g2skt_core::fixtures::{
    parse_complex_brackets, parse_d_table, parse_lambda_form, parse_real_brackets, parse_skt_metric_entries,
    COMPLEX_BRACKETS, REAL_BRACKETS,
};
use g2skt_core::forms::DualLabel;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2skt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("UTF-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn check_all_passes() {
    let o = run(&["check-all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("checks passed"));
}

#[test]
fn check_all_json_is_ordered_and_versioned() {
    let o = run(&["check-all", "--json"]);
    let v = json(&o);
    assert_eq!(v["schema"], "g2skt/1");
    assert_eq!(v["failed"], 0);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    assert_eq!(ids, g2skt::checks::check_ids());
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["class"] == "float"));
}

#[test]
fn only_runs_one_check() {
    let o = run(&["check-all", "--only", "torsion-dc", "--json"]);
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["check_id"], "torsion-dc");
    assert_eq!(checks[0]["status"], "PASS");
    assert_eq!(run(&["check-all", "--only", "nope"]).status.code(), Some(2));
}

#[test]
fn metric_inside_region() {
    let o = run(&["metric", "3", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("lambdas: λ0 = 1/3, λ1 = 4/3, λ2 = 1/3, λ3 = 3, λ4 = 2, λ5 = 1, λ6 = 1"), "{s}");
    assert!(!s.contains("FAIL"));
    assert!(!s.contains("bi-invariant"));
}

#[test]
fn metric_at_killing_point() {
    let s = stdout(&run(&["metric", "96", "32", "96"]));
    assert!(s.contains("bi-invariant: g = −K (λ = 1)"), "{s}");
}

#[test]
fn metric_outside_region_exits_2() {
    let o = run(&["metric", "1", "2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("a2 < a1 violated"));
    let o = run(&["metric", "3", "1", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("a3 < 4a1 - 3a2 violated"));
    assert_eq!(run(&["metric", "3", "x", "1"]).status.code(), Some(2));
}

#[test]
fn metric_json_certificates() {
    let v = json(&run(&["metric", "7/3", "1", "2", "--json"]));
    assert_eq!(v["schema"], "g2skt/1");
    let grid = v["metric"].as_array().unwrap();
    assert_eq!(grid.len(), 14);
    assert!(grid.iter().all(|r| r.as_array().unwrap().len() == 14));
    for c in v["certificates"].as_array().unwrap() {
        for key in ["check", "inputs", "expected_ref", "computed", "equal"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert_eq!(c["equal"], true, "{c}");
    }
    assert_eq!(v["inputs"]["a1"], "7/3");
}

#[test]
fn sample_is_byte_reproducible() {
    let a = run(&["sample", "--n", "50", "--seed", "9"]);
    let b = run(&["sample", "--n", "50", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("prng: ChaCha8Rng seed=9"));
    let c = run(&["sample", "--n", "50", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn sample_forced_point() {
    let v = json(&run(&["sample", "--n", "1", "--seed", "3", "--point", "96,32,96", "--json"]));
    assert_eq!(v["accepted"], 1);
    assert!(v["dc"]["max_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(run(&["sample", "--n", "1", "--seed", "3", "--point", "1,2,1"]).status.code(), Some(2));
}

#[test]
fn sample_zero_tolerance_fails() {
    let o = run(&["sample", "--n", "10", "--seed", "42", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("positive-definite: 0/10 pass"));
    assert!(s.contains("j-invariance: 0/10 pass"));
    assert!(s.contains("dc residual: 0/10 pass"));
}

#[test]
fn sample_empty_region_warns() {
    let o = run(&["sample", "--n", "3", "--seed", "1", "--box", "0,1,2,3,0,40"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("warning: no accepted samples"));
    assert_eq!(run(&["sample", "--n", "3", "--seed", "1", "--box", "0,1,2"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--n", "0", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn group_check_passes_with_control() {
    let o = run(&["group-check", "--n", "30", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rejected as expected"));
}

#[test]
fn emitted_tables_parse_back() {
    let ctx = Context::global();
    let real = stdout(&run(&["emit", "brackets"]));
    assert_eq!(parse_real_brackets(&real).unwrap(), parse_real_brackets(REAL_BRACKETS).unwrap());
    let firsts: Vec<&str> = real.lines().map(|l| l.split(" = ").next().unwrap().trim()).collect();
    let reference: Vec<&str> = REAL_BRACKETS.lines().map(|l| l.split(" = ").next().unwrap()).collect();
    assert_eq!(firsts, reference);

    let complex = stdout(&run(&["emit", "brackets-complex"]));
    assert_eq!(parse_complex_brackets(&complex).unwrap(), parse_complex_brackets(COMPLEX_BRACKETS).unwrap());

    let d = stdout(&run(&["emit", "d-table"]));
    let rows = parse_d_table(&d).unwrap();
    assert_eq!(rows.iter().map(|(l, _)| *l).collect::<Vec<_>>(), DualLabel::all().to_vec());
    for (l, f) in rows {
        assert_eq!(ctx.dtable.d_label(l), &f);
    }

    assert_eq!(parse_lambda_form(&stdout(&run(&["emit", "c"]))).unwrap(), ctx.c);
    assert_eq!(parse_lambda_form(&stdout(&run(&["emit", "dc"]))).unwrap(), ctx.dc);
    let skt = stdout(&run(&["emit", "skt-metric"]));
    assert_eq!(parse_skt_metric_entries(&skt).unwrap().len(), 21);
    assert_eq!(stdout(&run(&["emit", "metric-components"])).lines().count(), 21);
}

#[test]
fn emitted_json_shapes() {
    let v = json(&run(&["emit", "brackets", "--json"]));
    assert_eq!(v["schema"], "g2skt/1");
    let first = &v["data"][0];
    assert_eq!(first["i"], 1);
    assert_eq!(first["j"], 2);
    assert_eq!(first["terms"][0]["k"], 4);
    assert_eq!(first["terms"][0]["c"], "-1");
    assert_eq!(v["data"].as_array().unwrap().len(), 84);

    let dc = json(&run(&["emit", "dc", "--json"]));
    assert_eq!(dc["data"].as_array().unwrap().len(), 16);

    let sol = json(&run(&["emit", "solution", "--json"]));
    assert_eq!(sol["data"]["lambda0"], "1/6 λ3 - 1/4 λ5 + 1/12 λ6");
}

#[test]
fn emit_is_deterministic_and_rejects_unknown_tables() {
    for t in g2skt::emit::TABLES {
        assert_eq!(run(&["emit", t]).stdout, run(&["emit", t]).stdout, "{t}");
        assert_eq!(run(&["emit", t, "--json"]).status.code(), Some(0), "{t}");
    }
    assert_eq!(run(&["emit", "nope"]).status.code(), Some(2));
}
