use std::process::{Command, Output};

use apery8_cli::{cmd_show, cmd_verify, ConfigError, RunConfig, ShowOutput, ShowWhat, Suite};
use serde_json::Value;

fn apery8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery8"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn low_order_is_a_config_error() {
    let o = apery8(&["verify", "--order", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let cfg = RunConfig {
        order: 4,
        ..RunConfig::default()
    };
    assert_eq!(cmd_verify(&cfg).unwrap_err(), ConfigError::Order(4));
    assert_eq!(apery8(&["verify", "--prec", "19"]).status.code(), Some(2));
    assert_eq!(apery8(&["verify", "--nmax", "9"]).status.code(), Some(2));
}

#[test]
fn unknown_selector_is_a_usage_error() {
    assert_eq!(apery8(&["show", "bogus"]).status.code(), Some(2));
    assert_eq!(apery8(&["show", "qexp", "zz", "5"]).status.code(), Some(2));
    assert_eq!(
        apery8(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn show_qexp_t() {
    let o = apery8(&["show", "qexp", "t", "7"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("1, -8, 28, -64, 142, -352"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn show_sequence_json_rationals() {
    let o = apery8(&["show", "sequence", "4", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "sequence");
    let s: Vec<&str> = v["s"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(s, ["1", "4", "40", "544", "8536"]);
    assert_eq!(v["b"][2], serde_json::json!({"num": "21", "den": "2"}));
    assert_eq!(v["b"][3], serde_json::json!({"num": "3862", "den": "27"}));
}

#[test]
fn show_constants() {
    let ShowOutput::Constants(m) = cmd_show(&ShowWhat::Constants { digits: 30 }).unwrap() else {
        panic!("wrong variant");
    };
    assert_eq!(m["zeta3"].value, "1.20205690315959428539973816151");
    assert_eq!(
        m["apery_limit_7_32_zeta3"].value,
        "0.262949947566161249931192722831"
    );
    assert_eq!(
        m["pcf_limit_8_over_7zeta3"].value,
        "0.950751282949379964209287175796"
    );
    assert_eq!(m["t0"].value, "0.0428932188134524755991556378952");
    assert_eq!(m["inverse_t0"].value, "23.3137084989847603904135097937");
    assert_eq!(m["t0"].digits, 30);
}

#[test]
fn show_ratio_trace() {
    let o = apery8(&["show", "ratio", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["ratios"][0]["exact"],
        serde_json::json!({"num": "1", "den": "4"})
    );
    assert_eq!(
        v["ratios"][1]["exact"],
        serde_json::json!({"num": "21", "den": "80"})
    );
}

#[test]
fn pcf_suite_report() {
    let cfg = RunConfig {
        suites: vec![Suite::Pcf],
        n_max: 60,
        ..RunConfig::default()
    };
    let report = cmd_verify(&cfg).unwrap();
    assert!(report.passed);
    let value = report
        .checks
        .iter()
        .find(|c| c.result.name == "pcf_value")
        .unwrap();
    let residual: f64 = value.result.residual.as_ref().unwrap().parse().unwrap();
    assert!(residual < 1e-40);
    assert!(report.checks.iter().all(|c| c.suite == Suite::Pcf));
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn json_report_schema_and_determinism() {
    let args = [
        "verify", "--suite", "exact", "--suite", "limit", "--order", "40", "--json",
    ];
    let a = apery8(&args);
    let b = apery8(&args);
    assert_eq!(a.status.code(), Some(0));
    let mut va: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let mut vb: Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(va["schema_version"], 1);
    assert_eq!(va["passed"], true);
    assert!(va["elapsed_ms"].is_u64());
    assert_eq!(
        va["config"]["suites"],
        serde_json::json!(["exact", "limit"])
    );
    for c in va["checks"].as_array().unwrap() {
        for key in [
            "suite",
            "name",
            "anchor",
            "kind",
            "passed",
            "params",
            "details",
            "elapsed_ms",
        ] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
        assert!(c["anchor"].as_str().is_some_and(|s| !s.is_empty()));
    }
    strip_timing(&mut va);
    strip_timing(&mut vb);
    assert_eq!(va, vb);
    let reparsed: Value = serde_json::from_str(&serde_json::to_string(&va).unwrap()).unwrap();
    assert_eq!(reparsed, va);
}

#[test]
fn text_report_lines() {
    let o = apery8(&[
        "verify",
        "--suite",
        "numeric",
        "--prec",
        "30",
        "--samples",
        "3",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 9);
    assert!(out.contains("OK: "));
}
