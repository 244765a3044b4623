use std::process::{Command, Output};

use serde_json::Value;
use wkb_core::json::series_from_json;
use wkb_core::{GaussRat, PuiseuxSeries};

fn wkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkb")).args(args).env_remove("TP_PRECISION").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn identities_suite_exits_zero() {
    let v = json_of(&wkb(&["verify", "--suite", "identities"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}

#[test]
fn reduce_reports_f0() {
    let v = json_of(&wkb(&["reduce", "--V", r#"[["1",[1,0]],["2",[0.5,0]]]"#, "--orders", "6"]));
    let f0 = v["F0"].as_f64().unwrap();
    assert!((f0 + 9.0 / 140.0).abs() < 1e-12);
    assert_eq!(v["F0_exact"][0], "-9/140");
    assert_eq!(v["residual"]["composed"], 0.0);
}

#[test]
fn airy_has_value_and_oracle() {
    let v = json_of(&wkb(&["airy", "--z", "1", "--eps", "0.05", "--orders", "24"]));
    let r = &v["results"];
    for key in ["z", "eps", "value", "oracle"] {
        assert_eq!(r[key].as_array().unwrap().len(), 2, "{}", key);
    }
    assert!(r["est_error"].as_f64().unwrap() >= 0.0);
    assert!(r["rel_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn output_is_deterministic() {
    let args = ["airy", "--eps", "0.1", "0.05", "0.02"];
    let a = wkb(&args);
    let b = wkb(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn emitted_series_round_trip() {
    let v = json_of(&wkb(&["transport", "--F", r#"[["0",["1/3",0]],["1",[-2,0]]]"#, "--orders", "4"]));
    for g in v["g"].as_array().unwrap() {
        let s: PuiseuxSeries<GaussRat> = series_from_json(g).unwrap();
        assert_eq!(&wkb_core::json::series_to_json(&s), g);
    }
    assert_eq!(v["consistency"]["symbol_residual"], 0.0);
}

#[test]
fn exit_codes() {
    assert_eq!(wkb(&["airy", "--eps", "0.1", "--precision", "10"]).status.code(), Some(2));
    assert_eq!(wkb(&["reduce", "--V", "{"]).status.code(), Some(2));
    assert_eq!(wkb(&["reduce", "--V", r#"[["1",[2,0]]]"#]).status.code(), Some(2));
    assert_eq!(wkb(&["frobnicate"]).status.code(), Some(2));
    // a second turning point on the traced line
    let escape = wkb(&["stokes", "--V", r#"[["1",[1,0]],["2",[-1,0]]]"#, "--extent", "1.5"]);
    assert_eq!(escape.status.code(), Some(3));
}

#[test]
fn plot_data_and_out_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("lines.csv");
    let out = dir.path().join("stokes.json");
    let st = wkb(&[
        "stokes",
        "--V",
        r#"[["1",[1,0]],["2",[0.5,0]]]"#,
        "--extent",
        "0.5",
        "--out",
        out.to_str().unwrap(),
        "--plot-data",
        csv.to_str().unwrap(),
    ]);
    assert!(st.status.success());
    assert!(st.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("q_re,q_im,branch_id\n"));
    assert!(text.lines().count() > 10);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["max_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_wkb"))
        .args(["airy", "--eps", "0.05"])
        .env("TP_PRECISION", "30")
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["params"]["precision"], 30);
    assert!(v["results"]["value_digits"][0].as_str().unwrap().len() > 25);
}

#[test]
fn hardy_table_and_eval() {
    let v = json_of(&wkb(&["hardy", "--n", "3"]));
    assert_eq!(v["S_text"], "32/5*zh^5 - 8*zh^3*z + 2*zh*z^2");
    assert_eq!(v["T_text"], "2*zh^2 - 1/2*z");
    let v = json_of(&wkb(&["hardy", "--n", "2", "--eval", "1", "0.1"]));
    assert!(v["eval"]["ode"]["relative_residual"].as_f64().unwrap() < 1e-6);
    let v = json_of(&wkb(&["hardy", "--n", "2", "--eval", "1", "0.1", "--convention", "eps"]));
    assert!(v["eval"]["ode"]["relative_residual"].as_f64().unwrap() > 0.1);
}

#[test]
fn pde_and_confluent() {
    let v = json_of(&wkb(&["pde", "--F", r#"[["0",[4,0]]]"#, "--h", r#"[["0",[2,0]]]"#, "--orders", "6,3"]));
    assert_eq!(v["residual"], 0.0);
    assert_eq!(v["a"].as_array().unwrap().len(), 7);
    assert!((v["radius"]["r_prime"].as_f64().unwrap() - 0.02233).abs() < 1e-4);
    let v = json_of(&wkb(&["confluent", "--z", "0.6@0.9", "--eps", "0.05"]));
    assert_eq!(v["sector"], "S1");
    let v = json_of(&wkb(&["borel", "--z", "1", "--eps", "0.1"]));
    assert!(v["results"][0]["value"][0].as_f64().unwrap() > 0.0);
}
