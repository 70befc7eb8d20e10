use coxwalk::cli::run;
use coxwalk::closedform::{closed_form, expected_length_b_t, Formula};
use coxwalk::elements::{Gens, GroupSpec};
use coxwalk::lengths::Measure;
use coxwalk::rational::parse;
use coxwalk::Rational;

fn invoke(args: &str) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("coxwalk").chain(args.split_whitespace());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json_rational(v: &serde_json::Value) -> Rational {
    let num = v["num"].as_str().unwrap();
    let den = v["den"].as_str().unwrap();
    parse(&format!("{num}/{den}")).unwrap()
}

#[test]
fn eval_json_round_trips() {
    let (code, out) =
        invoke("eval --family B --n 3 --gens reflections --measure length --t 4 --format json");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["family"], "B");
    assert_eq!(v["param"], 3);
    assert_eq!(v["t"], 4);
    assert_eq!(
        json_rational(&v["value"]),
        expected_length_b_t(3, 4).unwrap()
    );
}

#[test]
fn eval_engines_agree() {
    let closed = closed_form(
        &GroupSpec::d(4).unwrap(),
        Gens::AllReflections,
        Measure::Length,
        7,
        Formula::Auto,
    )
    .unwrap();
    for engine in ["closed", "exact-full", "exact-pair"] {
        let (code, out) = invoke(&format!("eval --family D --n 4 --t 7 --engine {engine}"));
        assert_eq!(code, 0, "{engine}");
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(
            &json_rational(&v["value"]),
            closed.value.exact().unwrap(),
            "{engine}"
        );
    }
}

#[test]
fn eval_mc_reports_sampling_fields() {
    let (code, out) = invoke(
        "eval --family I2 --m 5 --measure abslength --t 4 --engine mc --trials 500 --seed 9",
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["method"], "mc");
    assert_eq!(v["trials"], 500);
    assert_eq!(v["seed"], 9);
    assert!(v["stderr"].as_f64().unwrap() > 0.0);
}

#[test]
fn eval_csv_writes_fractions() {
    let (code, out) = invoke("eval --family A --n 4 --t 2 --format csv");
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("family,param,r,gens,measure,t,method,value"));
    let value = lines[1].split(',').nth(7).unwrap();
    assert_eq!(
        parse(value).unwrap(),
        coxwalk::closedform::expected_length_a_t(4, 2).unwrap()
    );
}

#[test]
fn infinite_dihedral_and_fallback() {
    let (code, out) = invoke("eval --family I2 --m inf --gens simple --t 6");
    assert_eq!(code, 0);
    assert!(out.contains("\"param\":\"inf\""));
    let (code, out) = invoke("eval --family A --n 4 --measure descents --t 3");
    assert_eq!(code, 0);
    assert!(out.contains("exact-full"));
}

#[test]
fn table_has_one_row_per_step() {
    let (code, out) = invoke("table --family A --n 6 --t-max 10 --format csv --trials 200");
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t,closed_form,exact,mc_mean,mc_stderr");
    assert_eq!(lines.len(), 12);
    for (t, line) in lines[1..].iter().enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], t.to_string());
        assert_eq!(cells[1], cells[2]);
    }
}

#[test]
fn table_json_for_large_rank_uses_pair_engine() {
    let (code, out) = invoke("table --family B --n 25 --t-max 3 --format json --trials 100");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(
            json_rational(&row["closed_form"]),
            json_rational(&row["exact"])
        );
    }
}

#[test]
fn verify_passes() {
    let (code, out) = invoke("verify --suite dihedral");
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    assert!(!out.contains("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(invoke("eval --family Q --n 3 --t 1").0, 2);
    assert_eq!(invoke("eval --family A --n 3").0, 2);
    assert_eq!(invoke("eval --family A --n 1 --t 1").0, 2);
    assert_eq!(invoke("verify --suite nonsense").0, 2);
    assert_eq!(invoke("frobnicate").0, 2);
    assert_eq!(invoke("eval --family A --n 3 --t 2 --formula troili").0, 2);
}
