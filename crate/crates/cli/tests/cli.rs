use std::process::{Command, Output};

use serde_json::Value;

fn borwein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borwein"))
        .args(args)
        .env_remove("BORWEIN_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = borwein(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn coefficient_and_dedekind() {
    let o = borwein(&["coeff", "--product", "Q5", "--n", "1", "--delta", "1"]);
    assert_eq!(stdout(&o), "-1");
    let o = borwein(&["dedekind", "--d", "1", "--c", "3"]);
    assert_eq!(stdout(&o), "1/18");
    let v = json(&["coeff", "--product", "Q5", "--n", "3", "--delta", "1/2"]);
    assert_eq!(v["delta"], "1/2");
}

#[test]
fn expand_polynomials() {
    let v = json(&["expand", "--product", "Q5", "--order", "2"]);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(c[1], serde_json::json!(["0", "-1"]));
}

#[test]
fn verify_exit_codes() {
    let o = borwein(&["verify", "--product", "Q10", "--delta", "1", "--pattern", "+-++--+--+"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("status: proven"));
    let o = borwein(&["verify", "--product", "Q5", "--delta", "1", "--pattern", "+-+-+", "--n0", "176"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("refuted"));
    let o = borwein(&["verify", "--product", "Q5", "--pattern", "+-+--"]);
    assert_eq!(o.status.code(), Some(2));
    let o = borwein(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_certificate() {
    let v = json(&["verify", "--product", "Q5", "--delta-range", "-3..-2", "--pattern", "+++--", "--n0", "143"]);
    assert_eq!(v["status"], "proven");
    assert_eq!(v["inverted"], true);
    assert_eq!(v["exact_upto"], 143);
    assert_eq!(v["asymptotic"]["levels"][0]["n0"], 143);
    assert_eq!(v["exact_results"].as_array().unwrap().len(), 143);
}

#[test]
fn exact_only_verification() {
    let o = borwein(&["verify", "--product", "Q12", "--delta", "1", "--pattern", "+-+0-+-+-0+-", "--nmax", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent"));
}

#[test]
fn table_csv() {
    let o = borwein(&["table", "--product", "Q5", "--delta-range", "1..sqrt97m5over2", "--nmax", "3"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,lo,hi");
    assert_eq!(lines[1], "0,1.0,1.0");
    assert_eq!(lines[3], "2,1.0,4.2");
}

#[test]
fn critical_root() {
    let v = json(&["critical", "--product", "Q5", "--n", "4", "--lo", "0", "--hi", "5"]);
    let roots = v["roots"].as_array().unwrap();
    let x: f64 = roots.iter().map(|r| r["approx"].as_str().unwrap().parse::<f64>().unwrap()).fold(f64::NAN, |a, b| {
        if (b - 2.4244289).abs() < 1e-6 {
            b
        } else {
            a
        }
    });
    assert!((x - (97f64.sqrt() - 5.0) / 2.0).abs() < 1e-9);
}

#[test]
fn frame_and_classify() {
    let v = json(&["frame", "--product", "Q5", "--h", "2", "--k", "5"]);
    assert_eq!(v["Delta"], "24/5");
    assert!(v["lifted_phase"].as_str().is_some());
    let v = json(&["classify", "--product", "Q8"]);
    assert_eq!(v["L"], 8);
    assert_eq!(v["Omega"], "12");
    assert_eq!(v["max_rate"], "3/16");
}

#[test]
fn estimate_sign() {
    let v = json(&["estimate", "--product", "Q5", "--delta", "1", "--n", "180"]);
    assert_eq!(v["sign"], "+");
    assert_eq!(v["main"]["bits"], 192);
    let v = json(&["--precision", "128", "errorbound", "--product", "Q5", "--delta", "1", "--n", "176"]);
    assert_eq!(v["N"], 48);
    assert_eq!(v["bound"]["bits"], 128);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_borwein"))
        .args(["mainterm", "--product", "Q5", "--delta", "1", "--n", "60", "--json"])
        .env("BORWEIN_PRECISION", "96")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["re"]["bits"], 96);
}

#[test]
fn transformation_identity() {
    let o = borwein(&["transform-check", "--product", "Q8", "--delta", "2.5", "--h", "3", "--k", "7", "--z-re", "1.1"]);
    let e: f64 = stdout(&o).parse().unwrap();
    assert!(e < 1e-10);
}
