use std::process::{Command, Output};

use serde_json::Value;

fn bohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(args)
        .env_remove("BOHR_DEFAULT_ORDER")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn radius_of(args: &[&str]) -> f64 {
    let out = bohr(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)["solution"]["radius"].as_f64().unwrap()
}

#[test]
fn radius_examples() {
    let r0 = radius_of(&["radius", "--theorem", "thm7-j"]);
    assert!((r0 - 0.385795).abs() < 1e-6);
    let r1 = radius_of(&["radius", "--theorem", "thm1-r", "--n", "1"]);
    assert!((r1 - 0.23606797749979).abs() < 1e-13);
    let r3 = radius_of(&[
        "radius",
        "--theorem",
        "thm3",
        "--p",
        "2",
        "--m",
        "0",
        "--a0",
        "0.5",
    ]);
    assert!((r3 - 0.4f64.sqrt()).abs() < 1e-12);

    let out = bohr(&["radius", "--theorem", "thm7-j", "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["theorem", "radius", "residual", "root_count", "method"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), r0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&bohr(&["radius", "--theorem", "thm1-r"])), 2);
    assert_eq!(code(&bohr(&["radius", "--theorem", "nope"])), 2);
    assert_eq!(code(&bohr(&["radius", "--theorem", "thm2", "--a0", "1.5"])), 2);
    assert_eq!(code(&bohr(&["radius", "--theorem", "thm7-j", "--n", "2"])), 2);
    assert_eq!(
        code(&bohr(&[
            "radius",
            "--theorem",
            "thm3",
            "--p",
            "1",
            "--m",
            "2",
            "--a0",
            "0.1"
        ])),
        2
    );
    assert_eq!(code(&bohr(&["verify", "--theorem", "thm2", "--trials", "x"])), 2);
    assert_eq!(code(&bohr(&["sample", "--profile", "unknown"])), 2);
    assert_eq!(
        code(&bohr(&["threshold", "--theorem", "thm6-g", "--r", "0.1"])),
        2
    );
    assert_eq!(code(&bohr(&["bogus"])), 2);
}

#[test]
fn verify_campaigns() {
    let out = bohr(&[
        "verify",
        "--theorem",
        "thmb-modulus",
        "--trials",
        "1000",
        "--seed",
        "42",
    ]);
    assert_eq!(code(&out), 0);
    let rep = json(&out);
    for key in [
        "theorem",
        "params",
        "trials",
        "seed",
        "order",
        "worst_margin",
        "failures",
        "elapsed_ms",
    ] {
        assert!(rep.get(key).is_some(), "missing {key}");
    }
    assert_eq!(rep["theorem"], "thmb-modulus");
    assert_eq!(rep["trials"], 1000);
    assert_eq!(rep["order"], 256);
    assert_eq!(rep["command"]["defaults"]["slack"], 1e-9);

    let out = bohr(&["verify", "--theorem", "thm5", "--trials", "200", "--seed", "9"]);
    assert_eq!(code(&out), 0);
    let notes = json(&out)["notes"].to_string();
    assert!(notes.contains("filtered"), "filter is noted: {notes}");

    let out = bohr(&[
        "verify",
        "--theorem",
        "lemmas",
        "--trials",
        "1000",
        "--seed",
        "42",
    ]);
    assert_eq!(code(&out), 0);

    let out = bohr(&[
        "verify",
        "--theorem",
        "thm1-r",
        "--n",
        "3",
        "--trials",
        "100",
        "--seed",
        "3",
        "--edge",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn failing_replay_exits_1() {
    let out = bohr(&["verify", "--theorem", "thm5", "--replay", "moebius(0.7,-)"]);
    assert_eq!(code(&out), 1);
    let rep = json(&out);
    let failure = &rep["failures"][0];
    assert!(failure["value_lower"].as_f64().unwrap() > 1.0);
    assert!(failure["recipe"].as_str().unwrap().starts_with("moebius("));

    let out = bohr(&["eval", "--theorem", "thm5", "--recipe", "moebius(0.7,-)"]);
    assert_eq!(code(&out), 1);
    let out = bohr(&["eval", "--theorem", "thm5", "--recipe", "moebius(0.6,-)"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn sharpness_examples() {
    let out = bohr(&["sharpness", "--theorem", "thm2"]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert_eq!(cert["valid"], true);
    let witnesses = cert["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["a"] == 0.999));

    let out = bohr(&["sharpness", "--theorem", "thm6-g"]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert!(cert["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["a"] == 0.99 && w["r"].as_f64().unwrap() > 0.2));

    let out = bohr(&["sharpness", "--theorem", "thm4-lambda-first"]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    let w = cert["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .find(|w| w["a"] == 0.999)
        .expect("a = 0.999");
    assert!((w["lambda"].as_f64().unwrap() - 8.0 / 9.0 * 1.01).abs() < 1e-15);
    assert!(w["value"]["lower"].as_f64().unwrap() > 1.0);

    // A grid far from the extremal limit finds nothing.
    let out = bohr(&[
        "sharpness",
        "--theorem",
        "thm4-lambda-first",
        "--a-grid",
        "0.1",
        "--eps-grid",
        "1e-6",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn table_sweeps() {
    let out = bohr(&[
        "table", "--sweep", "thm2-sq", "--param", "a0", "--from", "0", "--to", "0.9", "--step", "0.1",
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(&header[..3], ["param", "radius", "residual"]);
    assert_eq!(rows.len(), 10);
    for row in &rows {
        let a: f64 = row[0].parse().unwrap();
        let r: f64 = row[1].parse().unwrap();
        assert!(1.0 / 3.0 < r && r < 1.0 / (2.0 + a), "a={a} r={r}");
    }

    let out = bohr(&[
        "table", "--sweep", "thm1-r", "--param", "n", "--from", "1", "--to", "10", "--step", "1",
    ]);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 10);
    let radii: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(radii.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(rows[0][0], "1");

    let out = bohr(&[
        "table", "--sweep", "cor2a", "--param", "a0", "--p", "1", "--from", "0", "--to", "0.99", "--step",
        "0.01",
    ]);
    assert_eq!(code(&out), 0);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() >= 0.6 - 1e-12));

    assert_eq!(
        code(&bohr(&[
            "table", "--sweep", "thm2", "--param", "a0", "--from", "0", "--to", "1", "--step", "0"
        ])),
        2
    );
}

#[test]
fn sample_is_deterministic_and_replayable() {
    let args = ["sample", "--seed", "1", "--profile", "blaschke"];
    let a = bohr(&args);
    let b = bohr(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let s = json(&a);
    let coeffs = s["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 16);
    let a0 = coeffs[0]["abs"].as_f64().unwrap();
    let a1 = coeffs[1]["abs"].as_f64().unwrap();
    assert!(a1 <= 1.0 - a0 * a0 + 1e-12);

    let recipe = s["recipe"].as_str().unwrap();
    let out = bohr(&["verify", "--theorem", "thm2", "--replay", recipe]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["failures"].as_array().unwrap().is_empty());
    let out = bohr(&["verify", "--theorem", "lemmas", "--replay", recipe]);
    assert_eq!(code(&out), 0);

    let out = bohr(&["sample", "--seed", "1", "--profile", "convex", "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["n", "re", "im", "abs", "recipe"]);
    assert_eq!(rows.len(), 16);
}

#[test]
fn json_round_trip_is_idempotent() {
    for args in [
        vec!["radius", "--theorem", "thm2", "--a0", "0.3"],
        vec!["verify", "--theorem", "thm6-h", "--trials", "50", "--seed", "4"],
        vec!["sharpness", "--theorem", "thm7-j"],
        vec!["remark", "--c", "1e-6,1.125,10"],
        vec!["threshold", "--theorem", "thm6-h", "--r", "0.35"],
    ] {
        let out = bohr(&args);
        assert_eq!(code(&out), 0, "{args:?}");
        let first = json(&out);
        let text = serde_json::to_string(&first).unwrap();
        let second: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&second).unwrap(), text);
        assert_eq!(first["command"]["name"], args[0]);
    }
}

#[test]
fn remark_and_threshold_values() {
    let rep = json(&bohr(&["remark", "--c", "1.125"]));
    let v = &rep["reports"][0]["value"];
    assert_eq!(v["upper"].as_f64().unwrap(), 1.28125);
    let t = json(&bohr(&["threshold", "--theorem", "thm6-h", "--r", "0.35"]));
    assert!((t["threshold_a"].as_f64().unwrap() - 0.0725 / 0.105).abs() < 1e-14);
}

#[test]
fn order_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(["verify", "--theorem", "thm2", "--trials", "20", "--seed", "1"])
        .env("BOHR_DEFAULT_ORDER", "128")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["order"], 128);
    let out = bohr(&[
        "verify",
        "--theorem",
        "thm2",
        "--trials",
        "20",
        "--seed",
        "1",
        "--order",
        "64",
    ]);
    assert_eq!(json(&out)["order"], 64);
}

#[test]
fn seeded_commands_are_byte_identical() {
    let args = ["verify", "--theorem", "all", "--trials", "30", "--seed", "8"];
    let a = bohr(&args);
    let b = bohr(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
