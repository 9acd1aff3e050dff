use std::process::{Command, Output};

use serde_json::Value;

fn grovlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grovlab")).args(args).env_remove("GROVLAB_SEED").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn pmax_reference_values() {
    let ghz = json_of(&grovlab(&["pmax", "--family", "ghz"]));
    assert!((num(&ghz["results"]["p_max"]) - 0.5).abs() < 1e-8);
    assert_eq!(ghz["command"], "pmax");
    for key in ["version", "seed", "tolerances", "input", "results", "timestamp"] {
        assert!(ghz.get(key).is_some(), "missing {key}");
    }

    let w = json_of(&grovlab(&["pmax", "--family", "w"]));
    assert!((num(&w["results"]["p_max"]) - 4.0 / 9.0).abs() < 1e-8);

    let basis = json_of(&grovlab(&["pmax", "--amplitudes", "1,0,0,0,0,0,0,0"]));
    assert!((num(&basis["results"]["p_max"]) - 1.0).abs() < 1e-12);
    let g = num(&basis["results"]["g_measure"]);
    assert!(g.abs() < 1e-6);
}

#[test]
fn pmax_auto_reports_every_method() {
    let out =
        json_of(&grovlab(&["pmax", "--family", "gw", "--a", "0.8", "--b", "0.48", "--c", "0.36", "--method", "auto"]));
    let r = &out["results"];
    assert_eq!(r["runs"].as_array().unwrap().len(), 3);
    assert_eq!(r["closed_form"]["branch"], "vertex");
    for (_, d) in r["deltas"].as_object().unwrap() {
        assert!(num(d) < 1e-8);
    }
    let bloch = &r["runs"][2];
    assert!(num(&bloch["stationary"]["lambda1"]) > 0.0);
}

#[test]
fn complex_amplitudes_and_normalization_warning() {
    let out = grovlab(&["pmax", "--amplitudes", "1,0,0,0,0,0,0,1j"]);
    let v = json_of(&out);
    assert!((num(&v["results"]["p_max"]) - 0.5).abs() < 1e-8);
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalizing"));

    let clean = grovlab(&["pmax", "--amplitudes", "0.6,0.8j"]);
    assert!(clean.status.success());
    assert!(clean.stderr.is_empty());
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["pmax", "--amplitudes", "1,zz"][..],
        &["pmax", "--family", "nope"],
        &["pmax", "--family", "gw", "--a", "1"],
        &["pmax", "--amplitudes", "1,0,0"],
        &["pmax", "--bogus"],
        &["sweep", "--kappa", "1:2"],
        &["pmax", "--family", "four-term", "--a", "0.9", "--b", "0.1"],
    ] {
        let out = grovlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn teleport_w1_simulation() {
    let v = json_of(&grovlab(&["teleport", "--family", "w1", "--bob", "2", "--trials", "1000"]));
    let r = &v["results"];
    assert_eq!(r["feasible"], true);
    let s = &r["summary"];
    assert!(num(&s["min_fidelity"]) > 1.0 - 1e-10);
    // χ² with 3 degrees of freedom, p = 0.001
    assert!(num(&s["chi_square_uniform"]) < 16.27);
    assert_eq!(r["trials"].as_array().unwrap().len(), 1000);
    assert_eq!(r["protocol"]["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn teleport_fixed_input() {
    let v = json_of(&grovlab(&["teleport", "--family", "w1", "--input", "0.6,0.8j", "--trials", "20"]));
    for t in v["results"]["trials"].as_array().unwrap() {
        assert!(num(&t["fidelity"]) > 1.0 - 1e-10);
    }
}

#[test]
fn teleport_feasibility_verdicts() {
    let ghz = json_of(&grovlab(&["teleport", "--family", "ghz", "--bob", "0"]));
    assert_eq!(ghz["results"]["feasible"], true);

    let args = ["teleport", "--family", "phi", "--q1", "0,0", "--q2", "0,0", "--bob", "2"];
    let v = json_of(&grovlab(&args));
    assert_eq!(v["results"]["feasible"], false);

    let mut strict = args.to_vec();
    strict.push("--require-feasible");
    let out = grovlab(&strict);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["feasible"], false);
}

#[test]
fn dense_verdicts() {
    let v = json_of(&grovlab(&["dense", "--family", "phi", "--alice", "0"]));
    assert_eq!(v["results"]["feasible"], true);
    let gram = v["results"]["gram"].as_array().unwrap();
    assert_eq!(gram.len(), 4);

    let v = json_of(&grovlab(&["dense", "--family", "phi", "--q1", "0,0", "--q2", "0,0", "--alice", "2"]));
    assert_eq!(v["results"]["feasible"], false);

    let v = json_of(&grovlab(&["dense", "--amplitudes", "1,0,0,0,0,0,0,0"]));
    assert_eq!(v["results"]["feasible"], false);
}

#[test]
fn scan_four_term_grid() {
    let v = json_of(&grovlab(&["scan", "--family", "four-term", "--grid", "21", "--no-cross-check"]));
    let recs = v["results"]["records"].as_array().unwrap();
    assert_eq!(recs.len(), 441);
    for r in recs {
        assert!((num(&r["pmax_numeric"]) - 0.5).abs() <= 1e-6);
    }
    assert_eq!(v["results"]["summary"]["necessary_violations"].as_array().unwrap().len(), 0);
}

#[test]
fn scan_gw_corners() {
    let v = json_of(&grovlab(&["scan", "--family", "gw", "--grid", "2"]));
    let recs = v["results"]["records"].as_array().unwrap();
    assert_eq!(recs.len(), 4);
    for r in recs {
        assert_eq!(r["branch"], "vertex");
        let p = &r["params"];
        let squares = [num(&p["a"]).powi(2), num(&p["b"]).powi(2), num(&p["c"]).powi(2)];
        let pm = num(&r["pmax_numeric"]);
        assert!(squares.iter().any(|s| (s - pm).abs() < 1e-12));
    }
}

#[test]
fn sweep_reports_crossing() {
    let v = json_of(&grovlab(&["sweep", "--kappa", "0.5:1.3:161"]));
    assert_eq!(v["results"]["points"].as_array().unwrap().len(), 161);
    let c = &v["results"]["crossings"][0];
    let target = ((5f64.sqrt() - 1.0) / 2.0).sqrt();
    assert!((num(&c["kappa"]) - target).abs() < 1e-9);
    assert!((num(&c["p_left"]) - num(&c["p_right"])).abs() < 1e-8);

    let csv = grovlab(&["sweep", "--kappa", "0.5:1.3:5", "--format", "csv"]);
    assert!(csv.status.success());
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 6);
}

#[test]
fn reproducible_output_is_byte_identical() {
    let args = ["scan", "--family", "phi", "--grid", "3", "--seed", "9", "--reproducible"];
    let a = grovlab(&args);
    let b = grovlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timestamp").is_none());
    assert_eq!(v["seed"], 9);

    let via_env = Command::new(env!("CARGO_BIN_EXE_grovlab"))
        .args(["scan", "--family", "phi", "--grid", "3", "--reproducible"])
        .env("GROVLAB_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a.stdout, via_env.stdout);

    let seq = grovlab(&["scan", "--family", "phi", "--grid", "3", "--seed", "9", "--reproducible", "--sequential"]);
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn csv_matches_json() {
    let dir = tempfile::tempdir().unwrap();
    let jp = dir.path().join("scan.json");
    let cp = dir.path().join("scan.csv");
    let base = ["scan", "--family", "all", "--grid", "3", "--seed", "4"];
    let j = grovlab(&[&base[..], &["--out", jp.to_str().unwrap()]].concat());
    let c = grovlab(&[&base[..], &["--out", cp.to_str().unwrap(), "--format", "csv"]].concat());
    assert!(j.status.success() && c.status.success());
    assert!(j.stdout.is_empty() && c.stdout.is_empty());

    let v: Value = serde_json::from_slice(&std::fs::read(&jp).unwrap()).unwrap();
    let recs = v["results"]["records"].as_array().unwrap();
    let mut rdr = csv::Reader::from_path(&cp).unwrap();
    let headers = rdr.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), recs.len());

    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    for (rec, row) in recs.iter().zip(&rows) {
        assert_eq!(rec["family"].as_str().unwrap(), &row[col("family")]);
        for (k, val) in rec["params"].as_object().unwrap() {
            assert_eq!(num(val), row[col(k)].parse::<f64>().unwrap());
        }
        for key in ["pmax_numeric", "pmax_analytic", "pmax_reduced", "pmax_bloch"] {
            match rec[key].as_f64() {
                Some(x) => assert_eq!(x, row[col(key)].parse::<f64>().unwrap(), "{key}"),
                None => assert_eq!(&row[col(key)], ""),
            }
        }
        for k in 0..3 {
            assert_eq!(rec["teleport_bob"][k].as_bool().unwrap().to_string(), row[col(&format!("teleport_bob{k}"))]);
            assert_eq!(rec["dense_alice"][k].as_bool().unwrap().to_string(), row[col(&format!("dense_alice{k}"))]);
        }
        for key in ["necessary_ok", "sufficient_ok"] {
            assert_eq!(rec[key].as_bool().unwrap().to_string(), row[col(key)]);
        }
    }
}

#[test]
fn unwritable_output_exits_5() {
    let out = grovlab(&["sweep", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn report_small_run() {
    let v = json_of(&grovlab(&["report", "--grid", "3", "--haar", "50", "--feasible", "20", "--probes", "2"]));
    let r = &v["results"];
    assert_eq!(r["scan"]["necessary_violations"].as_array().unwrap().len(), 0);
    assert_eq!(r["search"]["haar_states"], 50);
    assert!(num(&r["search"]["feasible_max_deviation"]) < 1e-6);
}
