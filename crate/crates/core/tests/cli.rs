use std::process::{Command, Output};

use serde_json::Value;

fn ncplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncplane")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn bracket_examples() {
    let cases = [
        (["q1", "q2"], "theta"),
        (["p1", "p2"], "0"),
        (["q1*p2", "q2*p1"], "-q1*p1 + q2*p2 + theta*p1*p2"),
        (["q1", "p1"], "1"),
    ];
    for (args, expected) in cases {
        let o = ncplane(&["bracket", args[0], args[1]]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), expected);
    }
    let o = ncplane(&["bracket", "q1 - 1/2*theta*p2", "q2 + 1/2*theta*p1", "--standard"]);
    assert_eq!(stdout(&o).trim(), "theta");
}

#[test]
fn bracket_value_text_matches_json() {
    let args = ["bracket", "q1*p2", "q2*p1", "--point", "1,2,3,4", "--theta", "0.3"];
    let text = stdout(&ncplane(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let doc = json(&ncplane(&json_args));
    let value = doc["value"].as_f64().unwrap();
    // -q1 p1 + q2 p2 + θ p1 p2 at (1, 2, 3, 4), θ = 0.3
    assert!((value - (-3.0 + 8.0 + 0.3 * 12.0)).abs() < 1e-12);
    assert!(text.contains(&format!("value: {}", serde_json::to_string(&value).unwrap())));
}

#[test]
fn vf_bopp_momentmap() {
    let o = ncplane(&["vf", "q1"]);
    assert_eq!(stdout(&o), "d/dq1: 0\nd/dq2: -theta\nd/dp1: -1\nd/dp2: 0\n");
    assert_eq!(stdout(&ncplane(&["bopp", "q1"])).trim(), "q1 - 1/2*theta*p2");
    let doc = json(&ncplane(&["momentmap", "0,0,0,1,0,0", "--format", "json"]));
    assert_eq!(doc["commuting"], "q2 + 1/2*theta*p1");
    assert_eq!(doc["noncommuting"], "q2");
}

#[test]
fn cocycle_examples() {
    let doc = json(&ncplane(&["cocycle", "1,0,0,0,0,0", "0,0,1,0,0,0", "--format", "json"]));
    assert_eq!(doc["z1"], "-1");
    assert_eq!(doc["z2"], "0");
    assert_eq!(doc["defect_extended"], "0");
    assert_eq!(doc["defect_abelian"], "-1");

    let doc = json(&ncplane(&["cocycle", "0,0,1,0,0,0", "0,0,0,1,0,0", "--format", "json"]));
    assert_eq!(doc["z2"], "1");
    assert_eq!(doc["literal_z2"], "2");

    let doc = json(&ncplane(&["cocycle", "1/2,-3,2,1,0,0", "1/2,-3,2,1,0,0", "--format", "json"]));
    for key in ["z1", "z2", "literal_z1", "literal_z2", "defect_extended", "defect_abelian"] {
        assert_eq!(doc[key], "0", "{key}");
    }
}

#[test]
fn grouplaw() {
    let doc = json(&ncplane(&["grouplaw", "1,0,1,0,0,0", "0,1,0,1,0,0", "--format", "json"]));
    assert_eq!(doc["product"], serde_json::json!(["1", "1", "1", "1", "0", "1/2"]));
    assert_eq!(doc["commutator"], serde_json::json!(["0", "0", "0", "0", "0", "1"]));
}

#[test]
fn malformed_inputs_exit_2_with_offsets() {
    let corpus: &[(&[&str], usize)] = &[
        (&["bracket", "q3", "p1"], 0),
        (&["bracket", "q1", "p1 +"], 4),
        (&["bracket", "q1/(p1)", "p1"], 3),
        (&["bracket", "((q1)", "p1"], 0),
        (&["vf", "q1^q2"], 3),
        (&["vf", "1.2.3"], 0),
        (&["bopp", "q1 @ p1"], 3),
        (&["cocycle", "1,0,x,0,0,0", "0,0,0,0,0,0"], 4),
        (&["cocycle", "1,0,0,0,0", "0,0,0,0,0,0"], 9),
        (&["momentmap", "1,0,0,0,0,1/0"], 12),
        (&["evolve", "q1", "--x0", "1,0,zz,0", "--t-end", "1"], 4),
        (&["bracket", "q1", "p1", "--point", "1,2,3"], 5),
    ];
    for (args, offset) in corpus {
        let o = ncplane(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(&format!("parse error at offset {offset}:")), "{args:?}: {err}");
    }
    let mut args = corpus[0].0.to_vec();
    args.extend(["--format", "json"]);
    let doc = json(&ncplane(&args));
    assert_eq!(doc["error"], "parse");
    assert_eq!(doc["offset"], 0);
}

#[test]
fn usage_and_setup_errors() {
    assert_eq!(ncplane(&["bracket", "q1"]).status.code(), Some(2));
    assert_eq!(ncplane(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ncplane(&["--help"]).status.code(), Some(0));
    for bad in [["--grid-n", "100"], ["--box-l", "-1"], ["--hbar", "0"], ["--tol", "-1"]] {
        let mut args = vec!["verify-all"];
        args.extend(bad);
        assert_eq!(ncplane(&args).status.code(), Some(3), "{bad:?}");
    }
    let blowup = ncplane(&["evolve", "q1^2*p1^2", "--x0", "3,0,3,0", "--t-end", "10", "--dt", "0.1"]);
    assert_eq!(blowup.status.code(), Some(3));
    assert_eq!(ncplane(&["evolve", "q1", "--x0", "0,0,0,0", "--t-end", "1", "--dt", "0"]).status.code(), Some(3));
}

#[test]
fn evolve_csv() {
    let o = ncplane(&["evolve", "1/2*(p1^2 + p2^2)", "--x0", "0,0,1,-2", "--t-end", "1", "--dt", "0.25", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,q1,q2,p1,p2,H"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in &rows {
        // free particle: q = t·p
        assert!((r[1] - r[0]).abs() < 1e-12 && (r[2] + 2.0 * r[0]).abs() < 1e-12);
        assert_eq!(r[5], 2.5);
    }
}

fn check_schema(doc: &Value) {
    assert!(doc["version"].is_string());
    assert!(doc["config"].is_object());
    assert!(doc["pass"].is_boolean());
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        let obj = c.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys, ["name", "params", "measured", "expected", "error", "tol", "pass"]);
        assert!(c["name"].is_string() && c["params"].is_object());
        for k in ["measured", "expected"] {
            assert!(c[k].is_number() || c[k].is_string(), "{c}");
        }
        assert!(c["error"].as_f64().unwrap() >= 0.0);
        assert!(c["tol"].is_number() && c["pass"].is_boolean());
        assert_eq!(c["pass"].as_bool().unwrap(), c["error"].as_f64() <= c["tol"].as_f64());
    }
    let all = checks.iter().all(|c| c["pass"] == true);
    assert_eq!(doc["pass"].as_bool().unwrap(), all);
}

#[test]
fn verify_all_default_passes_and_is_deterministic() {
    let a = ncplane(&["verify-all", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    let doc = json(&a);
    check_schema(&doc);
    assert_eq!(doc["pass"], true);
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let first = |prefix: &str| names.iter().position(|n| n.starts_with(prefix)).unwrap();
    assert!(first("algebra.") < first("group.") && first("group.") < first("rep."));

    let b = ncplane(&["verify-all", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);

    // Text mode lists the same numbers.
    let text = stdout(&ncplane(&["verify-all"]));
    for (c, line) in doc["checks"].as_array().unwrap().iter().zip(text.lines().skip(1)) {
        let render = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => serde_json::to_string(&other.as_f64().unwrap()).unwrap(),
        };
        assert!(line.contains(c["name"].as_str().unwrap()));
        assert!(line.contains(&format!("measured={}", render(&c["measured"]))), "{line}");
        assert!(line.contains(&format!("error={}", render(&c["error"]))), "{line}");
    }
}

#[test]
fn verify_all_flat_and_forced_failure() {
    let flat = ncplane(&["verify-all", "--theta", "0", "--format", "json"]);
    assert_eq!(flat.status.code(), Some(0));
    let doc = json(&flat);
    let qq = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "rep.commutator_qq")
        .unwrap();
    assert_eq!(qq["expected"], 0.0);
    assert!(qq["error"].as_f64().unwrap() < 1e-10);

    let forced = ncplane(&["verify-all", "--tol", "1e-300"]);
    assert_eq!(forced.status.code(), Some(1));
    let text = stdout(&forced);
    assert!(text.lines().any(|l| l.starts_with("FAIL rep.")));
    assert!(text.trim_end().ends_with("failed)"));
}

#[test]
fn parallel_matches_serial() {
    let serial = json(&ncplane(&["verify-all", "--format", "json", "--seed", "7", "--grid-n", "128", "--box-l", "16"]));
    let parallel = json(&ncplane(&[
        "verify-all", "--format", "json", "--seed", "7", "--grid-n", "128", "--box-l", "16", "--parallel",
    ]));
    assert_eq!(serial["checks"], parallel["checks"]);
    assert_eq!(serial["pass"], true);
}

#[test]
fn rep_check_with_saved_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    let path = path.to_str().unwrap();
    let o = ncplane(&["rep-check", "--save-state", path, "--grid-n", "128", "--box-l", "16", "--theta", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(saved["format"], "wfn-json/1");
    assert_eq!(saved["re"].as_array().unwrap().len(), 128 * 128);

    let doc = json(&ncplane(&["rep-check", "--wavefunction", path, "--format", "json"]));
    check_schema(&doc);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["config"]["theta"], 0.25);

    std::fs::write(path, r#"{"format":"wfn-json/1","n":16,"l":4.0,"theta":0.1,"hbar":1.0,"re":[0.0],"im":[0.0]}"#).unwrap();
    assert_eq!(ncplane(&["rep-check", "--wavefunction", path]).status.code(), Some(3));
}
