use nullfil::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["nullfil"];
    argv.extend_from_slice(args);
    let r = run(argv);
    (r.code, r.stdout, r.stderr)
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(call(&["classify", "--algebra", "3", "x1 x2 - x2 x1"]).1, "power_ideal k=3\n");
    assert_eq!(call(&["dim", "--algebra", "3", "--m", "2"]).1, "11\n");
    assert_eq!(
        call(&["preimage", "--algebra", "3", "--target", "e3", "x1 x2 - x2 x1"]).1,
        "x1 = e2, x2 = e1\n"
    );
}

#[test]
fn json_schemas() {
    assert_eq!(
        json(&["basis", "--algebra", "3", "--m", "2"]),
        serde_json::json!({"n": 3, "m": 2, "by_degree": {"1": 2, "2": 4, "3": 4}, "unit": 1, "total": 11})
    );
    let v = json(&["classify", "--algebra", "4", "x1^2"]);
    assert_eq!(v["descriptor"], serde_json::json!({"kind": "punctured_cone", "d": 2, "closure_required": true}));

    let v = json(&["preimage", "--algebra", "3", "--target", "4*e2 + 6*e3", "x1^2"]);
    assert_eq!(v["result"], "assignment");
    let x1 = nullfil::model::Element::from_json(&v["assignment"]["x1"], nullfil::Domain::Rational).unwrap();
    assert_eq!(x1.to_string(), "2*e1 + 3*e2");

    assert_eq!(json(&["preimage", "--algebra", "3", "--target", "e3", "x1^2"])["reason"], "beta_d_zero");
    let v = json(&["preimage", "--algebra", "3", "--target", "2*e2", "x1^2"]);
    assert_eq!((v["result"].as_str(), v["exponent"].as_u64(), v["value"].as_str()), (Some("needs_root"), Some(2), Some("2")));

    let v = json(&["eval", "--algebra", "3", "--assign", "x1=e2", "--assign", "x2=e1", "x1 x2 - x2 x1"]);
    let e = nullfil::model::Element::from_json(&v, nullfil::Domain::Rational).unwrap();
    assert_eq!(e.to_string(), "e3");
}

#[test]
fn finite_field_commands() {
    assert_eq!(
        call(&["--field", "fp:7", "preimage", "--algebra", "3", "--target", "2*e2", "x1^2"]).1,
        "x1 = 3*e1\n"
    );
    let (code, out, _) = call(&["--format", "json", "--field", "fp:3", "identity", "--algebra", "3", "x1 x2"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"], "finite_field_identity");
}

#[test]
fn identity_reports_a_witness() {
    let (code, out, _) = call(&["identity", "--algebra", "4", "x1 x2 x3 - x2 x1 x3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "false\nwitness: x1 = e2, x2 = e1, x3 = e1 gives e4\n");
    assert_eq!(call(&["identity", "--algebra", "3", "x1 x2 x3 - x2 x1 x3"]).1, "true\n");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["classify", "x1"]).0, 2);
    assert_eq!(call(&["reduce", "--algebra", "0", "x1"]).0, 2);
    assert_eq!(call(&["--field", "fp:6", "codim", "--algebra", "3", "--m", "2"]).0, 2);
    let (code, _, err) = call(&["classify", "--algebra", "3", "x1 + x1 x2"]);
    assert_eq!(code, 1);
    assert!(err.contains("not multihomogeneous"));
    let (code, out, _) = call(&["--format", "json", "reduce", "--algebra", "3", "x1 (x2"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "parse_error");
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn deterministic_output() {
    let args = ["--format", "json", "verify", "--criterion", "2", "--seed", "5"];
    assert_eq!(call(&args), call(&args));
    let args = ["reduce", "--algebra", "inf", "(x1 x2)(x3 x4) + x3 x1 x2"];
    assert_eq!(call(&args), call(&args));
}
