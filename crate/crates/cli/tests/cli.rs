use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use wcontact::algebra::Ring;
use wcontact::io::format::same_up_to_scalar;
use wcontact::io::parse::parse_poly;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fam() -> String {
    root().join("jobs/codim4.fam").display().to_string()
}

fn wcontact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcontact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schema/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &Value) {
    let val = validator();
    let errors: Vec<String> = val.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{v:#}");
}

/// Run, expect exit 0, validate and return the JSON.
fn ok_json(args: &[&str]) -> Value {
    let out = wcontact(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&v);
    v
}

#[test]
fn every_subcommand_emits_schema_valid_json() {
    let f = fam();
    let f = f.as_str();
    let cases: Vec<Vec<&str>> = vec![
        vec!["gb", "--ideal", "x^2-y, x*y", "--order", "lex x>y"],
        vec!["nf", "--poly", "x^3", "--ideal", "x^2-y, x*y"],
        vec!["colength", "--ideal", "y, x^2"],
        vec!["prepare", "--family", f],
        vec!["phi", "--family", f, "--ideal", "y, x^2"],
        vec!["delta", "--family", f, "--ideal", "y, x^2"],
        vec!["psi", "--family", f, "--ideal", "y, x^2"],
        vec!["star", "--family", f, "--ideal", "y, x^2"],
        vec!["relaxed", "--family", f, "--ideal", "y, x^2"],
        vec!["chart", "--chart", "y, x^2", "--order", "lex y>x"],
        vec!["hilb-eq", "--family", f, "--chart", "y,x^2", "--order", "lex y>x"],
        vec!["lift", "--family", f, "--ideal", "y, x^2"],
        vec!["lift-prime", "--poly", "y - x^2", "--kind", "interior", "--ideal", "x, y"],
        vec!["verify-corr", "--family", f, "--chart", "y, x^2", "--order", "lex y>x", "--samples", "6"],
        vec!["sing", "--ideal", "x*y", "--compare", "x, y"],
        vec!["tangent", "--ideal", "x^2+y*z", "--point", "0,0,0"],
        vec!["variety-eq", "--a", "x^2, y", "--b", "x, y^2"],
        vec!["milnor", "--poly", "y^2+x^4"],
        vec!["tjurina", "--poly", "y*z+x^4", "--vars", "x,y,z"],
        vec!["delta-inv", "--poly", "y^2+x^4", "--branches", "2"],
        vec!["nested", "--ideal", "t, l, n, s*m^2+s*k+k^2+m^2"],
        vec!["localized-eq", "--a", "(1+s)*x", "--b", "x", "--unit", "1+s"],
        vec!["pullback", "--ideal", "a*x + b", "--subs", "a=s, b=t", "--denom", "1+s"],
        vec!["same-up-to-scalar", "--a", "2*x+4", "--b", "x+2"],
    ];
    let mut seen = Vec::new();
    for args in &cases {
        let v = ok_json(args);
        assert_eq!(v["status"], json!("ok"), "{args:?}");
        assert_eq!(v["op"], json!(args[0]));
        seen.push(args[0]);
    }
    for op in wcontact::io::ops::OPS {
        assert!(seen.contains(op), "no case for {op}");
    }
}

#[test]
fn hilb_eq_reproduces_the_displayed_equations() {
    let v = ok_json(&["hilb-eq", "--family", &fam(), "--chart", "y,x^2", "--order", "lex y>x"]);
    let eqs = v["result"]["equations"].as_array().unwrap();
    assert_eq!(eqs.len(), 2);
    let ring = Ring::new(["s", "t", "k", "l", "m", "n"]);
    let expected = [
        "n*(s*m^2+s*k+k^2+m^2)+t*m^2*n+t*l+l^2+n^2*(1+s+t)",
        "m*(s*m^2+s*k+k^2+m^2)+t*m^3+t*k+s*l+2*k*l+2*m*n*(1+s+t)",
    ];
    for (e, want) in eqs.iter().zip(expected) {
        let got = parse_poly(e["canonical"].as_str().unwrap(), &ring).unwrap();
        assert!(same_up_to_scalar(&got, &parse_poly(want, &ring).unwrap()));
    }
}

#[test]
fn star_and_tjurina_examples() {
    let v = ok_json(&["star", "--family", &fam(), "--ideal", "y,x^2"]);
    assert_eq!(v["result"]["surjective"], json!(true));
    assert_eq!(v["result"]["rank"], json!(2));
    assert_eq!(v["result"]["relative_dimension"], json!(0));
    let v = ok_json(&["tjurina", "--poly", "y*z+x^4", "--vars", "x,y,z"]);
    assert_eq!(v["result"]["value"], json!(3));
}

#[test]
fn exit_codes() {
    let out = wcontact(&["gb", "--ideal", "x +* y"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    assert!(out.stdout.is_empty());

    assert_eq!(wcontact(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wcontact(&["milnor"]).status.code(), Some(2));

    let out = wcontact(&["milnor", "--poly", "x^2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&v);
    assert_eq!(v["status"], json!("error"));
}

#[test]
fn job_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.job");
    std::fs::write(&empty, "# nothing\n").unwrap();
    let v = ok_json(&["run", empty.to_str().unwrap()]);
    assert_eq!(v["tasks"], json!({}));

    let cyclic = dir.path().join("cyclic.job");
    std::fs::write(&cyclic, "task a = gb ideal=@b\ntask b = gb ideal=@a\n").unwrap();
    let out = wcontact(&["run", cyclic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cyclic"));

    let failing = dir.path().join("failing.job");
    std::fs::write(&failing, "task m = milnor poly=\"x^2\"\ntask ok = milnor poly=\"y^2+x^3\"\n").unwrap();
    let out = wcontact(&["run", failing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&v);
    assert_eq!(v["failures"], json!(1));
    assert_eq!(v["tasks"]["ok"]["result"]["value"], json!(2));
}

#[test]
fn codim4_job_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let job = root().join("jobs/codim4.job");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let job = job.to_str().unwrap();
    assert_eq!(wcontact(&["run", job, "--out", a.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(
        wcontact(&["run", job, "--sequential", "--out", b.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let ta = std::fs::read(&a).unwrap();
    assert_eq!(ta, std::fs::read(&b).unwrap());
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_valid(&v);
    assert_eq!(v["tasks"]["sing"]["result"]["equals_compare"], json!(true));
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.txt");
    let o = wcontact(&["milnor", "--poly", "y^2+x^4", "--format", "text", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.contains("result.value: 3"));
}
