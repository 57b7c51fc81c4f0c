use std::process::Command;

use ffiwa::cli::{run, Outcome};
use serde_json::Value;

fn ffiwa(args: &str) -> Outcome {
    run(std::iter::once("ffiwa").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = ffiwa(args);
    assert_eq!(out.code, 0, "{args}: {}{}", out.stdout, out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn column(doc: &Value, name: &str) -> Vec<Value> {
    doc["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[name]["value"].clone())
        .collect()
}

/// Every number in `result` and `table` must sit in a `{value, paper_ref,
/// provenance}` object.
fn check_numeric_fields(v: &Value, path: &str) {
    match v {
        Value::Object(m) if m.contains_key("value") => {
            assert!(m["paper_ref"].as_str().is_some_and(|s| !s.is_empty()), "{path}");
            let prov = m["provenance"].as_str().unwrap_or_default();
            assert!(["computed", "input", "bound"].contains(&prov), "{path}: {prov}");
        }
        Value::Object(m) => m
            .iter()
            .for_each(|(k, x)| check_numeric_fields(x, &format!("{path}.{k}"))),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| check_numeric_fields(x, &format!("{path}[{i}]"))),
        Value::Number(_) => panic!("bare number at {path}"),
        _ => {}
    }
}

const COMMANDS: [&str; 19] = [
    "drinfeld inspect --q 2 --phi_T T,1,T^2+T",
    "drinfeld reduce --q 2 --phi_T T,1,T^2+T --place T",
    "drinfeld torsion --q 3 --phi_T T,1 --pi T --place T+2",
    "drinfeld h0 --q 3 --phi_T T,1 --pi T --place T+2",
    "drinfeld selmer-set --q 2 --phi_T T,1,T^2+T --pi T^2+T+1",
    "tower split --q 2 --place T^6+T^3+1 --levels 3",
    "tower delta --q 2 --S T^4+T+1,T^6+T^3+1 --levels 4",
    "tower inert-level --q 2 --S T^4+T+1,inf",
    "zeta lpoly --q 2 --counts 3",
    "zeta count --q 2 --affine y^2+y+x^3 --inf-correction 1 --k 2",
    "zeta tower --q 2 --lpoly 1,0,2 --p 2 --levels 4",
    "zeta bound --q 2 --lpoly 1,0,2 --p 2 --levels 4",
    "iwasawa mu-lambda --p 3 --f 9+9*T+3*T^3",
    "iwasawa growth --p 2 --lambda_parts T-2 --levels 6",
    "iwasawa fit --p 2 --e 0,1,3,7,15",
    "dual dual --residue_size 3 --corank 1 --factors 2",
    "dual torsion-quotient --residue_size 3 --corank 1 --factors 1,2,3 --n 2",
    "dual finiteness --residue_size 3 --corank 1 --factors 2",
    "dual lambda-bound --sel_dim 0 --q 3 --phi_T T,1 --pi T --places T+1,T+2,inf",
];

#[test]
fn zeta_tower_example() {
    let doc = json("zeta tower --q 2 --lpoly 1,0,2 --p 2 --levels 4");
    let h: Vec<Value> = column(&doc, "h");
    assert_eq!(h, ["3", "9", "9", "225"].map(Value::from));
    assert_eq!(column(&doc, "e"), [0, 0, 0, 0].map(Value::from));
    for key in ["lambda", "mu", "nu"] {
        assert_eq!(doc["result"][key]["value"], 0);
    }
}

#[test]
fn tower_delta_example() {
    let doc = json("tower delta --q 2 --S T^4+T+1,T^6+T^3+1 --levels 4");
    assert_eq!(column(&doc, "delta"), [2, 1, 1, 1, 1].map(Value::from));
    assert_eq!(doc["result"]["N"]["value"], 1);
    assert_eq!(doc["result"]["stable_delta"]["value"], 1);
}

#[test]
fn drinfeld_h0_example() {
    let doc = json("drinfeld h0 --q 3 --phi_T T,1 --pi T --place T+2");
    assert_eq!(doc["result"]["h0_dim"]["value"], 0);
    let doc = json("drinfeld h0 --q 3 --phi_T T,1 --pi T --place T+1");
    assert_eq!(doc["result"]["h0_dim"]["value"], 1);
}

#[test]
fn every_numeric_field_is_annotated() {
    for cmd in COMMANDS {
        let doc = json(cmd);
        assert_eq!(doc["schema"], 1);
        assert!(doc["paper_ref"].as_str().is_some_and(|s| !s.is_empty()));
        check_numeric_fields(&doc["result"], cmd);
        check_numeric_fields(&doc["table"], cmd);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for cmd in COMMANDS {
        for format in ["json", "csv"] {
            let args = format!("{cmd} --format {format} --seed 17");
            let (a, b) = (ffiwa(&args), ffiwa(&args));
            assert_eq!(a, b, "{args}");
        }
    }
}

#[test]
fn csv_is_a_projection_of_the_table() {
    let out = ffiwa("zeta tower --q 2 --lpoly 1,0,2 --p 2 --levels 4 --format csv");
    assert_eq!(out.code, 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let h_col = headers.iter().position(|h| h == "h").unwrap();
    let h: Vec<String> = rdr.records().map(|r| r.unwrap()[h_col].to_string()).collect();
    assert_eq!(h, ["3", "9", "9", "225"]);
}

#[test]
fn config_file_matches_flags() {
    let dir = std::env::temp_dir().join(format!("ffiwa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tower.json");
    std::fs::write(&path, r#"{ "q": 2, "lpoly": [1, 0, 2], "p": 2, "levels": 4 }"#).unwrap();
    let from_file = ffiwa(&format!("zeta tower --config {}", path.display()));
    let from_flags = ffiwa("zeta tower --q 2 --lpoly 1,0,2 --p 2 --levels 4");
    assert_eq!(from_file.code, 0, "{}", from_file.stdout);
    let a: Value = serde_json::from_str(&from_file.stdout).unwrap();
    let b: Value = serde_json::from_str(&from_flags.stdout).unwrap();
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["table"], b["table"]);

    // flags override the file
    let over = json(&format!("zeta tower --config {} --levels 2", path.display()));
    assert_eq!(over["table"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_errors_exit_2_and_name_the_field() {
    let dir = std::env::temp_dir().join(format!("ffiwa-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (r#"{ "q": 3, "phi_T": ["T", "1"], "pii": "T", "place": "T+2" }"#, "pii"),
        (
            r#"{ "q": "three", "phi_T": ["T", "1"], "pi": "T", "place": "T+2" }"#,
            "q",
        ),
        (r#"{ "q": 3, "phi_T": ["T", "1"], "pi": "T" }"#, "place"),
    ];
    for (i, (text, field)) in cases.iter().enumerate() {
        let path = dir.join(format!("c{i}.json"));
        std::fs::write(&path, text).unwrap();
        let out = ffiwa(&format!("drinfeld h0 --config {}", path.display()));
        assert_eq!(out.code, 2, "{text}");
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["error"]["kind"], "config");
        assert_eq!(doc["error"]["input"], *field, "{text}");
    }
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(ffiwa(&format!("zeta tower --config {}", bad.display())).code, 2);
    assert_eq!(ffiwa("zeta tower --config /nonexistent/ffiwa.json").code, 2);
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(ffiwa("zeta tower --q 2 --bogus 1").code, 2);
    assert_eq!(ffiwa("zeta tower --q 2 --lpoly 1,x,2 --p 2 --levels 3").code, 2);
}

#[test]
fn module_errors_exit_1_with_a_structured_object() {
    let out = ffiwa("iwasawa fit --p 2 --e 0,1,1,5");
    assert_eq!(out.code, 1);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["error"]["kind"], "non_conforming");
    assert!(doc["error"]["message"].as_str().is_some());

    let out = ffiwa("drinfeld h0 --q 3 --phi_T T,1 --pi T --place T");
    assert_eq!(out.code, 1);
    let out = ffiwa("tower split --q 2 --place T^2+1 --levels 2 --format csv");
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("kind,message,input\nparse,"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ffiwa");
    let ok = Command::new(bin)
        .args(["iwasawa", "fit", "--p", "3", "--e", "2,3,4,5,6"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["result"]["lambda"]["value"], 1);
    let module_err = Command::new(bin)
        .args(["iwasawa", "fit", "--p", "2", "--e", "0,1,1,5"])
        .output()
        .unwrap();
    assert_eq!(module_err.status.code(), Some(1));
    let config_err = Command::new(bin).args(["iwasawa", "fit", "--p"]).output().unwrap();
    assert_eq!(config_err.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
