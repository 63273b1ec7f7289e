use std::process::{Command, Output};

use serde_json::Value;

fn qsegre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsegre"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Value column of the text line whose first column is `key`.
fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| {
            let mut parts = l.splitn(2, "  ");
            (parts.next()? == key).then(|| parts.next().unwrap().trim())
        })
        .unwrap_or_else(|| panic!("no field {key} in\n{text}"))
}

#[test]
fn ghz_analysis() {
    let o = qsegre(&["analyze", "--state", "1/sqrt(2)(|000>+|111>)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "q"), "1");
    for key in ["J_{3,1}", "J_{3,2}"] {
        let v: f64 = field(&text, key).parse().unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
    assert_eq!(field(&text, "decomposition"), "entangled");
}

#[test]
fn acb_order_splits_b2() {
    let o = qsegre(&["analyze", "--state", "1/sqrt(2)(|000>+|101>)", "--order", "ACB", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["q"], 2);
    assert_eq!(doc["vanishing"], serde_json::json!([2]));
    assert_eq!(doc["order"], "ACB");
}

#[test]
fn separable_state_factors() {
    let o = qsegre(&["analyze", "--state", "|0000>", "--json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["q"], 4);
    assert_eq!(doc["factors"], serde_json::json!(["|0>", "|0>", "|0>", "|0>"]));
    assert!(doc["values"].as_array().unwrap().iter().all(|v| v.as_f64() == Some(0.0)));
}

#[test]
fn json_and_text_carry_identical_numbers() {
    for (expr, engine) in [
        ("1/sqrt(3)(|100>+|010>+|001>)", "purity"),
        ("1/2(|0000>+|+>|011>+|1101>+|->|110>)", "pauli"),
        ("(|0>+i|1>)(x)(|00>-w|11>)", "minors"),
    ] {
        let text = stdout(&qsegre(&["analyze", "--state", expr, "--engine", engine]));
        let json = stdout(&qsegre(&["analyze", "--state", expr, "--engine", engine, "--json"]));
        let doc: Value = serde_json::from_str(&json).unwrap();
        let n = doc["n"].as_u64().unwrap() as usize;
        for (i, v) in doc["values"].as_array().unwrap().iter().enumerate() {
            let t: f64 = field(&text, &format!("J_{{{n},{}}}", i + 1)).parse().unwrap();
            assert_eq!(t.to_bits(), v.as_f64().unwrap().to_bits(), "{expr} cut {}", i + 1);
        }
        let avg: f64 = field(&text, "average").parse().unwrap();
        assert_eq!(avg.to_bits(), doc["average"].as_f64().unwrap().to_bits());
        assert_eq!(field(&text, "q"), doc["q"].to_string());
        assert_eq!(field(&text, "engine"), engine);
        if let Some(r) = doc["residual"].as_f64() {
            let t: f64 = field(&text, "residual").parse().unwrap();
            assert_eq!(t.to_bits(), r.to_bits());
        }
    }
}

#[test]
fn tables_are_byte_identical_across_runs() {
    let a = qsegre(&["tables"]);
    let b = qsegre(&["tables"]);
    assert_eq!(a.stdout, b.stdout);
    let ja = qsegre(&["tables", "--json"]);
    let jb = qsegre(&["tables", "--json"]);
    assert_eq!(ja.stdout, jb.stdout);
    // the BSSB reference rows do not match their definitions, so tables fails
    assert_eq!(a.status.code(), Some(1));
    let text = stdout(&a);
    assert!(text.contains("B1 and B3 columns transposed"));
    let fails: Vec<&str> = text.lines().filter(|l| l.ends_with("FAIL")).collect();
    assert!(fails.iter().all(|l| l.starts_with("BSSB_")), "{fails:?}");
}

#[test]
fn exit_code_contract() {
    assert_eq!(qsegre(&["analyze", "--state", "|01>"]).status.code(), Some(0));
    let bad = qsegre(&["analyze", "--state", "1/sqrt(2)(|00> + |1x>)"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("1:"), "{}", stderr(&bad));
    assert_eq!(qsegre(&["analyze", "--state", "|00>+|1>"]).status.code(), Some(3));
    assert_eq!(qsegre(&["analyze", "--state", "|00>-|00>"]).status.code(), Some(3));
    assert_eq!(qsegre(&["analyze", "--state", "|0>"]).status.code(), Some(3));
    assert_eq!(qsegre(&["analyze", "--state", "|00>", "--order", "AC"]).status.code(), Some(3));
    assert_eq!(qsegre(&["analyze", "--state", "|00>", "--epsilon", "-1"]).status.code(), Some(3));
    assert_eq!(qsegre(&["analyze"]).status.code(), Some(3));
    assert_eq!(qsegre(&["verify", "--n", "3"]).status.code(), Some(3));
    assert_eq!(qsegre(&["verify", "--n", "9", "--trials", "1", "--seed", "0"]).status.code(), Some(3));
    assert_eq!(qsegre(&["bench", "--n", "24", "--ell", "6", "--reps", "0"]).status.code(), Some(3));
    assert_eq!(qsegre(&["embed", "|0>", "|3>"]).status.code(), Some(2));
    // J vanishes below epsilon but the state does not factor
    let near = qsegre(&["analyze", "--state", "|00> + 0.00001|11>"]);
    assert_eq!(near.status.code(), Some(1), "{}", stderr(&near));
}

#[test]
fn verify_small_run() {
    let o = qsegre(&["verify", "--n", "3", "--trials", "20", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("engine equivalence (n = 3): 40 passed, 0 failed"));
    assert!(text.contains("tripartite lemma (1,1,1): 60 passed, 0 failed"));
}

#[test]
fn bench_validation_only() {
    let o = qsegre(&["bench", "--n", "2", "--ell", "1", "--reps", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("validation only"));
}

#[test]
fn embed_bell_after_zero() {
    let o = qsegre(&["embed", "|0>", "1/sqrt(2)(|00>+|11>)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[1:0:0:1:0:0:0:0]"));
    let o = qsegre(&["embed", "|0>", "|0>", "|0>", "--json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["point"], "[1:0:0:0:0:0:0:0]");
    assert_eq!(doc["decomposable"], true);
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("qsegre-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("states.txt");
    std::fs::write(&path, "# reference states\n|000>\n1/sqrt(2)(|000>+|111>)  # ghz\n\n").unwrap();
    let o = qsegre(&["analyze", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let docs: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let qs: Vec<u64> = docs.as_array().unwrap().iter().map(|d| d["q"].as_u64().unwrap()).collect();
    assert_eq!(qs, vec![3, 1]);

    std::fs::write(&path, "|00>\n|0\n").unwrap();
    let o = qsegre(&["analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("states.txt:2:"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).ok();
}
