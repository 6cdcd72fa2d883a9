use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bq")).args(args).output().expect("run bq")
}

fn bq_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn bq");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("bq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn count_only_trefoil() {
    let o = bq(&["colorings", "dihedral3", "trefoil_right", "--mode", "q", "--count-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "9");
}

#[test]
fn listing_has_array_and_count_line() {
    let o = bq(&["colorings", "shift3", "unknot0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let arr: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(arr.as_array().unwrap().len(), 3);
    assert_eq!(arr[0]["kind"], "biquandle");
    assert_eq!(lines.next().unwrap(), "count: 3");
}

#[test]
fn oracle_agrees_and_guards() {
    let o = bq(&["oracle", "dihedral3", "figure8", "--mode", "q", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "3");
    for mode in ["q", "bq"] {
        let a = bq(&["oracle", "census3:0", "hopf_pos", "--mode", mode, "--count-only"]);
        let b = bq(&["colorings", "census3:0", "hopf_pos", "--mode", mode, "--count-only"]);
        assert_eq!(stdout(&a), stdout(&b));
    }
    let o = bq(&["oracle", "dihedral40", "figure8", "--count-only"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    assert_eq!(bq(&["check", "dihedral5"]).status.code(), Some(0));
    assert_eq!(bq(&["check", "census3"]).status.code(), Some(0));
    let bad = temp_file("bad.json", r#"{"n":2,"under":[[1,1],[0,0]],"over":[[0,0],[1,1]]}"#);
    let o = bq(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["violations"][0]["axiom"], "BQ1");
    let ragged = temp_file("ragged.json", r#"{"n":2,"op":[[0,1],[1]]}"#);
    assert_eq!(bq(&["check", ragged.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bq(&["check", "no_such_algebra"]).status.code(), Some(2));
}

#[test]
fn psi_then_phi() {
    let c = r#"{"kind":"quandle","colors":{"1":0,"2":1,"3":2}}"#;
    let listing = bq(&["colorings", "alexander_3_1_2", "trefoil_right", "--mode", "q"]);
    let first = stdout(&listing).lines().next().unwrap().to_string();
    let arr: serde_json::Value = serde_json::from_str(&first).unwrap();
    let q = arr[1].to_string();
    let b = bq_stdin(&["psi", "alexander_3_1_2", "trefoil_right", "-"], &q);
    assert!(b.status.success(), "{}", String::from_utf8_lossy(&b.stderr));
    let bj = json(&b);
    assert_eq!(bj["kind"], "biquandle");
    let back = bq_stdin(&["phi", "alexander_3_1_2", "trefoil_right", "-"], &bj.to_string());
    assert_eq!(json(&back), serde_json::from_str::<serde_json::Value>(&q).unwrap());
    // constant 0,1,2 on the figure-eight arcs breaks a dihedral crossing
    let o = bq_stdin(&["psi", "dihedral3", "figure8", "-"], c);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invariants_from_file() {
    let zero = temp_file("zero.json", r#"{"arity":2,"A":[3],"values":{}}"#);
    for extra in [None, Some("--shadow")] {
        let mut args = vec!["invariant", "dihedral3", zero.to_str().unwrap(), "trefoil_right"];
        args.extend(extra);
        let o = bq(&args);
        assert!(o.status.success());
        assert_eq!(json(&o), serde_json::json!({"invariant": [{"value": [0], "mult": 9}]}));
    }
    let bad = temp_file("notcocycle.json", r#"{"arity":2,"A":[2],"values":{"0,0":[1]}}"#);
    assert_eq!(bq(&["invariant", "dihedral3", bad.to_str().unwrap(), "trefoil_right"]).status.code(), Some(1));
}

#[test]
fn verification_verbs() {
    let o = bq(&["verify-bijection", "dihedral3", "trefoil_right"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!((r["biquandle_colorings"].as_u64(), r["quandle_colorings"].as_u64()), (Some(9), Some(9)));
    assert!(bq(&["verify-naturality", "census3:3", "r3_pair"]).status.success());
    assert_eq!(bq(&["verify-naturality", "census3:3", "trefoil_right"]).status.code(), Some(2));
    let a = bq(&["verify", "--suite", "appendix", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(json(&a)["seed"], 3);
}

#[test]
fn verify_main_is_deterministic() {
    let a = bq(&["verify", "--suite", "main"]);
    let b = bq(&["verify", "--suite", "main"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["passed"].as_bool().unwrap());
}

#[test]
fn catalog_and_help() {
    let o = bq(&["catalog"]);
    assert!(stdout(&o).contains("trefoil_right"));
    let h = bq(&["--help"]);
    assert!(stdout(&h).contains("\"under\""));
    assert_eq!(bq(&["verify", "--suite", "nope"]).status.code(), Some(2));
}
