use std::path::PathBuf;
use std::process::{Command, Output};

fn sample(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "samples", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn qa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qa")).args(args).env_remove("QA_REGISTRY").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Strips the report header and the two-space indent from emitted text.
fn emitted(o: &Output, skip: usize) -> String {
    stdout(o).lines().skip(skip).map(|l| l.strip_prefix("  ").unwrap_or(l)).collect::<Vec<_>>().join("\n")
}

#[test]
fn check_lists_everything() {
    let o = qa(&["check", "--algebra", &sample("fix5.qa")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("algebra C over Q: 4 vertices, 4 arrows"), "{s}");
    assert!(s.contains("dim 8"));
    assert!(s.contains("module M over C"));
}

#[test]
fn dimensions() {
    let o = qa(&["pd", "--algebra", &sample("fix2.qa"), "--module", "S1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pd(S1) = 1"));
    let o = qa(&["id", "--algebra", &sample("fix2.qa"), "--module", "S1"]);
    assert!(stdout(&o).contains("id(S1) = 0"), "{}", stdout(&o));
    let o = qa(&["pd", "--algebra", &sample("dual.qa"), "--module", "Sv"]);
    assert!(stdout(&o).contains("infinite"), "{}", stdout(&o));
}

#[test]
fn json_reports() {
    let o = qa(&["--format", "json", "phi", "--algebra", &sample("nakayama3.qa"), "--module", "S1", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["version"], 1);
    let r = &v["reports"][0];
    assert_eq!(r["check"], "phi");
    assert_eq!(r["status"], "pass");
}

#[test]
fn phidim_suite_of_selfinjective_is_zero() {
    let o = qa(&["--format", "json", "phidim-suite", "--algebra", &sample("nakayama3.qa")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let details = v["reports"][0]["details"].to_string();
    assert!(details.contains("φdim ≥ 0"), "{details}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(qa(&[]).status.code(), Some(2));
    let o = qa(&["pd", "--algebra", "no/such/file.qa", "--module", "S1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qa(&["pd", "--algebra", &sample("fix2.qa"), "--module", "S9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("S9"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qa");
    std::fs::write(&bad, "algebra A over Q {\n  vertices 1 2;\n  arrows a: 1 -> ;\n}\n").unwrap();
    let o = qa(&["check", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":3:"), "{}", stderr(&o));
}

#[test]
fn registry_round_trip_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reg.json");
    let p = path.to_str().unwrap();
    let o = qa(&["registry", "save", "--algebra", &sample("fix5.qa"), "--module", "S1+M", "--module", "P2", "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("2 classes"));

    let o = Command::new(env!("CARGO_BIN_EXE_qa"))
        .args(["registry", "load", "--algebra", &sample("fix5.qa")])
        .env("QA_REGISTRY", p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("#1: dims [0, 1, 0, 1] projective"));

    let o = qa(&["registry", "load", "--algebra", &sample("fix2.qa"), "--path", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fingerprint"));
}

#[test]
fn opposite_output_parses() {
    let o = qa(&["opposite", "--algebra", &sample("fix2.qa")]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("op.qa");
    std::fs::write(&f, emitted(&o, 1)).unwrap();
    let o = qa(&["check", "--algebra", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("A2^op"));
}

#[test]
fn cpq_emit_accepts_negative_parameters() {
    let o = qa(&["example", "cpq", "--p", "-1", "--q", "3", "--verify", "none", "--emit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.qa");
    std::fs::write(&f, emitted(&o, 3)).unwrap();
    let o = qa(&["check", "--algebra", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("dim 41"));
}

#[test]
fn cpq_table_to_n1_passes() {
    let o = qa(&["example", "cpq", "--nmax", "1", "--verify", "table"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn gluing_checks() {
    let o = qa(&["hypotheses", "--algebra", &sample("fix5.qa")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qa(&["verify", "lemma3.1", "--algebra", &sample("fix5.qa"), "--random", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qa(&["verify", "prop3.5", "--algebra", &sample("fix5.qa")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
