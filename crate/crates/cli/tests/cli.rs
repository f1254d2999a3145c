use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn binfty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binfty")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn emit(dir: &TempDir, name: &str) -> String {
    let p = dir.path().join(format!("{name}.json"));
    let o = binfty(&["examples", "emit", name, "--output", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p.to_str().unwrap().to_string()
}

const NON_ASSOCIATIVE_CIRC: &str = r#"{
  "name": "skew",
  "generators": [{"name": "1", "degree": 0}, {"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
  "unit": "1",
  "bullet": [
    {"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]},
    {"input": ["1", "a"], "terms": [{"coeff": "1", "word": ["a"]}]},
    {"input": ["a", "1"], "terms": [{"coeff": "1", "word": ["a"]}]},
    {"input": ["1", "b"], "terms": [{"coeff": "1", "word": ["b"]}]},
    {"input": ["b", "1"], "terms": [{"coeff": "1", "word": ["b"]}]}
  ],
  "circ": [
    {"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]},
    {"input": ["1", "a"], "terms": [{"coeff": "1", "word": ["a"]}]},
    {"input": ["a", "1"], "terms": [{"coeff": "1", "word": ["a"]}]},
    {"input": ["1", "b"], "terms": [{"coeff": "1", "word": ["b"]}]},
    {"input": ["b", "1"], "terms": [{"coeff": "1", "word": ["b"]}]},
    {"input": ["a", "b"], "terms": [{"coeff": "1", "word": ["a"]}]},
    {"input": ["b", "a"], "terms": [{"coeff": "1", "word": ["b"]}]}
  ],
  "diff": []
}"#;

const UNIT_ONLY: &str = r#"{
  "name": "k1",
  "generators": [{"name": "1", "degree": 0}],
  "unit": "1",
  "bullet": [{"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]}],
  "circ": [{"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]}],
  "diff": [],
  "coproduct": [{"input": ["1"], "terms": [{"coeff": "1", "word": ["1", "1"]}]}]
}"#;

/// A group-like `g` with `g∘g = g•g = g`: never killed by the reduced coproduct.
const GROUP_LIKE: &str = r#"{
  "name": "grouplike",
  "generators": [{"name": "1", "degree": 0}, {"name": "g", "degree": 0}],
  "unit": "1",
  "bullet": [
    {"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]},
    {"input": ["1", "g"], "terms": [{"coeff": "1", "word": ["g"]}]},
    {"input": ["g", "1"], "terms": [{"coeff": "1", "word": ["g"]}]},
    {"input": ["g", "g"], "terms": [{"coeff": "1", "word": ["g"]}]}
  ],
  "circ": [
    {"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]},
    {"input": ["1", "g"], "terms": [{"coeff": "1", "word": ["g"]}]},
    {"input": ["g", "1"], "terms": [{"coeff": "1", "word": ["g"]}]},
    {"input": ["g", "g"], "terms": [{"coeff": "1", "word": ["g"]}]}
  ],
  "diff": [],
  "coproduct": [
    {"input": ["1"], "terms": [{"coeff": "1", "word": ["1", "1"]}]},
    {"input": ["g"], "terms": [{"coeff": "1", "word": ["g", "g"]}]}
  ],
  "counit": {"1": "1", "g": "1"}
}"#;

/// Shuffle product with deconcatenation on words in `x` of length at most 2.
const SHUFFLE: &str = r#"{
  "name": "shuffle",
  "generators": [{"name": "1", "degree": 0}, {"name": "x", "degree": 0}, {"name": "xx", "degree": 0}],
  "unit": "1",
  "bullet": [
    {"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]},
    {"input": ["1", "x"], "terms": [{"coeff": "1", "word": ["x"]}]},
    {"input": ["x", "1"], "terms": [{"coeff": "1", "word": ["x"]}]},
    {"input": ["1", "xx"], "terms": [{"coeff": "1", "word": ["xx"]}]},
    {"input": ["xx", "1"], "terms": [{"coeff": "1", "word": ["xx"]}]},
    {"input": ["x", "x"], "terms": [{"coeff": "2", "word": ["xx"]}]}
  ],
  "circ": [
    {"input": ["1", "1"], "terms": [{"coeff": "1", "word": ["1"]}]},
    {"input": ["1", "x"], "terms": [{"coeff": "1", "word": ["x"]}]},
    {"input": ["x", "1"], "terms": [{"coeff": "1", "word": ["x"]}]},
    {"input": ["1", "xx"], "terms": [{"coeff": "1", "word": ["xx"]}]},
    {"input": ["xx", "1"], "terms": [{"coeff": "1", "word": ["xx"]}]},
    {"input": ["x", "x"], "terms": [{"coeff": "2", "word": ["xx"]}]}
  ],
  "diff": [],
  "coproduct": [
    {"input": ["1"], "terms": [{"coeff": "1", "word": ["1", "1"]}]},
    {"input": ["x"], "terms": [{"coeff": "1", "word": ["x", "1"]}, {"coeff": "1", "word": ["1", "x"]}]},
    {"input": ["xx"], "terms": [
      {"coeff": "1", "word": ["xx", "1"]}, {"coeff": "1", "word": ["x", "x"]}, {"coeff": "1", "word": ["1", "xx"]}
    ]}
  ],
  "truncation": {"cap": 2, "weights": {"1": 0, "x": 1, "xx": 2}}
}"#;

#[test]
fn poly3_validates() {
    let dir = TempDir::new().unwrap();
    let o = binfty(&["validate", &emit(&dir, "poly3")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("status: pass\n"));
}

#[test]
fn non_associative_circ_is_a_violation_with_witness() {
    let dir = TempDir::new().unwrap();
    let o = binfty(&["validate", &write(&dir, "skew.json", NON_ASSOCIATIVE_CIRC)]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("FAIL") && l.contains("circ associativity")).unwrap();
    assert!(line.contains(" at ["), "{line}");
}

#[test]
fn missing_unit_and_malformed_input_exit_2() {
    let dir = TempDir::new().unwrap();
    let no_unit = NON_ASSOCIATIVE_CIRC.replace("\"unit\": \"1\",", "");
    let o = binfty(&["validate", &write(&dir, "nounit.json", &no_unit)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unit"));

    let float = NON_ASSOCIATIVE_CIRC.replace("\"coeff\": \"1\"", "\"coeff\": \"0.5\"");
    let o = binfty(&["validate", &write(&dir, "float.json", &float)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bullet[0].terms[0]"));

    let extra = NON_ASSOCIATIVE_CIRC.replacen("\"name\": \"skew\",", "\"name\": \"skew\", \"colour\": 1,", 1);
    let o = binfty(&["validate", &write(&dir, "extra.json", &extra)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn derive_prints_tables_and_rejects_large_arity() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "poly3");
    let o = binfty(&["derive", &p, "--max-arity", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("m_2[t, t] = 1 t\n"), "{out}");
    assert!(out.contains("m_1[t2] = 1 t\n"));
    let o = binfty(&["derive", &p, "--max-arity", "7", "--cap", "6"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn perturbation_breaks_compatibility() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "poly3");
    assert_eq!(code(&binfty(&["check", &p, "--laws", "compat"])), 0);
    let o = binfty(&["check", &p, "--laws", "compat", "--perturb", "m11"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL compatibility") && l.contains(" at [")));
}

#[test]
fn check_rejects_unknown_law_and_uib_without_coproduct() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "ext1");
    assert_eq!(code(&binfty(&["check", &p, "--laws", "foo"])), 2);
    assert_eq!(code(&binfty(&["check", &p, "--laws", "uib"])), 2);
}

#[test]
fn shuffle_bialgebra_fails_uib() {
    let dir = TempDir::new().unwrap();
    let o = binfty(&["check", &write(&dir, "sh.json", SHUFFLE), "--laws", "uib"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("FAIL unital infinitesimal relation"));
}

#[test]
fn examples_list_has_four_names() {
    let o = binfty(&["examples", "list"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(names, ["poly3", "ext1", "dual2", "upper2"]);
    assert_eq!(code(&binfty(&["examples", "emit", "nope"])), 2);
}

#[test]
fn emitted_files_are_stable_and_validate() {
    for name in ["poly3", "ext1", "dual2", "upper2"] {
        let a = binfty(&["examples", "emit", name]);
        let b = binfty(&["examples", "emit", name]);
        assert_eq!(a.stdout, b.stdout);
        let dir = TempDir::new().unwrap();
        assert_eq!(code(&binfty(&["validate", &emit(&dir, name)])), 0, "{name}");
    }
}

#[test]
fn primitives_of_unit_only_and_envelope() {
    let dir = TempDir::new().unwrap();
    let o = binfty(&["primitives", &write(&dir, "k1.json", UNIT_ONLY)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("== primitive basis ==\n(empty)\n"));

    let u = dir.path().join("u.json");
    let o = binfty(&["examples", "emit", "poly3", "--envelope", "3", "--output", u.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = binfty(&["primitives", u.to_str().unwrap(), "--cap", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for g in ["[1] = 1 [1]", "[t] = 1 [t]", "[t2] = 1 [t2]"] {
        assert!(out.contains(g), "{out}");
    }
    assert_eq!(code(&binfty(&["primitives", &emit(&dir, "poly3")])), 2);
}

#[test]
fn every_subcommand_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "upper2");
    let u = dir.path().join("u.json");
    binfty(&["examples", "emit", "ext1", "--envelope", "3", "--output", u.to_str().unwrap()]);
    let u = u.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", &p],
        vec!["derive", &p, "--max-arity", "4"],
        vec!["check", &p, "--max-arity", "4"],
        vec!["check", &p, "--format", "json"],
        vec!["primitives", u, "--cap", "3"],
        vec!["examples", "list"],
        vec!["examples", "emit", "dual2"],
    ];
    for args in runs {
        let a = binfty(&args);
        let b = binfty(&args);
        assert_eq!(code(&a), 0, "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let p = emit(&dir, "dual2");
    let out = dir.path().join("report.json");
    let o = binfty(&["validate", &p, "--format", "json", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&out)).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn non_conilpotent_primitives_exit_1_with_witness() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "g.json", GROUP_LIKE);
    assert_eq!(code(&binfty(&["validate", &p])), 0);
    let o = binfty(&["primitives", &p, "--cap", "2"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("not conilpotent at truncation 2"), "{err}");
    assert!(err.contains("1 [g, g, g]"), "{err}");
}
