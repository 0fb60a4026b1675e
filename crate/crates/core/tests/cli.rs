//! End-to-end checks of the binary: exit codes, golden outputs, schema
//! round trips and catalog extension files.
//!
//! Regenerate goldens with `BLESS=1 cargo test --test cli`.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use spherical_forms::cli::{decide, render_json, Problem};
use spherical_forms::decision::Verdict;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn problem(name: &str) -> PathBuf {
    root().join("problems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherical-forms"))
        .args(args)
        .env_remove("SPHERICAL_FORMS_CATALOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("BLESS").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

const EXPECTED: &[(&str, i32)] = &[
    ("so10_orthogonal.toml", 0),
    ("so10_orthogonal_disc.toml", 0),
    ("so10_quaternionic.toml", 1),
    ("so10_quaternionic_disc.toml", 1),
    ("sl3_split.toml", 0),
    ("sl3_quasi_split_outer.toml", 0),
    ("sl3_division_degree3.toml", 1),
    ("sl3_general_field.toml", 2),
    ("sl6_embedding_j0.toml", 1),
    ("sl6_embedding_j1.toml", 0),
    ("sl6_embedding_j2.toml", 1),
    ("sl6_embedding_j3.toml", 0),
    ("sl6_embedding_split.toml", 0),
    ("sl6_embedding_sl3h.toml", 1),
    ("sl3_fan_split.toml", 0),
    ("sl3_fan_su21.toml", 1),
    ("number_field_sl6_m_2p_q.toml", 0),
    ("number_field_sl6_m_p.toml", 1),
    ("e7_m_in_q.toml", 0),
    ("e7_m_omega7.toml", 1),
    ("gu_su3_3.toml", 0),
    ("gu_su2_4.toml", 1),
    ("diagonal_su22_su4.toml", 0),
    ("diagonal_sp6_sp12.toml", 1),
    ("invalid_pairing.toml", 2),
];

#[test]
fn every_problem_file_is_covered() {
    let mut files: Vec<String> = fs::read_dir(root().join("problems"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".toml"))
        .collect();
    files.sort();
    let mut listed: Vec<String> = EXPECTED.iter().map(|(n, _)| n.to_string()).collect();
    listed.sort();
    assert_eq!(files, listed);
}

#[test]
fn exit_codes() {
    for (file, code) in EXPECTED {
        let p = problem(file);
        let o = run(&["decide", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(*code), "{file}: {}", String::from_utf8_lossy(&o.stderr));
        if *code == 2 {
            assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
            assert!(o.stdout.is_empty());
        } else {
            let want = if *code == 0 { "verdict: exists\n" } else { "verdict: not exists\n" };
            assert!(stdout(&o).starts_with(want), "{file}");
        }
    }
}

#[test]
fn json_matches_exit_code_and_replays() {
    for (file, code) in EXPECTED.iter().filter(|(_, c)| *c != 2) {
        let p = problem(file);
        let o = run(&["decide", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(*code));
        let v: Verdict = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v.exists, *code == 0, "{file}");
        assert_eq!(v.replay(), v.exists, "{file}");
        assert!(!v.citations.is_empty(), "{file}");
        let value: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        assert!(keys.iter().any(|k| *k == "exists") && keys.iter().any(|k| *k == "reasons"));
    }
}

#[test]
fn json_is_stable() {
    let p = problem("sl6_embedding_j1.toml");
    let a = stdout(&run(&["decide", "--json", p.to_str().unwrap()]));
    let b = stdout(&run(&["decide", "--json", p.to_str().unwrap()]));
    assert_eq!(a, b);
    golden("sl6_embedding_j1.json", &a);
}

#[test]
fn golden_invariants() {
    for name in ["sl3_split", "so10_orthogonal", "sl6_embedding_j1", "number_field_sl6_m_p", "e7_m_omega7"] {
        let p = problem(&format!("{name}.toml"));
        let o = run(&["invariants", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        golden(&format!("{name}.invariants.txt"), &stdout(&o));
    }
}

#[test]
fn golden_explain() {
    for name in ["sl3_division_degree3", "sl6_embedding_j2", "sl3_fan_su21", "gu_su2_4", "diagonal_sp6_sp12"] {
        let p = problem(&format!("{name}.toml"));
        let o = run(&["decide", "--explain", p.to_str().unwrap()]);
        golden(&format!("{name}.explain.txt"), &stdout(&o));
    }
}

#[test]
fn problems_round_trip() {
    for (file, code) in EXPECTED.iter().filter(|(_, c)| *c != 2) {
        let text = fs::read_to_string(problem(file)).unwrap();
        let p = Problem::parse(&text).unwrap();
        let again = Problem::parse(&p.to_toml()).unwrap();
        assert_eq!(p, again, "{file}");
        let v = decide(&again).unwrap();
        assert_eq!(v.exists, *code == 0, "{file}");
        assert_eq!(render_json(&v), render_json(&decide(&p).unwrap()));
    }
}

#[test]
fn input_errors_are_located() {
    let bad = [
        ("version = 2\nkind = \"gu\"\ntype = \"A1\"\n", "version"),
        ("version = 1\nkind = \"gu\"\ntype = \"A1\"\nbogus = 3\n", "bogus"),
        ("version = 1\nkind = \"gu\"\ntype = \"Z9\"\n", "line"),
        ("version = 1\nkind = \"horospherical\"\ntype = \"A2\"\n[field]\nmode = \"padic\"\n[tits]\nzero = true\n[horospherical]\ni = [5]\nm = [\"P\"]\n", "horospherical"),
    ];
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for (k, (text, needle)) in bad.iter().enumerate() {
        let path = dir.join(format!("bad{k}.toml"));
        fs::write(&path, text).unwrap();
        let o = run(&["decide", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{text}: {err}");
    }
    let o = run(&["decide", "/nonexistent/problem.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_commands() {
    let o = run(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let list = stdout(&o);
    for name in ["SO(10,Q)", "SU(D^5,H)", "SU(p,q)", "Sp(p,q)"] {
        assert!(list.contains(name), "{name} missing from list");
    }
    let o = run(&["catalog", "show", "SU(3,3)"]);
    assert_eq!(o.status.code(), Some(0));
    golden("catalog_su33.txt", &stdout(&o));
    let o = run(&["catalog", "show", "SU(4,2)"]);
    assert!(stdout(&o).contains("t != 1"));
    let o = run(&["catalog", "show", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn catalog_extension_file() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let cat = dir.join("extra_catalog.toml");
    fs::write(
        &cat,
        r#"
[[entry]]
name = "SL(3,D)-test"
type = "A2"
group = "1"
mode = "padic"
values = { omega1 = "1/3" }
citation = "degree 3 division algebra"
"#,
    )
    .unwrap();
    let prob = dir.join("uses_extension.toml");
    let text = fs::read_to_string(problem("sl3_split.toml")).unwrap().replace("\"SL(3)\"", "\"SL(3,D)-test\"");
    fs::write(&prob, text).unwrap();

    let with = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_spherical-forms"))
            .args(args)
            .env("SPHERICAL_FORMS_CATALOG", &cat)
            .output()
            .unwrap()
    };
    let o = with(&["catalog", "list"]);
    assert!(stdout(&o).contains("SL(3,D)-test"));
    let o = with(&["decide", prob.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    // without the variable the entry is unknown
    let o = run(&["decide", prob.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let broken = dir.join("broken_catalog.toml");
    fs::write(&broken, "[[entry]]\nname = 3\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_spherical-forms"))
        .args(["catalog", "list"])
        .env("SPHERICAL_FORMS_CATALOG", &broken)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
