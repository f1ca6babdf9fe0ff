use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lambek-chase"));
    c.env_remove("LAMBEK_CHASE_ENUM_CAP");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(c: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = c.output().expect("binary runs");
    (status.code().expect("exit code"), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

#[test]
fn passing_check_exits_zero_with_invariants() {
    let (code, out, _) = run(bin().args(["lambek", "--input"]).arg(data("golden/d2.toml")));
    assert_eq!(code, 0);
    assert!(out.contains("status: pass"));
    assert!(out.contains("Img S: rank 1, torsion []"));
    assert!(out.contains("Ker T: rank 1, torsion []"));
}

#[test]
fn pset_invariants_are_printed_as_sizes() {
    let (code, out, _) = run(bin().args(["invariants", "--input"]).arg(data("data/pset_nonexact_b.toml")));
    assert_eq!(code, 0);
    assert!(out.contains("pointed set, "), "{out}");
}

#[test]
fn refusal_is_a_note_not_a_failure() {
    let (code, out, _) = run(bin().args(["lambek", "--input"]).arg(data("data/pset_nonexact_b.toml")));
    assert_eq!(code, 0);
    assert!(out.contains("b exact: no"));
    assert!(out.contains("refused: hypothesis violated"));
}

#[test]
fn usage_and_load_errors_exit_two() {
    assert_eq!(run(bin().args(["lambek", "--input", "/nonexistent.toml"])).0, 2);
    assert_eq!(run(bin().args(["frobnicate"])).0, 2);
    assert_eq!(run(bin().args(["lambek"])).0, 2);
    let d2 = data("golden/d2.toml");
    assert_eq!(run(bin().args(["lambek", "--format", "xml", "--input"]).arg(&d2)).0, 2);
    // Wrong shape for the command.
    assert_eq!(run(bin().args(["fivelemma", "--input"]).arg(&d2)).0, 2);
    let (code, _, err) = run(bin().args(["generate", "--backend", "fgab", "--shape", "pair", "--constraints", "b-exact"]));
    assert_eq!(code, 2);
    assert!(err.contains("does not apply"));
    assert_eq!(run(bin().args(["campaign", "--suite", "nomura1", "--backend", "fgab", "--exhaustive"])).0, 2);
    assert_eq!(run(bin().args(["campaign", "--suite", "duality", "--backend", "pset"])).0, 2);
}

#[test]
fn invalid_diagram_names_the_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    let text = std::fs::read_to_string(data("golden/d2.toml")).unwrap().replacen("matrix = [[2]]", "matrix = [[3]]", 1);
    std::fs::write(&path, text).unwrap();
    let (code, _, err) = run(bin().args(["homology", "--input"]).arg(&path));
    assert_eq!(code, 2);
    assert!(err.contains("validation error"), "{err}");
}

#[test]
fn exhausted_enumeration_cap_fails_verification() {
    let (code, out, _) = run(
        bin()
            .env("LAMBEK_CHASE_ENUM_CAP", "1")
            .args(["check-axioms", "--input"])
            .arg(data("data/pset_nonexact_b.toml")),
    );
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("status: FAIL"));
    let (code, _, err) = run(bin().env("LAMBEK_CHASE_ENUM_CAP", "lots").args(["homology", "--input"]).arg(data("golden/d2.toml")));
    assert_eq!(code, 2);
    assert!(err.contains("LAMBEK_CHASE_ENUM_CAP"));
}

#[test]
fn generate_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.toml");
    let (code, _, _) = run(
        bin()
            .args(["generate", "--backend", "pset", "--shape", "two-square", "--seed", "5", "--constraints", "rows-exact,b-exact", "--output"])
            .arg(&path),
    );
    assert_eq!(code, 0);
    let (code, out, _) = run(bin().args(["nomura1", "--input"]).arg(&path));
    assert_eq!(code, 0, "{out}");
    let (_, stdout, _) = run(bin().args(["generate", "--backend", "pset", "--shape", "two-square", "--seed", "5", "--constraints", "rows-exact,b-exact"]));
    assert_eq!(stdout, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn campaign_writes_structured_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, _, _) = run(
        bin()
            .args(["campaign", "--suite", "lambek-iso", "--backend", "fgab", "--trials", "20", "--seed", "3", "--format", "structured", "--output"])
            .arg(&path),
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["campaign"]["trials"], 20);
    assert_eq!(v["campaign"]["passed"], 20);
}

#[test]
fn small_exhaustive_campaign_runs() {
    let (code, out, _) = run(bin().args(["campaign", "--suite", "homology", "--backend", "pset", "--exhaustive", "--max-size", "3"]));
    assert_eq!(code, 0);
    assert!(out.contains("exhaustive, 1x3 sizes <= 3 budget 6"), "{out}");
}
