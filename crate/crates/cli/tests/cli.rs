use std::path::Path;
use std::process::{Command, Output};

fn run(job: &str, dir: &Path, extra: &[&str]) -> Output {
    let path = dir.join("job.json");
    std::fs::write(&path, job).unwrap();
    Command::new(env!("CARGO_BIN_EXE_ccoh"))
        .arg("--job")
        .arg(&path)
        .arg("--out")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap()
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("out/report.json")).unwrap()).unwrap()
}

const C2_JOB: &str = r#"{"group": {"permutations": ["(1 2)"], "label": "C2"}, "ring": "Z",
  "modules": [{"name": "Z", "named": "trivial"}],
  "degrees": [-2, 2], "constructions": ["satellite", "resolution", "naive", "vogel"],
  "tasks": ["compute", "compare", "oracle"]}"#;

const C3_LES: &str = r#"{"group": {"named": "C3"},
  "degrees": [-2, 2], "constructions": ["resolution", "naive", "vogel", "T_a:101(1)"],
  "tasks": ["les", "sign-regression"], "ses": {"times": 3}}"#;

#[test]
fn c2_values_match_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(C2_JOB, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(dir.path());
    let cells = r["compute"].as_array().unwrap();
    assert_eq!(cells.len(), 20);
    for c in cells {
        let n = c["degree"].as_i64().unwrap();
        assert_eq!(c["value"], if n % 2 == 0 { "Z/2" } else { "0" });
        assert_eq!(c["matches_oracle"], true);
    }
    assert!(std::fs::read_to_string(dir.path().join("out/summary.txt")).unwrap().contains("PASS"));
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run(C2_JOB, a.path(), &["--jobs", "1"]);
    run(C2_JOB, b.path(), &["--jobs", "3"]);
    let read = |d: &Path| std::fs::read(d.join("out/report.json")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn free_coefficients_vanish() {
    let dir = tempfile::tempdir().unwrap();
    let job = r#"{"group": {"named": "C2"}, "modules": [{"name": "F", "named": "free", "rank": 1}], "degrees": [-2, 2], "tasks": ["compute"]}"#;
    assert_eq!(run(job, dir.path(), &[]).status.code(), Some(0));
    assert!(report(dir.path())["compute"].as_array().unwrap().iter().all(|c| c["value"] == "0"));
}

#[test]
fn malformed_input_exits_2_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    for (job, field) in [
        (r#"{"group": {"permutations": ["(1 2"]}, "degrees": [0, 0]}"#, "group.permutations[0]"),
        (r#"{"group": {"named": "C2"}, "ring": "Q", "degrees": [0, 0]}"#, "ring"),
        (r#"{"group": {"named": "C2"}, "degrees": [0]}"#, "degrees"),
        (r#"{"group": {"named": "C2"}, "modules": [{"name": "Z", "named": "trivial"}], "degrees": [0, 0], "tasks": ["les"]}"#, "ses"),
    ] {
        let out = run(job, dir.path(), &[]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains(&format!("`{field}`")), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn les_and_sign_regression() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(C3_LES, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(dir.path());
    assert_eq!(r["sign_regression"]["passed"], true);
    assert!(r["sign_regression"]["witness"].as_str().unwrap().contains("stage"));
}

#[test]
fn unsigned_flag_breaks_compatibility() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(C3_LES, dir.path(), &["--unsigned"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path());
    assert_eq!(r["unsigned"], true);
    assert!(r["failures"].as_array().unwrap().iter().any(|f| f.as_str().unwrap().contains("incompatible")));
}

#[test]
fn cache_dir_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    assert_eq!(run(C2_JOB, dir.path(), &["--cache-dir", c]).status.code(), Some(0));
    let first = std::fs::read(dir.path().join("out/report.json")).unwrap();
    assert!(std::fs::read_dir(&cache).unwrap().next().is_some());
    assert_eq!(run(C2_JOB, dir.path(), &["--cache-dir", c]).status.code(), Some(0));
    assert_eq!(first, std::fs::read(dir.path().join("out/report.json")).unwrap());
}
