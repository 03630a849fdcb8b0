//! Runs every example binary with small arguments and checks its output.

use std::path::PathBuf;
use std::process::Command;

fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_affine-ks")).parent().unwrap().join("examples")
}

fn run_example(name: &str, args: &[&str]) -> String {
    let path = examples_dir().join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
    if !path.exists() {
        // `cargo test` builds examples; a filtered run may not have
        let status = Command::new(env!("CARGO"))
            .args(["build", "--examples", "--manifest-path", concat!(env!("CARGO_MANIFEST_DIR"), "/Cargo.toml")])
            .status()
            .expect("cargo runs");
        assert!(status.success());
    }
    let out = Command::new(&path).args(args).output().unwrap_or_else(|e| panic!("{name}: {e}"));
    assert!(out.status.success(), "{name} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn affine_plane() {
    let out = run_example("affine_plane", &["5"]);
    assert!(out.contains("AG(2,5): 25 points, 30 lines, 6 parallel classes"));
    assert!(!out.contains("fail"));
}

#[test]
fn dangerous_census() {
    let out = run_example("dangerous_census", &["5", "1.0", "1"]);
    assert!(out.contains("Type1:") && out.contains("Type3: 0"));
}

#[test]
fn partite_graph() {
    let out = run_example("partite_graph", &["7", "3", "2"]);
    assert!(out.contains("line-local structure holds: true"));
}

#[test]
fn ks_decomposition() {
    let out = run_example("ks_decomposition", &["4", "5"]);
    assert!(out.contains("25 copies of K_4; perfect: true"));
}

#[test]
fn lll_threshold() {
    let out = run_example("lll_threshold", &["3", "3000"]);
    assert!(out.contains("all inequalities hold from q = 2689"));
}

#[test]
fn pipeline_ks2_free() {
    let out = run_example("pipeline_ks2_free", &["2"]);
    assert!(out.contains("K_6 absent (exact)"));
    assert!(!out.contains("stopped"));
}

#[test]
fn pipeline_ks1_free() {
    let out = run_example("pipeline_ks1_free", &["40", "3", "1"]);
    assert!(out.contains("K_4 absent"));
}

#[test]
fn cover_check() {
    let out = run_example("cover_check", &["13", "3", "60", "20"]);
    assert!(out.contains("random 60-subsets contain a K_3"));
}

#[test]
fn artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_example("artifacts", &[dir.path().to_str().unwrap()]);
    assert!(out.contains("graph reloads equal: true"));
    assert!(out.contains("hypergraph reloads equal: true"));
}
