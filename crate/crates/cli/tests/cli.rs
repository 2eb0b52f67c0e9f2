use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_qwass");

fn qwass(args: &[&str], cwd: &Path) -> Output {
    Command::new(BIN).args(args).current_dir(cwd).output().expect("spawn qwass")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

/// `½(I + ½σ₁)` and `½(I + ½σ₂)`.
fn sharp_pair(dir: &Path) {
    write(dir, "r.json", r#"{"dim": 2, "entries": [[[0.5, 0], [0.25, 0]], [[0.25, 0], [0.5, 0]]]}"#);
    write(dir, "w.json", r#"{"dim": 2, "entries": [[[0.5, 0], [0, -0.25]], [[0, 0.25], [0.5, 0]]]}"#);
}

fn value_after(text: &str, prefix: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(prefix))
        .unwrap_or_else(|| panic!("no '{prefix}' in {text}"))
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn dist_on_sharp_pair() {
    let dir = tempfile::tempdir().unwrap();
    sharp_pair(dir.path());
    let o = qwass(&["dist", "--rho", "r.json", "--omega", "w.json", "--cost", "symmetric"], dir.path());
    assert!(o.status.success());
    let d2 = value_after(&stdout(&o), "D^2 = ");
    assert!((d2 - 2.0 * 2f64.sqrt()).abs() < 1e-6, "{d2}");
}

#[test]
fn dist_dual_prints_certificates_and_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    sharp_pair(dir.path());
    let o = qwass(&["dist", "--rho", "r.json", "--omega", "w.json", "--dual", "--out", "res"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("X = {") && text.contains("Y = {"));
    assert!(value_after(&text, "slack min eigenvalue = ") > -1e-8);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("res/dist.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "dist");
    assert_eq!(manifest["parameters"]["dual"], true);
    assert!(dir.path().join("res/dist.json").exists());
}

#[test]
fn same_state_single_observable_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    sharp_pair(dir.path());
    write(dir.path(), "z.json", r#"[{"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}]"#);
    write(dir.path(), "d.json", r#"{"dim": 2, "entries": [[[0.7, 0], [0, 0]], [[0, 0], [0.3, 0]]]}"#);
    let o = qwass(&["dist", "--rho", "d.json", "--omega", "d.json", "--cost", "file:z.json"], dir.path());
    assert!(o.status.success());
    assert!(value_after(&stdout(&o), "D^2 = ").abs() < 1e-7);
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    sharp_pair(dir.path());
    write(dir.path(), "q.json", r#"{"dim": 3, "entries": [[[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]}"#);
    write(dir.path(), "bad.json", r#"{"dim": 2, "entries": [[[2, 0], [0, 0]], [[0, 0], [0, 0]]]}"#);
    let mismatch = qwass(&["dist", "--rho", "r.json", "--omega", "q.json"], dir.path());
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("dimension"));
    for args in [
        vec!["dist", "--rho", "bad.json", "--omega", "r.json"],
        vec!["dist", "--rho", "missing.json", "--omega", "r.json"],
        vec!["dist", "--rho", "r.json", "--omega", "w.json", "--cost", "nonsense"],
        vec!["sweep", "--dim", "9", "--samples", "2"],
        vec!["sweep", "--dim", "2", "--cost", "symmetric"],
        vec!["complexity", "--channel", "depolarizing:2"],
        vec!["frobnicate"],
    ] {
        assert_eq!(qwass(&args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn triangle_of_one_state_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    sharp_pair(dir.path());
    let o = qwass(&["triangle", "--rho", "r.json", "--omega", "r.json", "--tau", "r.json"], dir.path());
    assert!(o.status.success());
    assert!(value_after(&stdout(&o), "gap = ").abs() <= 2e-6);
}

#[test]
fn sweep_is_byte_identical_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    for out in ["a", "b"] {
        let o = qwass(&["sweep", "--dim", "3", "--samples", "20", "--seed", "1", "--out", out], p);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(p.join("a/sweep_dim3.csv")).unwrap();
    assert_eq!(a, std::fs::read(p.join("b/sweep_dim3.csv")).unwrap());
    assert_eq!(String::from_utf8_lossy(&a).lines().count(), 21);
    let o = qwass(&["replay", "a/sweep.manifest.json", "--out", "c"], p);
    assert!(o.status.success());
    assert_eq!(a, std::fs::read(p.join("c/sweep_dim3.csv")).unwrap());
}

#[test]
fn surface_writes_csv_and_svg_with_positive_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let o = qwass(
        &["surface", "--scenario", "c2-deterministic", "--resolution", "9", "--out", "s"],
        dir.path(),
    );
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("s/surface_c2-deterministic.csv")).unwrap();
    let gaps: Vec<f64> = csv.lines().skip(1).filter_map(|l| l.split(',').nth(2)?.parse().ok()).collect();
    assert!(!gaps.is_empty());
    assert!(gaps.iter().all(|&g| g > 0.0));
    let svg = std::fs::read_to_string(dir.path().join("s/surface_c2-deterministic.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn small_lattice_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = qwass(
        &["lattice", "--pairs", "2", "--triples", "1", "--step", "0.5", "--radius-bound", "4", "--out", "l"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(dir.path().join("l/lattice_table.csv")).unwrap();
    assert_eq!(table.lines().count(), 3);
    assert!(value_after(&stdout(&o), "overall min gap = ") > 0.0);
}

#[test]
fn complexity_of_bit_flip() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "x.json", r#"{"dim": 2, "entries": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}"#);
    write(dir.path(), "z.json", r#"[{"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}]"#);
    let o = qwass(
        &["complexity", "--channel", "unitary:x.json", "--cost", "file:z.json", "--restarts", "3", "--out", "c"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(value_after(&stdout(&o), "complexity lower bound = ") >= 2.0 - 1e-4);
    assert!(dir.path().join("c/complexity_argmax.json").exists());
}
