//! End-to-end tests of the binary: exit codes, JSON fields, CSV output,
//! determinism, and the spec-echo round trip.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_newton-smoothing"))
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("newton-smoothing-test-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.0.join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_product_phase() {
    let dir = TempDir::new("analyze-prod");
    let spec = dir.file("s.spec", "phase = t1^2*t2^2\nn = 2\nblocks = [1], [2]\nalphas = 0, 0\n");
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["a0"], "1/2");
    assert_eq!(v["d0"], 1);
    assert_eq!(v["g"], "1/2");
    assert_eq!(v["region"]["shape"], "triangle");
    assert_eq!(v["vanishing_order"]["mode"], "exact_2d");
}

#[test]
fn analyze_sum_of_squares() {
    let dir = TempDir::new("analyze-sum");
    let spec = dir.file("s.spec", "phase = t1^2 + t2^2\nn = 2\n");
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["a0"], "1");
    assert_eq!(v["d0"], 0);
    assert_eq!(v["g"], "1");
    assert_eq!(v["newton"]["distance"], "1");
    assert_eq!(v["sharpness"]["sharp_p_interval"], serde_json::Value::Null);
}

#[test]
fn analyze_half_weights_sets_noncompact_flag() {
    let dir = TempDir::new("analyze-half");
    let spec = dir.file(
        "s.spec",
        "phase = t1^2 + t2^2\nn = 2\nblocks = [1], [2]\nalphas = 1/2, 1/2\n",
    );
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["a0"], "1/2");
    assert_eq!(v["d0"], 0);
    assert_eq!(v["g"], "1/2");
    assert_eq!(v["noncompact_flag"], true);
}

#[test]
fn exit_2_on_invalid_spec() {
    let dir = TempDir::new("invalid");
    let spec = dir.file("s.spec", "phase = 1 + t1^2\nn = 1\n");
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "validation_failed");

    let missing = dir.path("nonexistent.spec");
    let out = bin().args(["analyze", "--spec"]).arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_3_on_unsupported_scale() {
    let dir = TempDir::new("scale");
    let spec = dir.file(
        "s.spec",
        "phase = t1^2 + t2^2 + t3^2 + t4^2 + t5^2 + t6^2\nn = 6\n",
    );
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // three-variable oscillatory oracle needs the explicit override
    let spec3 = dir.file("s3.spec", "phase = t1^2 + t2^2 + t3^2\nn = 3\n");
    let out = bin().args(["verify-decay", "--spec"]).arg(&spec3).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_4_on_noise_floor() {
    let dir = TempDir::new("noise");
    // smooth kernel along a spatial axis decays superpolynomially: the
    // whole grid is below the noise floor
    let spec = dir.file("s.spec", "phase = t1^2\nn = 1\n");
    let out = bin()
        .args(["verify-decay", "--direction", "1", "--spec"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "inconclusive");
}

#[test]
fn verify_sublevel_product_case() {
    let dir = TempDir::new("sublevel");
    let spec = dir.file(
        "s.spec",
        "phase = t1^2*t2^2\nn = 2\noracle.budget = 2000000\noracle.seed = 5\n",
    );
    let csv_path = dir.path("table.csv");
    let out = bin()
        .args(["verify-sublevel", "--spec"])
        .arg(&spec)
        .arg("--csv")
        .arg(&csv_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["predicted_a0"], "1/2");
    assert_eq!(v["predicted_d0"], 1);
    assert_eq!(v["pass"], true);
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("j,epsilon,measure,rel_err\n"));
    assert_eq!(csv.lines().count(), 1 + 19); // header + j in 6..=24
}

#[test]
fn verify_sublevel_deterministic_bytes() {
    let dir = TempDir::new("determinism");
    let spec = dir.file(
        "s.spec",
        "phase = t1^2 + t2^2\nn = 2\noracle.budget = 1500000\noracle.seed = 11\n",
    );
    let mut artifacts = Vec::new();
    for run in 0..2 {
        let json_path = dir.path(&format!("r{run}.json"));
        let csv_path = dir.path(&format!("r{run}.csv"));
        let out = bin()
            .args(["verify-sublevel", "--spec"])
            .arg(&spec)
            .arg("--out")
            .arg(&json_path)
            .arg("--csv")
            .arg(&csv_path)
            .output()
            .unwrap();
        assert!(out.status.success());
        artifacts.push((fs::read(&json_path).unwrap(), fs::read(&csv_path).unwrap()));
    }
    assert_eq!(artifacts[0].0, artifacts[1].0, "JSON reports differ between runs");
    assert_eq!(artifacts[0].1, artifacts[1].1, "CSV tables differ between runs");
}

#[test]
fn classify_verdicts() {
    let dir = TempDir::new("classify");
    let spec = dir.file("s.spec", "phase = t1^4*t2^4\nn = 2\n");
    for (p, beta, verdict) in [("2", "1/5", "bounded"), ("2", "1/3", "unbounded")] {
        let out = bin()
            .args(["classify", "--p", p, "--beta", beta, "--spec"])
            .arg(&spec)
            .output()
            .unwrap();
        assert!(out.status.success());
        let v = json_of(&out);
        assert_eq!(v["verdict"], verdict, "p={p} beta={beta}");
    }

    let sum = dir.file("sum.spec", "phase = t1^2 + t2^2\nn = 2\n");
    let out = bin()
        .args(["classify", "--p", "2", "--beta", "3/4", "--spec"])
        .arg(&sum)
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["verdict"], "unknown");

    // malformed rationals exit 2
    let out = bin()
        .args(["classify", "--p", "x", "--beta", "1/4", "--spec"])
        .arg(&sum)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn override_o_changes_region() {
    let dir = TempDir::new("override");
    let spec = dir.file("s.spec", "phase = t1^2 + t2^2\nn = 2\n");
    let out = bin()
        .args(["analyze", "--override-o", "4", "--spec"])
        .arg(&spec)
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["vanishing_order"]["mode"], "user_override");
    assert_eq!(v["vanishing_order"]["clamped"], 4);
    // apex drops to 1/4
    assert_eq!(v["region"]["vertices"][2][1], "1/4");
}

#[test]
fn spec_echo_round_trip() {
    let dir = TempDir::new("roundtrip");
    let spec = dir.file(
        "s.spec",
        "phase = t1^2 - 2*t1*t2 + t2^2 + t1^5\nn = 2\nblocks = [1], [2]\nalphas = 1/3, 0\n",
    );
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert!(out.status.success());
    let v = json_of(&out);

    // rebuild a spec file from the echo and re-run
    let echo = &v["spec"];
    let blocks = echo["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            format!(
                "[{}]",
                b.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(", ");
    let alphas = echo["alphas"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_str().unwrap().to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let rebuilt = dir.file(
        "rebuilt.spec",
        &format!(
            "phase = {}\nn = {}\nblocks = {}\nalphas = {}\n",
            echo["phase"].as_str().unwrap(),
            echo["n"],
            blocks,
            alphas
        ),
    );
    let out2 = bin().args(["analyze", "--spec"]).arg(&rebuilt).output().unwrap();
    assert!(out2.status.success());
    assert_eq!(out.stdout, out2.stdout, "re-ingested echo changed the report");
}
