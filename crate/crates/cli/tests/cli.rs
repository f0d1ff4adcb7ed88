use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn solshoot(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solshoot")).args(args).current_dir(dir).output().expect("spawn solshoot")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn root_converges_to_round_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let out = solshoot(&["root", "--guess", "0.05,-0.8,0.6", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let r = &v["records"][0];
    let expected = [("delta1", 1.0 / 18.0), ("delta2", -7.0 / 9.0), ("delta3", 1.0 / 3.0f64.sqrt())];
    for (k, want) in expected {
        let got = r[k].as_f64().unwrap();
        assert!((got - want).abs() < 1e-6, "{k}: {got}");
    }
    assert_eq!(v["meta"]["command"], "root");
    assert_eq!(v["meta"]["random_free"], true);
    assert_eq!(v["meta"]["parameters"]["guess"][0], 0.05);
}

#[test]
fn delta3_integral_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = solshoot(&["verify-delta3", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = v["records"][0]["closed_form"].as_f64().unwrap();
    assert!((c - 1.025374).abs() < 1e-6, "{c}");
    assert!(v["meta"]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn inadmissible_parameter_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = solshoot(&["shoot-s1", "--delta1", "-1"], dir.path());
    assert_eq!(out.status.code(), Some(64));
    assert!(out.stdout.is_empty());
    let out = solshoot(&["shoot-s1", "--delta1", "-1", "--exploratory"], dir.path());
    assert_ne!(out.status.code(), Some(64));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(solshoot(&["no-such-command"], dir.path()).status.code(), Some(64));
    assert_eq!(solshoot(&["mismatch", "--delta", "1,2"], dir.path()).status.code(), Some(64));
    assert_eq!(solshoot(&["pancake-build", "--length", "5"], dir.path()).status.code(), Some(64));
    assert_eq!(solshoot(&["pancake-build", "--grid", "10"], dir.path()).status.code(), Some(64));
    assert_eq!(solshoot(&["pancake-curvature", "--blend-half-width", "0.3"], dir.path()).status.code(), Some(64));
    assert_eq!(solshoot(&["curve", "--n", "1"], dir.path()).status.code(), Some(64));
    assert_eq!(solshoot(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn numerical_failure_writes_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = solshoot(&["root", "--guess", "0.05,-0.8,0.6", "--max-iter", "1", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["records"][0]["error"], "no_convergence");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["curve", "--n", "12", "--d1-lo", "0.01", "--d1-hi", "2", "--out"];
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let mut v: Vec<&str> = args.to_vec();
        v.push(p.to_str().unwrap());
        assert_eq!(solshoot(&v, dir.path()).status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn worker_count_does_not_change_records() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str| {
        let out = solshoot(
            &["surface", "--n2", "4", "--n3", "3", "--workers", workers, "--format", "json", "--out", "s.json"],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&std::fs::read(dir.path().join("s.json")).unwrap()).unwrap();
        v["records"].clone()
    };
    let one = run("1");
    assert_eq!(one.as_array().unwrap().len(), 12);
    assert_eq!(one, run("4"));
}

#[test]
fn sweeps_default_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = solshoot(&["pancake-build", "--length", "10", "--grid", "1000"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("pancake-build.csv")).unwrap();
    assert!(text.starts_with("# tool: solshoot\n"));
    assert!(text.lines().any(|l| l == "L,r,f1,f2,df1,df2,d2f1,d2f2"));
}

#[test]
fn max_principle_on_round_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let out = solshoot(&["verify-maxprinciple", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for r in v["records"].as_array().unwrap() {
        assert!((r["min"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-6);
    }
    let out = solshoot(&["verify-maxprinciple", "--case", "custom"], dir.path());
    assert_eq!(out.status.code(), Some(64));
}
