use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tamegauss"));
    c.env_remove("TAMEGAUSS_CONFIG");
    c
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tamegauss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const SMALL: &str = r#"
seed = 5
primes = [3]
residue_degrees = [1]
conductor_max = 1
families = [{ p = 3, e = 4, f = 2 }]

[gauss]
twist_samples = 4
galois_conductor_max = 1

[tower]
type_w_exponent = 1

[basis]
depth = 1
nu_depth = 1
log_depth = 1
log_samples = 2
lattice_depth = 0

[krings]
layer_depth = 1
pairs = 4
"#;

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn small_config_passes_and_is_byte_stable() {
    let cfg = scratch("small.toml", SMALL);
    let a = run(bin().args(["--config", cfg.to_str().unwrap(), "all"]));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(bin().args(["--config", cfg.to_str().unwrap(), "--jobs", "2", "all"]));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "tamegauss-report/v1");
    assert_eq!(v["seed"], 5);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn env_var_supplies_the_config() {
    let cfg = scratch("env.toml", SMALL);
    let out = run(bin().env("TAMEGAUSS_CONFIG", &cfg).args(["--seed", "11", "krings", "--check", "correction"]));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r["check"] == "correction"));
}

#[test]
fn unknown_key_is_a_diagnostic() {
    let cfg = scratch("bad.toml", "seed = 1\n[basis]\ndepht = 3\n");
    let out = run(bin().args(["--config", cfg.to_str().unwrap(), "basis"]));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("depht"), "{err}");
}

#[test]
fn failed_verdict_sets_exit_status() {
    let cfg = scratch("tight.toml", &SMALL.replace("seed = 5", "seed = 5\nmax_level = 4"));
    let out = run(bin().args(["--config", cfg.to_str().unwrap(), "gauss", "--check", "modulus"]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_output_to_file() {
    let cfg = scratch("csv.toml", SMALL);
    let path = cfg.with_file_name("report.csv");
    let out = run(bin().args(["--config", cfg.to_str().unwrap(), "--format", "csv", "--out", path.to_str().unwrap(), "gauss", "--check", "classical"]));
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,params,cases,verdict,lhs,rhs,note"));
    assert!(lines.next().unwrap().starts_with("gauss,classical,"));
}

#[test]
fn bad_family_is_rejected() {
    let out = run(bin().args(["--seed", "1", "gauss", "--p", "4"]));
    assert_eq!(out.status.code(), Some(2));
}
