use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn jobs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/jobs")
}

fn civar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_civar")).args(args).output().expect("binary runs")
}

fn run_job(command: &str, job: &str, extra: &[&str]) -> Output {
    let path = jobs().join(job);
    let mut args = vec![command, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    civar(&args)
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const RINGS: [&str; 8] = [
    "dual_numbers.job",
    "x_cubed.job",
    "ci_xx_yy.job",
    "ci_xx_yyy.job",
    "xx_xy.job",
    "square_of_max.job",
    "hypersurface_xy.job",
    "ci_rotated.job",
];

#[test]
fn every_suite_command_is_deterministic() {
    let mut runs: Vec<(&str, &str)> = RINGS.iter().map(|j| ("ci-check", *j)).collect();
    for c in ["koszul-homology", "ext-kk", "ext-module", "support-variety", "c-tilde-variety", "proxy-witness", "verify-witness", "selftest"] {
        runs.push((c, "ci_xx_yy.job"));
    }
    runs.push(("ext-module", "module_mod_x.job"));
    runs.push(("support-variety", "module_mod_x.job"));
    runs.push(("proxy-witness", "dual_numbers.job"));
    for (c, j) in runs {
        let a = run_job(c, j, &[]);
        let b = run_job(c, j, &[]);
        assert!(a.status.success(), "{c} {j}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{c} {j}");
    }
}

#[test]
fn ci_check_verdicts() {
    for (job, ci) in [("ci_xx_yy.job", true), ("xx_xy.job", false)] {
        let v = json(&run_job("ci-check", job, &[]));
        assert_eq!(v["result"]["oracle_ci"], ci);
        assert_eq!(v["result"]["agreement"], true);
        assert_eq!(v["provenance"]["stable"], true);
    }
}

#[test]
fn ext_kk_and_c_tilde() {
    let v = json(&run_job("ext-kk", "ci_xx_yy.job", &["--N", "6"]));
    assert_eq!(v["result"]["rank"], 4);
    assert_eq!(v["result"]["generator_degrees"], serde_json::json!([0, 1, 1, 2]));
    assert_eq!(v["provenance"]["N"], 6);
    let v = json(&run_job("c-tilde-variety", "ci_xx_yy.job", &[]));
    let elems = v["result"]["elements"].as_array().unwrap();
    assert_eq!(elems[0]["variety_ideal"], "(chi1)");
    assert!(elems.iter().all(|e| e["equal"] == true));
}

#[test]
fn witness_and_selftest_pass() {
    let v = json(&run_job("verify-witness", "ci_xx_yy.job", &[]));
    assert_eq!(v["result"]["verification"]["passed"], true);
    let v = json(&civar(&["selftest"]));
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn text_output() {
    let out = run_job("ci-check", "ci_xx_yy.job", &["--text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: CI"), "{text}");
    assert!(text.contains("order: degrevlex"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let cases = [
        (write("parse.job", "[ring]\nvars = x\nrelations = x^\n"), "ci-check", 2),
        (write("var.job", "[ring]\nvars = x\nrelations = z^2\n"), "ci-check", 2),
        (write("linear.job", "[ring]\nvars = x\nrelations = x\n"), "ext-kk", 3),
        (write("window.job", "[ring]\nvars = x, y\nrelations = x^2, y^2\n[params]\nsmax = 4\n"), "proxy-witness", 4),
        (write("ok.job", "[ring]\nvars = x\nrelations = x^2\n"), "frobnicate", 5),
    ];
    for (path, command, code) in cases {
        let out = civar(&[command, "--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    let out = civar(&["ci-check", "--input", dir.path().join("missing.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(6));
    let out = run_job("ci-check", "ci_xx_yy.job", &["--order", "lex"]);
    assert!(!out.status.success());
}
