//! End-to-end runs of the `cayley-cca` binary: exit codes, output shapes,
//! and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-cca"))
        .args(args)
        .env_remove("CCA_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn run_with_cap(cap: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-cca"))
        .args(args)
        .env("CCA_MAX_ORDER", cap)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn build_summarizes_a_group() {
    let out = run(&["build", "Z4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("group: Z4 (order 4)"));
    assert!(text.contains("abelian: true"));
}

#[test]
fn build_reports_the_dicyclic_witness() {
    let out = run(&["build", "Dic(Z8)", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 16);
    assert_eq!(v["dicyclic_witness"]["z"], 4);
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(code(&run(&["build", "Z128"])), 2, "over the order cap");
    assert_eq!(code(&run(&["build", "Zx"])), 1, "malformed expression");
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["no-such-command"])), 1);
    assert_eq!(
        code(&run(&["export", "Z6", "--set", "1,2", "--format", "dot"])),
        1,
        "connection set not closed under inverses"
    );
}

#[test]
fn env_var_overrides_the_order_cap() {
    assert_eq!(code(&run_with_cap("128", &["build", "Z128"])), 0);
    assert_eq!(code(&run_with_cap("4", &["build", "Z8"])), 2);
    assert_eq!(code(&run_with_cap("nope", &["build", "Z4"])), 1);
}

#[test]
fn classify_reports_the_hamiltonian_kind() {
    let out = run(&["classify", "Q8xZ2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "hamiltonian-2-group");
    assert_eq!(v["stabilizer_size"], 8);
    assert_eq!(v["cca"], false);
    assert_eq!(v["strongly_cca"], false);
}

#[test]
fn classify_check_agrees_with_brute_force() {
    let out = run(&["classify", "Z4", "--check"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("brute-force agreement: true (2 maps found)"));
}

#[test]
fn enum_output_is_deterministic() {
    let first = run(&["enum", "Q8", "--mode", "permuting", "--format", "json"]);
    let second = run(&["enum", "Q8", "--mode", "permuting", "--format", "json"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["maps"].as_array().unwrap().len(), 48);
}

#[test]
fn export_dot_is_deterministic_and_coloured() {
    let first = run(&["export", "Z4", "--complete", "--format", "dot"]);
    let second = run(&["export", "Z4", "--complete", "--format", "dot"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("colorclass=0"));
    assert!(text.contains("colorclass=1"));
}

#[test]
fn export_accepts_a_disconnected_set() {
    let out = run(&["export", "Z6", "--set", "2,4", "--format", "dot"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).matches(" -- ").count(), 6, "two disjoint triangles");
}

#[test]
fn decompose_emits_a_verified_certificate() {
    let out = run(&[
        "decompose", "Q8", "--map", "0,5,6,7,4,1,2,3", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["checks"]["beta_automorphism"], true);
    assert_eq!(v["checks"]["psi_colour_preserving"], true);
    assert_eq!(v["checks"]["composition"], true);
}

#[test]
fn decompose_rejects_a_non_colour_permuting_map() {
    let out = run(&["decompose", "Z4", "--map", "0,1,3,2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn stdout_closing_early_is_not_an_error() {
    // 6144 maps of pretty JSON far exceed the pipe buffer, so the binary
    // sees a broken pipe after `head` stops reading; it must exit quietly.
    let out = Command::new("sh")
        .arg("-c")
        .arg(format!(
            "{} enum Q8xZ2 --mode permuting --full --format json | head -c 32",
            env!("CARGO_BIN_EXE_cayley-cca")
        ))
        .output()
        .expect("shell runs");
    assert_eq!(code(&out), 0);
    assert!(
        out.stderr.is_empty(),
        "no panic or error expected: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn verify_suite_runs_and_reports() {
    let out = run(&["verify", "classif", "--max-order", "8"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("[PASS] classif/stabilizer-prediction-exact"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_accepts_a_group_filter() {
    let out = run(&["verify", "decomposition", "--group", "Q8"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("quaternion-complete-stabilizer-count"));
}
