//! End-to-end checks against the built binary.

use std::io::Write;
use std::process::{Command, Stdio};

fn wrp_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wrp"))
}

fn run_stdout(args: &[&str]) -> (String, i32) {
    let out = wrp_bin().args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn wrp_of_trefoil_literal() {
    let (out, code) = run_stdout(&["wrp", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"]);
    assert_eq!(out, "{w^6, 2w^3 + 3w^2}\n");
    assert_eq!(code, 0);
}

#[test]
fn wrp_json_term_lists() {
    let (out, code) = run_stdout(&["wrp", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "--json"]);
    assert_eq!(out, "{\"first\":[[6,0,1]],\"second\":[[3,0,2],[2,0,3]]}\n");
    assert_eq!(code, 0);
}

#[test]
fn gen_pipes_into_wrp_stdin() {
    let (gen_out, _) = run_stdout(&["gen", "torus2", "4"]);
    let mut child = wrp_bin()
        .args(["wrp", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(gen_out.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{w^8, 2w^4 + 4w^2}\n"
    );
}

#[test]
fn gen_twist_has_expected_size() {
    let (out, code) = run_stdout(&["gen", "twist", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches('X').count(), 5);
}

#[test]
fn table_output_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("wrp-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.tsv");
    std::fs::write(
        &input,
        "K3a1\tX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nK4a1\tX(1,5,2,4) X(3,6,4,7) X(5,1,6,8) X(7,2,8,3)\n",
    )
    .unwrap();
    let out1 = dir.join("out1.txt");
    let out2 = dir.join("out2.txt");
    for out in [&out1, &out2] {
        let status = wrp_bin()
            .args([
                "table",
                input.to_str().unwrap(),
                out.to_str().unwrap(),
                "--mirrors",
            ])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "repeated runs must be byte-identical");
    let text = String::from_utf8(b1).unwrap();
    assert!(text.starts_with("K3a1\t{w^6, 2w^3 + 3w^2}\nK3a1m\t{r^6, 2r^3 + 3r^2}\n"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn collisions_reports_mutants() {
    let table = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/knots_11a_selected.tsv"
    );
    let (out, code) = run_stdout(&["collisions", table]);
    assert_eq!(code, 0);
    assert!(out.contains("2 collision classes"));
    assert!(out.contains("K11a19, K11a25"));
    assert!(out.contains("K11a75, K11a102"));
}

#[test]
fn collisions_with_mirrors_is_symmetric() {
    let table = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/knots_11a_selected.tsv"
    );
    let (out, code) = run_stdout(&["collisions", table, "--mirrors"]);
    assert_eq!(code, 0);
    // each mutant family collides, and so does its mirrored copy
    assert!(out.contains("4 collision classes"), "{out}");
    assert!(out.contains("K11a19m, K11a25m"));
    assert!(out.contains("K11a75m, K11a102m"));
}

#[test]
fn flype_check_passes_on_fixtures() {
    let table = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/knots_11a_selected.tsv"
    );
    let (out, code) = run_stdout(&["flype-check", table]);
    assert_eq!(code, 0, "{out}");
    for line in out.lines() {
        assert!(line.contains("invariance=PASS"), "{line}");
    }
}

#[test]
fn usage_error_exits_2() {
    let status = wrp_bin().arg("definitely-not-a-command").status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn per_entry_failure_exits_1() {
    let dir = std::env::temp_dir().join(format!("wrp-cli-fail-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.tsv");
    // second row is a split diagram
    std::fs::write(
        &input,
        "ok\tX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nsplit\tX(1,4,2,5) X(3,6,4,1) X(5,2,6,3) X(7,10,8,11) X(9,12,10,7) X(11,8,12,9)\n",
    )
    .unwrap();
    let out = dir.join("out.txt");
    let status = wrp_bin()
        .args(["table", input.to_str().unwrap(), out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("ok\t{w^6"));
    assert!(text.contains("split\tERROR:"));
    std::fs::remove_dir_all(&dir).ok();
}
