//! End-to-end tests of the `dce` binary: exit codes, output formats, and the
//! contracts between subcommands (solve output verifies, gen output solves,
//! reduce-ham output decides Hamiltonicity).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

/// Run the binary with `args`, returning (exit code, stdout, stderr).
fn dce(args: &[&str]) -> (i32, String, String) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_dce"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn write_file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

fn arg(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

/// Path graph 1-2-3 with every target 2: one addition closes the triangle.
const P3: &str = "p dce 3 2 2 1\ne 1 2\ne 2 3\n";

/// K6 minus the edge 1-2, all targets 5: regular instance on the record
/// branch (d = 5 > 3k + 1 = 4).
fn k6_minus_edge() -> String {
    let mut text = String::from("p dce 6 14 5 1\n");
    for u in 1..=6u32 {
        for v in (u + 1)..=6 {
            if (u, v) != (1, 2) {
                text.push_str(&format!("e {u} {v}\n"));
            }
        }
    }
    text
}

#[test]
fn solve_yes_prints_solution_and_exits_zero() {
    let dir = TempDir::new().unwrap();
    let inst = write_file(&dir, "p3.dce", P3);
    let (code, stdout, stderr) = dce(&["solve", arg(&inst)]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert_eq!(stdout, "s YES\na 1 3\n");
}

#[test]
fn solve_no_exits_one() {
    // Same path but with budget 0: nothing may be edited, and the path is
    // not 2-regular.
    let dir = TempDir::new().unwrap();
    let inst = write_file(&dir, "p3k0.dce", "p dce 3 2 2 0\ne 1 2\ne 2 3\n");
    let (code, stdout, _) = dce(&["solve", arg(&inst)]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "s NO\n");
}

#[test]
fn solve_rejects_malformed_input() {
    let dir = TempDir::new().unwrap();
    for bad in [
        "e 1 2\n",                      // missing header
        "p dce 3 2 2\ne 1 2\ne 2 3\n",  // short header
        "p dce 3 2 2 1\ne 1 4\ne 2 3\n", // endpoint out of range
        "p dce 3 1 2 1\ne 1 2\ne 2 3\n", // edge count mismatch
        "p dce 3 2 2 1\ne 1 x\ne 2 3\n", // non-integer field
    ] {
        let inst = write_file(&dir, "bad.dce", bad);
        let (code, _, stderr) = dce(&["solve", arg(&inst)]);
        assert_eq!(code, 2, "input {bad:?} should be rejected");
        assert!(stderr.starts_with("error:"), "stderr: {stderr}");
    }
}

#[test]
fn missing_file_exits_two() {
    let (code, _, stderr) = dce(&["solve", "/nonexistent/instance.dce"]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error:"));
}

#[test]
fn usage_error_exits_two() {
    let (code, _, _) = dce(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_accepts_every_emitted_solution() {
    let dir = TempDir::new().unwrap();
    for seed in 0..12u64 {
        let (code, gen_out, _) = dce(&[
            "gen", "--n", "9", "--d", "3", "--k", "2", "--seed", &seed.to_string(),
        ]);
        assert_eq!(code, 0);
        let inst = write_file(&dir, "gen.dce", &gen_out);
        let (code, sol_out, stderr) = dce(&["solve", arg(&inst)]);
        assert!(code == 0 || code == 1, "stderr: {stderr}");
        let sol = write_file(&dir, "gen.sol", &sol_out);
        let (vcode, vout, _) = dce(&["verify", arg(&inst), arg(&sol)]);
        assert_eq!(vcode, 0, "seed {seed}: emitted solution must verify");
        assert!(vout.starts_with("ok"));
    }
}

#[test]
fn planted_instances_solve_to_yes() {
    for seed in 0..8u64 {
        let dir = TempDir::new().unwrap();
        for model in ["planted", "regular-planted"] {
            let (code, gen_out, _) = dce(&[
                "gen", "--n", "10", "--d", "3", "--k", "3",
                "--seed", &seed.to_string(), "--model", model,
            ]);
            assert_eq!(code, 0);
            let inst = write_file(&dir, "planted.dce", &gen_out);
            let (code, sol_out, stderr) = dce(&["solve", arg(&inst)]);
            assert_eq!(code, 0, "model {model} seed {seed}: stderr {stderr}");
            assert!(sol_out.starts_with("s YES\n"));
        }
    }
}

#[test]
fn verify_flags_tampered_solutions() {
    let dir = TempDir::new().unwrap();
    let inst = write_file(&dir, "p3.dce", P3);
    // Claiming YES with no edits leaves degrees wrong.
    let sol = write_file(&dir, "empty.sol", "s YES\n");
    let (code, stdout, _) = dce(&["verify", arg(&inst), arg(&sol)]);
    assert_eq!(code, 2);
    assert!(stdout.contains("degree mismatch"), "report: {stdout}");
    // Deleting instead of adding also breaks connectivity and the budget is
    // irrelevant; the report lists each failure.
    let sol = write_file(&dir, "wrong.sol", "s YES\nd 1 2\n");
    let (code, stdout, _) = dce(&["verify", arg(&inst), arg(&sol)]);
    assert_eq!(code, 2);
    assert!(stdout.contains("degree mismatch"));
    assert!(stdout.contains("components"));
    // Editing an edge that is not there is a hard error, not a report line.
    let sol = write_file(&dir, "ghost.sol", "s YES\nd 1 3\n");
    let (code, _, stderr) = dce(&["verify", arg(&inst), arg(&sol)]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error:"));
}

#[test]
fn verify_accepts_no_claims_without_checking() {
    let dir = TempDir::new().unwrap();
    let inst = write_file(&dir, "p3.dce", P3);
    let sol = write_file(&dir, "no.sol", "s NO\n");
    let (code, stdout, _) = dce(&["verify", arg(&inst), arg(&sol)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("claims NO"));
}

#[test]
fn json_outputs_are_structured() {
    let dir = TempDir::new().unwrap();
    let inst = write_file(&dir, "p3.dce", P3);

    let (code, stdout, _) = dce(&["solve", arg(&inst), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["answer"], "YES");
    assert_eq!(v["added"], serde_json::json!([[1, 3]]));
    assert_eq!(v["deleted"], serde_json::json!([]));

    let sol = write_file(&dir, "p3.sol", "s YES\na 1 3\n");
    let (code, stdout, _) = dce(&["verify", arg(&inst), arg(&sol), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["ok"], true);

    let (code, stdout, _) = dce(&["gen", "--n", "7", "--d", "3", "--k", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["n"], 7);
    assert_eq!(v["d"], 3);
    assert_eq!(v["k"], 2);
}

#[test]
fn oracle_agrees_with_pipeline() {
    let dir = TempDir::new().unwrap();
    for seed in 0..6u64 {
        let (_, gen_out, _) = dce(&[
            "gen", "--n", "7", "--d", "3", "--k", "2",
            "--seed", &seed.to_string(), "--model", "random",
        ]);
        let inst = write_file(&dir, "r.dce", &gen_out);
        let (code, out, _) = dce(&["solve", arg(&inst)]);
        let (ocode, oout, _) = dce(&["solve", arg(&inst), "--oracle"]);
        assert_eq!(code, ocode, "seed {seed}: answers disagree");
        assert_eq!(
            out.lines().next(),
            oout.lines().next(),
            "seed {seed}: s-lines disagree"
        );
    }
}

#[test]
fn record_guard_aborts_with_exit_two() {
    let dir = TempDir::new().unwrap();
    let inst = write_file(&dir, "k6e.dce", &k6_minus_edge());
    // Unrestricted, the missing edge is restored.
    let (code, stdout, _) = dce(&["solve", arg(&inst)]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "s YES\na 1 2\n");
    // The answer above arrives on the very first enumerated record, so a
    // zero ceiling is what forces the guard to trip.
    let (code, _, stderr) = dce(&["solve", arg(&inst), "--max-records", "0"]);
    assert_eq!(code, 2);
    assert!(
        stderr.contains("record enumeration exceeded the limit"),
        "stderr: {stderr}"
    );
}

#[test]
fn kernelize_emits_bounded_instance_or_no() {
    let dir = TempDir::new().unwrap();
    // Six isolated vertices each one short of its target: total deviance 6
    // exceeds 2k = 2, so kernelization resolves the answer to NO.
    let mut no_text = String::from("p dce 6 0 3 1\n");
    for v in 1..=6 {
        no_text.push_str(&format!("v {v} 1\n"));
    }
    let inst = write_file(&dir, "no.dce", &no_text);
    let trace = dir.path().join("no.trace");
    let (code, stdout, _) = dce(&["kernelize", arg(&inst), "--trace", arg(&trace)]);
    assert_eq!(code, 1);
    assert!(stdout.starts_with("p dce "), "a stand-in NO instance is printed");
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert!(trace_text.contains("resolved answer=no"), "trace: {trace_text}");

    // A solvable instance kernelizes to a parseable instance with the same
    // budget, and solving the kernel agrees with solving the original.
    let inst = write_file(&dir, "p3.dce", P3);
    let (code, stdout, _) = dce(&["kernelize", arg(&inst)]);
    assert_eq!(code, 0);
    let kernel = write_file(&dir, "p3.kernel", &stdout);
    let (kcode, _, _) = dce(&["solve", arg(&kernel), "--oracle"]);
    assert_eq!(kcode, 0, "kernel of a YES instance stays YES");
}

#[test]
fn reduce_ham_decides_hamiltonicity() {
    let dir = TempDir::new().unwrap();
    // K4 is Hamiltonian: the reduced instance is a YES.
    let k4 = "p dce 4 6 3 0\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
    let graph = write_file(&dir, "k4.dce", k4);
    let (code, stdout, _) = dce(&["reduce-ham", arg(&graph)]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("p dce 4 6 2 2\n"), "got: {stdout}");
    let reduced = write_file(&dir, "k4.red.dce", &stdout);
    let (code, _, _) = dce(&["solve", arg(&reduced)]);
    assert_eq!(code, 0);

    // K_{2,3} is not Hamiltonian: the reduced instance is a NO.
    let k23 = "p dce 5 6 3 0\ne 1 3\ne 1 4\ne 1 5\ne 2 3\ne 2 4\ne 2 5\n";
    let graph = write_file(&dir, "k23.dce", k23);
    let (code, stdout, _) = dce(&["reduce-ham", arg(&graph)]);
    assert_eq!(code, 0);
    let reduced = write_file(&dir, "k23.red.dce", &stdout);
    let (code, stdout, _) = dce(&["solve", arg(&reduced)]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "s NO\n");
}

#[test]
fn repeated_invocations_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let inst = write_file(&dir, "k6e.dce", &k6_minus_edge());
    let gen_args = ["gen", "--n", "12", "--d", "4", "--k", "3", "--seed", "99"];
    for args in [
        vec!["solve", arg(&inst)],
        vec!["solve", arg(&inst), "--json"],
        gen_args.to_vec(),
    ] {
        let first = dce(&args);
        let second = dce(&args);
        assert_eq!(first, second, "repeated run differs for {args:?}");
    }
}
