//! Binary-level acceptance checks: the documented example invocations
//! produce byte-identical golden output, on repeated runs, with the right
//! exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("golden file {path}: {e}"))
}

fn check_golden(name: &str, args: &[&str], golden_file: &str) -> Result<(), String> {
    let first = run(args);
    if !first.status.success() {
        return Err(format!("{name}: exit status {:?}", first.status.code()));
    }
    let expected = golden(golden_file);
    let got = stdout_of(&first);
    if got != expected {
        return Err(format!("{name}: output differs from {golden_file}:\n{got}"));
    }
    // byte determinism across repeated runs
    let second = run(args);
    if stdout_of(&second) != got {
        return Err(format!("{name}: two runs differ"));
    }
    Ok(())
}

fn report(name: &str, outcome: Result<(), String>) {
    match &outcome {
        Ok(()) => println!("[acceptance] {name}: PASS"),
        Err(detail) => println!("[acceptance] {name}: FAIL: {detail}"),
    }
    if let Err(detail) = outcome {
        panic!("{name}: {detail}");
    }
}

#[test]
fn golden_outputs_are_deterministic() {
    let outcome = check_golden(
        "ehrhart --legs 2,3 --json",
        &["ehrhart", "--legs", "2,3", "--json"],
        "ehrhart_legs_2_3.json",
    )
    .and_then(|()| {
        check_golden(
            "dedekind --a 1 --b 3",
            &["dedekind", "--a", "1", "--b", "3"],
            "dedekind_a_1_b_3.txt",
        )
    })
    .and_then(|()| {
        check_golden(
            "verify --suite reciprocity --max-n 3 --max-a 5",
            &["verify", "--suite", "reciprocity", "--max-n", "3", "--max-a", "5"],
            "verify_reciprocity_n3_a5.txt",
        )
    });
    report("CLI golden outputs, byte-identical across runs", outcome);
}

#[test]
fn exit_codes_follow_the_contract() {
    let outcome = (|| -> Result<(), String> {
        // usage error: unknown flag
        let usage = run(&["ehrhart", "--nonsense"]);
        if usage.status.code() != Some(2) {
            return Err(format!("usage error exit code {:?}", usage.status.code()));
        }
        // precondition violation: single diagnostic line on stderr, exit 1
        let precondition = run(&["dedekind", "--a", "2", "--b", "4"]);
        if precondition.status.code() != Some(1) {
            return Err(format!("precondition exit code {:?}", precondition.status.code()));
        }
        let stderr = String::from_utf8(precondition.stderr.clone()).expect("utf-8");
        if stderr.lines().count() != 1 || !stderr.contains("coprime") {
            return Err(format!("diagnostic was: {stderr:?}"));
        }
        // verification success exits 0
        let ok = run(&["verify", "--suite", "theorem8"]);
        if ok.status.code() != Some(0) {
            return Err(format!("verify exit code {:?}", ok.status.code()));
        }
        Ok(())
    })();
    report("CLI exit codes: 0 success, 1 failure, 2 usage", outcome);
}

#[test]
fn per_case_lines_cover_every_suite() {
    let outcome = (|| -> Result<(), String> {
        for suite in ["oracle", "lemma4", "theorem7", "theorem8", "dedekind-identities"] {
            let out = run(&["verify", "--suite", suite, "--max-n", "2", "--max-a", "3"]);
            if out.status.code() != Some(0) {
                return Err(format!("suite {suite} exit {:?}", out.status.code()));
            }
            let text = stdout_of(&out);
            let pass_lines = text.lines().filter(|l| l.starts_with("PASS ")).count();
            if pass_lines == 0 || text.lines().any(|l| l.starts_with("FAIL ")) {
                return Err(format!("suite {suite} output:\n{text}"));
            }
            if !text.lines().last().unwrap_or("").contains("0 failed") {
                return Err(format!("suite {suite} missing summary line"));
            }
        }
        Ok(())
    })();
    report("verify prints per-case PASS lines and a summary for every suite", outcome);
}
