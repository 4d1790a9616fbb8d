//! Tests that spawn the installed binary.

mod common;

use std::process::Command;

use common::{data_dir, golden_cases, run_case};

fn engelkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_engelkit"))
}

#[test]
fn binary_matches_in_process_run() {
    for case in golden_cases().iter().step_by(5) {
        let out = engelkit().args(&case.args).output().unwrap();
        assert_eq!(out.status.code(), Some(case.exit), "{}", case.name);
        let inproc = run_case(case, &[]);
        assert_eq!(String::from_utf8(out.stdout).unwrap(), inproc.stdout);
    }
}

#[test]
fn exit_codes() {
    let data = data_dir();
    let holds = engelkit()
        .args(["check", "--property", "engel", "--object", "D"])
        .arg(data.join("engel_corrected.chart"))
        .status()
        .unwrap();
    assert_eq!(holds.code(), Some(0));
    let fails = engelkit()
        .args(["check", "--property", "contact", "--object", "fol"])
        .arg(data.join("foliation.chart"))
        .status()
        .unwrap();
    assert_eq!(fails.code(), Some(2));
    let usage = engelkit()
        .args(["check", "--property", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(1));
    assert!(usage.stdout.is_empty());
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.chart");
    std::fs::write(&p, "chart c { vars x y; }\nform a = dx + q*dy;\n").unwrap();
    let out = engelkit()
        .args(["check", "--property", "contact"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2:15"), "{err}");
    assert!(err.contains("`q`"), "{err}");
}

#[test]
fn term_ceiling_from_environment() {
    let file = data_dir().join("tube_frame.chart");
    let run_with = |ceiling: &str| {
        engelkit()
            .env("ENGELKIT_TERM_CEILING", ceiling)
            .args(["tube", "--frame", "V1,V2,V3"])
            .arg(&file)
            .output()
            .unwrap()
    };
    let tight = run_with("10");
    assert_eq!(tight.status.code(), Some(1));
    assert!(String::from_utf8(tight.stderr)
        .unwrap()
        .contains("term ceiling"));
    assert!(tight.stdout.is_empty());
    assert_eq!(run_with("100000").status.code(), Some(0));
}

/// Every construction's emitted chart re-parses and re-checks to the
/// verdict reported for it.
#[test]
fn emitted_charts_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let mut seen = 0;
    for case in golden_cases() {
        let out = run_case(&case, &[]);
        let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        for (k, report) in doc["reports"].as_array().unwrap().iter().enumerate() {
            let Some(text) = report["details"]["emitted_chart"].as_str() else {
                continue;
            };
            let path = dir.path().join(format!("{}_{k}.chart", case.name));
            std::fs::write(&path, text).unwrap();
            let (property, object) = match report["property"].as_str().unwrap() {
                "engel" => ("engel", "D"),
                p => (p, "theta"),
            };
            let again = engelkit()
                .args(["check", "--property", property, "--object", object])
                .arg(&path)
                .output()
                .unwrap();
            let redoc: serde_json::Value =
                serde_json::from_slice(&again.stdout).unwrap_or_else(|_| {
                    panic!("{}: {}", case.name, String::from_utf8_lossy(&again.stderr))
                });
            let verdict = &redoc["reports"][0];
            assert_eq!(
                verdict["holds_generically"], report["holds_generically"],
                "{}",
                case.name
            );
            assert_eq!(verdict["ranks"], report["ranks"], "{}", case.name);
            assert_eq!(verdict["degeneracy"], report["degeneracy"], "{}", case.name);
            seen += 1;
        }
    }
    assert!(seen >= 6, "only {seen} emitted charts");
}

#[test]
fn out_flags_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("t.chart");
    let second = dir.path().join("s.chart");
    let status = engelkit()
        .arg("prolong")
        .arg(data_dir().join("contact3.chart"))
        .args(["--object", "theta", "--out"])
        .arg(&first)
        .arg("--out-second")
        .arg(&second)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let t = std::fs::read_to_string(first).unwrap();
    assert!(
        t.starts_with("chart darboux3_prolonged { vars x y z t; }"),
        "{t}"
    );
    let s = std::fs::read_to_string(second).unwrap();
    assert!(
        s.starts_with("chart darboux3_prolonged_s { vars x y z s; }"),
        "{s}"
    );
}
