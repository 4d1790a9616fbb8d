//! Byte-exact report corpus. `ENGELKIT_BLESS=1` rewrites the expected files.

mod common;

use common::{golden_cases, golden_dir, run_case};

#[test]
fn reports_match_golden_files() {
    let cases = golden_cases();
    assert!(cases.len() >= 15);
    let bless = std::env::var_os("ENGELKIT_BLESS").is_some();
    let mut mismatches = Vec::new();
    for case in &cases {
        let out = run_case(case, &[]);
        assert_eq!(out.code, case.exit, "{}: {}", case.name, out.stderr);
        assert!(out.stderr.is_empty(), "{}: {}", case.name, out.stderr);
        let path = golden_dir().join(format!("{}.json", case.name));
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if expected != out.stdout {
            mismatches.push(case.name.clone());
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn timing_is_null_by_default() {
    for case in golden_cases().iter().take(3) {
        let doc: serde_json::Value = serde_json::from_str(&run_case(case, &[]).stdout).unwrap();
        assert!(doc["timing_ms"].is_null());
        let timed: serde_json::Value =
            serde_json::from_str(&run_case(case, &["--timing"]).stdout).unwrap();
        assert!(timed["timing_ms"].is_u64());
    }
}
