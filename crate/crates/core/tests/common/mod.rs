#![allow(dead_code)]

pub mod identities;

use std::path::PathBuf;

use engelkit::cli::{run, Outcome};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/charts")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn chart_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(data_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "chart"))
        .collect();
    files.sort();
    files
}

#[derive(Debug)]
pub struct Case {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

pub fn golden_cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.tsv")).unwrap();
    let data = data_dir().to_string_lossy().into_owned();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            assert_eq!(cols.len(), 3, "bad case line {l:?}");
            Case {
                name: cols[0].to_string(),
                exit: cols[1].parse().unwrap(),
                args: cols[2]
                    .split_whitespace()
                    .map(|a| a.replace("{data}", &data))
                    .collect(),
            }
        })
        .collect()
}

pub fn run_case(case: &Case, extra: &[&str]) -> Outcome {
    let mut args = vec!["engelkit".to_string()];
    args.extend(extra.iter().map(|s| s.to_string()));
    args.extend(case.args.iter().cloned());
    run(args)
}
