//! The parser must reject bad input with a position and never panic.

mod common;

use common::chart_files;
use engelkit::cli::dsl::parse;
use proptest::prelude::*;

fn corpus() -> Vec<String> {
    chart_files()
        .iter()
        .map(|p| std::fs::read_to_string(p).unwrap())
        .collect()
}

fn check(src: &str) {
    if let Err(e) = parse(src) {
        assert!(e.line >= 1 && e.column >= 1, "no position for {src:?}: {e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arbitrary_text(src in "\\PC{0,300}") {
        check(&src);
    }

    #[test]
    fn token_soup(toks in prop::collection::vec(
        prop::sample::select(vec![
            "chart", "c", "{", "}", "vars", "params", "x", "y", "t", ";", "field", "form",
            "dist", "map", "span", "(", ")", ",", "=", "+", "-", "*", "/", "^", "d", "dx",
            "dy", "i", "mode", "gaussian", "0", "1", "2", "99999", "\n", "#",
        ]),
        0..80,
    )) {
        check(&toks.join(" "));
    }

    #[test]
    fn mutated_corpus(idx in 0usize..64, pos in any::<prop::sample::Index>(), op in 0u8..3, c in any::<char>()) {
        let files = corpus();
        let src = &files[idx % files.len()];
        let mut chars: Vec<char> = src.chars().collect();
        let at = pos.index(chars.len().max(1)).min(chars.len());
        match op {
            0 if at < chars.len() => { chars.remove(at); }
            1 => chars.insert(at, c),
            _ if at < chars.len() => chars[at] = c,
            _ => {}
        }
        check(&chars.into_iter().collect::<String>());
    }
}

#[test]
fn large_and_hostile_inputs() {
    check(&"(".repeat(64 * 1024));
    check(&format!(
        "chart c {{ vars x; }}\nform a = {}dx;",
        "-".repeat(60_000)
    ));
    check(&format!(
        "chart c {{ vars x; }}\nform a = {}1;",
        "d(".repeat(30_000)
    ));
    check("chart c { vars x y z; }\nform a = (x + y + z)^9999*dx;");
    check("chart c { vars x y z; }\nform a = ((x + y + z)^50)^50*dx;");
    let mut long = String::from("chart c { vars x y; }\n");
    let mut k = 0;
    while long.len() < 64 * 1024 - 40 {
        long.push_str(&format!("form f{k} = x^{k}*dx - y*dy;\n"));
        k += 1;
    }
    assert!(parse(&long).is_ok());
}
