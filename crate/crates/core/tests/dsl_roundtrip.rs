mod common;

use common::chart_files;
use engelkit::cli::dsl::parse;

#[test]
fn corpus_round_trips() {
    let files = chart_files();
    assert!(files.len() >= 20, "corpus has {} files", files.len());
    for path in files {
        let src = std::fs::read_to_string(&path).unwrap();
        let first = parse(&src).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let text = first.to_text();
        let second = parse(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", path.display()));
        assert_eq!(second.to_text(), text, "{}", path.display());
        assert_eq!(second.items().len(), first.items().len());
    }
}

#[test]
fn canonical_text_normalizes_layout() {
    let messy = "chart  c{vars x y z ;}#x\nform  theta=dx-y *dz ; field v=( 1,0 ,x^2 );";
    let f = parse(messy).unwrap();
    assert_eq!(
        f.to_text(),
        "chart c { vars x y z; }\nform theta = dx - y*dz;\nfield v = (1, 0, x^2);\n"
    );
}
