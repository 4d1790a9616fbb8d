//! The chart-description language.
//!
//! ```text
//! mode gaussian;                      # optional, default rational
//! chart engel { vars x y z w; }       # `params t;` adds family parameters
//! field X = (y, w, 1, 0);
//! form theta = dx - y*dz;             # `dX` differentials, `^` wedge, `d(..)`
//! dist D = span(X, L);
//! map phi = (6*x, 2*y, 3*z, w);       # polynomial self-map, for `equiv`
//! ```
//!
//! `^` followed by an integer literal is a power, otherwise a wedge product.

mod lexer;
mod parser;

pub use parser::{parse, MAX_EXPONENT};

use thiserror::Error;

use crate::chartgeom::{Chart, ChartRef, KForm, PolyMap, VectorField};
use crate::distribution::Distribution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    #[default]
    Rational,
    Gaussian,
}

#[derive(Clone, Debug)]
pub enum Item {
    Field(String, VectorField),
    Form(String, KForm),
    Dist(String, Vec<String>),
    Map(String, PolyMap),
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Field(n, _) | Item::Form(n, _) | Item::Dist(n, _) | Item::Map(n, _) => n,
        }
    }
}

/// A parsed chart file: one chart and its named objects in declaration order.
#[derive(Clone, Debug)]
pub struct ChartFile {
    mode: Mode,
    chart: ChartRef,
    items: Vec<Item>,
}

impl ChartFile {
    fn placeholder() -> Self {
        ChartFile {
            mode: Mode::Rational,
            chart: Chart::new("_", &["_"]).expect("valid"),
            items: Vec::new(),
        }
    }

    /// An empty file for `chart`, for emitting constructions.
    pub fn new(chart: &ChartRef, mode: Mode) -> Result<Self, ParseError> {
        parser::check_var_names(chart.vars(), chart.params(), mode).map_err(|message| {
            ParseError {
                line: 0,
                column: 0,
                message,
            }
        })?;
        Ok(ChartFile {
            mode,
            chart: chart.clone(),
            items: Vec::new(),
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.items.iter().find_map(|it| match it {
            Item::Field(n, v) if n == name => Some(v),
            _ => None,
        })
    }

    pub fn form(&self, name: &str) -> Option<&KForm> {
        self.items.iter().find_map(|it| match it {
            Item::Form(n, f) if n == name => Some(f),
            _ => None,
        })
    }

    pub fn map(&self, name: &str) -> Option<&PolyMap> {
        self.items.iter().find_map(|it| match it {
            Item::Map(n, m) if n == name => Some(m),
            _ => None,
        })
    }

    pub fn distribution(&self, name: &str) -> Option<Distribution> {
        let gens = self.items.iter().find_map(|it| match it {
            Item::Dist(n, g) if n == name => Some(g),
            _ => None,
        })?;
        let fields = gens
            .iter()
            .map(|g| self.field(g).expect("checked at parse").clone())
            .collect();
        Some(Distribution::new(&self.chart, fields).expect("nonempty, same chart"))
    }

    pub fn forms(&self) -> impl Iterator<Item = &str> {
        self.items
            .iter()
            .filter(|it| matches!(it, Item::Form(..)))
            .map(Item::name)
    }

    pub fn distributions(&self) -> impl Iterator<Item = &str> {
        self.items
            .iter()
            .filter(|it| matches!(it, Item::Dist(..)))
            .map(Item::name)
    }

    fn taken(&self, name: &str) -> bool {
        self.items.iter().any(|it| it.name() == name)
    }

    fn push(&mut self, item: Item) -> Result<(), ParseError> {
        let name = item.name().to_string();
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || self.taken(&name) || self.chart.index_of(&name).is_some() {
            return Err(ParseError {
                line: 0,
                column: 0,
                message: format!("cannot declare `{name}`"),
            });
        }
        self.items.push(item);
        Ok(())
    }

    pub fn add_field(&mut self, name: &str, v: VectorField) -> Result<(), ParseError> {
        self.push(Item::Field(name.into(), v))
    }

    pub fn add_form(&mut self, name: &str, f: KForm) -> Result<(), ParseError> {
        self.push(Item::Form(name.into(), f))
    }

    pub fn add_dist(&mut self, name: &str, gens: &[&str]) -> Result<(), ParseError> {
        if let Some(g) = gens.iter().find(|g| self.field(g).is_none()) {
            return Err(ParseError {
                line: 0,
                column: 0,
                message: format!("`{g}` is not a field"),
            });
        }
        self.push(Item::Dist(
            name.into(),
            gens.iter().map(|s| s.to_string()).collect(),
        ))
    }

    /// Canonical text; parsing it back yields the same text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.mode == Mode::Gaussian {
            out.push_str("mode gaussian;\n");
        }
        out.push_str(&format!(
            "chart {} {{ vars {};",
            self.chart.name(),
            self.chart.vars().join(" ")
        ));
        if !self.chart.params().is_empty() {
            out.push_str(&format!(" params {};", self.chart.params().join(" ")));
        }
        out.push_str(" }\n");
        for item in &self.items {
            let line = match item {
                Item::Field(n, v) => format!("field {n} = {};", v.to_text()),
                Item::Form(n, f) => format!("form {n} = {};", form_text(f)),
                Item::Dist(n, g) => format!("dist {n} = span({});", g.join(", ")),
                Item::Map(n, m) => format!("map {n} = {};", m.to_text()),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Form text that keeps the degree of a zero form (`0*dx^dy`).
fn form_text(f: &KForm) -> String {
    if f.is_zero() && f.degree() > 0 {
        let vars = f.chart().vars();
        let basis: Vec<String> = vars[..f.degree()].iter().map(|v| format!("d{v}")).collect();
        return format!("0*{}", basis.join("^"));
    }
    f.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ENGEL: &str = "chart engel { vars x y z w; }\n\
        field L = (0, 0, 0, 1);\n\
        field X = (y, w, 1, 0);\n\
        dist D = span(L, X);\n\
        form theta = dx - y*dz;\n";

    #[test]
    fn parses_minimal_file() {
        let f = parse("chart c { vars x; }\nfield v = (1);").unwrap();
        assert_eq!(f.chart().dim(), 1);
        assert_eq!(f.field("v").unwrap().to_text(), "(1)");
    }

    #[test]
    fn canonical_round_trip() {
        let f = parse(ENGEL).unwrap();
        assert_eq!(f.to_text(), ENGEL);
        assert_eq!(f.distribution("D").unwrap().generators().len(), 2);
    }

    #[test]
    fn expressions() {
        let f = parse(
            "mode gaussian;\nchart c { vars x y z; params t; }\n\
             form a = (x + 1)^2*dx ^ dy - d(x*y*z)^dz;\n\
             form b = a ^ dz + 0*dx^dy^dz;\n\
             field v = (x/(t + 1), 3/4*i*y, -x^2);\n\
             map phi = (2*x, y, z);\n",
        )
        .unwrap();
        assert_eq!(
            f.form("a").unwrap().to_text(),
            "(x^2 + 2*x + 1)*dx^dy - y*z*dx^dz - x*z*dy^dz"
        );
        assert_eq!(f.form("b").unwrap().to_text(), "(x^2 + 2*x + 1)*dx^dy^dz");
        let again = parse(&f.to_text()).unwrap();
        assert_eq!(again.to_text(), f.to_text());
        let zero = parse("chart c { vars x y; }\nform z = 0*dx^dy;\n").unwrap();
        assert_eq!(zero.to_text(), "chart c { vars x y; }\nform z = 0*dx^dy;\n");
        assert_eq!(zero.form("z").unwrap().degree(), 2);
        assert_eq!(
            f.field("v").unwrap().to_text(),
            "((x)/(t + 1), 3/4*i*y, -x^2)"
        );
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("chart c { vars x y; }\nfield v = (x, q);").unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        assert!(e.message.contains("`q`"));
        let e = parse("chart c { vars x y; }\nfield v = (x);").unwrap_err();
        assert!(e.message.contains("dimension"));
        let e = parse("chart c { vars x dx; }").unwrap_err();
        assert!(e.message.contains("differential"));
        let e = parse("chart c { vars x y; }\nform a = dx*dy;").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        assert!(parse("field v = (1);").is_err());
        assert!(parse("chart c { vars x; }\nform a = x^99999;").is_err());
        assert!(parse(&format!(
            "chart c {{ vars x; }}\nform a = {}x{};",
            "(".repeat(500),
            ")".repeat(500)
        ))
        .is_err());
    }
}
