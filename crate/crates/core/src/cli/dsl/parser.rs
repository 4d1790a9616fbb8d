use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::lexer::{tokenize, Tok, Token};
use super::{ChartFile, Item, Mode, ParseError};
use crate::chartgeom::{Chart, ChartRef, KForm, PolyMap, VectorField};
use crate::symcore::{Coefficient, RationalFunction};

const MAX_DEPTH: usize = 128;
pub const MAX_EXPONENT: u32 = 10_000;

pub const KEYWORDS: &[&str] = &[
    "mode", "chart", "vars", "params", "field", "form", "dist", "map", "span", "d",
];

#[derive(Clone, Debug)]
enum Value {
    Scalar(RationalFunction),
    Form(KForm),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) enum Kind {
    Field,
    Form,
    Dist,
    Map,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
    file: ChartFile,
    chart: Option<ChartRef>,
    kinds: HashMap<String, Kind>,
}

pub fn parse(src: &str) -> Result<ChartFile, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
        file: ChartFile::placeholder(),
        chart: None,
        kinds: HashMap::new(),
    };
    p.file_items()?;
    if p.chart.is_none() {
        return Err(p.peek().error("expected a `chart` declaration"));
    }
    Ok(p.file)
}

/// Checks a name for a chart variable against reserved words and differential names.
pub(super) fn check_var_names(
    vars: &[String],
    params: &[String],
    mode: Mode,
) -> Result<(), String> {
    let all: Vec<&String> = vars.iter().chain(params).collect();
    for v in &all {
        if KEYWORDS.contains(&v.as_str()) {
            return Err(format!("`{v}` is a reserved word"));
        }
        if mode == Mode::Gaussian && v.as_str() == "i" {
            return Err("`i` is the imaginary unit in gaussian mode".into());
        }
        if let Some(rest) = v.strip_prefix('d') {
            if vars.iter().any(|w| w == rest) {
                return Err(format!(
                    "`{v}` would clash with the differential of `{rest}`"
                ));
            }
        }
    }
    Ok(())
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, ParseError> {
        if self.is_sym(c) {
            Ok(self.next())
        } else {
            Err(self
                .peek()
                .error(format!("expected `{c}`, found {}", self.peek().describe())))
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            _ => Err(t.error(format!("expected an identifier, found {}", t.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (s, t) = self.ident()?;
        if s == kw {
            Ok(())
        } else {
            Err(t.error(format!("expected `{kw}`, found `{s}`")))
        }
    }

    fn chart(&self, at: &Token) -> Result<ChartRef, ParseError> {
        self.chart
            .clone()
            .ok_or_else(|| at.error("no chart declared before this item"))
    }

    fn file_items(&mut self) -> Result<(), ParseError> {
        loop {
            let t = self.peek().clone();
            let kw = match &t.tok {
                Tok::Eof => return Ok(()),
                Tok::Ident(s) => s.clone(),
                _ => return Err(t.error(format!("expected a declaration, found {}", t.describe()))),
            };
            self.next();
            match kw.as_str() {
                "mode" => self.mode_decl(&t)?,
                "chart" => self.chart_decl(&t)?,
                "field" | "form" | "dist" | "map" => self.object_decl(&kw, &t)?,
                _ => return Err(t.error(format!("unknown declaration `{kw}`"))),
            }
        }
    }

    fn mode_decl(&mut self, at: &Token) -> Result<(), ParseError> {
        if self.chart.is_some() {
            return Err(at.error("`mode` must come before the chart declaration"));
        }
        let (m, t) = self.ident()?;
        self.file.mode = match m.as_str() {
            "rational" => Mode::Rational,
            "gaussian" => Mode::Gaussian,
            _ => {
                return Err(t.error(format!(
                    "unknown mode `{m}` (expected `rational` or `gaussian`)"
                )))
            }
        };
        self.expect_sym(';')?;
        Ok(())
    }

    fn name_list(&mut self) -> Result<Vec<(String, Token)>, ParseError> {
        let mut out = Vec::new();
        while let Tok::Ident(_) = self.peek().tok {
            out.push(self.ident()?);
        }
        self.expect_sym(';')?;
        Ok(out)
    }

    fn chart_decl(&mut self, at: &Token) -> Result<(), ParseError> {
        if self.chart.is_some() {
            return Err(at.error("only one chart may be declared per file"));
        }
        let (name, _) = self.ident()?;
        self.expect_sym('{')?;
        self.keyword("vars")?;
        let vars = self.name_list()?;
        if vars.is_empty() {
            return Err(at.error(format!("chart `{name}` declares no variables")));
        }
        let mut params = Vec::new();
        if self.peek().tok == Tok::Ident("params".into()) {
            self.next();
            params = self.name_list()?;
        }
        self.expect_sym('}')?;
        let var_names: Vec<String> = vars.iter().map(|(s, _)| s.clone()).collect();
        let param_names: Vec<String> = params.iter().map(|(s, _)| s.clone()).collect();
        if let Err(msg) = check_var_names(&var_names, &param_names, self.file.mode) {
            return Err(at.error(msg));
        }
        let chart = Chart::with_params(name, var_names, param_names)
            .map_err(|e| at.error(e.to_string()))?;
        self.file.chart = chart.clone();
        self.chart = Some(chart);
        Ok(())
    }

    fn object_decl(&mut self, kw: &str, at: &Token) -> Result<(), ParseError> {
        let chart = self.chart(at)?;
        let (name, name_tok) = self.ident()?;
        self.check_object_name(&name, &name_tok, &chart)?;
        self.expect_sym('=')?;
        let item = match kw {
            "field" => {
                let (comps, t) = self.tuple()?;
                if comps.len() != chart.dim() {
                    return Err(t.error(format!(
                        "field `{name}` has {} components but the chart has dimension {}",
                        comps.len(),
                        chart.dim()
                    )));
                }
                let comps = comps
                    .into_iter()
                    .map(|(v, t)| self.scalar(v, &t))
                    .collect::<Result<Vec<_>, _>>()?;
                Item::Field(
                    name.clone(),
                    VectorField::new(&chart, comps).map_err(|e| t.error(e.to_string()))?,
                )
            }
            "form" => {
                let form = match self.sum()? {
                    Value::Form(f) => f,
                    Value::Scalar(s) => KForm::function(&chart, s),
                };
                Item::Form(name.clone(), form)
            }
            "dist" => {
                self.keyword("span")?;
                self.expect_sym('(')?;
                let mut gens = vec![self.field_ref()?];
                while self.is_sym(',') {
                    self.next();
                    gens.push(self.field_ref()?);
                }
                self.expect_sym(')')?;
                Item::Dist(name.clone(), gens)
            }
            _ => {
                let (comps, t) = self.tuple()?;
                if comps.len() != chart.dim() {
                    return Err(t.error(format!(
                        "map `{name}` has {} components but the chart has dimension {}",
                        comps.len(),
                        chart.dim()
                    )));
                }
                let mut polys = Vec::with_capacity(comps.len());
                for (v, t) in comps {
                    let s = self.scalar(v, &t)?;
                    match s.as_polynomial() {
                        Some(p) => polys.push(p.clone()),
                        None => return Err(t.error("map components must be polynomials")),
                    }
                }
                Item::Map(
                    name.clone(),
                    PolyMap::new(&chart, &chart, polys).map_err(|e| t.error(e.to_string()))?,
                )
            }
        };
        self.expect_sym(';')?;
        let kind = match kw {
            "field" => Kind::Field,
            "form" => Kind::Form,
            "dist" => Kind::Dist,
            _ => Kind::Map,
        };
        self.kinds.insert(name, kind);
        self.file.items.push(item);
        Ok(())
    }

    fn check_object_name(
        &self,
        name: &str,
        at: &Token,
        chart: &ChartRef,
    ) -> Result<(), ParseError> {
        if KEYWORDS.contains(&name) || (self.file.mode == Mode::Gaussian && name == "i") {
            return Err(at.error(format!("`{name}` is a reserved word")));
        }
        if chart.index_of(name).is_some() {
            return Err(at.error(format!("`{name}` is already a chart variable")));
        }
        if name
            .strip_prefix('d')
            .is_some_and(|rest| chart.vars().iter().any(|v| v == rest))
        {
            return Err(at.error(format!("`{name}` is the differential of a chart variable")));
        }
        if self.kinds.contains_key(name) {
            return Err(at.error(format!("`{name}` is already declared")));
        }
        Ok(())
    }

    fn field_ref(&mut self) -> Result<String, ParseError> {
        let (name, t) = self.ident()?;
        match self.kinds.get(&name) {
            Some(Kind::Field) => Ok(name),
            Some(_) => Err(t.error(format!("`{name}` is not a field"))),
            None => Err(t.error(format!("undeclared identifier `{name}`"))),
        }
    }

    fn tuple(&mut self) -> Result<(Vec<(Value, Token)>, Token), ParseError> {
        let open = self.expect_sym('(')?;
        let mut out = Vec::new();
        loop {
            let t = self.peek().clone();
            out.push((self.sum()?, t));
            if self.is_sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.expect_sym(')')?;
        Ok((out, open))
    }

    fn scalar(&self, v: Value, at: &Token) -> Result<RationalFunction, ParseError> {
        match v {
            Value::Scalar(s) => Ok(s),
            Value::Form(f) => {
                Err(at.error(format!("expected a function, found a {}-form", f.degree())))
            }
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self
                .peek()
                .error(format!("expression nested deeper than {MAX_DEPTH} levels")));
        }
        Ok(())
    }

    fn sum(&mut self) -> Result<Value, ParseError> {
        self.enter()?;
        let mut acc = self.product()?;
        while self.is_sym('+') || self.is_sym('-') {
            let op = self.next();
            let rhs = self.product()?;
            acc = if op.tok == Tok::Sym('+') {
                add(acc, rhs, &op)?
            } else {
                add(acc, negate(rhs), &op)?
            };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        while self.is_sym('*') || self.is_sym('/') {
            let op = self.next();
            let rhs = self.unary()?;
            acc = if op.tok == Tok::Sym('*') {
                mul(acc, rhs, &op)?
            } else {
                div(acc, rhs, &op)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.is_sym('-') {
            self.next();
            self.enter()?;
            let v = self.unary()?;
            self.depth -= 1;
            return Ok(negate(v));
        }
        self.wedge()
    }

    fn wedge(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.atom()?;
        while self.is_sym('^') {
            let op = self.next();
            if let Tok::Int(n) = &self.peek().tok {
                let n = n.clone();
                let t = self.next();
                acc = power(acc, &n, &t)?;
            } else {
                let rhs = self.atom()?;
                acc = wedge(acc, rhs, &op)?;
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let t = self.next();
        let chart = self.chart(&t)?;
        let nvars = chart.nvars();
        match &t.tok {
            Tok::Int(n) => Ok(Value::Scalar(RationalFunction::constant(
                nvars,
                Coefficient::rational(BigRational::from_integer(n.clone())),
            ))),
            Tok::Sym('(') => {
                let v = self.sum()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Ident(s) if s == "d" && *self.peek_at(0) == Tok::Sym('(') => {
                self.next();
                let inner = self.sum()?;
                self.expect_sym(')')?;
                let form = match inner {
                    Value::Scalar(f) => KForm::function(&chart, f),
                    Value::Form(f) => f,
                };
                form.d().map(normalize).map_err(|e| t.error(e.to_string()))
            }
            Tok::Ident(s) => self.resolve(s, &t, &chart),
            _ => Err(t.error(format!("expected an expression, found {}", t.describe()))),
        }
    }

    fn resolve(&self, s: &str, t: &Token, chart: &ChartRef) -> Result<Value, ParseError> {
        if let Some(i) = chart.index_of(s) {
            return Ok(Value::Scalar(RationalFunction::var(chart.nvars(), i)));
        }
        if let Some(i) = s
            .strip_prefix('d')
            .and_then(|rest| chart.vars().iter().position(|v| v == rest))
        {
            return Ok(Value::Form(KForm::differential(chart, i)));
        }
        if self.file.mode == Mode::Gaussian && s == "i" {
            return Ok(Value::Scalar(RationalFunction::constant(
                chart.nvars(),
                Coefficient::i(),
            )));
        }
        match self.kinds.get(s) {
            Some(Kind::Form) => Ok(normalize(self.file.form(s).expect("declared").clone())),
            Some(_) => Err(t.error(format!("`{s}` cannot be used in an expression"))),
            None => Err(t.error(format!("undeclared identifier `{s}`"))),
        }
    }
}

fn normalize(f: KForm) -> Value {
    if f.degree() == 0 {
        Value::Scalar(f.coefficient(&[]))
    } else {
        Value::Form(f)
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(s.neg()),
        Value::Form(f) => Value::Form(f.neg()),
    }
}

fn add(a: Value, b: Value, op: &Token) -> Result<Value, ParseError> {
    let err = |e: crate::Error| op.error(e.to_string());
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => x.add(&y).map(Value::Scalar).map_err(err),
        (Value::Form(x), Value::Form(y)) if x.degree() == y.degree() => {
            x.add(&y).map(Value::Form).map_err(err)
        }
        (a, b) => Err(op.error(format!(
            "cannot add a {} and a {}",
            kind_name(&a),
            kind_name(&b)
        ))),
    }
}

fn mul(a: Value, b: Value, op: &Token) -> Result<Value, ParseError> {
    let err = |e: crate::Error| op.error(e.to_string());
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => x.mul(&y).map(Value::Scalar).map_err(err),
        (Value::Scalar(x), Value::Form(f)) | (Value::Form(f), Value::Scalar(x)) => {
            f.scale(&x).map(Value::Form).map_err(err)
        }
        (Value::Form(_), Value::Form(_)) => Err(op.error("forms are multiplied with `^`, not `*`")),
    }
}

fn div(a: Value, b: Value, op: &Token) -> Result<Value, ParseError> {
    let Value::Scalar(y) = b else {
        return Err(op.error("cannot divide by a form"));
    };
    if y.is_zero() {
        return Err(op.error("division by zero"));
    }
    let inv = y.inv().map_err(|e| op.error(e.to_string()))?;
    mul(a, Value::Scalar(inv), op)
}

fn wedge(a: Value, b: Value, op: &Token) -> Result<Value, ParseError> {
    match (a, b) {
        (Value::Form(x), Value::Form(y)) => {
            if x.degree() + y.degree() > x.chart().dim() {
                return Err(op.error(format!(
                    "wedge of degree {} exceeds the chart dimension {}",
                    x.degree() + y.degree(),
                    x.chart().dim()
                )));
            }
            x.wedge(&y)
                .map(Value::Form)
                .map_err(|e| op.error(e.to_string()))
        }
        (Value::Scalar(_), Value::Scalar(_)) => {
            Err(op.error("`^` needs an integer exponent or a form operand"))
        }
        (a, b) => mul(a, b, op),
    }
}

fn power(a: Value, n: &BigInt, at: &Token) -> Result<Value, ParseError> {
    let e: u32 = u32::try_from(n)
        .ok()
        .filter(|&e| e <= MAX_EXPONENT)
        .ok_or_else(|| at.error(format!("exponent {n} exceeds {MAX_EXPONENT}")))?;
    match a {
        Value::Scalar(s) => s
            .pow(e)
            .map(Value::Scalar)
            .map_err(|err| at.error(err.to_string())),
        Value::Form(f) => Err(at.error(format!("cannot raise a {}-form to a power", f.degree()))),
    }
}

fn kind_name(v: &Value) -> String {
    match v {
        Value::Scalar(_) => "function".to_string(),
        Value::Form(f) => format!("{}-form", f.degree()),
    }
}
