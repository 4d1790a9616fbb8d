use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::symcore::{Polynomial, RationalFunction};

/// A coordinate chart. Parameters are extra ring variables that coefficients
/// may depend on but which are not coordinates: no differentials, no
/// vector-field components, and `d` treats them as constants.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chart {
    name: String,
    vars: Vec<String>,
    params: Vec<String>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(name: impl Into<String>, vars: &[&str]) -> Result<ChartRef> {
        Self::with_params(
            name,
            vars.iter().map(|s| s.to_string()).collect(),
            Vec::new(),
        )
    }

    pub fn with_params(
        name: impl Into<String>,
        vars: Vec<String>,
        params: Vec<String>,
    ) -> Result<ChartRef> {
        let name = name.into();
        if vars.is_empty() {
            return Err(Error::InvalidChart(format!(
                "chart `{name}` has no variables"
            )));
        }
        let mut seen = HashSet::new();
        for v in vars.iter().chain(&params) {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidChart(format!(
                    "duplicate variable `{v}` in chart `{name}`"
                )));
            }
        }
        Ok(Arc::new(Chart { name, vars, params }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// Number of ring variables (coordinates followed by parameters).
    pub fn nvars(&self) -> usize {
        self.vars.len() + self.params.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Names of all ring variables, coordinates first.
    pub fn ring_names(&self) -> Vec<String> {
        self.vars.iter().chain(&self.params).cloned().collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().chain(&self.params).position(|v| v == name)
    }

    pub fn coordinate(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn constant(&self, n: i64) -> RationalFunction {
        RationalFunction::from_int(self.nvars(), n)
    }

    pub fn zero(&self) -> RationalFunction {
        RationalFunction::zero(self.nvars())
    }

    /// A new chart with coordinate `var` appended (and the same parameters).
    pub fn extended(&self, name: impl Into<String>, var: &str) -> Result<ChartRef> {
        let mut vars = self.vars.clone();
        vars.push(var.to_string());
        Chart::with_params(name, vars, self.params.clone())
    }

    /// Ring-variable mapping for embedding this chart's ring into `extended(..)`.
    pub fn extension_mapping(&self) -> Vec<usize> {
        let d = self.dim();
        (0..d)
            .chain((0..self.params.len()).map(|k| d + 1 + k))
            .collect()
    }

    /// A coordinate name not used by this chart, preferring `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}{k}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded")
    }
}

pub fn same_chart(a: &ChartRef, b: &ChartRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch {
            left: a.name().to_string(),
            right: b.name().to_string(),
        })
    }
}
