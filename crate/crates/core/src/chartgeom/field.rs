use super::chart::{same_chart, ChartRef};
use crate::error::{Error, Result};
use crate::symcore::linalg::primitive_vector;
use crate::symcore::text::ratfun_to_text;
use crate::symcore::{Coefficient, Polynomial, RationalFunction};

/// A vector field `Σ vⁱ ∂/∂xⁱ` with rational-function components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField {
    chart: ChartRef,
    comps: Vec<RationalFunction>,
}

impl VectorField {
    pub fn new(chart: &ChartRef, comps: Vec<RationalFunction>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::ComponentCount {
                expected: chart.dim(),
                got: comps.len(),
            });
        }
        if let Some(bad) = comps.iter().find(|c| c.nvars() != chart.nvars()) {
            return Err(Error::VariableMismatch {
                left: chart.nvars(),
                right: bad.nvars(),
            });
        }
        Ok(VectorField {
            chart: chart.clone(),
            comps,
        })
    }

    pub fn from_polys(chart: &ChartRef, comps: Vec<Polynomial>) -> Result<Self> {
        Self::new(
            chart,
            comps.into_iter().map(RationalFunction::from_poly).collect(),
        )
    }

    pub fn zero(chart: &ChartRef) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: vec![chart.zero(); chart.dim()],
        }
    }

    /// The coordinate field `∂/∂x_i`.
    pub fn coordinate(chart: &ChartRef, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = chart.constant(1);
        v
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RationalFunction {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.iter().all(|c| c.is_polynomial())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        same_chart(&self.chart, &o.chart)?;
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        same_chart(&self.chart, &o.chart)?;
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    pub fn neg(&self) -> Self {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, f: &RationalFunction) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.mul(f)).collect::<Result<_>>()?;
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    pub fn scale_poly(&self, p: &Polynomial) -> Result<Self> {
        self.scale(&RationalFunction::from_poly(p.clone()))
    }

    /// Directional derivative `V(f) = Σ vʲ ∂f/∂xʲ` (coordinates only).
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction> {
        let mut acc = self.chart.zero();
        for (j, vj) in self.comps.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let df = f.partial(j)?;
            if df.is_zero() {
                continue;
            }
            acc = acc.add(&vj.mul(&df)?)?;
        }
        Ok(acc)
    }

    /// `[v, w]ⁱ = Σⱼ (vʲ ∂wⁱ/∂xʲ − wʲ ∂vⁱ/∂xʲ)`.
    pub fn lie_bracket(&self, w: &VectorField) -> Result<VectorField> {
        same_chart(&self.chart, &w.chart)?;
        let mut comps = Vec::with_capacity(self.comps.len());
        for i in 0..self.comps.len() {
            let a = self.apply(&w.comps[i])?;
            let b = w.apply(&self.comps[i])?;
            comps.push(a.sub(&b)?);
        }
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    pub fn eval(&self, point: &[Coefficient]) -> Result<Vec<Coefficient>> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }

    /// Canonical generator of the same fraction-field line: polynomial
    /// components with trivial gcd, first nonzero leading coefficient 1.
    pub fn primitive(&self) -> Result<Option<VectorField>> {
        Ok(primitive_vector(&self.comps, self.chart.nvars())?
            .map(|ps| VectorField::from_polys(&self.chart, ps).expect("same shape")))
    }

    /// Clears denominators without dividing out polynomial factors.
    pub fn cleared(&self) -> Result<VectorField> {
        let (ps, _) = crate::symcore::linalg::clear_denominators(&self.comps, self.chart.nvars())?;
        VectorField::from_polys(&self.chart, ps)
    }

    /// Same components, re-expressed on an extended chart.
    pub fn embed(&self, target: &ChartRef, mapping: &[usize]) -> Result<VectorField> {
        let mut comps: Vec<RationalFunction> = self
            .comps
            .iter()
            .map(|c| c.embed(target.nvars(), mapping))
            .collect();
        comps.resize(target.dim(), target.zero());
        VectorField::new(target, comps)
    }

    pub fn to_text(&self) -> String {
        let names = self.chart.ring_names();
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| ratfun_to_text(c, &names))
            .collect();
        format!("({})", parts.join(", "))
    }
}
