use super::chart::{same_chart, ChartRef};
use super::form::KForm;
use crate::error::{Error, Result};
use crate::symcore::linalg::det_poly;
use crate::symcore::text::poly_to_text;
use crate::symcore::{Polynomial, RationalFunction};

/// A polynomial coordinate map `source → target`, one component per target coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    source: ChartRef,
    target: ChartRef,
    comps: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(source: &ChartRef, target: &ChartRef, comps: Vec<Polynomial>) -> Result<Self> {
        if comps.len() != target.dim() {
            return Err(Error::ComponentCount {
                expected: target.dim(),
                got: comps.len(),
            });
        }
        if let Some(bad) = comps.iter().find(|p| p.nvars() != source.nvars()) {
            return Err(Error::VariableMismatch {
                left: source.nvars(),
                right: bad.nvars(),
            });
        }
        for p in target.params() {
            if !source.params().contains(p) {
                return Err(Error::InvalidChart(format!(
                    "target parameter `{p}` is not a source parameter"
                )));
            }
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        })
    }

    pub fn identity(chart: &ChartRef) -> Self {
        let comps = (0..chart.dim()).map(|i| chart.coordinate(i)).collect();
        PolyMap {
            source: chart.clone(),
            target: chart.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &ChartRef {
        &self.source
    }

    pub fn target(&self) -> &ChartRef {
        &self.target
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    /// Polynomials to substitute for each target ring variable.
    fn substitution(&self) -> Vec<Polynomial> {
        let mut subs = self.comps.clone();
        for p in self.target.params() {
            let idx = self.source.index_of(p).expect("checked in new");
            subs.push(self.source.coordinate(idx));
        }
        subs
    }

    pub fn compose_function(&self, f: &RationalFunction) -> Result<RationalFunction> {
        f.substitute(&self.substitution())
    }

    /// `dφ_i = Σ_j ∂φ_i/∂x_j dx_j` on the source chart.
    fn component_differential(&self, i: usize) -> Result<KForm> {
        let coeffs = (0..self.source.dim())
            .map(|j| self.comps[i].partial(j).map(RationalFunction::from_poly))
            .collect::<Result<Vec<_>>>()?;
        KForm::one_form(&self.source, coeffs)
    }

    /// `φ*ω = Σ_I (f_I∘φ) dφ_{i₁}∧…∧dφ_{i_k}`.
    pub fn pullback(&self, form: &KForm) -> Result<KForm> {
        same_chart(&self.target, form.chart())?;
        if form.degree() > self.source.dim() {
            return Err(Error::DegreeOverflow {
                degree: form.degree(),
                dim: self.source.dim(),
            });
        }
        let diffs = (0..self.target.dim())
            .map(|i| self.component_differential(i))
            .collect::<Result<Vec<_>>>()?;
        let mut out = KForm::zero(&self.source, form.degree())?;
        for (basis, c) in form.terms() {
            let mut piece = KForm::function(&self.source, self.compose_function(c)?);
            for &i in basis {
                piece = piece.wedge(&diffs[i])?;
            }
            out = out.add(&piece)?;
        }
        Ok(out)
    }

    /// Jacobian matrix `∂φ_i/∂x_j` (rows = target coordinates).
    pub fn jacobian(&self) -> Result<Vec<Vec<Polynomial>>> {
        self.comps
            .iter()
            .map(|p| (0..self.source.dim()).map(|j| p.partial(j)).collect())
            .collect()
    }

    pub fn jacobian_determinant(&self) -> Result<Polynomial> {
        if self.source.dim() != self.target.dim() {
            return Err(Error::Dimension(format!(
                "map between charts of dimension {} and {}",
                self.source.dim(),
                self.target.dim()
            )));
        }
        Ok(det_poly(self.jacobian()?, self.source.nvars()))
    }

    pub fn to_text(&self) -> String {
        let names = self.source.ring_names();
        let parts: Vec<String> = self.comps.iter().map(|p| poly_to_text(p, &names)).collect();
        format!("({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartgeom::Chart;

    #[test]
    fn identity_pullback() {
        let c = Chart::new("c", &["x", "y"]).unwrap();
        let w = KForm::differential(&c, 0)
            .scale(&RationalFunction::from_poly(c.coordinate(1)))
            .unwrap();
        assert_eq!(PolyMap::identity(&c).pullback(&w).unwrap(), w);
    }

    #[test]
    fn square_map() {
        // φ(u, v) = (u², v), φ*dx = 2u du
        let src = Chart::new("uv", &["u", "v"]).unwrap();
        let tgt = Chart::new("xy", &["x", "y"]).unwrap();
        let u = src.coordinate(0);
        let phi = PolyMap::new(&src, &tgt, vec![&u * &u, src.coordinate(1)]).unwrap();
        let pulled = phi.pullback(&KForm::differential(&tgt, 0)).unwrap();
        let expected = KForm::differential(&src, 0)
            .scale(&RationalFunction::from_poly(u.scale(&2.into())))
            .unwrap();
        assert_eq!(pulled, expected);
        assert_eq!(pulled.to_text(), "2*u*du");
    }

    #[test]
    fn wrong_chart_is_rejected() {
        let a = Chart::new("a", &["x"]).unwrap();
        let b = Chart::new("b", &["y"]).unwrap();
        let phi = PolyMap::identity(&a);
        assert!(phi.pullback(&KForm::differential(&b, 0)).is_err());
    }
}
