use std::collections::BTreeMap;

use super::chart::{same_chart, ChartRef};
use super::field::VectorField;
use crate::error::{Error, Result};
use crate::symcore::linalg::{combinations, primitive_vector};
use crate::symcore::text::{is_atomic_product, poly_to_text, ratfun_to_text};
use crate::symcore::{Coefficient, Polynomial, RationalFunction};

/// Strictly increasing coordinate indices `i₁ < … < i_k` naming `dx_{i₁}∧…∧dx_{i_k}`.
pub type Basis = Vec<usize>;

/// A differential k-form in the strictly increasing multi-index basis, with
/// `dx_i∧dx_j = −dx_j∧dx_i`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KForm {
    chart: ChartRef,
    degree: usize,
    coeffs: BTreeMap<Basis, RationalFunction>,
}

/// Sign of merging two disjoint sorted index lists, or `None` if they overlap.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Basis, bool)> {
    let mut inversions = 0usize;
    for &i in a {
        for &j in b {
            if i == j {
                return None;
            }
            if i > j {
                inversions += 1;
            }
        }
    }
    let mut merged: Basis = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((merged, inversions % 2 == 1))
}

impl KForm {
    pub fn zero(chart: &ChartRef, degree: usize) -> Result<Self> {
        if degree > chart.dim() {
            return Err(Error::DegreeOverflow {
                degree,
                dim: chart.dim(),
            });
        }
        Ok(KForm {
            chart: chart.clone(),
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn function(chart: &ChartRef, f: RationalFunction) -> Self {
        let mut coeffs = BTreeMap::new();
        if !f.is_zero() {
            coeffs.insert(Vec::new(), f);
        }
        KForm {
            chart: chart.clone(),
            degree: 0,
            coeffs,
        }
    }

    /// The coordinate differential `dx_i`.
    pub fn differential(chart: &ChartRef, i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![i], chart.constant(1));
        KForm {
            chart: chart.clone(),
            degree: 1,
            coeffs,
        }
    }

    /// A 1-form `Σ aᵢ dxᵢ` from dense coefficients.
    pub fn one_form(chart: &ChartRef, coeffs: Vec<RationalFunction>) -> Result<Self> {
        if coeffs.len() != chart.dim() {
            return Err(Error::ComponentCount {
                expected: chart.dim(),
                got: coeffs.len(),
            });
        }
        Self::from_terms(
            chart,
            1,
            coeffs.into_iter().enumerate().map(|(i, c)| (vec![i], c)),
        )
    }

    /// Builds a form from (index list, coefficient) pairs; unsorted index lists
    /// are sorted with the matching sign and repeated indices vanish.
    pub fn from_terms(
        chart: &ChartRef,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, RationalFunction)>,
    ) -> Result<Self> {
        let mut form = Self::zero(chart, degree)?;
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeOverflow {
                    degree: idx.len(),
                    dim: chart.dim(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= chart.dim()) {
                return Err(Error::UnknownVariable(bad));
            }
            if c.nvars() != chart.nvars() {
                return Err(Error::VariableMismatch {
                    left: chart.nvars(),
                    right: c.nvars(),
                });
            }
            let Some((basis, negative)) = sort_with_sign(idx) else {
                continue;
            };
            let c = if negative { c.neg() } else { c };
            form.accumulate(basis, &c)?;
        }
        Ok(form)
    }

    fn accumulate(&mut self, basis: Basis, c: &RationalFunction) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let next = match self.coeffs.get(&basis) {
            Some(old) => old.add(c)?,
            None => c.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(&basis);
        } else {
            self.coeffs.insert(basis, next);
        }
        Ok(())
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, basis: &[usize]) -> RationalFunction {
        self.coeffs
            .get(basis)
            .cloned()
            .unwrap_or_else(|| self.chart.zero())
    }

    /// Dense coefficients of a 1-form.
    pub fn one_form_coefficients(&self) -> Vec<RationalFunction> {
        (0..self.chart.dim())
            .map(|i| self.coefficient(&[i]))
            .collect()
    }

    /// Coefficient of `dx₁∧…∧dx_n` for a top-degree form.
    pub fn top_coefficient(&self) -> Result<RationalFunction> {
        if self.degree != self.chart.dim() {
            return Err(Error::DegreeOverflow {
                degree: self.degree,
                dim: self.chart.dim(),
            });
        }
        Ok(self.coefficient(&(0..self.degree).collect::<Vec<_>>()))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        same_chart(&self.chart, &o.chart)?;
        if self.degree != o.degree {
            return Err(Error::DegreeOverflow {
                degree: o.degree,
                dim: self.chart.dim(),
            });
        }
        let mut out = self.clone();
        for (b, c) in &o.coeffs {
            out.accumulate(b.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        KForm {
            chart: self.chart.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| (b.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &RationalFunction) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (b, c) in &self.coeffs {
            let v = c.mul(f)?;
            if !v.is_zero() {
                coeffs.insert(b.clone(), v);
            }
        }
        Ok(KForm {
            chart: self.chart.clone(),
            degree: self.degree,
            coeffs,
        })
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        same_chart(&self.chart, &o.chart)?;
        let degree = self.degree + o.degree;
        let mut out = Self::zero(&self.chart, degree)?;
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                let Some((basis, negative)) = merge_sign(a, b) else {
                    continue;
                };
                let c = ca.mul(cb)?;
                out.accumulate(basis, &if negative { c.neg() } else { c })?;
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ …` (`n` factors); `n = 0` gives the constant 1.
    pub fn wedge_power(&self, n: usize) -> Result<Self> {
        let mut acc = KForm::function(&self.chart, self.chart.constant(1));
        for _ in 0..n {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Exterior derivative with respect to the chart coordinates.
    pub fn d(&self) -> Result<Self> {
        if self.degree >= self.chart.dim() {
            return Err(Error::DegreeOverflow {
                degree: self.degree + 1,
                dim: self.chart.dim(),
            });
        }
        let mut out = Self::zero(&self.chart, self.degree + 1)?;
        for (b, c) in &self.coeffs {
            for k in 0..self.chart.dim() {
                if b.contains(&k) {
                    continue;
                }
                let dc = c.partial(k)?;
                if dc.is_zero() {
                    continue;
                }
                let Some((basis, negative)) = merge_sign(&[k], b) else {
                    continue;
                };
                out.accumulate(basis, &if negative { dc.neg() } else { dc })?;
            }
        }
        Ok(out)
    }

    /// Contraction in the first slot: `i_V(dx_{i₁}∧…) = Σ_s (−1)^s V^{i_s} dx_{…î_s…}`.
    pub fn interior(&self, v: &VectorField) -> Result<Self> {
        same_chart(&self.chart, v.chart())?;
        if self.degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut out = Self::zero(&self.chart, self.degree - 1)?;
        for (b, c) in &self.coeffs {
            for (s, &i) in b.iter().enumerate() {
                let vi = v.component(i);
                if vi.is_zero() {
                    continue;
                }
                let mut rest = b.clone();
                rest.remove(s);
                let t = c.mul(vi)?;
                out.accumulate(rest, &if s % 2 == 1 { t.neg() } else { t })?;
            }
        }
        Ok(out)
    }

    /// `ω(V₁, …, V_k)`; for a 0-form the function itself.
    pub fn evaluate_on(&self, fields: &[VectorField]) -> Result<RationalFunction> {
        if fields.len() != self.degree {
            return Err(Error::ComponentCount {
                expected: self.degree,
                got: fields.len(),
            });
        }
        let mut acc = self.chart.zero();
        for (b, c) in &self.coeffs {
            let m: Vec<Vec<RationalFunction>> = fields
                .iter()
                .map(|f| b.iter().map(|&i| f.component(i).clone()).collect())
                .collect();
            let det = crate::symcore::linalg::det(&m, self.chart.nvars())?;
            if det.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&det)?)?;
        }
        Ok(acc)
    }

    /// Lie derivative through `L_V = d i_V + i_V d`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<Self> {
        let inner = if self.degree == 0 {
            KForm::zero(&self.chart, 0)?
        } else {
            self.interior(v)?.d()?
        };
        let outer = if self.degree == self.chart.dim() {
            KForm::zero(&self.chart, self.degree)?
        } else {
            self.d()?.interior(v)?
        };
        if self.degree == 0 {
            return Ok(outer);
        }
        inner.add(&outer)
    }

    /// Coefficient-wise partial derivative in a ring variable (typically a parameter).
    pub fn partial_coefficients(&self, var: usize) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (b, c) in &self.coeffs {
            let dc = c.partial(var)?;
            if !dc.is_zero() {
                coeffs.insert(b.clone(), dc);
            }
        }
        Ok(KForm {
            chart: self.chart.clone(),
            degree: self.degree,
            coeffs,
        })
    }

    /// Numeric coefficients at a point in the dense basis order
    /// (lexicographic strictly increasing index lists).
    pub fn eval(&self, point: &[Coefficient]) -> Result<Vec<Coefficient>> {
        combinations(self.chart.dim(), self.degree)
            .into_iter()
            .map(|b| match self.coeffs.get(&b) {
                Some(c) => c.eval(point),
                None => Ok(Coefficient::zero()),
            })
            .collect()
    }

    /// Canonical scale of a 1-form's line: polynomial coefficients with trivial
    /// gcd and leading coefficient 1 on the first nonzero entry.
    pub fn primitive(&self) -> Result<Option<Self>> {
        let bases: Vec<Basis> = self.coeffs.keys().cloned().collect();
        let vals: Vec<RationalFunction> = self.coeffs.values().cloned().collect();
        let Some(ps) = primitive_vector(&vals, self.chart.nvars())? else {
            return Ok(None);
        };
        let terms = bases
            .into_iter()
            .zip(ps.into_iter().map(RationalFunction::from_poly));
        Ok(Some(KForm::from_terms(&self.chart, self.degree, terms)?))
    }

    /// Same coefficients on an extended chart.
    pub fn embed(&self, target: &ChartRef, mapping: &[usize]) -> Result<Self> {
        let terms = self
            .coeffs
            .iter()
            .map(|(b, c)| (b.clone(), c.embed(target.nvars(), mapping)));
        KForm::from_terms(target, self.degree, terms)
    }

    pub fn to_text(&self) -> String {
        let names = self.chart.ring_names();
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        if self.degree == 0 {
            return ratfun_to_text(&self.coeffs[&Vec::new()], &names);
        }
        let mut out = String::new();
        for (k, (b, c)) in self.coeffs.iter().enumerate() {
            let basis: Vec<String> = b.iter().map(|&i| format!("d{}", names[i])).collect();
            let basis = basis.join("^");
            let term = if c.is_one() {
                basis
            } else if c.neg().is_one() {
                format!("-{basis}")
            } else if is_atomic_product(c) {
                format!("{}*{}", poly_to_text(c.numerator(), &names), basis)
            } else {
                format!("({})*{}", ratfun_to_text(c, &names), basis)
            };
            if k == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Basis, bool)> {
    let mut negative = false;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, negative))
}

/// Convenience: `Σ cᵢ dxᵢ` from polynomial coefficients.
pub fn one_form_from_polys(chart: &ChartRef, coeffs: Vec<Polynomial>) -> Result<KForm> {
    KForm::one_form(
        chart,
        coeffs
            .into_iter()
            .map(RationalFunction::from_poly)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartgeom::Chart;

    fn xyz() -> ChartRef {
        Chart::new("c3", &["x", "y", "z"]).unwrap()
    }

    fn contact_form(c: &ChartRef) -> KForm {
        // dx − y dz
        let y = RationalFunction::from_poly(c.coordinate(1));
        KForm::differential(c, 0)
            .sub(&KForm::differential(c, 2).scale(&y).unwrap())
            .unwrap()
    }

    #[test]
    fn d_of_contact_form() {
        let c = xyz();
        let dtheta = contact_form(&c).d().unwrap();
        let expected = KForm::differential(&c, 1)
            .wedge(&KForm::differential(&c, 2))
            .unwrap()
            .neg();
        assert_eq!(dtheta, expected);
        assert_eq!(dtheta.to_text(), "-dy^dz");
    }

    #[test]
    fn wedge_antisymmetry() {
        let c = xyz();
        let dx = KForm::differential(&c, 0);
        let dy = KForm::differential(&c, 1);
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().neg());
    }

    #[test]
    fn contact_volume() {
        // (dx − y dz)∧(−dy∧dz) = −dx∧dy∧dz
        let c = xyz();
        let theta = contact_form(&c);
        let vol = theta.wedge(&theta.d().unwrap()).unwrap();
        assert_eq!(vol.top_coefficient().unwrap(), c.constant(-1));
    }

    #[test]
    fn interior_products() {
        let c = xyz();
        let dxdy = KForm::differential(&c, 0)
            .wedge(&KForm::differential(&c, 1))
            .unwrap();
        assert_eq!(
            dxdy.interior(&VectorField::coordinate(&c, 0)).unwrap(),
            KForm::differential(&c, 1)
        );
        assert!(dxdy
            .interior(&VectorField::coordinate(&c, 2))
            .unwrap()
            .is_zero());
        assert_eq!(
            KForm::function(&c, c.constant(1)).interior(&VectorField::coordinate(&c, 0)),
            Err(Error::ZeroDegree)
        );
    }

    #[test]
    fn d_errors_on_top_degree() {
        let c = Chart::new("line", &["x"]).unwrap();
        assert!(KForm::differential(&c, 0).d().is_err());
        assert!(KForm::function(&c, c.constant(5)).d().unwrap().is_zero());
    }

    #[test]
    fn unsorted_terms_pick_up_sign() {
        let c = xyz();
        let f = KForm::from_terms(&c, 2, vec![(vec![2, 0], c.constant(1))]).unwrap();
        assert_eq!(f.coefficient(&[0, 2]), c.constant(-1));
        let g = KForm::from_terms(&c, 2, vec![(vec![1, 1], c.constant(1))]).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn dense_evaluation() {
        // t²ω₁ − 2tω₂ + ω₃ at t = 1
        let c = Chart::new("tube", &["x1", "x2", "x3", "t"]).unwrap();
        let t = c.coordinate(3);
        let theta = one_form_from_polys(
            &c,
            vec![
                &t * &t,
                t.scale(&(-2).into()),
                Polynomial::one(4),
                Polynomial::zero(4),
            ],
        )
        .unwrap();
        let pt = [
            Coefficient::zero(),
            Coefficient::zero(),
            Coefficient::zero(),
            Coefficient::one(),
        ];
        let vals = theta.eval(&pt).unwrap();
        let expected: Vec<Coefficient> = [1, -2, 1, 0]
            .iter()
            .map(|&n| Coefficient::from_int(n))
            .collect();
        assert_eq!(vals, expected);
    }
}
