//! Generic-rank analysis of distributions over the fraction field: derived
//! flags, annihilators, degeneracy loci, and the contact / even-contact /
//! Engel verdicts built on them.

mod checks;
mod kernel;
mod witness;

pub use checks::{check_contact, check_engel, check_even_contact, CheckReport, EngelFlag};
pub use kernel::{
    anticanonical_volume, kernel_by_brackets, kernel_line_field, oneill_tensor, OneillTable,
};
pub use witness::{find_witness, lattice_shell, DEFAULT_WITNESS_RADIUS};

use crate::chartgeom::{same_chart, ChartRef, KForm, VectorField};
use crate::error::{Error, Result};
use crate::symcore::linalg::{
    clear_denominators, maximal_minor_gcd, nullspace, rank, rank_numeric,
};
use crate::symcore::{gcd, squarefree_part, Coefficient, Polynomial, RationalFunction};

/// A distribution given by a nonempty list of generating vector fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Distribution {
    chart: ChartRef,
    generators: Vec<VectorField>,
}

impl Distribution {
    pub fn new(chart: &ChartRef, generators: Vec<VectorField>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Rank(
                "a distribution needs at least one generator".into(),
            ));
        }
        for g in &generators {
            same_chart(chart, g.chart())?;
        }
        Ok(Distribution {
            chart: chart.clone(),
            generators,
        })
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.generators
    }

    fn matrix(&self) -> Vec<Vec<RationalFunction>> {
        self.generators
            .iter()
            .map(|g| g.components().to_vec())
            .collect()
    }

    /// Generator rows with denominators cleared row by row.
    pub fn polynomial_rows(&self) -> Result<Vec<Vec<Polynomial>>> {
        self.generators
            .iter()
            .map(|g| clear_denominators(g.components(), self.chart.nvars()).map(|(p, _)| p))
            .collect()
    }

    pub fn generic_rank(&self) -> Result<usize> {
        rank(&self.matrix(), self.chart.dim())
    }

    /// The first maximal independent subset of the generators, in order.
    pub fn basis(&self) -> Result<Vec<VectorField>> {
        let dim = self.chart.dim();
        let target = self.generic_rank()?;
        let mut rows: Vec<Vec<RationalFunction>> = Vec::new();
        let mut out = Vec::new();
        for g in &self.generators {
            if out.len() == target {
                break;
            }
            rows.push(g.components().to_vec());
            if rank(&rows, dim)? == rows.len() {
                out.push(g.clone());
            } else {
                rows.pop();
            }
        }
        Ok(out)
    }

    /// Whether `v` lies in the fraction-field span of the generators.
    pub fn contains(&self, v: &VectorField) -> Result<bool> {
        let mut m = self.matrix();
        let r = rank(&m, self.chart.dim())?;
        m.push(v.components().to_vec());
        Ok(rank(&m, self.chart.dim())? == r)
    }

    /// Rank of the generators evaluated at a point (error at a pole).
    pub fn rank_at(&self, point: &[Coefficient]) -> Result<usize> {
        let rows = self
            .generators
            .iter()
            .map(|g| g.eval(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(rank_numeric(rows))
    }

    /// Squarefree monic polynomial whose zero set is where the generators
    /// span less than the generic rank (`None` if that set has no
    /// hypersurface component). Denominators are cleared per generator first.
    pub fn rank_drop_locus(&self) -> Result<Option<Polynomial>> {
        let r = self.generic_rank()?;
        if r == 0 {
            return Ok(None);
        }
        let rows = self.polynomial_rows()?;
        let g = maximal_minor_gcd(&rows, r, self.chart.nvars())?;
        Ok(g.filter(|g| !g.is_constant()).map(|g| squarefree_part(&g)))
    }

    /// Adds `v` unless it is zero or a constant multiple of an existing generator.
    fn push_new(&mut self, v: VectorField) {
        if v.is_zero() || self.generators.iter().any(|g| constant_multiple(g, &v)) {
            return;
        }
        self.generators.push(v);
    }
}

/// Whether `b = λ a` for a nonzero constant `λ`.
fn constant_multiple(a: &VectorField, b: &VectorField) -> bool {
    let mut ratio: Option<RationalFunction> = None;
    for (x, y) in a.components().iter().zip(b.components()) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            _ => {}
        }
        let Ok(q) = y.div(x) else { return false };
        if q.constant_value().is_none() {
            return false;
        }
        match &ratio {
            None => ratio = Some(q),
            Some(r) if *r == q => {}
            _ => return false,
        }
    }
    ratio.is_some()
}

/// `D + [D, D]`: the generators followed by all pairwise brackets `[gᵢ, gⱼ]`, `i < j`.
pub fn derived(d: &Distribution) -> Result<Distribution> {
    let gens = d.generators();
    let mut out = d.clone();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            out.push_new(gens[i].lie_bracket(&gens[j])?);
        }
    }
    Ok(out)
}

/// Iterated derived distributions with generic ranks and rank-drop loci.
#[derive(Clone, Debug)]
pub struct FlagReport {
    pub ranks: Vec<usize>,
    /// Full generator list of each step (the distribution itself).
    pub steps: Vec<Distribution>,
    /// Fraction-field basis of each step.
    pub step_bases: Vec<Vec<VectorField>>,
    /// Rank-drop locus of each step.
    pub step_loci: Vec<Option<Polynomial>>,
    /// Union of the step loci, squarefree with shared factors removed.
    pub degeneracy: Vec<Polynomial>,
}

impl FlagReport {
    pub fn is_bracket_generating(&self, dim: usize) -> bool {
        self.ranks.last() == Some(&dim)
    }
}

pub fn derived_flag(d: &Distribution, max_steps: usize) -> Result<FlagReport> {
    if max_steps == 0 {
        return Err(Error::Usage("max_steps must be at least 1".into()));
    }
    let dim = d.chart().dim();
    let mut steps = vec![d.clone()];
    let mut ranks = vec![d.generic_rank()?];
    for _ in 0..max_steps {
        let last = *ranks.last().unwrap();
        if last == dim {
            break;
        }
        let next = derived(steps.last().unwrap())?;
        let r = next.generic_rank()?;
        steps.push(next);
        ranks.push(r);
        if r == last {
            break;
        }
    }
    let mut step_bases = Vec::with_capacity(steps.len());
    let mut step_loci = Vec::with_capacity(steps.len());
    for s in &steps {
        step_bases.push(s.basis()?);
        step_loci.push(s.rank_drop_locus()?);
    }
    let degeneracy = reduce_loci(step_loci.iter().flatten());
    Ok(FlagReport {
        ranks,
        steps,
        step_bases,
        step_loci,
        degeneracy,
    })
}

/// Squarefree parts, with factors already present in earlier entries removed.
pub fn reduce_loci<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let mut q = squarefree_part(p);
        for prev in &out {
            let g = gcd(&q, prev);
            if !g.is_constant() {
                q = q.div_exact(&g).expect("gcd divides").monic();
            }
            if q.is_constant() {
                break;
            }
        }
        if !q.is_constant() {
            out.push(q);
        }
    }
    out
}

/// Independent 1-forms vanishing on every generator, in canonical scale.
pub fn annihilator(d: &Distribution) -> Result<Vec<KForm>> {
    let chart = d.chart();
    let ns = nullspace(&d.matrix(), chart.dim(), chart.nvars())?;
    let mut out = Vec::with_capacity(ns.len());
    for v in ns {
        let form = KForm::one_form(chart, v)?;
        out.push(form.primitive()?.expect("nullspace vectors are nonzero"));
    }
    Ok(out)
}

/// The distribution of vectors annihilated by every given 1-form, with
/// generators in canonical scale.
pub fn kernel_of_forms(chart: &ChartRef, forms: &[KForm]) -> Result<Distribution> {
    let mut rows = Vec::with_capacity(forms.len());
    for f in forms {
        same_chart(chart, f.chart())?;
        if f.degree() != 1 {
            return Err(Error::DegreeOverflow {
                degree: f.degree(),
                dim: chart.dim(),
            });
        }
        rows.push(f.one_form_coefficients());
    }
    let ns = nullspace(&rows, chart.dim(), chart.nvars())?;
    if ns.is_empty() {
        return Err(Error::Rank("the forms have no common kernel".into()));
    }
    let gens = ns
        .into_iter()
        .map(|v| Ok(VectorField::new(chart, v)?.primitive()?.expect("nonzero")))
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(chart, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartgeom::Chart;

    fn chart4() -> ChartRef {
        Chart::new("engel", &["x", "y", "z", "w"]).unwrap()
    }

    fn engel_model(c: &ChartRef) -> Distribution {
        let p = |i| c.coordinate(i);
        let x =
            VectorField::from_polys(c, vec![p(1), p(3), Polynomial::one(4), Polynomial::zero(4)])
                .unwrap();
        Distribution::new(c, vec![VectorField::coordinate(c, 3), x]).unwrap()
    }

    #[test]
    fn ranks_of_small_distributions() {
        let c = Chart::new("p", &["x", "y"]).unwrap();
        let dx = VectorField::coordinate(&c, 0);
        let dy = VectorField::coordinate(&c, 1);
        let d = Distribution::new(&c, vec![dx.clone(), dx.add(&dy).unwrap()]).unwrap();
        assert_eq!(d.generic_rank().unwrap(), 2);
        assert_eq!(d.rank_drop_locus().unwrap(), None);
        let xdx = dx.scale_poly(&c.coordinate(0)).unwrap();
        assert_eq!(
            Distribution::new(&c, vec![dx.clone(), xdx])
                .unwrap()
                .generic_rank()
                .unwrap(),
            1
        );
        let ydy = dy.scale_poly(&c.coordinate(1)).unwrap();
        let d = Distribution::new(&c, vec![dx, ydy]).unwrap();
        assert_eq!(d.generic_rank().unwrap(), 2);
        assert_eq!(d.rank_drop_locus().unwrap(), Some(c.coordinate(1)));
    }

    #[test]
    fn engel_model_flag() {
        let c = chart4();
        let d = engel_model(&c);
        let e = derived(&d).unwrap();
        assert_eq!(e.generic_rank().unwrap(), 3);
        assert!(e.contains(&VectorField::coordinate(&c, 1)).unwrap());
        let t = derived(&e).unwrap();
        assert_eq!(t.generic_rank().unwrap(), 4);
        let flag = derived_flag(&d, 5).unwrap();
        assert_eq!(flag.ranks, vec![2, 3, 4]);
        assert!(flag.degeneracy.is_empty());
    }

    #[test]
    fn integrable_flag_stabilizes() {
        let c = chart4();
        let d = Distribution::new(
            &c,
            vec![
                VectorField::coordinate(&c, 0),
                VectorField::coordinate(&c, 1),
            ],
        )
        .unwrap();
        let flag = derived_flag(&d, 5).unwrap();
        assert_eq!(flag.ranks, vec![2, 2]);
    }

    #[test]
    fn annihilators() {
        let c = Chart::new("c3", &["x", "y", "z"]).unwrap();
        let d = Distribution::new(
            &c,
            vec![
                VectorField::coordinate(&c, 0),
                VectorField::coordinate(&c, 1),
            ],
        )
        .unwrap();
        let ann = annihilator(&d).unwrap();
        assert_eq!(ann, vec![KForm::differential(&c, 2)]);

        let c = chart4();
        let e = derived(&engel_model(&c)).unwrap();
        let ann = annihilator(&e).unwrap();
        assert_eq!(ann.len(), 1);
        assert_eq!(ann[0].to_text(), "dx - y*dz");
        for g in e.generators() {
            assert!(ann[0].interior(g).unwrap().is_zero());
        }
    }

    #[test]
    fn loci_are_reduced() {
        let c = Chart::new("p", &["x", "y"]).unwrap();
        let x = c.coordinate(0);
        let y = c.coordinate(1);
        let polys = vec![&(&x * &x) * &y, &x * &(&y + &Polynomial::one(2)), x.clone()];
        let out = reduce_loci(&polys);
        assert_eq!(out, vec![&x * &y, &y + &Polynomial::one(2)]);
    }
}
