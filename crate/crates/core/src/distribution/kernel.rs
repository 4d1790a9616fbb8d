use super::Distribution;
use crate::chartgeom::{same_chart, KForm, VectorField};
use crate::error::{Error, Result};
use crate::symcore::linalg::{det, nullspace, rref, solve};
use crate::symcore::RationalFunction;

fn combine(basis: &[VectorField], coeffs: &[RationalFunction]) -> Result<VectorField> {
    let mut out = VectorField::zero(basis[0].chart());
    for (v, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&v.scale(c)?)?;
        }
    }
    Ok(out)
}

/// The line in `E` spanned by the nullspace of a skew pairing matrix.
fn line_from_pairing(
    basis: &[VectorField],
    m: &[Vec<RationalFunction>],
    what: &str,
) -> Result<VectorField> {
    let chart = basis[0].chart();
    let ns = nullspace(m, basis.len(), chart.nvars())?;
    if ns.len() != 1 {
        return Err(Error::NotEvenContact(format!(
            "{what} has nullity {}, expected 1",
            ns.len()
        )));
    }
    let l = combine(basis, &ns[0])?;
    Ok(l.primitive()?
        .expect("nullspace vector of independent fields"))
}

fn checked_basis(e: &Distribution, theta: &KForm) -> Result<Vec<VectorField>> {
    same_chart(e.chart(), theta.chart())?;
    if theta.degree() != 1 {
        return Err(Error::DegreeOverflow {
            degree: theta.degree(),
            dim: e.chart().dim(),
        });
    }
    let basis = e.basis()?;
    if basis.len() != 3 || e.chart().dim() != 4 {
        return Err(Error::Rank(format!(
            "kernel line field needs a rank-3 distribution in dimension 4, got rank {} in dimension {}",
            basis.len(),
            e.chart().dim()
        )));
    }
    Ok(basis)
}

/// Generator of the nullspace of `dθ(Eᵢ, Eⱼ)` over a basis of `E`, in canonical scale.
pub fn kernel_line_field(e: &Distribution, theta: &KForm) -> Result<VectorField> {
    let basis = checked_basis(e, theta)?;
    let dtheta = theta.d()?;
    let mut m = Vec::with_capacity(basis.len());
    for a in &basis {
        let row = basis
            .iter()
            .map(|b| dtheta.evaluate_on(&[a.clone(), b.clone()]))
            .collect::<Result<Vec<_>>>()?;
        m.push(row);
    }
    line_from_pairing(&basis, &m, "dθ on E")
}

/// The same line computed from brackets: `L` with `θ([L, Eᵢ]) = 0` for all `i`.
pub fn kernel_by_brackets(e: &Distribution, theta: &KForm) -> Result<VectorField> {
    let basis = checked_basis(e, theta)?;
    let mut m = Vec::with_capacity(basis.len());
    for a in &basis {
        let row = basis
            .iter()
            .map(|b| theta.evaluate_on(&[a.lie_bracket(b)?]))
            .collect::<Result<Vec<_>>>()?;
        m.push(row);
    }
    line_from_pairing(&basis, &m, "the bracket pairing on E")
}

/// Classes of `[Dᵢ, Dⱼ]` modulo `D` for a basis of `D`, written in a
/// complement basis of coordinate fields.
#[derive(Clone, Debug)]
pub struct OneillTable {
    pub basis: Vec<VectorField>,
    /// Coordinate indices `k` whose fields `∂_k` complete `D` to a frame.
    pub complement: Vec<usize>,
    /// `(i, j, β)` for `i < j`, with `[Dᵢ, Dⱼ] ≡ Σ βₖ ∂_{complement[k]}`.
    pub entries: Vec<(usize, usize, Vec<RationalFunction>)>,
}

impl OneillTable {
    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, _, b)| b.iter().all(|c| c.is_zero()))
    }

    /// Entry for the pair `i < j`.
    pub fn entry(&self, i: usize, j: usize) -> Option<&[RationalFunction]> {
        self.entries
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)
            .map(|(_, _, v)| v.as_slice())
    }

    /// Class of `Σ βₖ ∂_{complement[k]}` as a field.
    pub fn class_field(&self, beta: &[RationalFunction]) -> Result<VectorField> {
        let chart = self.basis[0].chart();
        let fields: Vec<VectorField> = self
            .complement
            .iter()
            .map(|&k| VectorField::coordinate(chart, k))
            .collect();
        combine(&fields, beta)
    }
}

pub fn oneill_tensor(d: &Distribution) -> Result<OneillTable> {
    let chart = d.chart();
    let dim = chart.dim();
    let basis = d.basis()?;
    let mut rows: Vec<Vec<RationalFunction>> =
        basis.iter().map(|g| g.components().to_vec()).collect();
    let pivots = rref(&mut rows, dim)?;
    let complement: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut frame = basis.clone();
    frame.extend(
        complement
            .iter()
            .map(|&k| VectorField::coordinate(chart, k)),
    );
    // frame fields are the columns of the system
    let system: Vec<Vec<RationalFunction>> = (0..dim)
        .map(|k| frame.iter().map(|f| f.component(k).clone()).collect())
        .collect();
    let mut entries = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let b = basis[i].lie_bracket(&basis[j])?;
            let (x, _) = solve(&system, b.components(), dim, chart.nvars())?
                .expect("frame spans the tangent space");
            entries.push((i, j, x[basis.len()..].to_vec()));
        }
    }
    Ok(OneillTable {
        basis,
        complement,
        entries,
    })
}

/// `det(ℓ, d, [ℓ, d], [d, [ℓ, d]])` on a 4-dimensional chart.
pub fn anticanonical_volume(l: &VectorField, d: &VectorField) -> Result<RationalFunction> {
    let chart = l.chart();
    same_chart(chart, d.chart())?;
    if chart.dim() != 4 {
        return Err(Error::Dimension(format!(
            "anticanonical volume needs dimension 4, got {}",
            chart.dim()
        )));
    }
    let ld = l.lie_bracket(d)?;
    let dld = d.lie_bracket(&ld)?;
    let m: Vec<Vec<RationalFunction>> = [l, d, &ld, &dld]
        .iter()
        .map(|v| v.components().to_vec())
        .collect();
    det(&m, chart.nvars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartgeom::{Chart, ChartRef};
    use crate::distribution::{annihilator, derived};
    use crate::symcore::Polynomial;

    fn chart4() -> ChartRef {
        Chart::new("engel", &["x", "y", "z", "w"]).unwrap()
    }

    fn model(c: &ChartRef) -> (VectorField, VectorField) {
        let p = |i| c.coordinate(i);
        let x =
            VectorField::from_polys(c, vec![p(1), p(3), Polynomial::one(4), Polynomial::zero(4)])
                .unwrap();
        (VectorField::coordinate(c, 3), x)
    }

    #[test]
    fn engel_model_kernel_is_dw() {
        let c = chart4();
        let (l, x) = model(&c);
        let e = derived(&Distribution::new(&c, vec![l.clone(), x]).unwrap()).unwrap();
        let theta = annihilator(&e).unwrap().remove(0);
        assert_eq!(kernel_line_field(&e, &theta).unwrap(), l);
        assert_eq!(kernel_by_brackets(&e, &theta).unwrap(), l);
    }

    #[test]
    fn oneill_of_engel_model() {
        let c = chart4();
        let (l, x) = model(&c);
        let table = oneill_tensor(&Distribution::new(&c, vec![l, x]).unwrap()).unwrap();
        assert_eq!(table.entries.len(), 1);
        let beta = table.entry(0, 1).unwrap();
        assert_eq!(
            table.class_field(beta).unwrap(),
            VectorField::coordinate(&c, 1)
        );
    }

    #[test]
    fn integrable_table_is_zero() {
        let c = chart4();
        let d = Distribution::new(
            &c,
            vec![
                VectorField::coordinate(&c, 0),
                VectorField::coordinate(&c, 2),
            ],
        )
        .unwrap();
        let table = oneill_tensor(&d).unwrap();
        assert!(table.is_zero());
        assert_eq!(table.complement, vec![1, 3]);
    }

    #[test]
    fn model_volume_is_constant() {
        // [∂w, d] = ∂y and [d, ∂y] = -∂x, so the columns are a signed permutation
        let c = chart4();
        let (l, x) = model(&c);
        assert_eq!(anticanonical_volume(&l, &x).unwrap(), c.constant(-1));
        let two = c.constant(2);
        let three = c.constant(3);
        let v = anticanonical_volume(&l.scale(&two).unwrap(), &x.scale(&three).unwrap()).unwrap();
        assert_eq!(v, c.constant(-648));
    }
}
