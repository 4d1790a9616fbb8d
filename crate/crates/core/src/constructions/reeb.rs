use super::FormFamily;
use crate::chartgeom::{KForm, VectorField};
use crate::error::{Error, Result};
use crate::symcore::linalg::solve;
use crate::symcore::RationalFunction;

/// Matrix `A` with `(i_V dθ)_k = Σ_j V_j A[k][j]` for a 2-form `dθ`.
fn contraction_rows(dtheta: &KForm) -> Vec<Vec<RationalFunction>> {
    let chart = dtheta.chart();
    let n = chart.dim();
    let mut rows = vec![vec![chart.zero(); n]; n];
    for (b, c) in dtheta.terms() {
        let (j, k) = (b[0], b[1]);
        // i_V (c dx_j∧dx_k) = c V_j dx_k − c V_k dx_j
        rows[k][j] = c.clone();
        rows[j][k] = c.neg();
    }
    rows
}

/// Solves `θ(V) = a` and `i_V dθ = β` over the fraction field.
/// Returns the particular solution and the nullity of the system.
fn solve_contact_system(
    theta: &KForm,
    a: &RationalFunction,
    beta: &KForm,
) -> Result<Option<(VectorField, usize)>> {
    let chart = theta.chart();
    let n = chart.dim();
    let mut rows = vec![theta.one_form_coefficients()];
    rows.extend(contraction_rows(&theta.d()?));
    let mut rhs = vec![a.clone()];
    rhs.extend(beta.one_form_coefficients());
    let Some((x, nullity)) = solve(&rows, &rhs, n, chart.nvars())? else {
        return Ok(None);
    };
    Ok(Some((VectorField::new(chart, x)?, nullity)))
}

/// The unique `R` with `i_R θ = 1` and `i_R dθ = 0`.
pub fn reeb_field(theta: &KForm) -> Result<VectorField> {
    let chart = theta.chart();
    if theta.degree() != 1 || chart.dim().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "the Reeb field needs a 1-form on an odd-dimensional chart (degree {}, dimension {})",
            theta.degree(),
            chart.dim()
        )));
    }
    let zero = KForm::zero(chart, 1)?;
    match solve_contact_system(theta, &chart.constant(1), &zero)? {
        Some((r, 0)) => Ok(r),
        _ => Err(Error::NotContact(format!(
            "dθ is degenerate on the kernel of {}",
            theta.to_text()
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct GraySolution {
    pub v: VectorField,
    pub reeb: VectorField,
    /// `h_t = i_{R_t} ∂θ_t/∂t`.
    pub h: RationalFunction,
    /// `∂θ_t/∂t + L_{V_t} θ_t − h_t θ_t`, computed through the magic formula.
    pub residual: KForm,
}

/// The unique `V_t ∈ ker θ_t` with `∂θ_t/∂t + i_{V_t} dθ_t = h_t θ_t`.
pub fn gray_vector_field(family: &FormFamily) -> Result<GraySolution> {
    let theta = family.theta();
    let reeb = reeb_field(theta)?;
    let dot = theta.partial_coefficients(family.param_index())?;
    let h = dot.evaluate_on(std::slice::from_ref(&reeb))?;
    let beta = theta.scale(&h)?.sub(&dot)?;
    let chart = theta.chart();
    let (v, nullity) = solve_contact_system(theta, &chart.zero(), &beta)?
        .ok_or_else(|| Error::NotContact("the Gray equation has no solution".into()))?;
    if nullity != 0 {
        return Err(Error::NotContact(format!(
            "the Gray equation has a {nullity}-dimensional solution space"
        )));
    }
    let residual = dot
        .add(&theta.lie_derivative(&v)?)?
        .sub(&theta.scale(&h)?)?;
    Ok(GraySolution {
        v,
        reeb,
        h,
        residual,
    })
}
