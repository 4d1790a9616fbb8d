use super::{ContactChart, EngelChart, Provenance};
use crate::chartgeom::{ChartRef, VectorField};
use crate::distribution::{lattice_shell, CheckReport, Distribution};
use crate::error::{Error, Result};
use crate::symcore::linalg::rank_numeric;
use crate::symcore::{Coefficient, RationalFunction};

fn fiber_chart(
    c: &ContactChart,
    suffix: &str,
    fiber: &str,
) -> Result<(ChartRef, [VectorField; 2])> {
    let base = c.chart();
    if base.dim() != 3 {
        return Err(Error::Dimension(format!(
            "prolongation needs a 3-dimensional contact chart, got {}",
            base.dim()
        )));
    }
    let basis = c.kernel().basis()?;
    if basis.len() != 2 {
        return Err(Error::Rank(
            "the contact plane field needs two independent generators".into(),
        ));
    }
    let name = format!("{}_{suffix}", base.name());
    let chart = base.extended(name, &base.fresh_name(fiber))?;
    let map = base.extension_mapping();
    let f1 = basis[0].embed(&chart, &map)?;
    let f2 = basis[1].embed(&chart, &map)?;
    Ok((chart, [f1, f2]))
}

fn prolong_with(
    c: &ContactChart,
    suffix: &str,
    fiber: &str,
    swap: bool,
) -> Result<(EngelChart, CheckReport)> {
    let (chart, [f1, f2]) = fiber_chart(c, suffix, fiber)?;
    let (a, b) = if swap { (f2, f1) } else { (f1, f2) };
    let t = RationalFunction::from_poly(chart.coordinate(3));
    let taut = a.add(&b.scale(&t)?)?;
    let d = Distribution::new(&chart, vec![VectorField::coordinate(&chart, 3), taut])?;
    EngelChart::new(d, Provenance::Prolongation)
}

/// Affine chart `t` of the projectivized contact planes: `D = {∂t, F₁ + t F₂}`.
pub fn cartan_prolongation(c: &ContactChart) -> Result<(EngelChart, CheckReport)> {
    prolong_with(c, "prolonged", "t", false)
}

/// The complementary chart `s = 1/t`: `D′ = {∂s, F₂ + s F₁}`.
pub fn cartan_prolongation_second(c: &ContactChart) -> Result<(EngelChart, CheckReport)> {
    prolong_with(c, "prolonged_s", "s", true)
}

#[derive(Clone, Debug)]
pub struct OverlapReport {
    pub holds: bool,
    /// Sample points `(base point, t)` that were checked.
    pub samples: Vec<(Vec<Coefficient>, i64)>,
}

/// On `t ≠ 0` the transition `s = 1/t` maps the first chart's `D` onto the
/// second's. Checked at integer base points (shells of radius ≤ 1 where both
/// distributions have full rank) for `t ∈ {1, 2, 3}`.
pub fn prolongation_overlap_check(
    first: &EngelChart,
    second: &EngelChart,
) -> Result<OverlapReport> {
    let nvars = first.chart().nvars();
    if second.chart().nvars() != nvars || first.chart().dim() != 4 {
        return Err(Error::ChartMismatch {
            left: first.chart().name().to_string(),
            right: second.chart().name().to_string(),
        });
    }
    let mut samples = Vec::new();
    let mut holds = true;
    for r in 0..=1 {
        for base in lattice_shell(3, r) {
            for t in 1..=3i64 {
                let mut p: Vec<Coefficient> =
                    base.iter().map(|&v| Coefficient::from_int(v)).collect();
                let mut q = p.clone();
                p.push(Coefficient::from_int(t));
                q.push(Coefficient::from_frac(1, t));
                // parameters sit after the fiber coordinate in both rings
                p.resize(nvars, Coefficient::zero());
                q.resize(nvars, Coefficient::zero());
                let (Ok(rows_p), Ok(rows_q)) = (eval_rows(&first.d, &p), eval_rows(&second.d, &q))
                else {
                    continue;
                };
                if rank_numeric(rows_p.clone()) != 2 || rank_numeric(rows_q.clone()) != 2 {
                    continue;
                }
                // pushforward: base components unchanged, ds = -dt/t² = -s² dt
                let factor = -(&q[3] * &q[3]);
                let mut all = rows_q;
                for mut row in rows_p {
                    row[3] = &row[3] * &factor;
                    all.push(row);
                }
                holds &= rank_numeric(all) == 2;
                samples.push((base.iter().map(|&v| Coefficient::from_int(v)).collect(), t));
            }
        }
    }
    Ok(OverlapReport {
        holds: holds && !samples.is_empty(),
        samples,
    })
}

fn eval_rows(d: &Distribution, pt: &[Coefficient]) -> Result<Vec<Vec<Coefficient>>> {
    d.generators().iter().map(|g| g.eval(pt)).collect()
}
