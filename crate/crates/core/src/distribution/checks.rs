use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::kernel::{kernel_by_brackets, kernel_line_field};
use super::witness::{find_witness, DEFAULT_WITNESS_RADIUS};
use super::{annihilator, derived, derived_flag, kernel_of_forms, Distribution, FlagReport};
use crate::chartgeom::{ChartRef, KForm, VectorField};
use crate::error::{Error, Result};
use crate::symcore::linalg::clear_denominators;
use crate::symcore::text::poly_to_text;
use crate::symcore::{gcd, squarefree_part, Coefficient, Polynomial, RationalFunction};

/// Machine-readable verdict of a generic property check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub chart: ChartRef,
    pub property: String,
    pub holds_generically: bool,
    pub ranks: Vec<usize>,
    pub degeneracy: Vec<Polynomial>,
    pub witness: Option<Vec<Coefficient>>,
    pub kernel: Option<VectorField>,
    /// Property-specific extras, keyed for stable output.
    pub details: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn new(chart: &ChartRef, property: &str) -> Self {
        CheckReport {
            chart: chart.clone(),
            property: property.to_string(),
            holds_generically: false,
            ranks: Vec::new(),
            degeneracy: Vec::new(),
            witness: None,
            kernel: None,
            details: BTreeMap::new(),
        }
    }

    pub fn degeneracy_text(&self) -> Vec<String> {
        let names = self.chart.ring_names();
        self.degeneracy
            .iter()
            .map(|p| poly_to_text(p, &names))
            .collect()
    }
}

/// The certified filtration `L ⊂ D ⊂ E ⊂ T`.
#[derive(Clone, Debug)]
pub struct EngelFlag {
    pub l: VectorField,
    pub d: Distribution,
    pub e: Distribution,
    /// Annihilator of `E`.
    pub theta: KForm,
    pub degeneracy: Vec<Polynomial>,
}

fn odd_dim_half(theta: &KForm, odd: bool) -> Result<usize> {
    let dim = theta.chart().dim();
    if theta.degree() != 1 {
        return Err(Error::DegreeOverflow {
            degree: theta.degree(),
            dim,
        });
    }
    match (dim % 2 == 1, odd) {
        (true, true) => Ok((dim - 1) / 2),
        (false, false) => Ok(dim / 2),
        (_, true) => Err(Error::Dimension(format!(
            "contact check needs odd dimension, chart has {dim}"
        ))),
        (_, false) => Err(Error::Dimension(format!(
            "even-contact check needs even dimension, chart has {dim}"
        ))),
    }
}

/// Ranks of `ker θ` and of its first derived distribution.
fn kernel_ranks(theta: &KForm) -> Result<Vec<usize>> {
    let chart = theta.chart();
    if theta.is_zero() {
        return Ok(vec![chart.dim()]);
    }
    let k = kernel_of_forms(chart, std::slice::from_ref(theta))?;
    Ok(vec![k.generic_rank()?, derived(&k)?.generic_rank()?])
}

fn no_pole(form: &KForm, pt: &[Coefficient]) -> bool {
    form.eval(pt).is_ok()
}

/// `θ` is contact iff `θ∧(dθ)ⁿ` is a nonzero top form (dimension `2n+1`).
pub fn check_contact(theta: &KForm) -> Result<CheckReport> {
    let n = odd_dim_half(theta, true)?;
    let chart = theta.chart();
    let top = theta.wedge(&theta.d()?.wedge_power(n)?)?;
    let c = top.top_coefficient()?;
    let mut report = CheckReport::new(chart, "contact");
    report.holds_generically = !c.is_zero();
    report.ranks = kernel_ranks(theta)?;
    report
        .details
        .insert("top_form".into(), json!(top.to_text()));
    if report.holds_generically {
        let num = c.numerator();
        if !num.is_constant() {
            report.degeneracy = vec![squarefree_part(num)];
        }
        report.witness = find_witness(chart.nvars(), DEFAULT_WITNESS_RADIUS, |pt| {
            Ok(no_pole(theta, pt) && !c.eval(pt)?.is_zero())
        });
    }
    Ok(report)
}

/// `θ` is even contact iff `θ∧(dθ)^{n−1}` has no common zero (dimension `2n`).
/// The generic verdict is nonvanishing of the form; `certified_everywhere`
/// records a nonzero constant coefficient, which rules out common zeros.
pub fn check_even_contact(theta: &KForm) -> Result<CheckReport> {
    let n = odd_dim_half(theta, false)?;
    let chart = theta.chart();
    let form = theta.wedge(&theta.d()?.wedge_power(n - 1)?)?;
    let mut report = CheckReport::new(chart, "even-contact");
    report.holds_generically = !form.is_zero();
    report.ranks = kernel_ranks(theta)?;
    let names = chart.ring_names();
    let coeffs: Vec<RationalFunction> = form.terms().map(|(_, c)| c.clone()).collect();
    let (cleared, _) = clear_denominators(&coeffs, chart.nvars())?;
    let listed: Vec<Value> = form
        .terms()
        .zip(&cleared)
        .map(|((b, _), p)| {
            let basis: Vec<String> = b.iter().map(|&i| format!("d{}", names[i])).collect();
            json!({ "basis": basis.join("^"), "coefficient": poly_to_text(p, &names) })
        })
        .collect();
    report
        .details
        .insert("coefficients".into(), Value::Array(listed));
    report.details.insert("form".into(), json!(form.to_text()));
    let certified = cleared.iter().any(|p| p.is_constant() && !p.is_zero());
    report
        .details
        .insert("certified_everywhere".into(), json!(certified));
    if report.holds_generically {
        let mut g: Option<Polynomial> = None;
        for p in &cleared {
            g = Some(match g {
                None => p.monic(),
                Some(g) => gcd(&g, p),
            });
        }
        if let Some(g) = g.filter(|g| !g.is_constant()) {
            report.degeneracy = vec![squarefree_part(&g)];
        }
        report.witness = find_witness(chart.nvars(), DEFAULT_WITNESS_RADIUS, |pt| {
            Ok(no_pole(theta, pt) && form.eval(pt)?.iter().any(|c| !c.is_zero()))
        });
    }
    Ok(report)
}

/// Engel check for a rank-2 distribution on a 4-dimensional chart: the
/// derived flag must have generic ranks (2, 3, 4). On success the flag
/// `L ⊂ D ⊂ E` is returned with `L` from the `dθ` nullspace, cross-checked
/// against the bracket-stabilizer kernel and against `L ⊂ D`.
pub fn check_engel(d: &Distribution) -> Result<(CheckReport, Option<EngelFlag>)> {
    let chart = d.chart();
    if chart.dim() != 4 {
        return Err(Error::Dimension(format!(
            "Engel check needs a 4-dimensional chart, got {}",
            chart.dim()
        )));
    }
    let r = d.generic_rank()?;
    if r != 2 {
        return Err(Error::Rank(format!(
            "Engel check needs a rank-2 distribution, got rank {r}"
        )));
    }
    let flag = derived_flag(d, 3)?;
    let mut report = CheckReport::new(chart, "engel");
    report.ranks = flag.ranks.clone();
    report.degeneracy = flag.degeneracy.clone();
    report.holds_generically = flag.ranks == [2, 3, 4];
    if !report.holds_generically {
        return Ok((report, None));
    }
    let e = flag.steps[1].clone();
    let theta = annihilator(&e)?.into_iter().next().expect("corank one");
    let e_basis = Distribution::new(chart, flag.step_bases[1].clone())?;
    let l = kernel_line_field(&e_basis, &theta)?;
    let l_brackets = kernel_by_brackets(&e_basis, &theta)?;
    let agree = Distribution::new(chart, vec![l.clone(), l_brackets])?.generic_rank()? == 1;
    let in_d = d.contains(&l)?;
    let mut stabilizes = true;
    for g in e_basis.generators() {
        stabilizes &= e.contains(&l.lie_bracket(g)?)?;
    }
    report
        .details
        .insert("annihilator".into(), json!(theta.to_text()));
    report
        .details
        .insert("kernel_cross_check".into(), json!(agree && stabilizes));
    report.details.insert("kernel_in_d".into(), json!(in_d));
    report.kernel = Some(l.clone());
    report.witness = engel_witness(&flag, chart.nvars());
    let engel = EngelFlag {
        l,
        d: d.clone(),
        e,
        theta,
        degeneracy: flag.degeneracy.clone(),
    };
    Ok((report, Some(engel)))
}

fn engel_witness(flag: &FlagReport, nvars: usize) -> Option<Vec<Coefficient>> {
    find_witness(nvars, DEFAULT_WITNESS_RADIUS, |pt| {
        for (step, &r) in flag.steps.iter().zip(&flag.ranks) {
            if step.rank_at(pt)? != r {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartgeom::{one_form_from_polys, Chart};

    #[test]
    fn darboux_contact_form() {
        let c = Chart::new("c3", &["x", "y", "z"]).unwrap();
        let theta = one_form_from_polys(
            &c,
            vec![Polynomial::one(3), Polynomial::zero(3), -&c.coordinate(1)],
        )
        .unwrap();
        let report = check_contact(&theta).unwrap();
        assert!(report.holds_generically);
        assert!(report.degeneracy.is_empty());
        assert_eq!(report.ranks, vec![2, 3]);
        assert!(report.witness.is_some());
    }

    #[test]
    fn foliation_is_not_contact() {
        let c = Chart::new("c3", &["x", "y", "z"]).unwrap();
        let report = check_contact(&KForm::differential(&c, 2)).unwrap();
        assert!(!report.holds_generically);
        assert_eq!(report.ranks, vec![2, 2]);
    }

    #[test]
    fn dimension_errors() {
        let c4 = Chart::new("c4", &["x", "y", "z", "w"]).unwrap();
        assert!(matches!(
            check_contact(&KForm::differential(&c4, 0)),
            Err(Error::Dimension(_))
        ));
        let c3 = Chart::new("c3", &["x", "y", "z"]).unwrap();
        assert!(matches!(
            check_even_contact(&KForm::differential(&c3, 0)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn dx_is_not_even_contact() {
        let c4 = Chart::new("c4", &["x", "y", "z", "w"]).unwrap();
        let report = check_even_contact(&KForm::differential(&c4, 0)).unwrap();
        assert!(!report.holds_generically);
    }

    #[test]
    fn engel_rejects_wrong_rank() {
        let c4 = Chart::new("c4", &["x", "y", "z", "w"]).unwrap();
        let d = Distribution::new(&c4, vec![VectorField::coordinate(&c4, 0)]).unwrap();
        assert!(matches!(check_engel(&d), Err(Error::Rank(_))));
    }
}
