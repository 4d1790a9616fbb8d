use serde_json::json;

use crate::chartgeom::{same_chart, KForm, PolyMap};
use crate::distribution::{annihilator, CheckReport, Distribution};
use crate::error::{Error, Result};
use crate::symcore::text::poly_to_text;

/// Whether `φ` carries the structure cut out by `target` forms onto the one
/// cut out by `source` forms: each `φ*β` must wedge to zero against all
/// source forms. The map must also have nonzero Jacobian determinant and
/// both sides the same number of forms. The first failing wedge is
/// reported as the obstruction.
pub fn verify_chart_equivalence(
    phi: &PolyMap,
    source: &[KForm],
    target: &[KForm],
) -> Result<CheckReport> {
    let src = phi.source();
    let jac = phi.jacobian_determinant()?;
    for f in source {
        same_chart(src, f.chart())?;
    }
    for f in target {
        same_chart(phi.target(), f.chart())?;
    }
    let mut report = CheckReport::new(src, "equivalence");
    let names = src.ring_names();
    report
        .details
        .insert("jacobian".into(), json!(poly_to_text(&jac, &names)));
    report.details.insert("map".into(), json!(phi.to_text()));
    let mut wedge = KForm::function(src, src.constant(1));
    for f in source {
        wedge = wedge.wedge(f)?;
    }
    if wedge.is_zero() && !source.is_empty() {
        return Err(Error::Rank("the source forms are dependent".into()));
    }
    let mut holds = !jac.is_zero() && source.len() == target.len();
    let mut pulled_texts = Vec::new();
    for beta in target {
        let pulled = phi.pullback(beta)?;
        pulled_texts.push(json!(pulled.to_text()));
        if !holds {
            continue;
        }
        let w = pulled.wedge(&wedge)?;
        if !w.is_zero() {
            holds = false;
            report
                .details
                .insert("obstruction".into(), json!(w.to_text()));
            report
                .details
                .insert("obstructing_form".into(), json!(beta.to_text()));
        }
    }
    report
        .details
        .insert("pullbacks".into(), json!(pulled_texts));
    report.holds_generically = holds;
    report.ranks = vec![src.dim() - source.len(), phi.target().dim() - target.len()];
    Ok(report)
}

/// Equivalence of distributions, through their annihilators.
pub fn verify_distribution_equivalence(
    phi: &PolyMap,
    source: &Distribution,
    target: &Distribution,
) -> Result<CheckReport> {
    same_chart(phi.source(), source.chart())?;
    same_chart(phi.target(), target.chart())?;
    verify_chart_equivalence(phi, &annihilator(source)?, &annihilator(target)?)
}
