use super::{EngelChart, Provenance};
use crate::chartgeom::{same_chart, ChartRef, KForm, VectorField};
use crate::distribution::{CheckReport, Distribution};
use crate::error::{Error, Result};
use crate::symcore::linalg::{det, rref};
use crate::symcore::{squarefree_part, Polynomial, RationalFunction};

/// Null-direction tube over a 3-dimensional chart with frame `(V₁, V₂, V₃)`.
#[derive(Clone, Debug)]
pub struct TubeChart {
    pub engel: EngelChart,
    /// `V₁, V₂, V₃` on the extended chart.
    pub frame: [VectorField; 3],
    /// Dual coframe `ω₁, ω₂, ω₃` on the extended chart.
    pub coframe: [KForm; 3],
    /// `t²ω₁ − 2tω₂ + ω₃`.
    pub theta: KForm,
    /// Squarefree numerator of the frame determinant, when not constant.
    pub frame_locus: Option<Polynomial>,
}

impl TubeChart {
    pub fn chart(&self) -> &ChartRef {
        self.engel.chart()
    }

    pub fn fiber(&self) -> VectorField {
        VectorField::coordinate(self.chart(), 3)
    }

    /// `θ∧dθ`.
    pub fn theta_dtheta(&self) -> Result<KForm> {
        self.theta.wedge(&self.theta.d()?)
    }

    /// Coefficients of `θ∧dθ` in the coframe `(dt, ω₁, ω₂, ω₃)`, keyed as
    /// `[ω₁ω₂ω₃, dt ω₁ω₂, dt ω₁ω₃, dt ω₂ω₃]`. Evaluated on the dual frame with
    /// `dθ(X, Y) = Xθ(Y) − Yθ(X) − θ([X, Y])`, which avoids expanding the 3-form.
    pub fn coframe_coefficients(&self) -> Result<[RationalFunction; 4]> {
        let [v1, v2, v3] = self.frame.clone();
        let fields = [self.fiber(), v1, v2, v3];
        let on = |x: &VectorField| self.theta.evaluate_on(std::slice::from_ref(x));
        let values = fields.iter().map(on).collect::<Result<Vec<_>>>()?;
        let d = |i: usize, j: usize| -> Result<RationalFunction> {
            let bracket = fields[i].lie_bracket(&fields[j])?;
            fields[i]
                .apply(&values[j])?
                .sub(&fields[j].apply(&values[i])?)?
                .sub(&on(&bracket)?)
        };
        let triple = |i: usize, j: usize, k: usize| -> Result<RationalFunction> {
            values[i]
                .mul(&d(j, k)?)?
                .sub(&values[j].mul(&d(i, k)?)?)?
                .add(&values[k].mul(&d(i, j)?)?)
        };
        Ok([
            triple(1, 2, 3)?,
            triple(0, 1, 2)?,
            triple(0, 1, 3)?,
            triple(0, 2, 3)?,
        ])
    }
}

/// Rows of the inverse of the matrix whose columns are the frame fields.
fn dual_coframe(frame: &[VectorField; 3]) -> Result<[Vec<RationalFunction>; 3]> {
    let chart = frame[0].chart();
    let n = 3;
    let mut m: Vec<Vec<RationalFunction>> = (0..n)
        .map(|k| {
            let mut row: Vec<RationalFunction> =
                frame.iter().map(|v| v.component(k).clone()).collect();
            row.extend((0..n).map(|j| {
                if j == k {
                    chart.constant(1)
                } else {
                    chart.zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref(&mut m, 2 * n)?;
    if pivots.iter().take_while(|&&p| p < n).count() < n {
        return Err(Error::Degenerate(
            "the frame is dependent at every point".into(),
        ));
    }
    Ok([m[0][n..].to_vec(), m[1][n..].to_vec(), m[2][n..].to_vec()])
}

/// `D = {∂t, V₁ + tV₂ + t²V₃}` on the chart extended by `t`, with
/// `θ = t²ω₁ − 2tω₂ + ω₃` built from the dual coframe.
pub fn lorentzian_tube(
    v1: &VectorField,
    v2: &VectorField,
    v3: &VectorField,
) -> Result<(TubeChart, CheckReport)> {
    let base = v1.chart();
    same_chart(base, v2.chart())?;
    same_chart(base, v3.chart())?;
    if base.dim() != 3 {
        return Err(Error::Dimension(format!(
            "the tube needs a 3-dimensional chart, got {}",
            base.dim()
        )));
    }
    let base_frame = [v1.clone(), v2.clone(), v3.clone()];
    let rows = dual_coframe(&base_frame)?;
    let cols: Vec<Vec<RationalFunction>> =
        base_frame.iter().map(|v| v.components().to_vec()).collect();
    let frame_det = det(&cols, base.nvars())?;
    let frame_locus = Some(frame_det.numerator())
        .filter(|p| !p.is_constant())
        .map(squarefree_part);

    let chart = base.extended(format!("{}_tube", base.name()), &base.fresh_name("t"))?;
    let map = base.extension_mapping();
    let frame = [
        v1.embed(&chart, &map)?,
        v2.embed(&chart, &map)?,
        v3.embed(&chart, &map)?,
    ];
    let coframe = rows
        .iter()
        .map(|r| {
            let mut coeffs: Vec<RationalFunction> =
                r.iter().map(|c| c.embed(chart.nvars(), &map)).collect();
            coeffs.push(chart.zero());
            KForm::one_form(&chart, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    let coframe: [KForm; 3] = coframe.try_into().expect("three rows");

    let t = RationalFunction::from_poly(chart.coordinate(3));
    let t2 = t.mul(&t)?;
    let v = frame[0]
        .add(&frame[1].scale(&t)?)?
        .add(&frame[2].scale(&t2)?)?;
    let theta = coframe[0]
        .scale(&t2)?
        .sub(&coframe[1].scale(&t.scale(&2.into()))?)?
        .add(&coframe[2])?;

    let d = Distribution::new(&chart, vec![VectorField::coordinate(&chart, 3), v])?;
    let (engel, report) = EngelChart::new(d, Provenance::Tube)?;
    Ok((
        TubeChart {
            engel,
            frame,
            coframe,
            theta,
            frame_locus,
        },
        report,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartgeom::Chart;

    fn commuting() -> [VectorField; 3] {
        let c = Chart::new("x123", &["x1", "x2", "x3"]).unwrap();
        [0, 1, 2].map(|i| VectorField::coordinate(&c, i))
    }

    #[test]
    fn commuting_frame() {
        let [a, b, c] = commuting();
        let (tube, report) = lorentzian_tube(&a, &b, &c).unwrap();
        assert!(report.holds_generically);
        assert!(report.degeneracy.is_empty());
        assert!(tube.frame_locus.is_none());
        assert_eq!(tube.theta.to_text(), "t^2*dx1 - 2*t*dx2 + dx3");
        assert_eq!(
            tube.theta_dtheta().unwrap().to_text(),
            "-2*t^2*dx1^dx2^dt + 2*t*dx1^dx3^dt - 2*dx2^dx3^dt"
        );
        let [a0, _, _, e] = tube.coframe_coefficients().unwrap();
        assert!(a0.is_zero());
        assert_eq!(e, tube.chart().constant(-2));
        for g in tube.engel.flag.e.generators() {
            assert!(tube.theta.interior(g).unwrap().is_zero());
        }
    }

    #[test]
    fn non_commuting_frame() {
        let c = Chart::new("x123", &["x1", "x2", "x3"]).unwrap();
        let p = |i| c.coordinate(i);
        let one = Polynomial::one(3);
        let zero = Polynomial::zero(3);
        let v1 = VectorField::coordinate(&c, 0);
        let v2 = VectorField::coordinate(&c, 1);
        let v3 = VectorField::from_polys(&c, vec![zero, p(0), one]).unwrap();
        let (tube, report) = lorentzian_tube(&v1, &v2, &v3).unwrap();
        assert!(report.holds_generically);
        let coeffs = tube.coframe_coefficients().unwrap();
        assert_eq!(coeffs[3], tube.chart().constant(-2));
        // same numbers from the expanded 3-form
        let w = tube.theta_dtheta().unwrap();
        let [f1, f2, f3] = tube.frame.clone();
        let t = tube.fiber();
        let direct = [
            w.evaluate_on(&[f1.clone(), f2.clone(), f3.clone()])
                .unwrap(),
            w.evaluate_on(&[t.clone(), f1.clone(), f2.clone()]).unwrap(),
            w.evaluate_on(&[t.clone(), f1, f3.clone()]).unwrap(),
            w.evaluate_on(&[t, f2, f3]).unwrap(),
        ];
        assert_eq!(coeffs, direct);
    }

    #[test]
    fn dependent_frame_is_rejected() {
        let [a, b, _] = commuting();
        assert!(matches!(
            lorentzian_tube(&a, &b, &a.add(&b).unwrap()),
            Err(Error::Degenerate(_))
        ));
    }
}
