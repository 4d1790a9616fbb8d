//! Builders for the standard models and the vector-field solvers built on
//! them: Darboux models, Cartan prolongation, Lorentzian tube, Reeb and Gray
//! fields, and chart-equivalence checks.

mod equiv;
mod prolong;
mod reeb;
mod tube;

pub use equiv::{verify_chart_equivalence, verify_distribution_equivalence};
pub use prolong::{
    cartan_prolongation, cartan_prolongation_second, prolongation_overlap_check, OverlapReport,
};
pub use reeb::{gray_vector_field, reeb_field, GraySolution};
pub use tube::{lorentzian_tube, TubeChart};

use std::fmt;

use crate::chartgeom::{same_chart, Chart, ChartRef, KForm, VectorField};
use crate::distribution::{
    check_contact, check_engel, kernel_of_forms, CheckReport, Distribution, EngelFlag,
};
use crate::error::{Error, Result};
use crate::symcore::{Polynomial, RationalFunction};

/// A contact form together with generators of its kernel.
#[derive(Clone, Debug)]
pub struct ContactChart {
    theta: KForm,
    f: Distribution,
}

impl ContactChart {
    /// Checks that `θ` is contact and that every generator of `f` lies in its kernel.
    pub fn new(theta: KForm, f: Distribution) -> Result<Self> {
        same_chart(theta.chart(), f.chart())?;
        if !check_contact(&theta)?.holds_generically {
            return Err(Error::NotContact(format!(
                "{} is not contact",
                theta.to_text()
            )));
        }
        for g in f.generators() {
            if !theta.interior(g)?.is_zero() {
                return Err(Error::NotContact(format!(
                    "{} is not in the kernel of {}",
                    g.to_text(),
                    theta.to_text()
                )));
            }
        }
        let dim = theta.chart().dim();
        if f.generic_rank()? != dim - 1 {
            return Err(Error::Rank(format!(
                "kernel generators must have rank {}",
                dim - 1
            )));
        }
        Ok(ContactChart { theta, f })
    }

    /// Contact chart of `θ` with its kernel computed by elimination.
    pub fn from_form(theta: KForm) -> Result<Self> {
        let f = kernel_of_forms(theta.chart(), std::slice::from_ref(&theta))?;
        Self::new(theta, f)
    }

    pub fn chart(&self) -> &ChartRef {
        self.theta.chart()
    }

    pub fn theta(&self) -> &KForm {
        &self.theta
    }

    pub fn kernel(&self) -> &Distribution {
        &self.f
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    DarbouxModel,
    Prolongation,
    Tube,
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::DarbouxModel => "darboux-model",
            Provenance::Prolongation => "prolongation",
            Provenance::Tube => "tube",
            Provenance::User => "user",
        })
    }
}

/// A rank-2 distribution on a 4-dimensional chart that is Engel off its
/// degeneracy locus, with its certified flag.
#[derive(Clone, Debug)]
pub struct EngelChart {
    pub d: Distribution,
    pub flag: EngelFlag,
    pub provenance: Provenance,
}

impl EngelChart {
    pub fn new(d: Distribution, provenance: Provenance) -> Result<(Self, CheckReport)> {
        let (report, flag) = check_engel(&d)?;
        let Some(flag) = flag else {
            return Err(Error::Degenerate(format!(
                "derived flag has ranks {:?}, not [2, 3, 4]",
                report.ranks
            )));
        };
        Ok((
            EngelChart {
                d,
                flag,
                provenance,
            },
            report,
        ))
    }

    pub fn chart(&self) -> &ChartRef {
        self.d.chart()
    }
}

/// A one-parameter family `θ_t` of 1-forms, polynomial in a chart parameter.
#[derive(Clone, Debug)]
pub struct FormFamily {
    theta: KForm,
    param: usize,
}

impl FormFamily {
    /// `param` must name a chart parameter, and `θ` at parameter 0 must be contact.
    pub fn new(theta: KForm, param: &str) -> Result<Self> {
        let chart = theta.chart();
        if chart.vars().iter().any(|v| v == param) {
            return Err(Error::Usage(format!(
                "family parameter `{param}` is a chart coordinate"
            )));
        }
        let Some(idx) = chart.index_of(param) else {
            return Err(Error::Usage(format!(
                "`{param}` is not a parameter of chart `{}`",
                chart.name()
            )));
        };
        let family = FormFamily { theta, param: idx };
        if !check_contact(&family.at_zero()?)?.holds_generically {
            return Err(Error::NotContact(format!(
                "the family is not contact at {param} = 0"
            )));
        }
        Ok(family)
    }

    pub fn theta(&self) -> &KForm {
        &self.theta
    }

    pub fn chart(&self) -> &ChartRef {
        self.theta.chart()
    }

    /// Ring index of the parameter.
    pub fn param_index(&self) -> usize {
        self.param
    }

    pub fn param_name(&self) -> &str {
        &self.chart().params()[self.param - self.chart().dim()]
    }

    /// `θ` with the parameter set to 0 (same chart).
    pub fn at_zero(&self) -> Result<KForm> {
        let chart = self.chart();
        let subs: Vec<Polynomial> = (0..chart.nvars())
            .map(|i| {
                if i == self.param {
                    Polynomial::zero(chart.nvars())
                } else {
                    chart.coordinate(i)
                }
            })
            .collect();
        let terms = self
            .theta
            .terms()
            .map(|(b, c)| Ok((b.clone(), c.substitute(&subs)?)))
            .collect::<Result<Vec<_>>>()?;
        KForm::from_terms(chart, self.theta.degree(), terms)
    }
}

fn darboux_names(n: usize) -> Vec<String> {
    let mut names = vec!["x".to_string()];
    if n == 1 {
        names.extend(["y".to_string(), "z".to_string()]);
    } else {
        names.extend((1..=n).map(|j| format!("y{j}")));
        names.extend((1..=n).map(|j| format!("z{j}")));
    }
    names
}

/// `dx − Σ yⱼ dzⱼ` on coordinates `(x, y₁…yₙ, z₁…zₙ)` (plain `y, z` for `n = 1`),
/// with kernel `{∂_{yⱼ}, ∂_{zⱼ} + yⱼ ∂x}`.
pub fn contact_darboux_model(n: usize) -> Result<ContactChart> {
    if n == 0 {
        return Err(Error::Usage("the Darboux model needs n >= 1".into()));
    }
    let chart = Chart::with_params(
        format!("darboux{}", 2 * n + 1),
        darboux_names(n),
        Vec::new(),
    )?;
    let dim = chart.dim();
    let mut coeffs = vec![chart.zero(); dim];
    coeffs[0] = chart.constant(1);
    let mut gens = Vec::with_capacity(2 * n);
    for j in 1..=n {
        let (y, z) = (j, n + j);
        coeffs[z] = RationalFunction::from_poly(-&chart.coordinate(y));
        gens.push(VectorField::coordinate(&chart, y));
    }
    for j in 1..=n {
        let (y, z) = (j, n + j);
        let mut comps = vec![Polynomial::zero(dim); dim];
        comps[0] = chart.coordinate(y);
        comps[z] = Polynomial::one(dim);
        gens.push(VectorField::from_polys(&chart, comps)?);
    }
    let theta = KForm::one_form(&chart, coeffs)?;
    ContactChart::new(theta, Distribution::new(&chart, gens)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelVariant {
    /// Kernel of `dx − y dz` and `dy − w dx`.
    Paper,
    /// Kernel of `dx − y dz` and `dy − w dz`.
    Corrected,
}

impl ModelVariant {
    pub fn name(self) -> &'static str {
        match self {
            ModelVariant::Paper => "paper",
            ModelVariant::Corrected => "corrected",
        }
    }
}

/// The two 1-forms defining the local Engel model of the given variant.
pub fn engel_model_forms(variant: ModelVariant) -> Result<(ChartRef, Vec<KForm>)> {
    let chart = Chart::new(format!("engel_{}", variant.name()), &["x", "y", "z", "w"])?;
    let c = |i: usize| RationalFunction::from_poly(chart.coordinate(i));
    let one = chart.constant(1);
    let zero = chart.zero();
    let first = KForm::one_form(
        &chart,
        vec![one.clone(), zero.clone(), c(1).neg(), zero.clone()],
    )?;
    let second = match variant {
        ModelVariant::Paper => KForm::one_form(&chart, vec![c(3).neg(), one, zero.clone(), zero])?,
        ModelVariant::Corrected => {
            KForm::one_form(&chart, vec![zero.clone(), one, c(3).neg(), zero])?
        }
    };
    Ok((chart, vec![first, second]))
}

/// The local Engel model as the common kernel of its two defining forms.
/// The `Paper` variant is Engel only off its degeneracy locus; the verdict
/// carries that locus either way.
pub fn engel_darboux_model(
    variant: ModelVariant,
) -> Result<(Distribution, CheckReport, Option<EngelChart>)> {
    let (chart, forms) = engel_model_forms(variant)?;
    let d = kernel_of_forms(&chart, &forms)?;
    let (report, flag) = check_engel(&d)?;
    let engel = flag.map(|flag| EngelChart {
        d: d.clone(),
        flag,
        provenance: Provenance::DarbouxModel,
    });
    Ok((d, report, engel))
}
