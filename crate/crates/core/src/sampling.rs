//! Seeded random inputs for property tests, acceptance batches and benches.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chartgeom::{Chart, ChartRef, KForm, VectorField};
use crate::constructions::{ContactChart, FormFamily};
use crate::distribution::Distribution;
use crate::error::Result;
use crate::symcore::linalg::det;
use crate::symcore::{Coefficient, Monomial, Polynomial, RationalFunction};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn nonzero_coefficient(&mut self) -> Coefficient {
        let v = self.rng.gen_range(1..=5);
        if self.rng.gen_bool(0.5) {
            Coefficient::from_int(-v)
        } else {
            Coefficient::from_int(v)
        }
    }

    /// Sparse polynomial in the first `active` ring variables with total
    /// degree at most `max_degree`, up to `max_terms` terms and small integer
    /// coefficients. May be zero.
    pub fn poly(
        &mut self,
        nvars: usize,
        active: usize,
        max_degree: u32,
        max_terms: usize,
    ) -> Polynomial {
        let nterms = self.rng.gen_range(0..=max_terms);
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let deg = self.rng.gen_range(0..=max_degree);
            let mut exps = vec![0u32; nvars];
            for _ in 0..deg {
                exps[self.rng.gen_range(0..active)] += 1;
            }
            terms.push((Monomial::from_exponents(&exps), self.nonzero_coefficient()));
        }
        Polynomial::from_terms(nvars, terms)
    }

    pub fn nonzero_poly(
        &mut self,
        nvars: usize,
        active: usize,
        max_degree: u32,
        max_terms: usize,
    ) -> Polynomial {
        loop {
            let p = self.poly(nvars, active, max_degree, max_terms.max(1));
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Polynomial vector field with components of degree at most `max_degree`.
    pub fn field(&mut self, chart: &ChartRef, max_degree: u32, max_terms: usize) -> VectorField {
        let comps = (0..chart.dim())
            .map(|_| self.poly(chart.nvars(), chart.dim(), max_degree, max_terms))
            .collect();
        VectorField::from_polys(chart, comps).expect("shape")
    }

    /// Polynomial `k`-form with a random subset of basis elements.
    pub fn form(
        &mut self,
        chart: &ChartRef,
        degree: usize,
        max_degree: u32,
        max_terms: usize,
    ) -> KForm {
        let bases = crate::symcore::linalg::combinations(chart.dim(), degree);
        let mut terms = Vec::new();
        for b in bases {
            if self.rng.gen_bool(0.6) {
                let p = self.poly(chart.nvars(), chart.dim(), max_degree, max_terms);
                terms.push((b, RationalFunction::from_poly(p)));
            }
        }
        KForm::from_terms(chart, degree, terms).expect("sorted bases")
    }

    /// Three polynomial fields on `(x1, x2, x3)` with nonzero determinant.
    pub fn tube_frame(&mut self, max_degree: u32) -> [VectorField; 3] {
        let chart = Chart::new("frame", &["x1", "x2", "x3"]).expect("valid");
        loop {
            // identity plus a sparse perturbation keeps the frame generically independent
            let frame = [0, 1, 2].map(|i| {
                let bump = self.field(&chart, max_degree, 2);
                VectorField::coordinate(&chart, i)
                    .add(&bump)
                    .expect("same chart")
            });
            let cols: Vec<Vec<RationalFunction>> =
                frame.iter().map(|v| v.components().to_vec()).collect();
            if !det(&cols, chart.nvars()).expect("small").is_zero() {
                return frame;
            }
        }
    }

    /// Contact chart on `(x, y, z)`: `θ = dx − y dz` with the kernel frame
    /// `{a ∂y + b(∂z + y∂x), c ∂y + e(∂z + y∂x)}` for random `a, b, c, e` of
    /// degree at most `max_degree` with `ae − bc ≠ 0`.
    pub fn contact_frame(&mut self, max_degree: u32) -> ContactChart {
        let chart = Chart::new("contact", &["x", "y", "z"]).expect("valid");
        let y = chart.coordinate(1);
        let dy = VectorField::coordinate(&chart, 1);
        let z = VectorField::from_polys(&chart, vec![y, Polynomial::zero(3), Polynomial::one(3)])
            .expect("shape");
        let theta = KForm::one_form(
            &chart,
            vec![
                chart.constant(1),
                chart.zero(),
                RationalFunction::from_poly(-&chart.coordinate(1)),
            ],
        )
        .expect("shape");
        loop {
            let [a, b, c, e] = [0; 4].map(|_| self.poly(3, 3, max_degree, 3));
            if (&(&a * &e) - &(&b * &c)).is_zero() {
                continue;
            }
            let f1 = dy
                .scale_poly(&a)
                .and_then(|u| u.add(&z.scale_poly(&b)?))
                .expect("same chart");
            let f2 = dy
                .scale_poly(&c)
                .and_then(|u| u.add(&z.scale_poly(&e)?))
                .expect("same chart");
            let f = Distribution::new(&chart, vec![f1, f2]).expect("nonempty");
            return ContactChart::new(theta.clone(), f).expect("contact by construction");
        }
    }

    /// `u · (dx − y dz)` pulled back by a triangular polynomial automorphism
    /// `(x + p(y, z), y + q(z), z)`, with `u = 1 + (linear)`. Contact off `u = 0`.
    pub fn contact_form(&mut self, max_degree: u32) -> KForm {
        let chart = Chart::new("contact", &["x", "y", "z"]).expect("valid");
        self.contact_form_on(&chart, max_degree)
    }

    fn contact_form_on(&mut self, chart: &ChartRef, max_degree: u32) -> KForm {
        let n = chart.nvars();
        let shift = |p: Polynomial, active: &[usize]| {
            Polynomial::from_terms(
                n,
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = vec![0u32; n];
                        for (k, &v) in active.iter().enumerate() {
                            e[v] = m.exponents()[k];
                        }
                        (Monomial::from_exponents(&e), c.clone())
                    })
                    .collect::<Vec<_>>(),
            )
        };
        let p = shift(self.poly(2, 2, max_degree, 3), &[1, 2]);
        let q = shift(self.poly(1, 1, max_degree, 2), &[2]);
        let xn = &chart.coordinate(0) + &p;
        let yn = &chart.coordinate(1) + &q;
        let dxn = KForm::function(chart, RationalFunction::from_poly(xn))
            .d()
            .expect("degree 0");
        let dz = KForm::differential(chart, 2);
        let base = dxn
            .sub(&dz.scale(&RationalFunction::from_poly(yn)).expect("scale"))
            .expect("same chart");
        let u = &Polynomial::one(n) + &self.poly(n, 3, 1, 2);
        if u.is_zero() {
            return base;
        }
        base.scale(&RationalFunction::from_poly(u)).expect("scale")
    }

    /// `θ_t = θ₀ + t β` on `(x, y, z; t)`, with `θ₀` as in [`Self::contact_form`]
    /// and `β` a random linear 1-form.
    pub fn family(&mut self, max_degree: u32) -> FormFamily {
        let chart = Chart::with_params(
            "family",
            vec!["x".into(), "y".into(), "z".into()],
            vec!["t".into()],
        )
        .expect("valid");
        let t = RationalFunction::from_poly(chart.coordinate(3));
        loop {
            let theta0 = self.contact_form_on(&chart, max_degree);
            let beta = self.form(&chart, 1, 1, 2);
            let theta = theta0
                .add(&beta.scale(&t).expect("scale"))
                .expect("same chart");
            if let Ok(f) = FormFamily::new(theta, "t") {
                return f;
            }
        }
    }

    /// A random element of `items`.
    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }
}

/// Engel frames `(ℓ, d)` for scaling checks: the model frame `{∂w, ∂z + y∂x + w∂y}`
/// plus low-degree polynomial perturbations.
pub fn engel_frame(s: &mut Sampler, chart: &ChartRef) -> Result<(VectorField, VectorField)> {
    let p = |i| chart.coordinate(i);
    let l = VectorField::coordinate(chart, 3).add(&s.field(chart, 1, 1))?;
    let d = VectorField::from_polys(
        chart,
        vec![p(1), p(3), Polynomial::one(4), Polynomial::zero(4)],
    )?
    .add(&s.field(chart, 1, 1))?;
    Ok((l, d))
}
