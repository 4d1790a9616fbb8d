use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::coefficient::Coefficient;
use super::limits::{check_terms, term_ceiling};

/// Term multiplications allowed per product, as a multiple of the term ceiling.
const WORK_FACTOR: usize = 10;
use crate::error::{Error, Result};

/// Exponent vector with cached total degree. Ordered graded-lexicographically:
/// total degree first, then the exponent of the earliest declared variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            degree: other.degree - self.degree,
            exps,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.degree = m.degree - m.exps[var] + e;
        m.exps[var] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the Gaussian rationals. Terms are kept sorted in
/// descending graded-lex order with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Coefficient)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coefficient::one())
    }

    pub fn constant(nvars: usize, c: Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, Coefficient::from_int(n))
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        Polynomial {
            nvars,
            terms: vec![(Monomial::var(nvars, var), Coefficient::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Coefficient) -> Self {
        let nvars = m.exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Coefficient)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.exps.len(), nvars);
            acc.entry(m).and_modify(|e| *e += &c).or_insert(c);
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Coefficient>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Coefficient> {
        match self.terms.as_slice() {
            [] => Some(Coefficient::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, Coefficient)] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coefficient)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Coefficient {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exps[var])
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps[var] > 0)
    }

    pub fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        Ok(self - other)
    }

    /// Product with the variable-list and term-ceiling checks applied. Stops
    /// as soon as the partial result passes the ceiling, and refuses products
    /// needing more than `WORK_FACTOR × ceiling` term multiplications.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() || self.is_monomial() || other.is_monomial() {
            let p = self * other;
            check_terms(p.num_terms())?;
            return Ok(p);
        }
        let ceiling = term_ceiling();
        let work = self.terms.len().saturating_mul(other.terms.len());
        if work > ceiling.saturating_mul(WORK_FACTOR) {
            return Err(Error::Resource(format!(
                "product needs {work} term multiplications, limit {} (term ceiling {ceiling})",
                ceiling.saturating_mul(WORK_FACTOR)
            )));
        }
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::with_capacity(work.min(ceiling));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|e| *e += &c).or_insert(c);
            }
            check_terms(acc.len())?;
        }
        let p = Polynomial::from_map(self.nvars, acc);
        check_terms(p.num_terms())?;
        Ok(p)
    }

    /// `self^e` by repeated squaring through [`Self::checked_mul`].
    pub fn checked_pow(&self, mut e: u32) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        // Multiplying by a monomial preserves the graded-lex order.
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in `var`.
    pub fn partial(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::UnknownVariable(var));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            terms.push((
                m.with_exponent(var, e - 1),
                c * &Coefficient::from_int(e as i64),
            ));
        }
        // Lowering one exponent can reorder terms of different degree classes.
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Ok(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn eval(&self, point: &[Coefficient]) -> Result<Coefficient> {
        if point.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Coefficient::zero();
        let mut powers: Vec<Vec<Coefficient>> = vec![vec![Coefficient::one()]; self.nvars];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &point[v];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes `subs[v]` for variable `v`; the result lives in the ring of the substitutes.
    pub fn substitute(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        if subs.len() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: subs.len(),
            });
        }
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = subs.iter().find(|p| p.nvars != target) {
            return Err(Error::VariableMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.nvars];
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &subs[v];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            for (tm, tc) in t.terms {
                acc.entry(tm).and_modify(|e| *e += &tc).or_insert(tc);
            }
            check_terms(acc.len())?;
        }
        Ok(Polynomial::from_map(target, acc))
    }

    /// Re-embeds into a ring with `nvars` variables; old variable `i` becomes `mapping[i]`.
    pub fn embed(&self, nvars: usize, mapping: &[usize]) -> Polynomial {
        assert_eq!(mapping.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps: SmallVec<[u32; 8]> = SmallVec::from_elem(0, nvars);
            for (i, &e) in m.exps.iter().enumerate() {
                exps[mapping[i]] += e;
            }
            (
                Monomial {
                    degree: m.degree,
                    exps,
                },
                c.clone(),
            )
        });
        Polynomial::from_terms(nvars, terms)
    }

    /// Coefficients with respect to `var`, as `(power, coefficient)` pairs in
    /// ascending power; each coefficient is free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<(u32, Polynomial)> {
        let mut buckets: std::collections::BTreeMap<u32, Vec<(Monomial, Coefficient)>> =
            Default::default();
        for (m, c) in &self.terms {
            let e = m.exps[var];
            buckets
                .entry(e)
                .or_default()
                .push((m.with_exponent(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|(e, mut ts)| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                (
                    e,
                    Polynomial {
                        nvars: self.nvars,
                        terms: ts,
                    },
                )
            })
            .collect()
    }

    /// Leading coefficient with respect to `var` (a polynomial free of `var`).
    pub fn leading_coefficient_in(&self, var: usize) -> (u32, Polynomial) {
        self.coefficients_in(var)
            .pop()
            .unwrap_or((0, Polynomial::zero(self.nvars)))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        let (dm, dc) = d.terms[0].clone();
        let dc_inv = dc.inv()?;
        if d.is_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                terms.push((dm.quotient_of(m), c * &dc_inv));
            }
            return Some(Polynomial {
                nvars: self.nvars,
                terms,
            });
        }
        let mut rem = self.clone();
        let mut quotient: Vec<(Monomial, Coefficient)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !dm.divides(&rm) || rm.degree < dm.degree {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            let qc = &rc * &dc_inv;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quotient.push((qm, qc));
        }
        // Quotient terms are produced in strictly descending order.
        Some(Polynomial {
            nvars: self.nvars,
            terms: quotient,
        })
    }

    /// Scales so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn monomial_gcd(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(self.nvars),
        };
        it.fold(first, |acc, (m, _)| acc.gcd(m))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        merge(self, o, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        merge(self, o, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, o.nvars);
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if o.is_monomial() {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        if self.is_monomial() {
            return o.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Coefficient> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|e| *e += &c).or_insert(c);
            }
        }
        Polynomial::from_map(self.nvars, acc)
    }
}

fn merge(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    debug_assert_eq!(a.nvars, b.nvars);
    let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        match a.terms[i].0.cmp(&b.terms[j].0) {
            Ordering::Greater => {
                terms.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, c) = &b.terms[j];
                terms.push((m.clone(), if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !c.is_zero() {
                    terms.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    terms.extend(a.terms[i..].iter().cloned());
    for (m, c) in &b.terms[j..] {
        terms.push((m.clone(), if negate_b { -c } else { c.clone() }));
    }
    Polynomial {
        nvars: a.nvars,
        terms,
    }
}
