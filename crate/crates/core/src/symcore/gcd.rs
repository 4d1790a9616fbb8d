//! Multivariate gcd by recursive content removal and a primitive
//! pseudo-remainder sequence in one variable at a time.

use super::coefficient::Coefficient;
use super::heugcd::heuristic_gcd;
use super::polynomial::{Monomial, Polynomial};

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    gcd_raw(a, b).monic()
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Option<Polynomial> {
    let mut acc: Option<Polynomial> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) if g.is_constant() && !g.is_zero() => return Some(g),
            Some(g) => gcd(&g, p),
        });
    }
    acc
}

pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(a.nvars());
    }
    let g = gcd(a, b);
    (&a.div_exact(&g).expect("gcd divides") * b).monic()
}

/// Product of the distinct irreducible factors of `p`, made monic.
pub fn squarefree_part(p: &Polynomial) -> Polynomial {
    if p.is_constant() {
        return p.monic();
    }
    let mut g = p.clone();
    for v in 0..p.nvars() {
        if g.is_constant() {
            break;
        }
        if p.involves(v) {
            g = gcd(&g, &p.partial(v).expect("in range"));
        }
    }
    p.div_exact(&g).expect("gcd divides").monic()
}

fn gcd_raw(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.nvars());
    }
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_gcd().gcd(&b.monomial_gcd());
        return Polynomial::monomial(m, Coefficient::one());
    }
    if a.total_degree() >= b.total_degree() && a.div_exact(b).is_some() {
        return b.clone();
    }
    if b.total_degree() >= a.total_degree() && b.div_exact(a).is_some() {
        return a.clone();
    }
    if coprime_by_images(a, b) {
        return Polynomial::one(a.nvars());
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g;
    }
    // A common divisor only involves shared variables; strip the rest via contents.
    let n = a.nvars();
    for v in 0..n {
        match (a.involves(v), b.involves(v)) {
            (true, false) => return gcd_raw(&content(a, v), b),
            (false, true) => return gcd_raw(a, &content(b, v)),
            _ => {}
        }
    }
    let v = (0..n).find(|&v| a.involves(v)).expect("non-constant");
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_raw(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    &c * &g
}

/// Exact test for the common coprime case. Fixing every variable but `v` at a
/// point where both leading coefficients in `v` survive can only raise the
/// degree in `v` of the gcd, so a constant univariate gcd bounds it by zero.
/// Proves coprimality when this holds for every shared variable; `false` means
/// unknown.
fn coprime_by_images(a: &Polynomial, b: &Polynomial) -> bool {
    let n = a.nvars();
    let shared: Vec<usize> = (0..n).filter(|&v| a.involves(v) && b.involves(v)).collect();
    if shared.is_empty() {
        return false;
    }
    'vars: for &v in &shared {
        for attempt in 0..4i64 {
            let point: Vec<Coefficient> = (0..n)
                .map(|k| {
                    Coefficient::from_int(
                        POINTS[(k + 3 * attempt as usize) % POINTS.len()] + attempt,
                    )
                })
                .collect();
            let (ia, ib) = (
                univariate_image(a, v, &point),
                univariate_image(b, v, &point),
            );
            if ia.len() as u32 != a.degree_in(v) + 1 || ib.len() as u32 != b.degree_in(v) + 1 {
                continue;
            }
            if univariate_gcd_degree(ia, ib) == 0 {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

const POINTS: [i64; 7] = [3, -2, 5, 7, -4, 11, 2];

/// Dense coefficients (low to high, trailing zeros trimmed) of `p` with every
/// variable except `v` replaced by its value in `point`.
fn univariate_image(p: &Polynomial, v: usize, point: &[Coefficient]) -> Vec<Coefficient> {
    let mut out = vec![Coefficient::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = c.clone();
        for (k, &e) in m.exponents().iter().enumerate() {
            if k != v && e > 0 {
                val = &val * &point[k].pow(e);
            }
        }
        out[m.exponents()[v] as usize] += &val;
    }
    trim(&mut out);
    out
}

fn trim(p: &mut Vec<Coefficient>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<Coefficient>, mut b: Vec<Coefficient>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lead = b.last().expect("nonempty").inv().expect("nonzero");
        while a.len() >= b.len() {
            let q = &a[a.len() - 1] * &lead;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[shift + i] = &a[shift + i] - &(&q * c);
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content(p: &Polynomial, v: usize) -> Polynomial {
    let coeffs = p.coefficients_in(v);
    let mut it = coeffs.into_iter().map(|(_, c)| c);
    let mut acc = it.next().unwrap_or_else(|| Polynomial::zero(p.nvars()));
    for c in it {
        if acc.is_constant() {
            break;
        }
        acc = gcd_raw(&acc, &c);
    }
    if acc.is_constant() {
        Polynomial::one(p.nvars())
    } else {
        acc.monic()
    }
}

fn primitive_part(p: &Polynomial, v: usize) -> Polynomial {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Subresultant pseudo-remainder sequence; intermediate divisions are exact
/// and only the last remainder needs its content removed.
fn primitive_prs(mut a: Polynomial, mut b: Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let d = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(n);
        }
        let divisor = &g * &h.pow(d);
        a = b;
        b = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        g = a.leading_coefficient_in(v).1;
        h = if d == 0 {
            h
        } else {
            g.pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// `lc(b)^(deg a − deg b + 1) · a` reduced modulo `b` in `v`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let (db, lcb) = b.leading_coefficient_in(v);
    let mut steps = a.degree_in(v) + 1 - db;
    let mut r = a.clone();
    loop {
        let (dr, lcr) = r.leading_coefficient_in(v);
        if r.is_zero() || dr < db {
            return &r * &lcb.pow(steps);
        }
        let mut shift = vec![0u32; n];
        shift[v] = dr - db;
        let shifted = b.mul_monomial(&Monomial::from_exponents(&shift), &Coefficient::one());
        r = &(&lcb * &r) - &(&lcr * &shifted);
        steps -= 1;
    }
}
