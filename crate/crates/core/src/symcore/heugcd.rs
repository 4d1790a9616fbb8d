//! Heuristic gcd for polynomials with rational coefficients. One variable is
//! evaluated at a large integer ξ, the images are handled recursively, and the
//! candidate is rebuilt from the balanced ξ-adic digits of the image gcd.
//! Candidates are confirmed by exact division, so any answer is the true gcd;
//! `None` means the heuristic gave up.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coefficient::Coefficient;
use super::polynomial::{Monomial, Polynomial};

type IntPoly = BTreeMap<Vec<u32>, BigInt>;

const TRIES: usize = 6;

pub fn heuristic_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let n = a.nvars();
    let g = gcd_int(&to_int(a)?, &to_int(b)?, n)?;
    Some(Polynomial::from_terms(
        n,
        g.into_iter()
            .map(|(e, c)| {
                (
                    Monomial::from_exponents(&e),
                    Coefficient::rational(BigRational::from_integer(c)),
                )
            })
            .collect::<Vec<_>>(),
    ))
}

/// Integer multiple of `p`; `None` for non-real coefficients.
fn to_int(p: &Polynomial) -> Option<IntPoly> {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        if !c.is_real() {
            return None;
        }
        l = l.lcm(c.re.denom());
    }
    Some(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let v = c.re.numer() * (&l / c.re.denom());
                (m.exponents().to_vec(), v)
            })
            .collect(),
    )
}

fn content(p: &IntPoly) -> BigInt {
    p.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn div_ground(p: &IntPoly, c: &BigInt) -> IntPoly {
    p.iter().map(|(e, v)| (e.clone(), v / c)).collect()
}

fn norm(p: &IntPoly) -> BigInt {
    p.values().map(|c| c.abs()).max().unwrap_or_default()
}

fn involves(p: &IntPoly, v: usize) -> bool {
    p.keys().any(|e| e[v] > 0)
}

fn gcd_int(a: &IntPoly, b: &IntPoly, n: usize) -> Option<IntPoly> {
    if a.is_empty() {
        return Some(b.clone());
    }
    if b.is_empty() {
        return Some(a.clone());
    }
    let common = content(a).gcd(&content(b));
    let Some(v) = (0..n).rev().find(|&v| involves(a, v) || involves(b, v)) else {
        return Some(IntPoly::from([(vec![0; n], common)]));
    };
    let (a, b) = (div_ground(a, &common), div_ground(b, &common));
    let mut xi = 2 * norm(&a).min(norm(&b)) + 29;
    for _ in 0..TRIES {
        let (ea, eb) = (eval(&a, v, &xi), eval(&b, v, &xi));
        if !ea.is_empty() && !eb.is_empty() {
            let h = interpolate(gcd_int(&ea, &eb, n)?, v, &xi);
            let c = content(&h);
            if !c.is_zero() {
                let g = div_ground(&h, &c);
                if divides(&g, &a, n) && divides(&g, &b, n) {
                    return Some(g.into_iter().map(|(e, x)| (e, x * &common)).collect());
                }
            }
        }
        xi = &xi * 73794 * xi.sqrt().sqrt() / 27011;
    }
    None
}

fn eval(p: &IntPoly, v: usize, xi: &BigInt) -> IntPoly {
    let mut out = IntPoly::new();
    for (e, c) in p {
        let mut key = e.clone();
        key[v] = 0;
        let t = c * xi.pow(e[v]);
        let slot = out.entry(key).or_default();
        *slot += t;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn interpolate(mut h: IntPoly, v: usize, xi: &BigInt) -> IntPoly {
    let mut out = IntPoly::new();
    let half = xi / 2;
    let mut power = 0u32;
    while !h.is_empty() {
        let mut next = IntPoly::new();
        for (e, c) in h {
            let mut digit = c.mod_floor(xi);
            if digit > half {
                digit -= xi;
            }
            let rest = (&c - &digit) / xi;
            if !digit.is_zero() {
                let mut key = e.clone();
                key[v] = power;
                out.insert(key, digit);
            }
            if !rest.is_zero() {
                next.insert(e, rest);
            }
        }
        h = next;
        power += 1;
    }
    out
}

fn divides(g: &IntPoly, p: &IntPoly, n: usize) -> bool {
    let to_poly = |q: &IntPoly| {
        Polynomial::from_terms(
            n,
            q.iter()
                .map(|(e, c)| {
                    (
                        Monomial::from_exponents(e),
                        Coefficient::rational(BigRational::from_integer(c.clone())),
                    )
                })
                .collect::<Vec<_>>(),
        )
    };
    to_poly(p).div_exact(&to_poly(g)).is_some()
}
