//! Canonical text form: terms in descending graded-lex order, `p/q`
//! coefficients, `^` powers and `*` products.

use super::polynomial::{Monomial, Polynomial};
use super::ratfun::RationalFunction;

fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[v].clone()),
            _ => parts.push(format!("{}^{}", names[v], e)),
        }
    }
    parts.join("*")
}

pub fn poly_to_text(p: &Polynomial, names: &[String]) -> String {
    assert_eq!(names.len(), p.nvars(), "one name per variable");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let term = if m.is_one() {
            c.to_string()
        } else if c.is_one() {
            monomial_text(m, names)
        } else if (-c).is_one() {
            format!("-{}", monomial_text(m, names))
        } else {
            format!("{}*{}", c, monomial_text(m, names))
        };
        if k == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

pub fn ratfun_to_text(f: &RationalFunction, names: &[String]) -> String {
    if f.is_polynomial() {
        poly_to_text(f.numerator(), names)
    } else {
        format!(
            "({})/({})",
            poly_to_text(f.numerator(), names),
            poly_to_text(f.denominator(), names)
        )
    }
}

/// Whether the text is a single product (no top-level `+`/` - `), so it can
/// be used as a factor without parentheses. Mixed Gaussian coefficients
/// print with their own parentheses.
pub fn is_atomic_product(f: &RationalFunction) -> bool {
    f.is_polynomial() && f.numerator().num_terms() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::Coefficient;

    #[test]
    fn canonical_text() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p =
            &(&(&x * &x) - &(&y * &y)) + &Polynomial::constant(2, Coefficient::from_frac(-1, 2));
        assert_eq!(poly_to_text(&p, &names), "x^2 - y^2 - 1/2");
        let q = (&x * &y).scale(&Coefficient::from_frac(3, 4));
        assert_eq!(poly_to_text(&q, &names), "3/4*x*y");
        let z = (-&x).scale(&Coefficient::i());
        assert_eq!(poly_to_text(&z, &names), "-i*x");
        let f = RationalFunction::new(Polynomial::one(2), x.scale(&2.into())).unwrap();
        assert_eq!(ratfun_to_text(&f, &names), "(1/2)/(x)");
    }
}
