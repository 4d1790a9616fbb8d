use super::coefficient::Coefficient;
use super::gcd::gcd;
use super::limits::check_terms;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        RationalFunction {
            num: Polynomial::zero(nvars),
            den: Polynomial::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::from_poly(Polynomial::from_int(nvars, n))
    }

    pub fn constant(nvars: usize, c: Coefficient) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_poly(Polynomial::var(nvars, v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.nvars());
        RationalFunction { num: p, den }
    }

    /// Cancels the gcd and makes the denominator monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.same_ring(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.nvars()));
        }
        check_terms(num.num_terms().max(den.num_terms()))?;
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero");
            return Ok(RationalFunction {
                num: num.scale(&inv),
                den: Polynomial::one(num.nvars()),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Ok(Self::with_monic_den(num, den))
    }

    fn with_monic_den(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Coefficient> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.num.same_ring(&o.num)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_polynomial() && o.is_polynomial() {
            return Ok(Self::from_poly(&self.num + &o.num));
        }
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = &self.num.checked_mul(&b)? + &o.num.checked_mul(&a)?;
        if num.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        check_terms(num.num_terms())?;
        // Both inputs are reduced, so any common factor of the sum divides g.
        let h = if g.is_one() { g } else { gcd(&num, &g) };
        let (num, den) = if h.is_one() {
            (num, self.den.checked_mul(&b)?)
        } else {
            let den = a.checked_mul(&o.den)?.div_exact(&h).expect("gcd divides");
            (num.div_exact(&h).expect("gcd divides"), den)
        };
        Ok(Self::with_monic_den(num, den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.num.same_ring(&o.num)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        if self.is_polynomial() && o.is_polynomial() {
            return Ok(Self::from_poly(self.num.checked_mul(&o.num)?));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.checked_mul(&n2)?;
        let den = d1.checked_mul(&d2)?;
        Ok(Self::with_monic_den(num, den))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<Self> {
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let num = self.num.checked_pow(e)?;
        let den = self.den.checked_pow(e)?;
        Ok(RationalFunction { num, den })
    }

    pub fn partial(&self, var: usize) -> Result<Self> {
        let dn = self.num.partial(var)?;
        if self.is_polynomial() {
            return Ok(Self::from_poly(dn));
        }
        let dd = self.den.partial(var)?;
        if dd.is_zero() {
            return Self::new(dn, self.den.clone());
        }
        let num = &dn.checked_mul(&self.den)? - &self.num.checked_mul(&dd)?;
        let den = self.den.checked_mul(&self.den)?;
        Self::new(num, den)
    }

    pub fn eval(&self, point: &[Coefficient]) -> Result<Coefficient> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        let n = self.num.eval(point)?;
        Ok(n.checked_div(&d).expect("nonzero"))
    }

    /// Composition with a polynomial substitution.
    pub fn substitute(&self, subs: &[Polynomial]) -> Result<Self> {
        let num = self.num.substitute(subs)?;
        let den = self.den.substitute(subs)?;
        Self::new(num, den)
    }

    pub fn embed(&self, nvars: usize, mapping: &[usize]) -> Self {
        RationalFunction {
            num: self.num.embed(nvars, mapping),
            den: self.den.embed(nvars, mapping),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_common_factor() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let f = RationalFunction::new(&(&x * &x) - &(&y * &y), &x - &y).unwrap();
        assert_eq!(f, RationalFunction::from_poly(&x + &y));
    }

    #[test]
    fn zero_numerator_is_canonical() {
        let x = Polynomial::var(1, 0);
        let f = RationalFunction::new(Polynomial::zero(1), &x + &Polynomial::one(1)).unwrap();
        assert_eq!(f, RationalFunction::zero(1));
        assert!(f.denominator().is_one());
    }

    #[test]
    fn normalizes_denominator() {
        let x = Polynomial::var(1, 0);
        let f = RationalFunction::new(x.scale(&2.into()), (&x * &x).scale(&4.into())).unwrap();
        assert_eq!(
            f.numerator(),
            &Polynomial::constant(1, Coefficient::from_frac(1, 2))
        );
        assert_eq!(f.denominator(), &x);
    }

    #[test]
    fn errors() {
        let x = Polynomial::var(1, 0);
        assert_eq!(
            RationalFunction::new(x.clone(), Polynomial::zero(1)),
            Err(Error::ZeroDenominator)
        );
        let inv = RationalFunction::from_poly(x).inv().unwrap();
        assert_eq!(inv.eval(&[Coefficient::zero()]), Err(Error::Pole));
    }
}
