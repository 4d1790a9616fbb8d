//! Exact calculus identities on seeded random data. Each returns whether the
//! identity held for the sample drawn from `seed`.

use engelkit::chartgeom::{Chart, ChartRef, KForm, PolyMap, VectorField};
use engelkit::sampling::Sampler;
use engelkit::Result;

fn chart4() -> ChartRef {
    Chart::new("calc", &["x", "y", "z", "w"]).unwrap()
}

pub fn jacobi(seed: u64) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let c = chart4();
    let [u, v, w] = [0; 3].map(|_| s.field(&c, 2, 3));
    let sum = u
        .lie_bracket(&v)?
        .lie_bracket(&w)?
        .add(&v.lie_bracket(&w)?.lie_bracket(&u)?)?
        .add(&w.lie_bracket(&u)?.lie_bracket(&v)?)?;
    Ok(sum.is_zero())
}

pub fn d_squared(seed: u64) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let c = chart4();
    let k = (seed % 3) as usize;
    let f = s.form(&c, k, 3, 3);
    Ok(f.d()?.d()?.is_zero())
}

/// dθ(V, W) = V θ(W) − W θ(V) − θ([V, W]).
pub fn cartan(seed: u64) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let c = chart4();
    let theta = s.form(&c, 1, 2, 3);
    let v = s.field(&c, 2, 3);
    let w = s.field(&c, 2, 3);
    let lhs = theta.d()?.evaluate_on(&[v.clone(), w.clone()])?;
    let rhs = v
        .apply(&theta.evaluate_on(std::slice::from_ref(&w))?)?
        .sub(&w.apply(&theta.evaluate_on(std::slice::from_ref(&v))?)?)?
        .sub(&theta.evaluate_on(&[v.lie_bracket(&w)?])?)?;
    Ok(lhs == rhs)
}

/// (L_V θ)(W) = V(θ(W)) − θ([V, W]) against the magic-formula Lie derivative,
/// and L_V commutes with d.
pub fn magic_formula(seed: u64) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let c = chart4();
    let theta = s.form(&c, 1, 2, 3);
    let v = s.field(&c, 2, 3);
    let w = s.field(&c, 2, 2);
    let lie = theta.lie_derivative(&v)?;
    let lhs = lie.evaluate_on(std::slice::from_ref(&w))?;
    let rhs = v
        .apply(&theta.evaluate_on(std::slice::from_ref(&w))?)?
        .sub(&theta.evaluate_on(&[v.lie_bracket(&w)?])?)?;
    let commutes = lie.d()? == theta.d()?.lie_derivative(&v)?;
    Ok(lhs == rhs && commutes)
}

/// i_V(α∧β) = i_Vα∧β + (−1)^k α∧i_Vβ for a k-form α.
pub fn interior_derivation(seed: u64) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let c = chart4();
    let k = 1 + (seed % 2) as usize;
    let a = s.form(&c, k, 2, 2);
    let b = s.form(&c, 1, 2, 2);
    let v = s.field(&c, 2, 2);
    let lhs = a.wedge(&b)?.interior(&v)?;
    let second = a.wedge(&b.interior(&v)?)?;
    let second = if k % 2 == 1 { second.neg() } else { second };
    let rhs = a.interior(&v)?.wedge(&b)?.add(&second)?;
    Ok(lhs == rhs)
}

/// φ* commutes with d and with ∧.
pub fn naturality(seed: u64) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let c = Chart::new("nat", &["x", "y", "z"]).unwrap();
    let comps = (0..3).map(|_| s.poly(c.nvars(), c.dim(), 2, 3)).collect();
    let phi = PolyMap::new(&c, &c, comps)?;
    let a: KForm = s.form(&c, 1, 2, 2);
    let b: KForm = s.form(&c, 1, 1, 2);
    let d_ok = phi.pullback(&a.d()?)? == phi.pullback(&a)?.d()?;
    let w_ok = phi.pullback(&a.wedge(&b)?)? == phi.pullback(&a)?.wedge(&phi.pullback(&b)?)?;
    Ok(d_ok && w_ok)
}

/// Bracket is antisymmetric and a derivation: [V, fW] = V(f)W + f[V, W].
pub fn bracket_leibniz(seed: u64) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let c = chart4();
    let v: VectorField = s.field(&c, 2, 3);
    let w = s.field(&c, 2, 3);
    let f = engelkit::symcore::RationalFunction::from_poly(s.poly(4, 4, 2, 3));
    let lhs = v.lie_bracket(&w.scale(&f)?)?;
    let rhs = w
        .scale(&v.apply(&f)?)?
        .add(&v.lie_bracket(&w)?.scale(&f)?)?;
    let anti = v.lie_bracket(&w)? == w.lie_bracket(&v)?.neg();
    Ok(lhs == rhs && anti)
}
