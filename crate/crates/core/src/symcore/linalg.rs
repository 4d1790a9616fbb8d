//! Dense linear algebra over the fraction field and over coefficient values.

use super::coefficient::Coefficient;
use super::gcd::{gcd, gcd_many, lcm};
use super::polynomial::Polynomial;
use super::ratfun::RationalFunction;
use crate::batch;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<RationalFunction>>;

/// Reduced row echelon form in place. Pivots are taken in the lowest-index
/// column that still has a nonzero entry, using the first such row.
/// Returns the pivot columns.
pub fn rref(rows: &mut Matrix, ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv()?;
        if !inv.is_one() {
            for k in c..ncols {
                rows[r][k] = rows[r][k].mul(&inv)?;
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for k in c..ncols {
                if rows[r][k].is_zero() {
                    continue;
                }
                rows[i][k] = rows[i][k].sub(&f.mul(&rows[r][k])?)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Rank over the fraction field. Numeric rank at any non-pole point is a lower
/// bound, so a full-rank evaluation settles it; otherwise fall back to
/// fraction-free elimination on the cleared rows.
pub fn rank(rows: &[Vec<RationalFunction>], ncols: usize) -> Result<usize> {
    let full = rows.len().min(ncols);
    if full == 0 {
        return Ok(0);
    }
    let nvars = rows[0][0].nvars();
    let mut lower = 0;
    for attempt in 0..3 {
        let point = probe_point(nvars, attempt);
        let Ok(values) = rows
            .iter()
            .map(|r| r[..ncols].iter().map(|e| e.eval(&point)).collect())
            .collect::<Result<Vec<Vec<Coefficient>>>>()
        else {
            continue;
        };
        lower = lower.max(rank_numeric(values));
        if lower == full {
            return Ok(full);
        }
    }
    let cleared = rows
        .iter()
        .map(|r| clear_denominators(&r[..ncols], nvars).map(|(p, _)| p))
        .collect::<Result<Vec<_>>>()?;
    rank_bareiss(cleared, nvars)
}

/// Deterministic integer points, spread enough to avoid small loci.
fn probe_point(nvars: usize, attempt: usize) -> Vec<Coefficient> {
    const VALUES: [i64; 11] = [7, -5, 11, 3, -13, 17, -2, 19, 5, -23, 29];
    (0..nvars)
        .map(|k| {
            Coefficient::from_int(VALUES[(k * 3 + attempt * 5) % VALUES.len()] + attempt as i64)
        })
        .collect()
}

/// Fraction-free echelon form. Every intermediate entry is a minor of the
/// input, so the division by the previous pivot is exact.
fn rank_bareiss(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> Result<usize> {
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut prev = Polynomial::one(nvars);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..ncols {
                let t = m[i][j]
                    .checked_mul(&m[r][c])?
                    .checked_sub(&m[i][c].checked_mul(&m[r][j])?)?;
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = Polynomial::zero(nvars);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Ok(r)
}

/// Basis of `{x : A x = 0}` over the fraction field, one vector per free column
/// (free entry 1, other free entries 0).
pub fn nullspace(
    rows: &[Vec<RationalFunction>],
    ncols: usize,
    nvars: usize,
) -> Result<Vec<Vec<RationalFunction>>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols)?;
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RationalFunction::zero(nvars); ncols];
        v[f] = RationalFunction::one(nvars);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = m[i][f].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Solution of `A x = b`: `None` if inconsistent, otherwise a particular
/// solution (free variables zero) and the dimension of the solution space.
pub fn solve(
    rows: &[Vec<RationalFunction>],
    rhs: &[RationalFunction],
    ncols: usize,
    nvars: usize,
) -> Result<Option<(Vec<RationalFunction>, usize)>> {
    let mut m: Matrix = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1)?;
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut x = vec![RationalFunction::zero(nvars); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][ncols].clone();
    }
    Ok(Some((x, ncols - pivots.len())))
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss) elimination.
pub fn det_poly(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Polynomial::zero(nvars);
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Determinant over the fraction field.
pub fn det(m: &[Vec<RationalFunction>], nvars: usize) -> Result<RationalFunction> {
    let mut scale = Polynomial::one(nvars);
    let mut rows = Vec::with_capacity(m.len());
    for row in m {
        let (polys, den) = clear_denominators(row, nvars)?;
        scale = &scale * &den;
        rows.push(polys);
    }
    RationalFunction::new(det_poly(rows, nvars), scale)
}

/// Multiplies a vector by the lcm of its denominators; returns the polynomial
/// entries and that lcm.
pub fn clear_denominators(
    v: &[RationalFunction],
    nvars: usize,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    let mut l = Polynomial::one(nvars);
    for e in v {
        if !e.denominator().is_one() {
            l = lcm(&l, e.denominator());
        }
    }
    let mut out = Vec::with_capacity(v.len());
    for e in v {
        let factor = l.div_exact(e.denominator()).expect("lcm is a multiple");
        out.push(e.numerator().checked_mul(&factor)?);
    }
    Ok((out, l))
}

/// Canonical representative of a fraction-field line: polynomial entries with
/// trivial gcd and the first nonzero entry's leading coefficient equal to 1.
/// Returns `None` for the zero vector.
pub fn primitive_vector(v: &[RationalFunction], nvars: usize) -> Result<Option<Vec<Polynomial>>> {
    let (polys, _) = clear_denominators(v, nvars)?;
    let Some(g) = gcd_many(polys.iter().filter(|p| !p.is_zero())) else {
        return Ok(None);
    };
    let mut out: Vec<Polynomial> = polys
        .iter()
        .map(|p| p.div_exact(&g).expect("gcd divides"))
        .collect();
    let lead = out
        .iter()
        .find(|p| !p.is_zero())
        .expect("nonzero")
        .leading_coefficient();
    let inv = lead.inv().expect("nonzero");
    for p in &mut out {
        *p = p.scale(&inv);
    }
    Ok(Some(out))
}

/// Rank of a numeric matrix.
pub fn rank_numeric(mut rows: Vec<Vec<Coefficient>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero");
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            for k in c..ncols {
                let t = &f * &rows[r][k];
                rows[i][k] = &rows[i][k] - &t;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Upper bound on the number of minors examined by [`maximal_minor_gcd`].
pub const MINOR_LIMIT: usize = 250_000;

/// Gcd of all nonzero `r x r` minors of a polynomial matrix (monic), or `None`
/// if every such minor vanishes.
pub fn maximal_minor_gcd(
    rows: &[Vec<Polynomial>],
    r: usize,
    nvars: usize,
) -> Result<Option<Polynomial>> {
    let ncols = rows.first().map(|row| row.len()).unwrap_or(0);
    if r == 0 {
        return Ok(Some(Polynomial::one(nvars)));
    }
    let row_sets = combinations(rows.len(), r);
    let col_sets = combinations(ncols, r);
    let total = row_sets.len().saturating_mul(col_sets.len());
    if total > MINOR_LIMIT {
        return Err(Error::Resource(format!(
            "{total} minors exceed the limit of {MINOR_LIMIT}"
        )));
    }
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = row_sets
        .iter()
        .flat_map(|rs| col_sets.iter().map(move |cs| (rs, cs)))
        .collect();
    let mut acc: Option<Polynomial> = None;
    for chunk in pairs.chunks(32) {
        let dets = batch::map(chunk, |(rs, cs)| {
            let m: Vec<Vec<Polynomial>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                .collect();
            det_poly(m, nvars)
        });
        for d in dets.iter().filter(|d| !d.is_zero()) {
            acc = Some(match acc {
                None => d.monic(),
                Some(g) => gcd(&g, d),
            });
        }
        if acc.as_ref().is_some_and(|g| g.is_constant()) {
            break;
        }
    }
    Ok(acc)
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(p: Polynomial) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn combinations_enumerate_in_order() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let n = 2;
        let x = Polynomial::var(n, 0);
        let y = Polynomial::var(n, 1);
        let one = Polynomial::one(n);
        let m = vec![
            vec![x.clone(), y.clone(), one.clone()],
            vec![one.clone(), x.clone(), y.clone()],
            vec![y.clone(), one.clone(), x.clone()],
        ];
        // x^3 + y^3 + 1 - 3xy
        let expected = &(&(&x.pow(3) + &y.pow(3)) + &one) - &(&x * &y).scale(&3.into());
        assert_eq!(det_poly(m, n), expected);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let n = 1;
        let x = Polynomial::var(n, 0);
        let rows = vec![vec![rf(x.clone()), rf(Polynomial::one(n))]];
        let ns = nullspace(&rows, 2, n).unwrap();
        assert_eq!(ns.len(), 1);
        let p = primitive_vector(&ns[0], n).unwrap().unwrap();
        assert_eq!(p, vec![Polynomial::one(n), -&x]);
    }

    #[test]
    fn numeric_rank() {
        let c = |n| Coefficient::from_int(n);
        assert_eq!(rank_numeric(vec![vec![c(1), c(2)], vec![c(2), c(4)]]), 1);
        assert_eq!(rank_numeric(vec![vec![c(0), c(1)], vec![c(1), c(0)]]), 2);
    }
}
