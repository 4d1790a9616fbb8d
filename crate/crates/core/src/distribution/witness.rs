use crate::batch::{self, Execution};
use crate::error::Result;
use crate::symcore::Coefficient;

/// Largest max-norm shell searched for witness points.
pub const DEFAULT_WITNESS_RADIUS: i64 = 8;

const CHUNK: usize = 64;

/// Integer points with max-norm exactly `r`, in a fixed order: odometer over
/// coordinates, each running through `0, 1, -1, 2, -2, …`.
pub fn lattice_shell(n: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=r).flat_map(|k| [k, -k]))
        .collect();
    let base = values.len();
    let total = if n == 0 {
        1
    } else {
        base.checked_pow(n as u32).unwrap_or(usize::MAX)
    };
    (0..total).filter_map(move |mut code| {
        let mut p = vec![0i64; n];
        for slot in p.iter_mut().rev() {
            *slot = values[code % base];
            code /= base;
        }
        (p.iter().map(|c| c.abs()).max().unwrap_or(0) == r).then_some(p)
    })
}

/// First lattice point (by shell, then shell order) where `accept` holds.
/// Errors from `accept` (poles, typically) count as rejection.
pub fn find_witness<F>(nvars: usize, radius: i64, accept: F) -> Option<Vec<Coefficient>>
where
    F: Fn(&[Coefficient]) -> Result<bool> + Sync + Send,
{
    for r in 0..=radius {
        let mut shell = lattice_shell(nvars, r).peekable();
        while shell.peek().is_some() {
            let chunk: Vec<Vec<Coefficient>> = shell
                .by_ref()
                .take(CHUNK)
                .map(|p| p.into_iter().map(Coefficient::from_int).collect())
                .collect();
            let hit = batch::find_first(Execution::default(), &chunk, |pt| {
                accept(pt).unwrap_or(false)
            });
            if let Some(pt) = hit {
                return Some(pt.clone());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shells_partition_the_cube() {
        let total: usize = (0..=2).map(|r| lattice_shell(2, r).count()).sum();
        assert_eq!(total, 25);
        assert_eq!(lattice_shell(2, 0).collect::<Vec<_>>(), vec![vec![0, 0]]);
        assert_eq!(
            lattice_shell(1, 1).collect::<Vec<_>>(),
            vec![vec![1], vec![-1]]
        );
    }

    #[test]
    fn finds_first_nonvanishing_point() {
        // x - 1 ≠ 0 fails only at x = 1
        let w = find_witness(1, 3, |p| Ok(p[0] != Coefficient::from_int(0)));
        assert_eq!(w, Some(vec![Coefficient::from_int(1)]));
        assert_eq!(find_witness(1, 3, |_| Ok(false)), None);
    }
}
