//! Dense two-phase simplex with Bland's rule, for the small feasibility LPs that
//! seed the dual maximizer.

use alloc::vec;
use alloc::vec::Vec;

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal(Vec<f64>),
    Infeasible,
    Unbounded,
}

/// Maximizes `c . x` subject to `a x = b`, `x >= 0`. `a` is row-major `m x n`.
pub(crate) fn maximize(c: &[f64], a: &[f64], b: &[f64]) -> LpOutcome {
    let n = c.len();
    let m = b.len();
    debug_assert_eq!(a.len(), m * n);
    let width = n + m + 1;
    let rhs = n + m;

    let mut rows: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
            let mut row = vec![0.0; width];
            for j in 0..n {
                row[j] = sign * a[i * n + j];
            }
            row[n + i] = 1.0;
            row[rhs] = sign * b[i];
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut phase1 = vec![0.0; n + m];
    phase1[n..].iter_mut().for_each(|v| *v = -1.0);
    if run(&mut rows, &mut basis, &phase1, n + m).is_err() {
        // Phase one is bounded by construction.
        return LpOutcome::Infeasible;
    }
    let b_scale = b.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let infeasibility: f64 = basis
        .iter()
        .zip(&rows)
        .filter(|(&k, _)| k >= n)
        .map(|(_, row)| row[rhs])
        .sum();
    if infeasibility > 1e-8 * b_scale {
        return LpOutcome::Infeasible;
    }

    // Pivot remaining artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < rows.len() {
        if basis[i] >= n {
            let pivot_col = (0..n).find(|&j| rows[i][j].abs() > EPS);
            match pivot_col {
                Some(j) => pivot(&mut rows, &mut basis, i, j),
                None => {
                    rows.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = vec![0.0; n + m];
    phase2[..n].copy_from_slice(c);
    if run(&mut rows, &mut basis, &phase2, n).is_err() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for (row, &k) in rows.iter().zip(&basis) {
        if k < n {
            x[k] = row[rhs].max(0.0);
        }
    }
    LpOutcome::Optimal(x)
}

struct Unbounded;

/// Simplex iterations over columns `0..allowed`.
fn run(rows: &mut [Vec<f64>], basis: &mut [usize], cost: &[f64], allowed: usize) -> Result<(), Unbounded> {
    let rhs = rows.first().map_or(0, |r| r.len() - 1);
    let limit = 50 * (rows.len() + allowed + 1);
    for _ in 0..limit {
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let reduced = cost[j] - rows.iter().zip(basis.iter()).map(|(r, &k)| cost[k] * r[j]).sum::<f64>();
            reduced > EPS
        });
        let Some(j) = entering else {
            return Ok(());
        };
        let mut leaving: Option<(usize, f64)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[j] > EPS {
                let ratio = row[rhs] / row[j];
                let better = match leaving {
                    None => true,
                    Some((l, best)) => ratio < best - EPS || (ratio <= best + EPS && basis[i] < basis[l]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = leaving else {
            return Err(Unbounded);
        };
        pivot(rows, basis, i, j);
    }
    Ok(())
}

fn pivot(rows: &mut [Vec<f64>], basis: &mut [usize], r: usize, c: usize) {
    let p = rows[r][c];
    rows[r].iter_mut().for_each(|v| *v /= p);
    let pivot_row = rows[r].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r {
            let f = row[c];
            if f != 0.0 {
                row.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= f * pv);
            }
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounded_lp() {
        // max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let c = [1.0, 1.0, 0.0, 0.0];
        let a = [1.0, 2.0, 1.0, 0.0, 3.0, 1.0, 0.0, 1.0];
        let LpOutcome::Optimal(x) = maximize(&c, &a, &[4.0, 6.0]) else { panic!() };
        assert!((x[0] - 1.6).abs() < 1e-9 && (x[1] - 1.2).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        // x = -1 with x >= 0
        assert_eq!(maximize(&[0.0], &[1.0], &[-1.0]), LpOutcome::Infeasible);
        // max x  s.t. x - y = 0
        assert_eq!(maximize(&[1.0, 0.0], &[1.0, -1.0], &[0.0]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        // x + y = 1 twice; max x
        let LpOutcome::Optimal(x) = maximize(&[1.0, 0.0], &[1.0, 1.0, 1.0, 1.0], &[1.0, 1.0]) else {
            panic!()
        };
        assert!((x[0] - 1.0).abs() < 1e-12);
    }
}
