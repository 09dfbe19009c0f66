//! Thin helpers over nalgebra's dense factorizations.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

/// Relative singular-value cutoff used for rank decisions.
pub(crate) const RANK_TOL: f64 = 1e-11;

/// SVD-based decomposition giving an orthonormal null-space basis and the
/// pseudo-inverse of `a`.
pub(crate) struct Decomposition {
    /// Columns span `{v : a v = 0}`; may have zero columns.
    pub null_space: DMatrix<f64>,
    pinv: DMatrix<f64>,
}

impl Decomposition {
    pub(crate) fn new(a: &DMatrix<f64>) -> Self {
        let (rows, cols) = a.shape();
        if cols == 0 {
            return Self { null_space: DMatrix::zeros(0, 0), pinv: DMatrix::zeros(0, rows) };
        }
        // Pad with zero rows so the SVD returns a full right basis.
        let padded_rows = rows.max(cols);
        let mut padded = DMatrix::zeros(padded_rows, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(a);
        let svd = padded.svd(true, true);
        let u = svd.u.expect("u requested");
        let v_t = svd.v_t.expect("v_t requested");
        let sigma = svd.singular_values;
        let max_sigma = sigma.iter().copied().fold(0.0, f64::max);
        let cutoff = RANK_TOL * max_sigma.max(1.0);

        let mut null_cols = Vec::new();
        let mut pinv = DMatrix::zeros(cols, rows);
        for (k, &s) in sigma.iter().enumerate() {
            let v_k = v_t.row(k).transpose();
            if s > cutoff {
                let u_k = u.column(k).rows(0, rows).into_owned();
                pinv += (&v_k * u_k.transpose()) / s;
            } else {
                null_cols.push(v_k);
            }
        }
        let null_space = if null_cols.is_empty() {
            DMatrix::zeros(cols, 0)
        } else {
            DMatrix::from_columns(&null_cols)
        };
        Self { null_space, pinv }
    }

    /// Minimum-norm least-squares solution of `a x = b`.
    pub(crate) fn solve(&self, b: &DVector<f64>) -> DVector<f64> {
        &self.pinv * b
    }

    pub(crate) fn null_dim(&self) -> usize {
        self.null_space.ncols()
    }
}

/// Solves `m x = b` for symmetric positive (semi)definite `m`, adding diagonal
/// regularization until the Cholesky factorization succeeds.
pub(crate) fn solve_spd(m: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    let n = m.nrows();
    if n == 0 {
        return Some(DVector::zeros(0));
    }
    let scale = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max).max(1e-300);
    let mut shift = 0.0;
    for _ in 0..30 {
        let shifted = m + DMatrix::identity(n, n) * shift;
        if let Some(chol) = shifted.cholesky() {
            let x = chol.solve(b);
            if x.iter().all(|v| v.is_finite()) {
                return Some(x);
            }
        }
        shift = if shift == 0.0 { scale * 1e-14 } else { shift * 10.0 };
    }
    None
}
