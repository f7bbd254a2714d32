//! Small dense linear-algebra helpers shared by the completion, optimizer
//! and DVM modules. Factorizations come from nalgebra; the orthonormal
//! basis completion is a hand-rolled Householder accumulation so its output
//! is deterministic and matches the usual LAPACK-style convention.

use nalgebra::{DMatrix, DVector};

use crate::error::{FrameletError, Result};

/// Thin SVD with singular values sorted descending.
///
/// Returns `(singular_values, v_rows)` where `v_rows` is `min(m,n) x n`
/// holding the right singular vectors as rows, aligned with the values.
pub fn thin_svd(q: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let svd = q.clone().svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
    });
    let values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let mut rows = DMatrix::zeros(vt.nrows(), vt.ncols());
    for (dst, &src) in order.iter().enumerate() {
        rows.set_row(dst, &vt.row(src));
    }
    (values, rows)
}

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
pub fn symmetric_eigen_desc(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(m.nrows(), m.ncols());
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Largest eigenvalue of a symmetric matrix.
pub fn max_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// Extends `v_cols` (N x r, orthonormal columns) to a full N x N orthogonal
/// matrix by accumulating the Householder reflectors of its QR
/// factorization. The first r columns equal the input up to sign; the
/// remaining columns are a deterministic orthonormal basis of the
/// complement.
pub fn complete_orthonormal_basis(v_cols: &DMatrix<f64>) -> DMatrix<f64> {
    let n = v_cols.nrows();
    let r = v_cols.ncols().min(n);
    let mut a = v_cols.clone();
    let mut q = DMatrix::<f64>::identity(n, n);
    for j in 0..r {
        let x = a.view((j, j), (n - j, 1)).clone_owned();
        let norm = x.norm();
        if norm < 1e-300 {
            continue;
        }
        let mut v = x;
        let sign = if v[(0, 0)] >= 0.0 { 1.0 } else { -1.0 };
        v[(0, 0)] += sign * norm;
        let beta = 2.0 / v.norm_squared();
        // apply the reflector to the remaining columns of a
        for c in j..r {
            let dot = (0..n - j).map(|i| v[(i, 0)] * a[(j + i, c)]).sum::<f64>();
            for i in 0..n - j {
                a[(j + i, c)] -= beta * dot * v[(i, 0)];
            }
        }
        // accumulate q <- q * h_j
        for row in 0..n {
            let dot = (0..n - j).map(|i| q[(row, j + i)] * v[(i, 0)]).sum::<f64>();
            for i in 0..n - j {
                q[(row, j + i)] -= beta * dot * v[(i, 0)];
            }
        }
    }
    q
}

/// Solves `R x = b` by Gaussian elimination with partial pivoting and
/// returns `(x, cond)` where `cond` is the infinity-norm condition number
/// estimated from the explicitly assembled inverse.
pub fn solve_with_cond(r: &DMatrix<f64>, b: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let n = r.nrows();
    if r.ncols() != n || b.len() != n {
        return Err(FrameletError::DimensionMismatch(
            "square system required".into(),
        ));
    }
    let lu = r.clone().lu();
    let norm_r = inf_norm(r);
    let inv = lu
        .try_inverse()
        .ok_or(FrameletError::IllConditioned(f64::INFINITY))?;
    let cond = norm_r * inf_norm(&inv);
    if !cond.is_finite() || cond > 1e14 {
        return Err(FrameletError::IllConditioned(cond));
    }
    Ok((&inv * b, cond))
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
