//! Dense linear algebra kernels: a cyclic Jacobi eigensolver for symmetric
//! matrices and a null-space basis via Gaussian elimination.
//!
//! Jacobi keeps an explicit orthogonal factor, so every decomposition can be
//! residual-checked against `A = Q Λ Qᵀ`.

use nalgebra::DMatrix;
use thiserror::Error;

/// Sweep cap for the Jacobi iteration.
const MAX_SWEEPS: usize = 100;
/// Convergence: off-diagonal Frobenius norm relative to the input norm.
const OFF_DIAG_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("jacobi eigensolver did not converge within {MAX_SWEEPS} sweeps")]
    NotConverged,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}

/// Eigendecomposition of a symmetric matrix: `a = q · diag(values) · qᵀ`,
/// eigenvalues ascending, `q` columns the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

fn off_diag_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)] * a[(i, j)];
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi rotations on a symmetric matrix.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> Result<SymmetricEigen, LinalgError> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(LinalgError::NotSquare(a.nrows(), a.ncols()));
    }
    let mut m = a.clone();
    let mut q = DMatrix::identity(n, n);
    if n <= 1 {
        return Ok(SymmetricEigen {
            values: (0..n).map(|i| m[(i, i)]).collect(),
            vectors: q,
        });
    }

    let norm = a.norm().max(f64::MIN_POSITIVE);
    let tol = OFF_DIAG_REL_TOL * norm;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diag_norm(&m) <= tol {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let apr = m[(p, r)];
                if apr.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let tau = (m[(r, r)] - m[(p, p)]) / (2.0 * apr);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkr = m[(k, r)];
                    m[(k, p)] = c * mkp - s * mkr;
                    m[(k, r)] = s * mkp + c * mkr;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mrk = m[(r, k)];
                    m[(p, k)] = c * mpk - s * mrk;
                    m[(r, k)] = s * mpk + c * mrk;
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkr = q[(k, r)];
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
    }
    if !converged && off_diag_norm(&m) > tol {
        return Err(LinalgError::NotConverged);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).expect("finite eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &q.column(src));
    }
    Ok(SymmetricEigen { values, vectors })
}

/// Max-norm of `a − q diag(values) qᵀ`.
pub fn reconstruction_residual(a: &DMatrix<f64>, eig: &SymmetricEigen) -> f64 {
    let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(eig.values.clone()));
    let rec = &eig.vectors * lambda * eig.vectors.transpose();
    (a - rec).amax()
}

/// Row rank by Gaussian elimination with partial pivoting.
pub fn rank(a: &DMatrix<f64>, tol: f64) -> usize {
    row_echelon(a, tol).1.len()
}

/// Returns the echelon form and the list of pivot columns.
fn row_echelon(a: &DMatrix<f64>, tol: f64) -> (DMatrix<f64>, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let (best, best_val) = (row..rows)
            .map(|r| (r, m[(r, col)].abs()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite entries"))
            .expect("non-empty row range");
        if best_val <= tol {
            continue;
        }
        m.swap_rows(row, best);
        let pivot = m[(row, col)];
        for r in 0..rows {
            if r != row && m[(r, col)].abs() > 0.0 {
                let factor = m[(r, col)] / pivot;
                for c in col..cols {
                    m[(r, c)] -= factor * m[(row, c)];
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    (m, pivot_cols)
}

/// Orthonormal basis of `ker(a)` as matrix columns (empty matrix when the
/// kernel is trivial).
pub fn null_space_basis(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let cols = a.ncols();
    let (ech, pivot_cols) = row_echelon(a, tol);
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = DMatrix::zeros(cols, free_cols.len());
    for (bi, &fc) in free_cols.iter().enumerate() {
        basis[(fc, bi)] = 1.0;
        // back-substitute pivot variables
        for (r, &pc) in pivot_cols.iter().enumerate() {
            basis[(pc, bi)] = -ech[(r, fc)] / ech[(r, pc)];
        }
    }
    // modified Gram-Schmidt
    let k = basis.ncols();
    for j in 0..k {
        for i in 0..j {
            let proj = basis.column(j).dot(&basis.column(i));
            let col_i = basis.column(i).clone_owned();
            let mut col_j = basis.column_mut(j);
            col_j.axpy(-proj, &col_i, 1.0);
        }
        let norm = basis.column(j).norm();
        basis.column_mut(j).scale_mut(1.0 / norm);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    #[test]
    fn diagonal_is_fixed_point() {
        let a = DMatrix::from_diagonal(&nalgebra::dvector![3.0, -1.0, 2.0]);
        let eig = jacobi_eigen(&a).unwrap();
        assert_eq!(eig.values, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_known_eigenvalues() {
        let a = dmatrix![2.0, 1.0; 1.0, 2.0];
        let eig = jacobi_eigen(&a).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        assert!(reconstruction_residual(&a, &eig) < 1e-14);
    }

    #[test]
    fn residual_and_orthogonality_on_random_matrix() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 40;
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.gen_range(-1.0..1.0);
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        let eig = jacobi_eigen(&a).unwrap();
        assert!(reconstruction_residual(&a, &eig) < 1e-10);
        let qtq = eig.vectors.transpose() * &eig.vectors;
        assert!((qtq - DMatrix::identity(n, n)).amax() < 1e-12);
        for w in eig.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn null_space_of_triangle_incidence() {
        // d1 on the triangle: one row [1, -1, 1], kernel dim 2.
        let a = DMatrix::from_row_slice(1, 3, &[1.0, -1.0, 1.0]);
        let basis = null_space_basis(&a, 1e-12);
        assert_eq!(basis.ncols(), 2);
        let residual = &a * &basis;
        assert!(residual.amax() < 1e-12);
        let btb = basis.transpose() * &basis;
        assert!((btb - DMatrix::identity(2, 2)).amax() < 1e-12);
    }

    #[test]
    fn rank_of_singular_matrix() {
        let a = dmatrix![1.0, 2.0; 2.0, 4.0];
        assert_eq!(rank(&a, 1e-12), 1);
    }
}
