//! Singular value decompositions, delegated to `faer`.

use alloc::vec::Vec;
use faer::Mat;

use crate::Matrix;

pub(crate) struct Svd {
    pub u: Matrix,
    /// Nonincreasing.
    pub s: Vec<f64>,
    pub v: Matrix,
}

fn to_faer(m: &Matrix) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Full SVD `m = u diag(s) v^T` of a square matrix.
pub(crate) fn svd(m: &Matrix) -> Svd {
    let n = m.nrows();
    let d = to_faer(m).svd().expect("SVD did not converge");
    let (u, s, v) = (d.U(), d.S().column_vector(), d.V());
    Svd {
        u: Matrix::from_fn(n, n, |i, j| u[(i, j)]),
        s: (0..n).map(|i| s[i]).collect(),
        v: Matrix::from_fn(n, n, |i, j| v[(i, j)]),
    }
}

/// Singular values, nonincreasing.
pub(crate) fn singular_values(m: &Matrix) -> Vec<f64> {
    to_faer(m).singular_values().expect("SVD did not converge")
}

fn from_faer(m: faer::MatRef<'_, f64>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// `a^T b c`
pub(crate) fn transpose_triple(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let (a, b, c) = (to_faer(a), to_faer(b), to_faer(c));
    let p = a.transpose() * b * c;
    from_faer(p.as_ref())
}

/// Eigenvalues of a general real square matrix.
pub(crate) fn eigenvalues(m: &Matrix) -> Vec<num_complex::Complex64> {
    to_faer(m)
        .eigenvalues()
        .expect("eigenvalue iteration did not converge")
        .iter()
        .map(|z| num_complex::Complex64::new(z.re, z.im))
        .collect()
}

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
pub(crate) fn symmetric_eigen(m: &Matrix) -> (Vec<f64>, Matrix) {
    let n = m.nrows();
    let e = to_faer(m)
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("symmetric eigensolver did not converge");
    let s = e.S().column_vector();
    ((0..n).map(|i| s[i]).collect(), from_faer(e.U()))
}
