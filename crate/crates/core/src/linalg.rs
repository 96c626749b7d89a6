//! Thin wrappers around dense decompositions, with the orderings and frame
//! conventions used throughout the crate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;

/// Max entry-wise deviation from Hermitian symmetry.
pub fn hermitian_residual(m: &CMatrix) -> f64 {
    let mut res = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            res = res.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    res
}

/// Max entry-wise deviation from real symmetry.
pub fn symmetric_residual(m: &RMatrix) -> f64 {
    let mut res = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            res = res.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    res
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Full Hermitian eigendecomposition with eigenvalues ascending.
/// Returns (eigenvalues, eigenvectors as matrix columns).
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &RMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Full real symmetric eigendecomposition, eigenvalues ascending.
pub fn symmetric_eigen(m: &RMatrix) -> (Vec<f64>, RMatrix) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = RMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut vals: Vec<f64> = svd.singular_values.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

pub fn singular_values_real(m: &RMatrix) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut vals: Vec<f64> = svd.singular_values.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Largest singular value (0 for an empty matrix).
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of the numerical kernel of `m`, relative cutoff
/// `cutoff * sigma_max` on singular values. Columns are orthonormal.
///
/// Computed from the Hermitian eigendecomposition of m* m, which (unlike a
/// thin SVD) always exposes the full null space.
pub fn kernel_basis(m: &CMatrix, cutoff: f64) -> CMatrix {
    let cols = m.ncols();
    if m.nrows() == 0 || cols == 0 {
        return CMatrix::identity(cols, cols);
    }
    let gram = m.adjoint() * m;
    let (vals, vecs) = hermitian_eigen(&gram);
    let lmax = vals.last().copied().unwrap_or(0.0).max(0.0);
    // eigenvalues of the Gram matrix are squared singular values; keep the
    // threshold above the eigensolver noise floor
    let threshold = if lmax > 0.0 {
        ((cutoff * cutoff).max(64.0 * f64::EPSILON)) * lmax
    } else {
        f64::MAX
    };
    let kernel_cols: Vec<usize> = (0..cols).filter(|&i| vals[i] <= threshold).collect();
    let mut out = CMatrix::zeros(cols, kernel_cols.len());
    for (dst, &src) in kernel_cols.iter().enumerate() {
        out.set_column(dst, &vecs.column(src));
    }
    out
}

/// Minimal-norm least-squares solution of `a x = b`.
pub fn lstsq(a: &CMatrix, b: &CVector, cutoff: f64) -> CVector {
    if a.ncols() == 0 {
        return CVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    svd.solve(b, cutoff).expect("svd solve")
}

/// Hermitian positive-definite Cholesky factor L with `m = L L^*`.
pub fn cholesky_factor(m: &CMatrix) -> Option<CMatrix> {
    nalgebra::Cholesky::new(m.clone()).map(|c| c.l())
}
