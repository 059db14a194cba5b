//! Small dense linear-algebra helpers shared by the kernel.

use nalgebra::{DMatrix, DVector};

/// Matrix of a linear map on R^n given by its action on the standard basis.
pub fn matrix_of(n: usize, mut f: impl FnMut(&DVector<f64>) -> DVector<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    let mut e = DVector::zeros(n);
    for j in 0..n {
        e[j] = 1.0;
        m.set_column(j, &f(&e));
        e[j] = 0.0;
    }
    m
}

/// Eigendecomposition of an operator `t` that is self-adjoint with respect
/// to the SPD form `s` ( s(t u, v) = s(u, t v) ). Returns (eigenvalues,
/// eigenvectors as columns), eigenvectors s-orthonormal, eigenvalues ascending.
pub fn eigen_selfadjoint_wrt(t: &DMatrix<f64>, s: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let chol = s
        .clone()
        .cholesky()
        .expect("inner-product gram matrix must be positive definite");
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .expect("Cholesky factor is invertible");
    // symmetric similarity: L^T T L^{-T}
    let sym = l.transpose() * t * l_inv.transpose();
    let sym = 0.5 * (&sym + sym.transpose());
    let eig = nalgebra::SymmetricEigen::new(sym);
    // columns of L^{-T} V are s-orthonormal eigenvectors
    let vecs = l_inv.transpose() * eig.eigenvectors;
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = DVector::from_fn(idx.len(), |i, _| eig.eigenvalues[idx[i]]);
    let mut sorted = DMatrix::zeros(vecs.nrows(), vecs.ncols());
    for (i, &j) in idx.iter().enumerate() {
        sorted.set_column(i, &vecs.column(j));
    }
    (vals, sorted)
}

/// Orthonormal basis (standard dot product) of the column space of `m`,
/// keeping singular vectors with sigma > tol * sigma_max.
pub fn column_space(m: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.as_ref().unwrap();
    // absolute floor: a numerically-zero matrix must yield an empty basis
    let smax = svd.singular_values.max().max(1.0);
    let mut basis = Vec::new();
    for (i, &sv) in svd.singular_values.iter().enumerate() {
        if sv > tol * smax {
            basis.push(DVector::from_column_slice(u.column(i).as_slice()));
        }
    }
    basis
}

/// Nullspace basis of `m` (rows are constraints), sigma <= tol * sigma_max.
pub fn null_space(m: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return (0..cols)
            .map(|j| DVector::from_fn(cols, |i, _| if i == j { 1.0 } else { 0.0 }))
            .collect();
    }
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.as_ref().unwrap();
    let smax = svd.singular_values.max().max(1e-300);
    let mut basis = Vec::new();
    let k = svd.singular_values.len();
    for i in 0..k {
        if svd.singular_values[i] <= tol * smax {
            basis.push(DVector::from_row_slice(vt.row(i).transpose().as_slice()));
        }
    }
    // rows of V^T beyond the number of singular values span the rest of the kernel
    for i in k..vt.nrows() {
        basis.push(DVector::from_row_slice(vt.row(i).transpose().as_slice()));
    }
    basis
}

/// Frobenius norm of (a - b).
pub fn diff_norm(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).norm()
}

/// Projector onto span of s-orthonormal columns: P = B B^T S (oblique in
/// standard coordinates, orthogonal with respect to s).
pub fn projector_from_basis(basis: &[DVector<f64>], s: &DMatrix<f64>) -> DMatrix<f64> {
    let n = s.nrows();
    let mut p = DMatrix::zeros(n, n);
    for b in basis {
        p += b * (s * b).transpose();
    }
    p
}
