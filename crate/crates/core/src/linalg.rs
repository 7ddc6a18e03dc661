//! Dense helpers shared by the main construction path.

use nalgebra::linalg::SymmetricEigen;

use crate::phase_space::{omega_matrix, CMatrix, CVector, RMatrix, C64, I};

pub(crate) fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

/// `i W` for `n_modes` modes; `<a, b> = a^dagger (i W) b`.
pub(crate) fn product_metric(n_modes: usize) -> CMatrix {
    to_complex(&omega_matrix(n_modes)) * I
}

/// Columns of `vectors` as a matrix.
pub(crate) fn columns(vectors: &[CVector], dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues ascending.
pub(crate) fn hermitian_eigh(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vecs = CMatrix::zeros(h.nrows(), h.ncols());
    for (j, &k) in order.iter().enumerate() {
        vecs.set_column(j, &eig.eigenvectors.column(k));
    }
    (values, vecs)
}

/// Orthonormal real basis of the real span of the real and imaginary parts
/// of `vectors`, keeping singular directions above `rel_tol * s_max`.
/// Columns come out ordered by decreasing singular value.
pub(crate) fn real_span_basis(vectors: &[CVector], dim: usize, rel_tol: f64) -> RMatrix {
    let mut m = RMatrix::zeros(dim, 2 * vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(2 * j, &v.map(|z| z.re));
        m.set_column(2 * j + 1, &v.map(|z| z.im));
    }
    orthonormal_range(&m, rel_tol)
}

/// Orthonormal basis of the column space of a real matrix.
pub(crate) fn orthonormal_range(m: &RMatrix, rel_tol: f64) -> RMatrix {
    if m.ncols() == 0 {
        return RMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let s = &svd.singular_values;
    let s_max = s.iter().copied().fold(0.0, f64::max);
    if s_max == 0.0 {
        return RMatrix::zeros(m.nrows(), 0);
    }
    let mut keep: Vec<usize> = (0..s.len()).filter(|&k| s[k] > rel_tol * s_max).collect();
    keep.sort_by(|&a, &b| s[b].total_cmp(&s[a]));
    let mut q = RMatrix::zeros(m.nrows(), keep.len());
    for (j, &k) in keep.iter().enumerate() {
        q.set_column(j, &u.column(k));
    }
    q
}

/// Rank of a complex set of vectors by singular values of their matrix.
pub(crate) fn complex_rank(vectors: &[CVector], dim: usize, rel_tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = columns(vectors, dim);
    let s = m.singular_values();
    let s_max = s.iter().copied().fold(0.0, f64::max);
    if s_max == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * s_max).count()
}

/// Frobenius norm of a complex matrix.
pub(crate) fn frob(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Symmetrize a real matrix.
pub(crate) fn symmetrize(m: &RMatrix) -> RMatrix {
    (m + m.transpose()) * 0.5
}
