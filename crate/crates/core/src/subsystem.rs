//! Subsystems as symplectic subspaces of phase space.
//!
//! A [`ModeSubspace`] is stored in normalized form: modes `gamma_1..gamma_NA`
//! with `<gamma_I, gamma_J> = delta_IJ` and `<gamma_I, gamma_J*> = 0`. The full
//! ordered basis is `(gamma_1, ..., gamma_NA, gamma_1*, ..., gamma_NA*)`, whose
//! Gram matrix is `diag(1, ..., 1, -1, ..., -1)`.

use crate::error::{Error, Result};
use crate::linalg::{
    columns, frob, hermitian_eigh, product_metric, real_span_basis, symmetrize, to_complex,
};
use crate::phase_space::{
    annihilation_basis, omega_matrix, product, CMatrix, CVector, PhaseVector, RMatrix, C64, I,
};
use crate::state::{
    orthonormality_defect, symplectic_spectrum, ComplexStructure, GaussianState, SymplecticSpectrum,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSubspace {
    n_modes: usize,
    modes: Vec<PhaseVector>,
}

impl ModeSubspace {
    /// Normalize an arbitrary spanning set; see [`symplectic_gram_schmidt`].
    pub fn new(n_modes: usize, vectors: &[PhaseVector]) -> Result<Self> {
        gram_schmidt_in(n_modes, vectors)
    }

    /// Wrap modes that are already symplectically orthonormal.
    pub fn from_normalized(n_modes: usize, modes: Vec<PhaseVector>) -> Result<Self> {
        if let Some(v) = modes.iter().find(|v| v.dim() != 2 * n_modes) {
            return Err(Error::DimensionMismatch {
                expected: 2 * n_modes,
                found: v.dim(),
            });
        }
        if modes.len() > n_modes {
            return Err(Error::InvalidDimension(format!(
                "{} modes in a {n_modes}-mode space",
                modes.len()
            )));
        }
        let residual = orthonormality_defect(&modes);
        if residual > 1e-9 {
            return Err(Error::NonOrthonormalBasis { residual });
        }
        Ok(ModeSubspace { n_modes, modes })
    }

    pub fn empty(n_modes: usize) -> Self {
        ModeSubspace {
            n_modes,
            modes: Vec::new(),
        }
    }

    /// The whole phase space with the annihilation basis.
    pub fn full(n_modes: usize) -> Self {
        ModeSubspace {
            n_modes,
            modes: annihilation_basis(n_modes),
        }
    }

    /// The span of the listed canonical modes.
    pub fn canonical_modes(n_modes: usize, indices: &[usize]) -> Result<Self> {
        let basis = annihilation_basis(n_modes);
        let modes = indices
            .iter()
            .map(|&k| {
                basis
                    .get(k)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("mode {k} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_normalized(n_modes, modes)
    }

    /// Ambient mode count `N`.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Number of modes `N_A` in the subsystem.
    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Positive-norm members `gamma_I`.
    pub fn modes(&self) -> &[PhaseVector] {
        &self.modes
    }

    /// `(gamma_1, ..., gamma_NA, gamma_1*, ..., gamma_NA*)`.
    pub fn basis(&self) -> Vec<PhaseVector> {
        let mut out = self.modes.clone();
        out.extend(self.modes.iter().map(PhaseVector::conj));
        out
    }

    /// Real projector onto the subspace:
    /// `sum_I gamma_I <gamma_I, .> - gamma_I* <gamma_I*, .>`.
    pub fn projector(&self) -> RMatrix {
        let w = omega_matrix(self.n_modes);
        let dim = 2 * self.n_modes;
        let mut acc = RMatrix::zeros(dim, dim);
        for g in &self.modes {
            let outer: CMatrix = g.as_vector() * g.as_vector().adjoint();
            acc -= outer.map(|z| z.im) * 2.0;
        }
        acc * w
    }

    /// Real Darboux frame `(x_1, p_1, ..., x_NA, p_NA)` as columns, with
    /// `x_I = (gamma_I + gamma_I*) / sqrt 2` and `p_I = i (gamma_I - gamma_I*) / sqrt 2`.
    pub fn darboux_frame(&self) -> RMatrix {
        let s = std::f64::consts::SQRT_2;
        let mut f = RMatrix::zeros(2 * self.n_modes, 2 * self.modes.len());
        for (k, g) in self.modes.iter().enumerate() {
            f.set_column(2 * k, &(g.real_part() * s));
            f.set_column(2 * k + 1, &(-g.imag_part() * s));
        }
        f
    }

    /// Coordinates of `v` in the Darboux frame (complex-linear). Exact for
    /// vectors inside the subspace; for others this is the coordinate vector
    /// of the projection.
    pub fn coordinates(&self, v: &PhaseVector) -> PhaseVector {
        let f = to_complex(&self.darboux_frame());
        let w = to_complex(&omega_matrix(self.n_modes));
        let w_a = to_complex(&omega_matrix(self.modes.len()));
        // F^T W F = W_A, so the coordinates are -W_A F^T W v.
        let c = -(w_a * f.transpose() * w * v.as_vector());
        PhaseVector::from_vector_unchecked(c)
    }

    /// The ambient vector with the given frame coordinates.
    pub fn embed(&self, coords: &PhaseVector) -> PhaseVector {
        PhaseVector::from_vector_unchecked(to_complex(&self.darboux_frame()) * coords.as_vector())
    }

    /// Express a subspace of `self` in `self`'s reduced coordinates.
    pub fn coordinates_of(&self, inner: &ModeSubspace) -> Result<ModeSubspace> {
        if inner.n_modes != self.n_modes {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes,
                found: inner.n_modes,
            });
        }
        let p = to_complex(&self.projector());
        for g in &inner.modes {
            let off = (&p * g.as_vector() - g.as_vector()).norm();
            if off > 1e-9 * g.norm() {
                return Err(Error::InvalidArgument(format!(
                    "subspace not contained (residual {off:.3e})"
                )));
            }
        }
        let modes = inner.modes.iter().map(|g| self.coordinates(g)).collect();
        ModeSubspace::from_normalized(self.modes.len(), modes)
    }

    /// Maximum `|<a, b>|` between basis vectors of the two subspaces.
    pub fn orthogonality_residual(&self, other: &ModeSubspace) -> f64 {
        let mut r: f64 = 0.0;
        for a in self.basis() {
            for b in other.basis() {
                r = r.max(product(a.as_vector(), b.as_vector()).norm());
            }
        }
        r
    }
}

/// Projector wrapping the general Gram-inverse formula.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticProjector {
    matrix: CMatrix,
    source: ModeSubspace,
}

impl SymplecticProjector {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &ModeSubspace {
        &self.source
    }

    pub fn apply(&self, v: &PhaseVector) -> PhaseVector {
        PhaseVector::from_vector_unchecked(&self.matrix * v.as_vector())
    }

    /// `1 - Pi`.
    pub fn complement_matrix(&self) -> CMatrix {
        let n = self.matrix.nrows();
        CMatrix::identity(n, n) - &self.matrix
    }
}

/// `G_ij = <xi_i, xi_j>`.
pub fn gram_matrix(basis: &[PhaseVector]) -> CMatrix {
    let k = basis.len();
    CMatrix::from_fn(k, k, |i, j| {
        product(basis[i].as_vector(), basis[j].as_vector())
    })
}

/// `Pi = sum_ij xi_i (G^{-1})_ij <xi_j, .>` for any basis of a symplectic subspace.
pub fn projector_from_basis(basis: &[PhaseVector]) -> Result<CMatrix> {
    let Some(first) = basis.first() else {
        return Err(Error::InvalidArgument("empty basis".into()));
    };
    let dim = first.dim();
    if let Some(v) = basis.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.dim(),
        });
    }
    let g = gram_matrix(basis);
    let s = g.singular_values();
    let s_max = s.max();
    let s_min = s.min();
    let limit = Tolerances::active().gram_condition;
    if s_min <= 0.0 || s_max / s_min > limit {
        return Err(Error::DegenerateSubspace(format!(
            "Gram condition number {:.3e}",
            s_max / s_min
        )));
    }
    let g_inv = g
        .try_inverse()
        .ok_or_else(|| Error::DegenerateSubspace("Gram matrix not invertible".into()))?;
    let xi = columns(
        &basis
            .iter()
            .map(|v| v.as_vector().clone())
            .collect::<Vec<_>>(),
        dim,
    );
    Ok(&xi * g_inv * xi.adjoint() * product_metric(dim / 2))
}

pub fn symplectic_projector(sub: &ModeSubspace) -> Result<SymplecticProjector> {
    let dim = 2 * sub.n_modes;
    let matrix = if sub.is_empty() {
        CMatrix::zeros(dim, dim)
    } else {
        projector_from_basis(&sub.basis())?
    };
    Ok(SymplecticProjector {
        matrix,
        source: sub.clone(),
    })
}

/// The symplectic orthogonal complement, normalized.
pub fn symplectic_complement(sub: &ModeSubspace) -> Result<ModeSubspace> {
    let dim = 2 * sub.n_modes;
    let comp = RMatrix::identity(dim, dim) - sub.projector();
    let vectors: Vec<PhaseVector> = (0..dim)
        .map(|j| PhaseVector::from_vector_unchecked(comp.column(j).map(|x| C64::new(x, 0.0))))
        .collect();
    let out = gram_schmidt_in(sub.n_modes, &vectors)?;
    if out.mode_count() != sub.n_modes - sub.mode_count() {
        return Err(Error::InternalConsistency(format!(
            "complement has {} modes, expected {}",
            out.mode_count(),
            sub.n_modes - sub.mode_count()
        )));
    }
    Ok(out)
}

/// Symplectically orthonormalize a spanning set.
///
/// The real span of the inputs (which is their conjugation closure) is found
/// by SVD, dropping dependent directions. On that span the product is
/// `x^dag (i K) y` with `K = Q^T W Q`; the positive eigenvectors `u` of the
/// Hermitian `iK` give the normalized modes `Q u / sqrt(lambda)`.
pub fn symplectic_gram_schmidt(vectors: &[PhaseVector]) -> Result<ModeSubspace> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidArgument(
            "no vectors to orthonormalize".into(),
        ));
    };
    gram_schmidt_in(first.n_modes(), vectors)
}

pub(crate) fn gram_schmidt_in(n_modes: usize, vectors: &[PhaseVector]) -> Result<ModeSubspace> {
    let dim = 2 * n_modes;
    if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.dim(),
        });
    }
    let tol = Tolerances::active();
    let raw: Vec<CVector> = vectors.iter().map(|v| v.as_vector().clone()).collect();
    let q = real_span_basis(&raw, dim, tol.rank);
    let r = q.ncols();
    if r == 0 {
        return Ok(ModeSubspace::empty(n_modes));
    }
    if !r.is_multiple_of(2) {
        return Err(Error::DegenerateSubspace(format!(
            "span has odd real dimension {r}"
        )));
    }
    let k = q.transpose() * omega_matrix(n_modes) * &q;
    let h = to_complex(&k) * I;
    let (values, vecs) = hermitian_eigh(&h);
    let lam_max = values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let lam_min = values.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    if lam_min <= 0.0 || lam_max / lam_min > tol.gram_condition {
        return Err(Error::DegenerateSubspace(format!(
            "restricted symplectic form is degenerate (eigenvalue ratio {:.3e})",
            lam_max / lam_min
        )));
    }
    let qc = to_complex(&q);
    let half = r / 2;
    let mut modes = Vec::with_capacity(half);
    // Largest eigenvalues first: the best-conditioned directions lead.
    for j in (half..r).rev() {
        let u = vecs.column(j).into_owned();
        let g = &qc * u / C64::new(values[j].sqrt(), 0.0);
        modes.push(PhaseVector::from_vector_unchecked(g).with_canonical_phase());
    }
    Ok(ModeSubspace { n_modes, modes })
}

/// `J` restricted to the subspace, as the `2N_A x 2N_A` matrix of
/// `Pi_A J Pi_A` in the normalized basis `(gamma_I, gamma_I*)`:
/// `(J_A)_ij = eta_i <xi_i, J xi_j>` with `eta = (1, ..., -1, ...)`.
pub fn restrict(j: &ComplexStructure, sub: &ModeSubspace) -> Result<CMatrix> {
    check_ambient(j, sub)?;
    let basis = sub.basis();
    let n_a = sub.mode_count();
    let jc = to_complex(j.matrix());
    let images: Vec<CVector> = basis.iter().map(|v| &jc * v.as_vector()).collect();
    Ok(CMatrix::from_fn(2 * n_a, 2 * n_a, |r, c| {
        let eta = if r < n_a { 1.0 } else { -1.0 };
        product(basis[r].as_vector(), &images[c]) * eta
    }))
}

/// `Pi_A J Pi_A` as a real map on the ambient space.
pub fn restrict_ambient(j: &ComplexStructure, sub: &ModeSubspace) -> Result<RMatrix> {
    check_ambient(j, sub)?;
    let p = sub.projector();
    Ok(&p * j.matrix() * &p)
}

/// The complex structure of the reduced state, in `sub`'s Darboux frame.
pub fn reduce(j: &ComplexStructure, sub: &ModeSubspace) -> Result<ComplexStructure> {
    check_ambient(j, sub)?;
    if sub.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot reduce to an empty subsystem".into(),
        ));
    }
    let f = sub.darboux_frame();
    let sigma = symmetrize(&(f.transpose() * j.covariance() * &f));
    ComplexStructure::from_matrix(-(omega_matrix(sub.mode_count()) * sigma))
}

/// The reduced Gaussian state on `sub`, in its Darboux frame.
pub fn reduced_state(state: &GaussianState, sub: &ModeSubspace) -> Result<GaussianState> {
    if sub.n_modes() != state.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: state.n_modes(),
            found: sub.n_modes(),
        });
    }
    if sub.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot reduce to an empty subsystem".into(),
        ));
    }
    let f = sub.darboux_frame();
    let sigma = symmetrize(&(f.transpose() * state.covariance() * &f));
    GaussianState::new(f.transpose() * state.mean(), sigma)
}

/// Symplectic spectrum of the reduced state; modes are returned in the
/// ambient space.
pub fn restricted_spectrum(j: &ComplexStructure, sub: &ModeSubspace) -> Result<SymplecticSpectrum> {
    let reduced = reduce(j, sub)?;
    let spec = symplectic_spectrum(&reduced)?;
    Ok(spec.map_modes(|e| sub.embed(e).with_canonical_phase()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncorrelatedTest {
    pub uncorrelated: bool,
    /// `||Pi J - J Pi||_F / ||J||_F`.
    pub residual: f64,
}

/// A subsystem is uncorrelated with its complement iff `[Pi_A, J] = 0`.
pub fn is_uncorrelated(sub: &ModeSubspace, j: &ComplexStructure) -> Result<UncorrelatedTest> {
    check_ambient(j, sub)?;
    let p = sub.projector();
    let jm = j.matrix();
    let residual = (&p * jm - jm * &p).norm() / jm.norm();
    Ok(UncorrelatedTest {
        uncorrelated: residual <= Tolerances::active().uncorrelated,
        residual,
    })
}

/// `C_ij = sigma(xi_i*, delta_j*)` over the full bases of `a` and `b`.
pub fn correlation_block(
    state: &GaussianState,
    a: &ModeSubspace,
    b: &ModeSubspace,
) -> Result<CMatrix> {
    for s in [a, b] {
        if s.n_modes() != state.n_modes() {
            return Err(Error::DimensionMismatch {
                expected: state.n_modes(),
                found: s.n_modes(),
            });
        }
    }
    let residual = a.orthogonality_residual(b);
    if residual > 1e-9 {
        return Err(Error::NotOrthogonal { residual });
    }
    let sigma = to_complex(state.covariance());
    let xa = columns(
        &a.basis()
            .iter()
            .map(|v| v.as_vector().clone())
            .collect::<Vec<_>>(),
        2 * state.n_modes(),
    );
    let xb = columns(
        &b.basis()
            .iter()
            .map(|v| v.conj().into_vector())
            .collect::<Vec<_>>(),
        2 * state.n_modes(),
    );
    Ok(xa.adjoint() * sigma * xb)
}

/// Frobenius distance between the projectors of two subspaces.
pub fn distance(a: &ModeSubspace, b: &ModeSubspace) -> f64 {
    (a.projector() - b.projector()).norm()
}

/// Concatenate two mutually orthogonal subsystems, keeping both bases.
pub fn direct_sum(a: &ModeSubspace, b: &ModeSubspace) -> Result<ModeSubspace> {
    if a.n_modes != b.n_modes {
        return Err(Error::DimensionMismatch {
            expected: a.n_modes,
            found: b.n_modes,
        });
    }
    let residual = a.orthogonality_residual(b);
    if residual > 1e-9 {
        return Err(Error::NotOrthogonal { residual });
    }
    let mut modes = a.modes.clone();
    modes.extend(b.modes.iter().cloned());
    ModeSubspace::from_normalized(a.n_modes, modes)
}

/// Frobenius norm of a complex matrix; re-exported for callers comparing restrictions.
pub fn frobenius(m: &CMatrix) -> f64 {
    frob(m)
}

fn check_ambient(j: &ComplexStructure, sub: &ModeSubspace) -> Result<()> {
    if j.n_modes() != sub.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: j.n_modes(),
            found: sub.n_modes(),
        });
    }
    Ok(())
}
