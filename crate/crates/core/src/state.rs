//! Gaussian states, their restricted complex structure and symplectic spectrum.
//!
//! A state is a mean covector `mu` together with the covariance metric
//! `sigma`, stored as the matrix `sigma_ij = sigma(eps_i, eps_j)` over the
//! canonical basis vectors. The complex structure is `J = -hbar Omega sigma`
//! with `Omega` the block matrix of [`SymplecticForm`].

use nalgebra::linalg::{Cholesky, Schur};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigh, symmetrize, to_complex};
use crate::phase_space::{
    omega_matrix, product, CMatrix, CVector, PhaseVector, RMatrix, RVector, SymplecticForm, C64,
    HBAR, I,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: RVector,
    covariance: RMatrix,
    form: SymplecticForm,
}

impl GaussianState {
    /// Accepts any square `2N x 2N` covariance; physicality is reported by
    /// [`validate_state`], not enforced here.
    pub fn new(mean: RVector, covariance: RMatrix) -> Result<Self> {
        let dim = covariance.nrows();
        if covariance.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: covariance.ncols(),
            });
        }
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!(
                "covariance side must be even and positive, got {dim}"
            )));
        }
        if mean.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: mean.len(),
            });
        }
        let form = SymplecticForm::new(dim / 2)?;
        Ok(GaussianState {
            mean,
            covariance,
            form,
        })
    }

    /// Zero-mean state.
    pub fn centered(covariance: RMatrix) -> Result<Self> {
        let dim = covariance.nrows();
        Self::new(RVector::zeros(dim), covariance)
    }

    pub fn vacuum(n_modes: usize) -> Result<Self> {
        SymplecticForm::new(n_modes)?;
        Self::centered(RMatrix::identity(2 * n_modes, 2 * n_modes))
    }

    /// Product of thermal modes with the given symplectic eigenvalues.
    pub fn thermal(nus: &[f64]) -> Result<Self> {
        let diag: Vec<f64> = nus.iter().flat_map(|&nu| [nu, nu]).collect();
        Self::centered(RMatrix::from_diagonal(&RVector::from_vec(diag)))
    }

    /// Two-mode squeezed vacuum with squeezing parameter `r`.
    pub fn two_mode_squeezed(r: f64) -> Self {
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        let cov = RMatrix::from_row_slice(
            4,
            4,
            &[
                c, 0.0, s, 0.0, 0.0, c, 0.0, -s, s, 0.0, c, 0.0, 0.0, -s, 0.0, c,
            ],
        );
        Self::centered(cov).expect("4x4 covariance")
    }

    pub fn n_modes(&self) -> usize {
        self.form.n_modes()
    }

    pub fn mean(&self) -> &RVector {
        &self.mean
    }

    pub fn covariance(&self) -> &RMatrix {
        &self.covariance
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn complex_structure(&self) -> ComplexStructure {
        complex_structure(self)
    }

    /// `sigma(a, b)` extended bilinearly to complex vectors.
    pub fn metric(&self, a: &PhaseVector, b: &PhaseVector) -> C64 {
        let s = to_complex(&self.covariance);
        (a.as_vector().transpose() * s * b.as_vector())[(0, 0)]
    }
}

/// The (restricted) complex structure of a state as a real matrix acting on
/// phase-space vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructure {
    matrix: RMatrix,
    form: SymplecticForm,
}

impl ComplexStructure {
    pub fn from_matrix(matrix: RMatrix) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.ncols(),
            });
        }
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!(
                "complex structure side must be even, got {dim}"
            )));
        }
        let form = SymplecticForm::new(dim / 2)?;
        Ok(ComplexStructure { matrix, form })
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn n_modes(&self) -> usize {
        self.form.n_modes()
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn apply(&self, v: &PhaseVector) -> PhaseVector {
        PhaseVector::from_vector_unchecked(to_complex(&self.matrix) * v.as_vector())
    }

    /// The covariance metric this map encodes.
    pub fn covariance(&self) -> RMatrix {
        covariance_of(self)
    }

    /// Largest entry of `J^2 + I`; zero exactly for pure states.
    pub fn square_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        (&self.matrix * &self.matrix + RMatrix::identity(n, n)).amax()
    }
}

pub fn complex_structure(state: &GaussianState) -> ComplexStructure {
    let w = omega_matrix(state.n_modes());
    ComplexStructure {
        matrix: -(w * state.covariance()) * HBAR,
        form: state.form.clone(),
    }
}

/// Inverse of [`complex_structure`]: `sigma = Omega J / hbar` (since `Omega^2 = -1`).
pub fn covariance_of(j: &ComplexStructure) -> RMatrix {
    omega_matrix(j.n_modes()) * j.matrix() / HBAR
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticPair {
    pub nu: f64,
    /// Eigenvector of `J` with eigenvalue `+i nu`, normalized to `<e, e> = 1`.
    pub mode: PhaseVector,
}

/// Symplectic eigenvalues in ascending order with their normal modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    pairs: Vec<SymplecticPair>,
}

impl SymplecticSpectrum {
    pub fn pairs(&self) -> &[SymplecticPair] {
        &self.pairs
    }

    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.nu).collect()
    }

    pub fn modes(&self) -> Vec<PhaseVector> {
        self.pairs.iter().map(|p| p.mode.clone()).collect()
    }

    pub(crate) fn map_modes(self, f: impl Fn(&PhaseVector) -> PhaseVector) -> Self {
        let pairs = self
            .pairs
            .into_iter()
            .map(|p| SymplecticPair {
                nu: p.nu,
                mode: f(&p.mode),
            })
            .collect();
        SymplecticSpectrum { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.pairs.first().map_or(f64::NAN, |p| p.nu)
    }

    /// Indices grouped into numerically degenerate eigenspaces.
    pub fn groups(&self) -> Vec<(f64, Vec<usize>)> {
        let tol = Tolerances::active().degeneracy;
        let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
        for (k, p) in self.pairs.iter().enumerate() {
            match out.last_mut() {
                Some((nu0, idx)) if (p.nu - *nu0).abs() <= tol * nu0.max(1.0) => idx.push(k),
                _ => out.push((p.nu, vec![k])),
            }
        }
        for (nu, idx) in out.iter_mut() {
            *nu = idx.iter().map(|&k| self.pairs[k].nu).sum::<f64>() / idx.len() as f64;
        }
        out
    }
}

/// Diagonalize `J` on its `+i` axis.
///
/// With `sigma = L L^T` (Cholesky), `L^T J L^{-T} = -L^T Omega L` is real
/// antisymmetric, so `-i L^T J L^{-T}` is Hermitian with eigenvalues `+-nu`.
/// Each positive eigenvector `v` maps back to `e = sqrt(nu) L^{-T} v`,
/// which satisfies `J e = i nu e` and `<e, e> = 1`; eigenvectors sharing a
/// degenerate eigenvalue come out mutually orthogonal.
pub fn symplectic_spectrum(j: &ComplexStructure) -> Result<SymplecticSpectrum> {
    let n = j.n_modes();
    let w = omega_matrix(n);
    let raw = &w * j.matrix() / HBAR;
    let asym = (&raw - raw.transpose()).norm();
    if asym > 1e-9 * raw.norm().max(1.0) {
        return Err(Error::NumericalDegeneracy(format!(
            "Omega J is not symmetric (defect {asym:.3e}); not a restricted complex structure"
        )));
    }
    let sigma = symmetrize(&raw);
    let chol = Cholesky::new(sigma).ok_or_else(|| {
        Error::NumericalDegeneracy("covariance metric is not positive definite".into())
    })?;
    let l = chol.l();
    let a = -(l.transpose() * &w * &l);
    let h = to_complex(&a) * (-I);
    let (values, vectors) = hermitian_eigh(&h);

    if values[n] <= 0.0 || values[n - 1] >= 0.0 {
        return Err(Error::NumericalDegeneracy(
            "spectrum does not split into +-nu pairs".into(),
        ));
    }
    let lt = to_complex(&l.transpose());
    let jc = to_complex(j.matrix());
    let jnorm = j.matrix().norm().max(1.0);
    let tol = Tolerances::active().eigen_residual;

    let mut pairs = Vec::with_capacity(n);
    for k in n..2 * n {
        let nu = values[k];
        let v: CVector = vectors.column(k).into_owned();
        let e = lt
            .solve_upper_triangular(&v)
            .ok_or_else(|| Error::NumericalDegeneracy("triangular solve failed".into()))?
            * C64::new(nu.sqrt(), 0.0);
        let residual = (&jc * &e - &e * (I * nu)).norm();
        if residual > tol * jnorm * e.norm() {
            return Err(Error::NumericalDegeneracy(format!(
                "eigen-residual {residual:.3e} too large"
            )));
        }
        let e = PhaseVector::from_vector_unchecked(e).with_canonical_phase();
        pairs.push(SymplecticPair { nu, mode: e });
    }
    Ok(SymplecticSpectrum { pairs })
}

/// `Tr rho^2 = prod_I 1 / nu_I`.
pub fn purity(j: &ComplexStructure) -> Result<f64> {
    let spec = symplectic_spectrum(j)?;
    Ok(spec.pairs.iter().map(|p| 1.0 / p.nu).product())
}

/// Whether the state encoded by `j` is pure under the active purity threshold.
pub fn is_pure(j: &ComplexStructure) -> Result<bool> {
    Ok(purity(j)? >= 1.0 - Tolerances::active().purity)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub is_symmetric: bool,
    pub is_positive_definite: bool,
    pub min_symplectic_eigenvalue: f64,
    pub is_physical: bool,
    pub is_pure: bool,
    /// `prod 1/nu` when the spectrum is defined.
    pub purity: Option<f64>,
}

/// Report on symmetry, positivity and the uncertainty principle. Never fails.
pub fn validate_state(state: &GaussianState) -> ValidityReport {
    let tol = Tolerances::active();
    let cov = state.covariance();
    let scale = cov.amax().max(1.0);
    let is_symmetric = (cov - cov.transpose()).amax() <= tol.equality * scale;
    let sym = symmetrize(cov);
    let is_positive_definite = Cholesky::new(sym.clone()).is_some();

    let sym_state = GaussianState {
        mean: state.mean.clone(),
        covariance: sym.clone(),
        form: state.form.clone(),
    };
    let spectrum = if is_positive_definite {
        symplectic_spectrum(&sym_state.complex_structure()).ok()
    } else {
        None
    };
    let (min_nu, purity) = match &spectrum {
        Some(s) => (
            s.min(),
            Some(s.pairs.iter().map(|p| 1.0 / p.nu).product::<f64>()),
        ),
        None => {
            let m = omega_matrix(state.n_modes()) * &sym;
            let eig = Schur::new(m).complex_eigenvalues();
            (
                eig.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min),
                None,
            )
        }
    };
    let is_physical = is_symmetric && is_positive_definite && min_nu >= 1.0 - tol.physical;
    let is_pure = is_physical && purity.is_some_and(|p| p >= 1.0 - tol.purity);
    ValidityReport {
        is_symmetric,
        is_positive_definite,
        min_symplectic_eigenvalue: min_nu,
        is_physical,
        is_pure,
        purity,
    }
}

/// Gaussian Wigner density
/// `W(R) = exp(-(R - mu)^T sigma^{-1} (R - mu)) / (pi^N sqrt(det sigma))`.
pub fn wigner_density(state: &GaussianState, point: &RVector) -> Result<f64> {
    let dim = 2 * state.n_modes();
    if point.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: point.len(),
        });
    }
    let chol = Cholesky::new(symmetrize(state.covariance())).ok_or(Error::SingularCovariance)?;
    let d = point - state.mean();
    let y = chol
        .l()
        .solve_lower_triangular(&d)
        .ok_or(Error::SingularCovariance)?;
    let quad = y.norm_squared();
    let sqrt_det: f64 = chol.l().diagonal().iter().product();
    Ok((-quad).exp() / (std::f64::consts::PI.powi(state.n_modes() as i32) * sqrt_det))
}

/// Maximum deviation of the Gram matrix of `{e_I, e_I*}` from `diag(1, ..., -1, ...)`.
pub(crate) fn orthonormality_defect(basis: &[PhaseVector]) -> f64 {
    let mut full: Vec<&CVector> = basis.iter().map(PhaseVector::as_vector).collect();
    let conj: Vec<CVector> = basis.iter().map(|v| v.conj().into_vector()).collect();
    full.extend(conj.iter());
    let n = basis.len();
    let mut defect: f64 = 0.0;
    for (a, va) in full.iter().enumerate() {
        for (b, vb) in full.iter().enumerate() {
            let target = if a != b {
                0.0
            } else if a < n {
                1.0
            } else {
                -1.0
            };
            defect = defect.max((product(va, vb) - C64::new(target, 0.0)).norm());
        }
    }
    defect
}

/// Build `J = sum_I i nu_I (e_I <e_I, .> + e_I* <e_I*, .>)` and return the
/// zero-mean state it encodes. `basis` defaults to [`annihilation_basis`](crate::phase_space::annihilation_basis).
pub fn state_from_spectrum(nus: &[f64], basis: Option<&[PhaseVector]>) -> Result<GaussianState> {
    let n = nus.len();
    SymplecticForm::new(n)?;
    if let Some(nu) = nus.iter().find(|&&nu| !(nu > 0.0 && nu.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "symplectic eigenvalue {nu} is not positive"
        )));
    }
    let default;
    let basis = match basis {
        Some(b) => b,
        None => {
            default = crate::phase_space::annihilation_basis(n);
            &default
        }
    };
    if basis.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: basis.len(),
        });
    }
    if let Some(v) = basis.iter().find(|v| v.dim() != 2 * n) {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: v.dim(),
        });
    }
    let residual = orthonormality_defect(basis);
    if residual > 1e-9 {
        return Err(Error::NonOrthonormalBasis { residual });
    }
    // e <e,.> + e* <e*,.> = (e e^dag + e* e^T) i W, so i nu times it is -2 nu Re(e e^dag) W
    let w = omega_matrix(n);
    let mut j = RMatrix::zeros(2 * n, 2 * n);
    for (nu, e) in nus.iter().zip(basis) {
        let outer: CMatrix = e.as_vector() * e.as_vector().adjoint();
        j += outer.map(|z| z.re) * &w * (-2.0 * nu);
    }
    let j = ComplexStructure::from_matrix(j)?;
    GaussianState::centered(symmetrize(&covariance_of(&j)))
}
