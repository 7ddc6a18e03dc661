//! Partners for pure fermionic Gaussian states.
//!
//! Here the metric is fixed (`g = 1` in a Majorana basis) and the state
//! supplies the two-form `omega`; the complex structure is `J = -omega g`.
//! Projectors are ordinary orthogonal projectors with respect to `g`, and
//! subsystems are real even-dimensional subspaces.

use crate::error::{Error, Result};
use crate::linalg::orthonormal_range;
use crate::phase_space::{RMatrix, RVector};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct FermionicState {
    n_modes: usize,
    omega: RMatrix,
}

impl FermionicState {
    pub fn new(omega: RMatrix) -> Result<Self> {
        let dim = omega.nrows();
        if omega.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: omega.ncols(),
            });
        }
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!(
                "two-form side must be even and positive, got {dim}"
            )));
        }
        let asym = (&omega + omega.transpose()).amax();
        if asym > Tolerances::active().equality * omega.amax().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "two-form is not antisymmetric (defect {asym:.3e})"
            )));
        }
        Ok(FermionicState {
            n_modes: dim / 2,
            omega,
        })
    }

    /// The Fock vacuum: `omega` is the standard block form.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        Self::new(crate::phase_space::omega_matrix(n_modes))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn omega(&self) -> &RMatrix {
        &self.omega
    }

    /// The metric, always the identity.
    pub fn metric(&self) -> RMatrix {
        RMatrix::identity(2 * self.n_modes, 2 * self.n_modes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionicComplexStructure {
    matrix: RMatrix,
}

impl FermionicComplexStructure {
    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }
}

/// `J = -omega g`; fails unless `J^2 = -1` within `1e-9`.
pub fn fermionic_complex_structure(state: &FermionicState) -> Result<FermionicComplexStructure> {
    let j = -(state.omega() * state.metric());
    let dim = j.nrows();
    let defect = (&j * &j + RMatrix::identity(dim, dim)).amax();
    if defect > 1e-9 {
        return Err(Error::NotPure(format!(
            "J^2 + 1 has entries up to {defect:.3e}"
        )));
    }
    Ok(FermionicComplexStructure { matrix: j })
}

/// Real even-dimensional subspace, stored as orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionicSubspace {
    basis: RMatrix,
}

impl FermionicSubspace {
    pub fn new(vectors: &[RVector]) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidArgument("no vectors".into()));
        };
        let dim = first.len();
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let m = RMatrix::from_columns(vectors);
        Self::from_range(&m)
    }

    fn from_range(m: &RMatrix) -> Result<Self> {
        let basis = orthonormal_range(m, Tolerances::active().rank);
        if !basis.ncols().is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!(
                "subspace has odd dimension {}",
                basis.ncols()
            )));
        }
        Ok(FermionicSubspace { basis })
    }

    /// Canonical Majorana pairs `(2k, 2k + 1)` for the listed modes.
    pub fn modes(n_modes: usize, indices: &[usize]) -> Result<Self> {
        let dim = 2 * n_modes;
        let mut vectors = Vec::new();
        for &k in indices {
            if k >= n_modes {
                return Err(Error::InvalidArgument(format!("mode {k} out of range")));
            }
            for slot in [2 * k, 2 * k + 1] {
                let mut v = RVector::zeros(dim);
                v[slot] = 1.0;
                vectors.push(v);
            }
        }
        Self::new(&vectors)
    }

    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.ncols() == 0
    }

    /// Orthogonal projector `Q Q^T`.
    pub fn projector(&self) -> RMatrix {
        &self.basis * self.basis.transpose()
    }

    /// Frobenius distance between projectors.
    pub fn distance(&self, other: &FermionicSubspace) -> f64 {
        (self.projector() - other.projector()).norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionicPartner {
    pub partner: FermionicSubspace,
    /// Set when `J` already maps `A` into itself.
    pub empty: bool,
}

/// `Pi_A^perp (J Gamma_A)` with the `g`-orthogonal projector.
pub fn fermionic_partner(
    a: &FermionicSubspace,
    j: &FermionicComplexStructure,
) -> Result<FermionicPartner> {
    let dim = j.matrix().nrows();
    if a.basis.nrows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: a.basis.nrows(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidArgument("subsystem has no modes".into()));
    }
    let images = (RMatrix::identity(dim, dim) - a.projector()) * j.matrix() * &a.basis;
    // Images of uncorrelated directions are rounding noise; compare to the J images themselves.
    let scale = (j.matrix() * &a.basis).norm();
    if images.norm() <= Tolerances::active().uncorrelated * scale {
        return Ok(FermionicPartner {
            partner: FermionicSubspace {
                basis: RMatrix::zeros(dim, 0),
            },
            empty: true,
        });
    }
    let partner = FermionicSubspace::from_range(&images)?;
    Ok(FermionicPartner {
        partner,
        empty: false,
    })
}

/// `||P J - J P||_F / ||J||_F` for the subspace projector.
pub fn fermionic_invariance_residual(
    sub: &FermionicSubspace,
    j: &FermionicComplexStructure,
) -> f64 {
    let p = sub.projector();
    (&p * j.matrix() - j.matrix() * &p).norm() / j.matrix().norm()
}

/// Join two `g`-orthogonal subspaces.
pub fn fermionic_direct_sum(
    a: &FermionicSubspace,
    b: &FermionicSubspace,
) -> Result<FermionicSubspace> {
    let overlap = (a.basis.transpose() * &b.basis).amax();
    if overlap > 1e-9 {
        return Err(Error::NotOrthogonal { residual: overlap });
    }
    let mut cols: Vec<RVector> = a.basis.column_iter().map(|c| c.into_owned()).collect();
    cols.extend(b.basis.column_iter().map(|c| c.into_owned()));
    FermionicSubspace::new(&cols)
}
