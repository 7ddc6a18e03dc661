//! Partial transposition, logarithmic negativity and entanglement partners.

use crate::error::{Error, Result};
use crate::linalg::symmetrize;
use crate::partners::{complement_span, physical_spectrum, PartnerKind, PartnerResult};
use crate::phase_space::{omega_matrix, CVector, PhaseVector, RMatrix};
use crate::state::{
    covariance_of, symplectic_spectrum, ComplexStructure, GaussianState, SymplecticPair,
};
use crate::subsystem::{direct_sum, reduce, reduced_state, ModeSubspace};
use crate::tolerance::Tolerances;

/// Momentum flip on a subsystem, `p_I -> -p_I` in its Darboux frame, and
/// the resulting partially transposed complex structure
/// `J^T = -Omega T^T sigma T`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialTranspose {
    flipped: ModeSubspace,
    t: RMatrix,
    covariance: RMatrix,
    structure: ComplexStructure,
}

impl PartialTranspose {
    pub fn flipped(&self) -> &ModeSubspace {
        &self.flipped
    }

    /// The flip `T = 1 - 2 sum_I p_I x_I^T Omega`.
    pub fn flip(&self) -> &RMatrix {
        &self.t
    }

    /// `T^T sigma T`.
    pub fn covariance(&self) -> &RMatrix {
        &self.covariance
    }

    pub fn complex_structure(&self) -> &ComplexStructure {
        &self.structure
    }

    pub fn matrix(&self) -> &RMatrix {
        self.structure.matrix()
    }
}

pub fn partial_transpose(j: &ComplexStructure, a: &ModeSubspace) -> Result<PartialTranspose> {
    if a.n_modes() != j.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: j.n_modes(),
            found: a.n_modes(),
        });
    }
    let n = j.n_modes();
    let w = omega_matrix(n);
    let f = a.darboux_frame();
    let mut t = RMatrix::identity(2 * n, 2 * n);
    for k in 0..a.mode_count() {
        let x = f.column(2 * k);
        let p = f.column(2 * k + 1);
        t -= p * (x.transpose() * &w) * 2.0;
    }
    let covariance = symmetrize(&(t.transpose() * covariance_of(j) * &t));
    let structure = ComplexStructure::from_matrix(-(&w * &covariance))?;
    Ok(PartialTranspose {
        flipped: a.clone(),
        t,
        covariance,
        structure,
    })
}

/// Symplectic spectrum of a partially transposed state, which may dip below one.
#[derive(Debug, Clone, PartialEq)]
pub struct PTSpectrum {
    pairs: Vec<SymplecticPair>,
    subunity: usize,
}

impl PTSpectrum {
    pub fn pairs(&self) -> &[SymplecticPair] {
        &self.pairs
    }

    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.nu).collect()
    }

    /// Eigenvalues below `1 - tol`, ascending.
    pub fn subunity(&self) -> &[SymplecticPair] {
        &self.pairs[..self.subunity]
    }

    pub fn subunity_values(&self) -> Vec<f64> {
        self.subunity().iter().map(|p| p.nu).collect()
    }

    pub fn is_non_ppt(&self) -> bool {
        self.subunity > 0
    }

    /// `sum max(0, -log2 nu)` over the spectrum.
    pub fn log_negativity(&self) -> f64 {
        self.subunity().iter().map(|p| -p.nu.log2()).sum()
    }
}

impl PTSpectrum {
    /// `pairs` must be sorted ascending.
    pub(crate) fn from_pairs(pairs: Vec<SymplecticPair>) -> Self {
        let cut = 1.0 - Tolerances::active().subunity;
        let subunity = pairs.iter().take_while(|p| p.nu < cut).count();
        PTSpectrum { pairs, subunity }
    }
}

pub fn pt_spectrum(pt: &PartialTranspose) -> Result<PTSpectrum> {
    let spec = symplectic_spectrum(pt.complex_structure())?;
    Ok(PTSpectrum::from_pairs(spec.pairs().to_vec()))
}

fn spectrum_for(j: &ComplexStructure, a: &ModeSubspace) -> Result<PTSpectrum> {
    pt_spectrum(&partial_transpose(j, a)?)
}

pub fn log_negativity(state: &GaussianState, a: &ModeSubspace) -> Result<f64> {
    Ok(spectrum_for(&state.complex_structure(), a)?.log_negativity())
}

pub fn is_non_ppt(j: &ComplexStructure, a: &ModeSubspace) -> Result<bool> {
    Ok(spectrum_for(j, a)?.is_non_ppt())
}

/// Entanglement partner `Pi_A^perp E^{T_A}`, with `E^{T_A}` spanned by the
/// subunity eigenvectors of `J^{T_A}` and their conjugates.
pub fn entanglement_partner(a: &ModeSubspace, j: &ComplexStructure) -> Result<PartnerResult> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("subsystem has no modes".into()));
    }
    physical_spectrum(j)?;
    let spec = spectrum_for(j, a)?;
    let count = spec.subunity().len();
    if count > a.mode_count() {
        return Err(Error::InternalConsistency(format!(
            "{count} subunity eigenvalues for a {}-mode subsystem",
            a.mode_count()
        )));
    }
    if count == 0 {
        return Ok(PartnerResult::empty(a.n_modes(), PartnerKind::Entanglement));
    }
    let vectors: Vec<CVector> = spec
        .subunity()
        .iter()
        .map(|p| p.mode.as_vector().clone())
        .collect();
    let partner = complement_span(a, &vectors)?;
    if partner.mode_count() != count {
        return Err(Error::InternalConsistency(format!(
            "entanglement partner has {} modes for {count} subunity eigenvalues",
            partner.mode_count()
        )));
    }
    let restricted = restricted_pt_spectrum(j, a, &partner)?;
    let diagnostics = spectrum_deviation(&spec.subunity_values(), &restricted.subunity_values());
    Ok(PartnerResult {
        mode_count: count,
        partner,
        kind: PartnerKind::Entanglement,
        empty: false,
        diagnostics,
    })
}

/// Largest difference between two ascending subunity lists; an eigenvalue
/// missing from one side counts as its distance to one.
pub(crate) fn spectrum_deviation(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| (a.get(k).copied().unwrap_or(1.0) - b.get(k).copied().unwrap_or(1.0)).abs())
        .fold(0.0, f64::max)
}

/// Partially transposed spectrum of the reduced state on `a + partner`, with
/// the reduction taken before the transposition.
pub fn restricted_pt_spectrum(
    j: &ComplexStructure,
    a: &ModeSubspace,
    partner: &ModeSubspace,
) -> Result<PTSpectrum> {
    let joint = direct_sum(a, partner)?;
    let reduced = reduce(j, &joint)?;
    let a_inner = joint.coordinates_of(a)?;
    spectrum_for(&reduced, &a_inner)
}

/// `E_N` of the reduced state on `a + partner` with respect to `a`.
pub fn localized_log_negativity(
    state: &GaussianState,
    a: &ModeSubspace,
    partner: &ModeSubspace,
) -> Result<f64> {
    let joint = direct_sum(a, partner)?;
    let reduced = reduced_state(state, &joint)?;
    log_negativity(&reduced, &joint.coordinates_of(a)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubunityReport {
    pub count: usize,
    pub n_a: usize,
    /// `n_a - count`.
    pub margin: usize,
}

/// Check that `J^{T_A}` has at most `N_A` subunity symplectic eigenvalues.
pub fn subunity_count_check(j: &ComplexStructure, a: &ModeSubspace) -> Result<SubunityReport> {
    let count = spectrum_for(j, a)?.subunity().len();
    let n_a = a.mode_count();
    if count > n_a {
        return Err(Error::InternalConsistency(format!(
            "{count} subunity eigenvalues exceed N_A = {n_a}"
        )));
    }
    Ok(SubunityReport {
        count,
        n_a,
        margin: n_a - count,
    })
}

/// Modes of the subunity eigenvectors, for callers that need `E^{T_A}` itself.
pub fn subunity_space(j: &ComplexStructure, a: &ModeSubspace) -> Result<Vec<PhaseVector>> {
    Ok(spectrum_for(j, a)?
        .subunity()
        .iter()
        .map(|p| p.mode.clone())
        .collect())
}
