//! Partner subsystems: the purifying partner of a mode in a pure state and
//! the correlation partner in a mixed state.

use crate::error::{Error, Result};
use crate::linalg::{complex_rank, product_metric, to_complex};
use crate::phase_space::{CMatrix, CVector, PhaseVector};
use crate::state::{symplectic_spectrum, ComplexStructure, SymplecticSpectrum};
use crate::subsystem::{direct_sum, gram_schmidt_in, is_uncorrelated, reduce, ModeSubspace};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartnerKind {
    Pure,
    Correlation,
    Entanglement,
}

impl PartnerKind {
    pub fn name(self) -> &'static str {
        match self {
            PartnerKind::Pure => "pure",
            PartnerKind::Correlation => "correlation",
            PartnerKind::Entanglement => "entanglement",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartnerResult {
    pub partner: ModeSubspace,
    pub kind: PartnerKind,
    pub mode_count: usize,
    /// Set when `A` has nothing to pair with (uncorrelated, or PPT for
    /// entanglement partners); `partner` is then the zero-mode subspace.
    pub empty: bool,
    /// Pure and correlation partners: the commutator residual of
    /// `A + partner` (see [`is_uncorrelated`]). Entanglement partners: the
    /// largest deviation between the subunity partially transposed spectrum
    /// restricted to `A + partner` and the global one.
    pub diagnostics: f64,
}

impl PartnerResult {
    pub(crate) fn empty(n_modes: usize, kind: PartnerKind) -> Self {
        PartnerResult {
            partner: ModeSubspace::empty(n_modes),
            kind,
            mode_count: 0,
            empty: true,
            diagnostics: 0.0,
        }
    }
}

/// Spectrum of `J` after checking that every symplectic eigenvalue is at least one.
pub(crate) fn physical_spectrum(j: &ComplexStructure) -> Result<SymplecticSpectrum> {
    let spec = symplectic_spectrum(j)?;
    let min_nu = spec.min();
    if min_nu < 1.0 - Tolerances::active().physical {
        return Err(Error::Unphysical { min_nu });
    }
    Ok(spec)
}

fn check_subsystem(a: &ModeSubspace, j: &ComplexStructure) -> Result<()> {
    if a.n_modes() != j.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: j.n_modes(),
            found: a.n_modes(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidArgument("subsystem has no modes".into()));
    }
    Ok(())
}

/// Project onto the symplectic complement of `a` and orthonormalize.
pub(crate) fn complement_span(a: &ModeSubspace, vectors: &[CVector]) -> Result<ModeSubspace> {
    let comp = to_complex(&a.projector()).map(|z| -z)
        + CMatrix::identity(2 * a.n_modes(), 2 * a.n_modes());
    let projected: Vec<PhaseVector> = vectors
        .iter()
        .map(|v| PhaseVector::from_vector_unchecked(&comp * v))
        .collect();
    gram_schmidt_in(a.n_modes(), &projected)
}

fn uncorrelated_residual(
    a: &ModeSubspace,
    partner: &ModeSubspace,
    j: &ComplexStructure,
) -> Result<f64> {
    Ok(is_uncorrelated(&direct_sum(a, partner)?, j)?.residual)
}

/// Partner of `a` in a pure state: `Pi_A^perp (J Gamma_A)`.
///
/// Only the correlated part of `a` contributes: the normal modes of the
/// reduced state with `nu > 1` are mapped by `J` and projected out of `a`.
pub fn pure_partner(a: &ModeSubspace, j: &ComplexStructure) -> Result<PartnerResult> {
    check_subsystem(a, j)?;
    let tol = Tolerances::active();
    let spec = physical_spectrum(j)?;
    let purity: f64 = spec.values().iter().map(|nu| 1.0 / nu).product();
    if purity < 1.0 - tol.purity {
        return Err(Error::WrongPurity { purity });
    }
    let reduced = symplectic_spectrum(&reduce(j, a)?)?;
    let correlated: Vec<_> = reduced
        .pairs()
        .iter()
        .filter(|p| p.nu > 1.0 + tol.correlated)
        .collect();
    if correlated.is_empty() {
        return Ok(PartnerResult::empty(a.n_modes(), PartnerKind::Pure));
    }
    let jc = to_complex(j.matrix());
    let images: Vec<CVector> = correlated
        .iter()
        .map(|p| &jc * a.embed(&p.mode).as_vector())
        .collect();
    let partner = complement_span(a, &images)?;
    if partner.mode_count() != correlated.len() {
        return Err(Error::InternalConsistency(format!(
            "pure partner has {} modes but {} reduced eigenvalues exceed one",
            partner.mode_count(),
            correlated.len()
        )));
    }
    let diagnostics = uncorrelated_residual(a, &partner, j)?;
    Ok(PartnerResult {
        mode_count: partner.mode_count(),
        partner,
        kind: PartnerKind::Pure,
        empty: false,
        diagnostics,
    })
}

/// Projectors onto the eigenspaces of `J` belonging to one symplectic eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenspaceGroup {
    pub nu: f64,
    /// `sum_mu e_mu <e_mu, .>` over the `+i nu` eigenvectors.
    pub plus: CMatrix,
    /// `-sum_mu e_mu* <e_mu*, .>`.
    pub minus: CMatrix,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenspaceProjectors {
    pub groups: Vec<EigenspaceGroup>,
}

impl EigenspaceProjectors {
    /// `sum_I (Pi_I^+ + Pi_I^-)`, which is the identity.
    pub fn total(&self) -> CMatrix {
        let dim = self.groups.first().map_or(0, |g| g.plus.nrows());
        self.groups
            .iter()
            .fold(CMatrix::zeros(dim, dim), |acc, g| acc + &g.plus + &g.minus)
    }
}

pub fn eigenspace_projectors(j: &ComplexStructure) -> Result<EigenspaceProjectors> {
    let spec = symplectic_spectrum(j)?;
    let dim = 2 * j.n_modes();
    let metric = product_metric(j.n_modes());
    let groups = spec
        .groups()
        .into_iter()
        .map(|(nu, idx)| {
            let mut plus = CMatrix::zeros(dim, dim);
            let mut minus = CMatrix::zeros(dim, dim);
            for &k in &idx {
                let e = spec.pairs()[k].mode.as_vector();
                plus += e * e.adjoint();
                minus -= e.conjugate() * e.transpose();
            }
            EigenspaceGroup {
                nu,
                plus: plus * &metric,
                minus: minus * &metric,
                multiplicity: idx.len(),
            }
        })
        .collect();
    Ok(EigenspaceProjectors { groups })
}

/// Correlation partner of `a`: `Pi_A^perp [ sum_I (Pi_I^+ Gamma_A + Pi_I^- Gamma_A) ]`.
///
/// The number of modes is `sum_I dim(Pi_I^+ Gamma_A) - N_A`, checked against
/// the constructed span.
pub fn correlation_partner(a: &ModeSubspace, j: &ComplexStructure) -> Result<PartnerResult> {
    check_subsystem(a, j)?;
    physical_spectrum(j)?;
    let tol = Tolerances::active();
    let projectors = eigenspace_projectors(j)?;
    let basis = a.basis();
    let mut plus_images = Vec::new();
    let mut all_images = Vec::new();
    for g in &projectors.groups {
        for xi in &basis {
            let p = &g.plus * xi.as_vector();
            let m = &g.minus * xi.as_vector();
            plus_images.push(p.clone());
            all_images.push(p);
            all_images.push(m);
        }
    }
    let d_plus = complex_rank(&plus_images, 2 * a.n_modes(), tol.rank);
    let expected = d_plus.checked_sub(a.mode_count()).ok_or_else(|| {
        Error::InternalConsistency(format!(
            "dim Pi+ Gamma_A = {d_plus} is below N_A = {}",
            a.mode_count()
        ))
    })?;
    if expected == 0 {
        return Ok(PartnerResult::empty(a.n_modes(), PartnerKind::Correlation));
    }
    let partner = complement_span(a, &all_images)?;
    if partner.mode_count() != expected {
        return Err(Error::InternalConsistency(format!(
            "correlation partner has {} modes, expected {expected}",
            partner.mode_count()
        )));
    }
    let diagnostics = uncorrelated_residual(a, &partner, j)?;
    Ok(PartnerResult {
        mode_count: expected,
        partner,
        kind: PartnerKind::Correlation,
        empty: false,
        diagnostics,
    })
}
