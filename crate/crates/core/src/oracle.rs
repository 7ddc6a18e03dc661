//! Brute-force verifiers written directly against the definitions.
//!
//! Nothing here reuses the projector, Gram-Schmidt or eigen-solver code of
//! the main modules. Subsystems are handled through real spanning sets: a
//! hand-written modified Gram-Schmidt gives orthonormal spans and Euclidean
//! complements, a pivoted sequential symplectic Gram-Schmidt turns them into
//! Darboux pairs, and spectra come from a general (non-symmetric) Schur
//! decomposition instead of a Hermitian eigen-solve.

use crate::entanglement::PTSpectrum;
use crate::error::{Error, Result};
use crate::partners::PartnerKind;
use crate::phase_space::{CMatrix, CVector, PhaseVector, RMatrix, RVector, C64, HBAR};
use crate::state::{GaussianState, SymplecticPair};
use crate::subsystem::ModeSubspace;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: &str, residual: f64, tolerance: f64) {
        let residual = residual.abs();
        self.checks.push(Check {
            name: name.to_string(),
            passed: residual <= tolerance,
            residual,
            tolerance,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Tolerance on oracle-vs-main spectral agreement.
const SPECTRAL_AGREEMENT: f64 = 1e-8;

fn form(n: usize) -> RMatrix {
    let mut w = RMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Candidates whose
/// residual falls below `rel_tol` of their original norm are dropped.
fn mgs(seed: &[RVector], candidates: &[RVector], rel_tol: f64) -> Vec<RVector> {
    let mut basis: Vec<RVector> = seed.to_vec();
    let start = basis.len();
    for c in candidates {
        let n0 = c.norm();
        if n0 == 0.0 {
            continue;
        }
        let mut v = c.clone();
        for _ in 0..2 {
            for q in &basis {
                let d = q.dot(&v);
                v.axpy(-d, q, 1.0);
            }
        }
        let n1 = v.norm();
        if n1 > rel_tol * n0 {
            basis.push(v / n1);
        }
    }
    basis.split_off(start)
}

/// Real spanning vectors `Re gamma, Im gamma` of a subsystem.
fn real_vectors(sub: &ModeSubspace) -> Vec<RVector> {
    sub.modes()
        .iter()
        .flat_map(|g| [g.real_part(), g.imag_part()])
        .collect()
}

/// Sequential symplectic Gram-Schmidt with pivoting on `|w_i^T W w_j|`.
/// Returns columns `(x_1, p_1, ...)` with `x_k^T W p_k = 1` and all other
/// pairings zero.
fn darboux_pairs(pool: Vec<RVector>, w: &RMatrix) -> Result<Vec<RVector>> {
    if !pool.len().is_multiple_of(2) {
        return Err(Error::DegenerateSubspace(format!(
            "odd real dimension {}",
            pool.len()
        )));
    }
    let scale = pool
        .iter()
        .map(|v| v.norm_squared())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut pool = pool;
    let mut out = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let mut best = (0, 0, 0.0f64);
        for i in 0..pool.len() {
            let wi = pool[i].transpose() * w;
            for j in (i + 1)..pool.len() {
                let s = (&wi * &pool[j])[(0, 0)];
                if s.abs() > best.2.abs() {
                    best = (i, j, s);
                }
            }
        }
        let (i, j, s) = best;
        if s.abs() <= 1e-10 * scale {
            return Err(Error::DegenerateSubspace(
                "form vanishes on the remaining vectors".into(),
            ));
        }
        let pj = pool.swap_remove(j);
        let xi = pool.swap_remove(i);
        let mut x = xi;
        let mut p = pj / s;
        // balance the pair so that neither vector dominates the frame
        let r = (p.norm() / x.norm()).sqrt();
        x *= r;
        p /= r;
        for v in pool.iter_mut() {
            let a = (p.transpose() * w * &*v)[(0, 0)];
            let b = (x.transpose() * w * &*v)[(0, 0)];
            *v += &x * a - &p * b;
        }
        out.push(x);
        out.push(p);
    }
    Ok(out)
}

/// A symplectic basis adapted to `blocks[0] ⊕ blocks[1] ⊕ ... ⊕ complement`.
/// Later blocks are first made symplectically orthogonal to earlier ones.
struct AdaptedBasis {
    s: RMatrix,
    /// Real dimension of each block, complement last.
    dims: Vec<usize>,
}

impl AdaptedBasis {
    fn new(n_modes: usize, blocks: &[Vec<RVector>]) -> Result<Self> {
        let dim = 2 * n_modes;
        let w = form(n_modes);
        let mut cols: Vec<RVector> = Vec::new();
        let mut dims = Vec::new();
        for b in blocks {
            let projected: Vec<RVector> = b
                .iter()
                .map(|v| {
                    let mut v = v.clone();
                    for pair in cols.chunks(2) {
                        let (x, p) = (&pair[0], &pair[1]);
                        let a = (p.transpose() * &w * &v)[(0, 0)];
                        let c = (x.transpose() * &w * &v)[(0, 0)];
                        v += x * a - p * c;
                    }
                    v
                })
                .collect();
            let pairs = darboux_pairs(mgs(&[], &projected, 1e-9), &w)?;
            dims.push(pairs.len());
            cols.extend(pairs);
        }
        // u is symplectically orthogonal to the blocks iff u is Euclidean-orthogonal to W * blocks.
        let wspan = mgs(&[], &cols.iter().map(|v| &w * v).collect::<Vec<_>>(), 1e-9);
        let unit: Vec<RVector> = (0..dim)
            .map(|k| {
                let mut e = RVector::zeros(dim);
                e[k] = 1.0;
                e
            })
            .collect();
        let comp = mgs(&wspan, &unit, 1e-8);
        if cols.len() + comp.len() != dim {
            return Err(Error::NumericalDegeneracy(format!(
                "adapted basis has {} + {} real vectors in dimension {dim}",
                cols.len(),
                comp.len()
            )));
        }
        let pairs = darboux_pairs(comp, &w)?;
        dims.push(pairs.len());
        cols.extend(pairs);
        let s = RMatrix::from_columns(&cols);
        let defect = (s.transpose() * &w * &s - &w).amax();
        if defect > 1e-8 * s.norm().powi(2) {
            return Err(Error::NumericalDegeneracy(format!(
                "adapted basis is not symplectic ({defect:.3e})"
            )));
        }
        Ok(AdaptedBasis { s, dims })
    }

    /// `S^T sigma S`.
    fn transform(&self, sigma: &RMatrix) -> RMatrix {
        let m = self.s.transpose() * sigma * &self.s;
        (&m + m.transpose()) * 0.5
    }

    /// `S^{-1} = -W S^T W`.
    fn inverse(&self) -> RMatrix {
        let w = form(self.s.nrows() / 2);
        -(&w * self.s.transpose() * &w)
    }
}

/// Symplectic eigenvalues of a positive matrix from the Schur form of `W M`.
fn schur_symplectic_values(m: &RMatrix) -> Vec<f64> {
    let w = form(m.nrows() / 2);
    let eig = (&w * m / HBAR).complex_eigenvalues();
    let mut nus: Vec<f64> = eig.iter().filter(|z| z.im > 0.0).map(|z| z.im).collect();
    // Degenerate values can come out with tiny real parts and odd sign splits;
    // fall back to the absolute values of all imaginary parts.
    if nus.len() != m.nrows() / 2 {
        let mut all: Vec<f64> = eig.iter().map(|z| z.im.abs()).collect();
        all.sort_by(f64::total_cmp);
        nus = all.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect();
    }
    nus.sort_by(f64::total_cmp);
    nus
}

fn flip_first(m: &RMatrix, modes: usize) -> RMatrix {
    let mut t = RVector::from_element(m.nrows(), 1.0);
    for k in 0..modes {
        t[2 * k + 1] = -1.0;
    }
    let t = RMatrix::from_diagonal(&t);
    &t * m * &t
}

fn block(m: &RMatrix, start: usize, len: usize) -> RMatrix {
    m.view((start, start), (len, len)).into_owned()
}

/// `|sigma'_AC| / sqrt(|sigma'_AA| |sigma'_CC|)` in an adapted basis.
fn blockform_residual(state: &GaussianState, vectors: Vec<RVector>) -> Result<f64> {
    let basis = AdaptedBasis::new(state.n_modes(), &[vectors])?;
    let sp = basis.transform(state.covariance());
    let (da, dc) = (basis.dims[0], basis.dims[1]);
    if da == 0 || dc == 0 {
        return Ok(0.0);
    }
    let off = sp.view((0, da), (da, dc)).norm();
    let diag = (block(&sp, 0, da).norm() * block(&sp, da, dc).norm()).sqrt();
    Ok(off / diag)
}

/// Checks that `sigma` splits into `A` and complement blocks.
pub fn verify_uncorrelated_blockform(
    state: &GaussianState,
    a: &ModeSubspace,
) -> Result<VerificationReport> {
    check_dims(state, a)?;
    let mut report = VerificationReport::default();
    report.push(
        "blockform",
        blockform_residual(state, real_vectors(a))?,
        Tolerances::active().uncorrelated,
    );
    Ok(report)
}

/// Partially transposed spectrum from an explicit `T sigma' T` in an
/// adapted basis. Eigenvectors are null vectors of `J^T - i nu` from a
/// complex SVD, orthonormalized within each cluster.
pub fn dense_pt_eigensolve(state: &GaussianState, a: &ModeSubspace) -> Result<PTSpectrum> {
    check_dims(state, a)?;
    let n = state.n_modes();
    let basis = AdaptedBasis::new(n, &[real_vectors(a)])?;
    let spt = flip_first(&basis.transform(state.covariance()), a.mode_count());
    let nus = schur_symplectic_values(&spt);

    let sinv = basis.inverse();
    let ambient = sinv.transpose() * &spt * &sinv;
    let w = form(n);
    let jt = (-(&w * ambient) / HBAR).map(|x| C64::new(x, 0.0));
    let wc = w.map(|x| C64::new(x, 0.0));
    let dot =
        |a: &CVector, b: &CVector| -> C64 { (a.adjoint() * &wc * b)[(0, 0)] * C64::new(0.0, 1.0) };

    let mut pairs = Vec::with_capacity(n);
    let mut k = 0;
    while k < nus.len() {
        let mut end = k + 1;
        while end < nus.len() && nus[end] - nus[end - 1] <= 1e-6 * nus[end].max(1.0) {
            end += 1;
        }
        let m = end - k;
        let nu = nus[k..end].iter().sum::<f64>() / m as f64;
        let shifted = &jt - CMatrix::identity(2 * n, 2 * n) * C64::new(0.0, nu);
        let svd = shifted.svd(false, true);
        let vt = svd
            .v_t
            .ok_or_else(|| Error::InternalConsistency("SVD without right vectors".into()))?;
        // singular values come out descending; the null space is at the end
        let mut found: Vec<CVector> = Vec::new();
        for r in (2 * n - m)..(2 * n) {
            let mut v: CVector = vt.row(r).adjoint();
            for e in &found {
                let c = dot(e, &v);
                v -= e * c;
            }
            let nn = dot(&v, &v);
            if nn.re <= 0.0 {
                return Err(Error::InternalConsistency(format!(
                    "null vector at nu = {nu} has non-positive norm"
                )));
            }
            found.push(v / C64::new(nn.re.sqrt(), 0.0));
        }
        for (off, v) in found.into_iter().enumerate() {
            pairs.push(SymplecticPair {
                nu: nus[k + off],
                mode: PhaseVector::new(v)?.with_canonical_phase(),
            });
        }
        k = end;
    }
    Ok(PTSpectrum::from_pairs(pairs))
}

/// Subunity values of the state restricted to `a ⊕ p`, partially
/// transposed on `a`.
fn restricted_subunity(
    state: &GaussianState,
    a: &ModeSubspace,
    p: &ModeSubspace,
) -> Result<Vec<f64>> {
    let basis = AdaptedBasis::new(state.n_modes(), &[real_vectors(a), real_vectors(p)])?;
    let len = basis.dims[0] + basis.dims[1];
    let sp = block(&basis.transform(state.covariance()), 0, len);
    let cut = 1.0 - Tolerances::active().subunity;
    Ok(schur_symplectic_values(&flip_first(&sp, a.mode_count()))
        .into_iter()
        .filter(|&v| v < cut)
        .collect())
}

fn subunity_mismatch(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| (a.get(k).unwrap_or(&1.0) - b.get(k).unwrap_or(&1.0)).abs())
        .fold(0.0, f64::max)
}

/// Real dimension of the smallest `J`-invariant subspace containing `A`.
fn krylov_dimension(state: &GaussianState, a: &ModeSubspace) -> usize {
    let n = state.n_modes();
    let j = -(form(n) * state.covariance()) / HBAR;
    let mut basis = mgs(&[], &real_vectors(a), 1e-9);
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let images: Vec<RVector> = frontier.iter().map(|v| &j * v).collect();
        frontier = mgs(&basis, &images, 1e-9);
        basis.extend(frontier.iter().cloned());
    }
    basis.len()
}

/// Largest relative distance of the vectors from the real span `q`.
fn containment_residual(vectors: &[CVector], q: &[RVector]) -> f64 {
    let mut worst: f64 = 0.0;
    for v in vectors {
        let norm = v.norm();
        if norm < 1e-12 {
            continue;
        }
        let mut r = v.clone();
        for b in q {
            let bc = b.map(|x| C64::new(x, 0.0));
            let c = (bc.transpose() * &r)[(0, 0)];
            r -= bc * c;
        }
        worst = worst.max(r.norm() / norm);
    }
    worst
}

/// Reciprocity: the projected subunity space of `J^{T_P}` must lie inside `A`.
fn reciprocity_residual(state: &GaussianState, a: &ModeSubspace, p: &ModeSubspace) -> Result<f64> {
    let back = dense_pt_eigensolve(state, p)?;
    if back.subunity().is_empty() {
        // A non-PPT pair must stay non-PPT from the partner's side.
        return Ok(1.0);
    }
    let basis = AdaptedBasis::new(state.n_modes(), &[real_vectors(p)])?;
    let sinv = basis.inverse().map(|x| C64::new(x, 0.0));
    let s = basis.s.map(|x| C64::new(x, 0.0));
    let dp = basis.dims[0];
    let mut projected = Vec::new();
    for pair in back.subunity() {
        for v in [
            pair.mode.as_vector().clone(),
            pair.mode.conj().into_vector(),
        ] {
            let mut c = &sinv * &v;
            c.rows_mut(0, dp).fill(C64::new(0.0, 0.0));
            projected.push(&s * c);
        }
    }
    let qa = mgs(&[], &real_vectors(a), 1e-9);
    Ok(containment_residual(&projected, &qa))
}

/// Independent checks that `p` is the `kind` partner of `a`.
pub fn verify_partner(
    state: &GaussianState,
    a: &ModeSubspace,
    p: &ModeSubspace,
    kind: PartnerKind,
) -> Result<VerificationReport> {
    check_dims(state, a)?;
    check_dims(state, p)?;
    let tol = Tolerances::active();
    let mut report = VerificationReport::default();
    let mut joint = real_vectors(a);
    joint.extend(real_vectors(p));
    match kind {
        PartnerKind::Pure => {
            report.push(
                "blockform",
                blockform_residual(state, joint.clone())?,
                tol.uncorrelated,
            );
            let basis = AdaptedBasis::new(state.n_modes(), &[joint])?;
            let d = basis.dims[0];
            let residual = if d == 0 {
                0.0
            } else {
                let jb = -(form(d / 2) * block(&basis.transform(state.covariance()), 0, d)) / HBAR;
                (&jb * &jb + RMatrix::identity(d, d)).norm() / jb.norm_squared()
            };
            report.push("restricted_purity", residual, 1e-8);
        }
        PartnerKind::Correlation => {
            report.push(
                "blockform",
                blockform_residual(state, joint)?,
                tol.uncorrelated,
            );
            let krylov = krylov_dimension(state, a);
            let expected = (krylov / 2).saturating_sub(a.mode_count());
            report.push("mode_count", expected as f64 - p.mode_count() as f64, 0.0);
        }
        PartnerKind::Entanglement => {
            let global = dense_pt_eigensolve(state, a)?.subunity_values();
            if p.is_empty() {
                report.push("subunity_spectra", global.len() as f64, 0.0);
            } else {
                let local = restricted_subunity(state, a, p)?;
                report.push(
                    "subunity_spectra",
                    subunity_mismatch(&global, &local),
                    SPECTRAL_AGREEMENT,
                );
                report.push(
                    "reciprocity",
                    reciprocity_residual(state, a, p)?,
                    SPECTRAL_AGREEMENT,
                );
            }
        }
    }
    Ok(report)
}

/// Largest gap between two ascending spectra of equal length; infinite otherwise.
pub fn spectrum_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn check_dims(state: &GaussianState, sub: &ModeSubspace) -> Result<()> {
    if sub.n_modes() != state.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: state.n_modes(),
            found: sub.n_modes(),
        });
    }
    Ok(())
}
