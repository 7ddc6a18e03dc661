//! Seeded random states, symplectic maps and subsystems for sweeps and tests.
//!
//! All randomness is drawn from a `ChaCha8Rng` seeded with the caller's
//! seed, so a given seed yields the same object on every platform and thread.

use nalgebra::linalg::QR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::symmetrize;
use crate::phase_space::{annihilation_basis, CMatrix, PhaseVector, RMatrix, RVector, C64};
use crate::state::GaussianState;
use crate::subsystem::ModeSubspace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        C64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    });
    let qr = QR::new(g);
    let (q, r) = (qr.q(), qr.r());
    // Fix the phases of R's diagonal so the distribution is Haar.
    let phases = CMatrix::from_diagonal(&r.diagonal().map(|z| {
        if z.norm() > 0.0 {
            z / z.norm()
        } else {
            C64::new(1.0, 0.0)
        }
    }));
    q * phases
}

/// Haar-distributed real orthogonal matrix.
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> RMatrix {
    let g = RMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = QR::new(g);
    let (q, r) = (qr.q(), qr.r());
    let signs = RMatrix::from_diagonal(&r.diagonal().map(|x| if x < 0.0 { -1.0 } else { 1.0 }));
    q * signs
}

/// Passive (orthogonal symplectic) map of a unitary in the interleaved ordering.
pub fn passive_symplectic(u: &CMatrix) -> RMatrix {
    let n = u.nrows();
    let mut s = RMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let z = u[(j, k)];
            s[(2 * j, 2 * k)] = z.re;
            s[(2 * j, 2 * k + 1)] = -z.im;
            s[(2 * j + 1, 2 * k)] = z.im;
            s[(2 * j + 1, 2 * k + 1)] = z.re;
        }
    }
    s
}

/// Random symplectic matrix `O1 Z O2` with single-mode squeezings
/// `r ~ U(-max_squeeze, max_squeeze)`.
pub fn random_symplectic<R: Rng>(n: usize, max_squeeze: f64, rng: &mut R) -> RMatrix {
    let o1 = passive_symplectic(&random_unitary(n, rng));
    let o2 = passive_symplectic(&random_unitary(n, rng));
    let mut z = RMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let r: f64 = rng.random_range(-max_squeeze..=max_squeeze);
        z[(2 * k, 2 * k)] = r.exp();
        z[(2 * k + 1, 2 * k + 1)] = (-r).exp();
    }
    o1 * z * o2
}

/// `sigma = S diag(nu_1, nu_1, ...) S^T` for a random symplectic `S`.
pub fn random_state_with_spectrum<R: Rng>(
    nus: &[f64],
    max_squeeze: f64,
    rng: &mut R,
) -> Result<GaussianState> {
    let n = nus.len();
    let s = random_symplectic(n, max_squeeze, rng);
    let d = RMatrix::from_diagonal(&RVector::from_iterator(
        2 * n,
        nus.iter().flat_map(|&nu| [nu, nu]),
    ));
    GaussianState::centered(symmetrize(&(&s * d * s.transpose())))
}

/// Physical mixed state with symplectic eigenvalues drawn from `[1, 1 + max_excess]`.
pub fn random_state<R: Rng>(n: usize, max_excess: f64, rng: &mut R) -> Result<GaussianState> {
    let nus: Vec<f64> = (0..n)
        .map(|_| 1.0 + rng.random_range(0.0..=max_excess))
        .collect();
    random_state_with_spectrum(&nus, 1.0, rng)
}

pub fn random_pure_state<R: Rng>(n: usize, rng: &mut R) -> Result<GaussianState> {
    random_state_with_spectrum(&vec![1.0; n], 1.0, rng)
}

/// Random `k`-mode subsystem: the image of `k` canonical modes under a random
/// symplectic map.
pub fn random_subspace<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<ModeSubspace> {
    let s = random_symplectic(n, 0.8, rng).map(|x| C64::new(x, 0.0));
    let vectors: Vec<PhaseVector> = annihilation_basis(n)
        .iter()
        .take(k)
        .map(|e| PhaseVector::new(&s * e.as_vector()))
        .collect::<Result<_>>()?;
    ModeSubspace::new(n, &vectors)
}

/// Replace the basis of `sub` by the image of its Darboux frame under a
/// random symplectic map of the subsystem; the span is unchanged.
pub fn locally_transformed<R: Rng>(sub: &ModeSubspace, rng: &mut R) -> Result<ModeSubspace> {
    let n_a = sub.mode_count();
    if n_a == 0 {
        return Ok(sub.clone());
    }
    let frame = sub.darboux_frame() * random_symplectic(n_a, 0.8, rng);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // gamma = (x - i p) / sqrt 2
    let vectors: Vec<PhaseVector> = (0..n_a)
        .map(|k| {
            let v = frame.column(2 * k).map(|x| C64::new(x * s, 0.0))
                + frame.column(2 * k + 1).map(|p| C64::new(0.0, -p * s));
            PhaseVector::new(v)
        })
        .collect::<Result<_>>()?;
    ModeSubspace::new(sub.n_modes(), &vectors)
}

/// `omega = R Omega_0 R^T` for a random orthogonal `R`: a pure fermionic state.
pub fn random_fermionic_omega<R: Rng>(n: usize, rng: &mut R) -> RMatrix {
    let r = random_orthogonal(2 * n, rng);
    &r * crate::phase_space::omega_matrix(n) * r.transpose()
}
