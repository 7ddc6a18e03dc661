#![allow(dead_code)]

use gaussian_partners::phase_space::{annihilation_basis, PhaseVector, RMatrix, C64};
use gaussian_partners::random::{random_state, random_subspace, random_symplectic, rng};
use gaussian_partners::state::GaussianState;
use gaussian_partners::subsystem::ModeSubspace;

/// A state that factorizes across `A` and its complement, disguised by a
/// global symplectic map.
pub fn product_case(seed: u64) -> (GaussianState, ModeSubspace) {
    let mut r = rng(seed);
    let n = 3 + (seed % 3) as usize;
    let k = 1 + (seed % 2) as usize;
    let sa = random_state(k, 2.0, &mut r).unwrap();
    let sc = random_state(n - k, 2.0, &mut r).unwrap();
    let mut sigma = RMatrix::zeros(2 * n, 2 * n);
    sigma
        .view_mut((0, 0), (2 * k, 2 * k))
        .copy_from(sa.covariance());
    sigma
        .view_mut((2 * k, 2 * k), (2 * (n - k), 2 * (n - k)))
        .copy_from(sc.covariance());
    let s = random_symplectic(n, 0.6, &mut r);
    let sigma = &s * sigma * s.transpose();
    let state = GaussianState::centered((&sigma + sigma.transpose()) * 0.5).unwrap();
    // sigma is a metric on phase-space vectors, so vectors move with S^{-T}
    let sc = s
        .try_inverse()
        .unwrap()
        .transpose()
        .map(|x| C64::new(x, 0.0));
    let modes: Vec<PhaseVector> = annihilation_basis(n)
        .iter()
        .take(k)
        .map(|e| PhaseVector::new(&sc * e.as_vector()).unwrap())
        .collect();
    (state, ModeSubspace::new(n, &modes).unwrap())
}

/// A generic mixed state with a random subsystem.
pub fn correlated_case(seed: u64) -> (GaussianState, ModeSubspace) {
    let mut r = rng(seed);
    let n = 3 + (seed % 3) as usize;
    let k = 1 + (seed % 2) as usize;
    let state = random_state(n, 2.0, &mut r).unwrap();
    (state, random_subspace(n, k, &mut r).unwrap())
}
