mod common;

use common::{correlated_case, product_case};
use gaussian_partners::entanglement::{entanglement_partner, partial_transpose, pt_spectrum};
use gaussian_partners::oracle::{
    dense_pt_eigensolve, spectrum_gap, verify_partner, verify_uncorrelated_blockform,
};
use gaussian_partners::partners::{correlation_partner, PartnerKind};
use gaussian_partners::subsystem::{direct_sum, is_uncorrelated, ModeSubspace};
use gaussian_partners::sweep::sweep;

fn case(seed: u64) -> (gaussian_partners::state::GaussianState, ModeSubspace) {
    if seed.is_multiple_of(2) {
        product_case(seed)
    } else {
        correlated_case(seed)
    }
}

#[test]
fn pt_spectra_and_verdicts_agree() {
    let seeds: Vec<u64> = (0..200).collect();
    let results = sweep(&seeds, |seed| {
        let (state, a) = case(seed);
        let j = state.complex_structure();
        let main = pt_spectrum(&partial_transpose(&j, &a).unwrap())
            .unwrap()
            .values();
        let dense = dense_pt_eigensolve(&state, &a).unwrap().values();
        let rel = spectrum_gap(&main, &dense) / main.iter().cloned().fold(1.0, f64::max);
        let v1 = is_uncorrelated(&a, &j).unwrap().uncorrelated;
        let v2 = verify_uncorrelated_blockform(&state, &a).unwrap().passed();
        (seed, rel, v1, v2)
    });
    for (seed, rel, v1, v2) in results {
        assert!(rel < 1e-8, "seed {seed}: spectra differ by {rel:e}");
        assert_eq!(v1, v2, "seed {seed}: verdicts differ");
        assert_eq!(v1, seed % 2 == 0, "seed {seed}: wrong verdict");
    }
}

#[test]
fn random_partners_pass_the_oracle() {
    let seeds: Vec<u64> = (1000..1060).collect();
    let failures: Vec<String> = sweep(&seeds, |seed| {
        let (state, a) = correlated_case(seed);
        let j = state.complex_structure();
        let mut out = Vec::new();
        let cp = correlation_partner(&a, &j).unwrap();
        let rep = verify_partner(&state, &a, &cp.partner, PartnerKind::Correlation).unwrap();
        if !rep.passed() {
            out.push(format!("seed {seed} correlation: {rep:?}"));
        }
        let ep = entanglement_partner(&a, &j).unwrap();
        let rep = verify_partner(&state, &a, &ep.partner, PartnerKind::Entanglement).unwrap();
        if !rep.passed() {
            out.push(format!("seed {seed} entanglement: {rep:?}"));
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

/// Dropping any partner mode must leave `A ⊕ P'` correlated.
#[test]
fn correlation_partners_are_minimal() {
    let mut checked = 0;
    for seed in 0..40u64 {
        let mut r = gaussian_partners::random::rng(seed);
        let state = gaussian_partners::random::random_state(3, 2.0, &mut r).unwrap();
        let a = gaussian_partners::random::random_subspace(3, 1, &mut r).unwrap();
        let j = state.complex_structure();
        let cp = correlation_partner(&a, &j).unwrap();
        let joint = direct_sum(&a, &cp.partner).unwrap();
        assert!(is_uncorrelated(&joint, &j).unwrap().uncorrelated);
        let modes = cp.partner.modes();
        for mask in 0..(1u32 << modes.len()) - 1 {
            let kept: Vec<_> = modes
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, g)| g.clone())
                .collect();
            let sub = ModeSubspace::from_normalized(3, kept).unwrap();
            let trial = direct_sum(&a, &sub).unwrap();
            assert!(
                !is_uncorrelated(&trial, &j).unwrap().uncorrelated,
                "seed {seed} mask {mask}"
            );
            assert!(!verify_uncorrelated_blockform(&state, &trial)
                .unwrap()
                .passed());
            checked += 1;
        }
    }
    assert!(checked > 40);
}
