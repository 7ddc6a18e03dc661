use gaussian_partners::fermionic::{
    fermionic_complex_structure, fermionic_direct_sum, fermionic_invariance_residual,
    fermionic_partner, FermionicState, FermionicSubspace,
};
use gaussian_partners::phase_space::RVector;
use gaussian_partners::random::{random_fermionic_omega, random_orthogonal, rng};

fn random_mode(n: usize, seed: u64) -> FermionicSubspace {
    let q = random_orthogonal(2 * n, &mut rng(seed ^ 0x5eed));
    let cols: Vec<RVector> = (0..2).map(|k| q.column(k).into_owned()).collect();
    FermionicSubspace::new(&cols).unwrap()
}

#[test]
fn random_pure_states_have_involutive_partners() {
    for seed in 0..50u64 {
        let n = 2 + (seed % 4) as usize;
        let omega = random_fermionic_omega(n, &mut rng(seed));
        let j = fermionic_complex_structure(&FermionicState::new(omega).unwrap()).unwrap();
        let m = j.matrix();
        assert!(
            (m * m + gaussian_partners::phase_space::RMatrix::identity(2 * n, 2 * n)).norm() < 1e-9
        );

        let a = random_mode(n, seed);
        let p = fermionic_partner(&a, &j).unwrap();
        assert!(!p.empty, "seed {seed}");
        assert_eq!(p.partner.dim(), 2, "seed {seed}");
        let joint = fermionic_direct_sum(&a, &p.partner).unwrap();
        assert!(
            fermionic_invariance_residual(&joint, &j) < 1e-9,
            "seed {seed}"
        );
        let back = fermionic_partner(&p.partner, &j).unwrap();
        assert!(back.partner.distance(&a) < 1e-8, "seed {seed}");
    }
}

#[test]
fn odd_subspaces_are_rejected() {
    let v = vec![RVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0])];
    assert!(FermionicSubspace::new(&v).is_err());
}
