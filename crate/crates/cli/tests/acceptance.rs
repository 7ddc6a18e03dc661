//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion passes only at the stated tolerance and runtime. Criteria that
//! quote reference values the construction cannot reproduce print FAIL; for
//! those the test additionally checks that the computed result agrees with the
//! independently derived value, and only a regression there fails the target.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use gaussian_partners::entanglement::{
    entanglement_partner, localized_log_negativity, log_negativity, partial_transpose, pt_spectrum,
    subunity_count_check,
};
use gaussian_partners::fermionic::{
    fermionic_complex_structure, fermionic_direct_sum, fermionic_invariance_residual,
    fermionic_partner, FermionicState, FermionicSubspace,
};
use gaussian_partners::fixtures as fx;
use gaussian_partners::oracle::{
    dense_pt_eigensolve, verify_partner, verify_uncorrelated_blockform,
};
use gaussian_partners::partners::{correlation_partner, pure_partner, PartnerKind};
use gaussian_partners::phase_space::{
    annihilation_basis, symplectic_form, PhaseVector, RMatrix, RVector, C64,
};
use gaussian_partners::random::{
    locally_transformed, random_fermionic_omega, random_orthogonal, random_pure_state,
    random_state, random_subspace, random_symplectic, rng,
};
use gaussian_partners::state::{covariance_of, symplectic_spectrum, GaussianState};
use gaussian_partners::subsystem::{
    direct_sum, distance, is_uncorrelated, reduce, reduced_state, restricted_spectrum, ModeSubspace,
};
use gaussian_partners::sweep::sweep;
use gaussian_partners_cli::documents::{StateDocument, SubspaceDocument};

/// Criteria whose quoted reference values do not reproduce.
const DOCUMENTED: [usize; 4] = [1, 2, 5, 8];

struct Verdict {
    passed: bool,
    detail: String,
    /// Agreement with the independently derived value, for documented criteria.
    derived: Option<bool>,
}

type Criterion = fn() -> Verdict;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Symplectic eigenvalues of the reduced state from a plain Schur
/// decomposition of `W sigma_A`.
fn schur_reduced_spectrum(state: &GaussianState, a: &ModeSubspace) -> Vec<f64> {
    let reduced = reduced_state(state, a).unwrap();
    let w = symplectic_form(a.mode_count()).unwrap().matrix().clone();
    let m = w * reduced.covariance();
    let mut im: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.im.abs()).collect();
    im.sort_by(f64::total_cmp);
    im.into_iter().step_by(2).collect()
}

fn criterion_1() -> Verdict {
    let j = fx::pure3().complex_structure();
    let a = fx::single_mode_a();
    let t = Instant::now();
    let r = pure_partner(&a, &j).unwrap();
    let elapsed = t.elapsed();
    let d = distance(&r.partner, &fx::printed_single_partner());
    let d_true = distance(&r.partner, &fx::expected_single_partner());
    let printed_overlap = a.orthogonality_residual(&fx::printed_single_partner());
    let report = verify_partner(&fx::pure3(), &a, &r.partner, PartnerKind::Pure).unwrap();
    Verdict {
        passed: r.mode_count == 1 && d < 1e-10 && elapsed < Duration::from_millis(10),
        detail: format!(
            "distance to quoted span {d:.3e}; to sqrt3 e1 - 2e3* {d_true:.3e}; quoted span overlaps A by {printed_overlap:.3e}; {:.2} ms",
            ms(elapsed)
        ),
        derived: Some(d_true < 1e-10 && report.passed() && printed_overlap > 1e-3),
    }
}

fn criterion_2() -> Verdict {
    let state = fx::pure4();
    let j = state.complex_structure();
    let (a1, a2) = (fx::two_mode_a(), fx::mixed_rank_a());
    let t = Instant::now();
    let nu1 = restricted_spectrum(&j, &a1).unwrap().values();
    let r1 = pure_partner(&a1, &j).unwrap();
    let nu2 = restricted_spectrum(&j, &a2).unwrap().values();
    let r2 = pure_partner(&a2, &j).unwrap();
    let elapsed = t.elapsed();
    let d1 = distance(&r1.partner, &fx::printed_two_mode_partner());
    let d2 = distance(&r2.partner, &fx::printed_mixed_rank_partner());
    let d1_true = distance(&r1.partner, &fx::expected_two_mode_partner());
    let schur2 = schur_reduced_spectrum(&state, &a2);
    let ok1 = verify_partner(&state, &a1, &r1.partner, PartnerKind::Pure)
        .unwrap()
        .passed();
    let ok2 = verify_partner(&state, &a2, &r2.partner, PartnerKind::Pure)
        .unwrap()
        .passed();
    let passed = close(&nu1, &[7.0, 7.0], 1e-9)
        && r1.mode_count == 2
        && d1 < 1e-9
        && close(&nu2, &[1.0, 7.0], 1e-9)
        && r2.mode_count == 1
        && d2 < 1e-9
        && elapsed < Duration::from_millis(20);
    Verdict {
        passed,
        detail: format!(
            "fixture 1: nu {nu1:?}, {} modes, distance to quoted {d1:.3e}, to -2e* span {d1_true:.3e}; \
             fixture 2: nu {nu2:?} (Schur {schur2:?}), {} mode, distance to quoted {d2:.3e}; {:.2} ms",
            r1.mode_count,
            r2.mode_count,
            ms(elapsed)
        ),
        derived: Some(
            close(&nu1, &[7.0, 7.0], 1e-9)
                && r1.mode_count == 2
                && d1_true < 1e-9
                && ok1
                && close(&nu2, &schur2, 1e-9)
                && r2.mode_count == 1
                && ok2,
        ),
    }
}

fn criterion_3() -> Verdict {
    let j = fx::j6().complex_structure();
    let t = Instant::now();
    let results: Vec<_> = fx::correlation_catalog()
        .into_iter()
        .map(|(label, a, count)| (label, correlation_partner(&a, &j).unwrap(), count))
        .collect();
    let elapsed = t.elapsed();
    let mut passed = elapsed < Duration::from_millis(20);
    let mut parts = Vec::new();
    for (k, (label, r, count)) in results.iter().enumerate() {
        let ok = match fx::catalog_partner(k + 1) {
            None => {
                parts.push(format!("{label}: empty {}", r.empty));
                r.empty && r.mode_count == 0
            }
            Some(p) => {
                let d = distance(&r.partner, &p);
                parts.push(format!("{label}: {} modes, distance {d:.3e}", r.mode_count));
                r.mode_count == *count && d < 1e-9
            }
        };
        passed &= ok;
    }
    Verdict {
        passed,
        detail: format!("{}; {:.2} ms", parts.join("; "), ms(elapsed)),
        derived: None,
    }
}

fn criterion_4() -> Verdict {
    let state = fx::j6();
    let j = state.complex_structure();
    let a = fx::single_mode_a();
    let t = Instant::now();
    let count = subunity_count_check(&j, &a).unwrap().count;
    let r = entanglement_partner(&a, &j).unwrap();
    let back = entanglement_partner(&r.partner, &j).unwrap();
    let elapsed = t.elapsed();
    let d = distance(&r.partner, &fx::expected_single_entanglement_partner());
    let d_back = distance(&back.partner, &a);
    let dense = dense_pt_eigensolve(&state, &a).unwrap().subunity_values();
    Verdict {
        passed: count == 1 && d < 1e-9 && d_back < 1e-8 && elapsed < Duration::from_millis(20),
        detail: format!(
            "subunity count {count}; distance {d:.3e}; reciprocity {d_back:.3e}; dense nu^T {dense:?} vs quoted {:.12} (true value {:.12}); {:.2} ms",
            fx::printed_j6_subunity(),
            fx::expected_j6_subunity(),
            ms(elapsed)
        ),
        derived: None,
    }
}

fn criterion_5() -> Verdict {
    let state = fx::j8();
    let j = state.complex_structure();
    let a = fx::two_mode_a();
    let t = Instant::now();
    let values = pt_spectrum(&partial_transpose(&j, &a).unwrap())
        .unwrap()
        .subunity_values();
    let r = entanglement_partner(&a, &j).unwrap();
    let elapsed = t.elapsed();
    let quoted = fx::printed_j8_subunity();
    let expected = fx::expected_j8_subunity();
    let dense = dense_pt_eigensolve(&state, &a).unwrap().subunity_values();
    let d = distance(&r.partner, &fx::printed_j8_entanglement_partner());
    let ok = verify_partner(&state, &a, &r.partner, PartnerKind::Entanglement)
        .unwrap()
        .passed();
    Verdict {
        passed: close(&values, &quoted, 1e-9) && r.mode_count == 2 && r.diagnostics < 1e-9 && elapsed < Duration::from_millis(50),
        detail: format!(
            "nu^T {values:?} vs quoted {quoted:?}; dense {dense:?}; closed forms {expected:?}; {} modes; restricted-vs-global {:.3e}; \
             distance to quoted partner {d:.3e}; {:.2} ms",
            r.mode_count,
            r.diagnostics,
            ms(elapsed)
        ),
        derived: Some(
            close(&values, &expected, 1e-9)
                && close(&dense, &expected, 1e-9)
                && r.mode_count == 2
                && r.diagnostics < 1e-9
                && d < 1e-9
                && ok,
        ),
    }
}

fn criterion_6() -> Verdict {
    let t = Instant::now();
    let seeds: Vec<u64> = (0..400).collect();
    let rows = sweep(&seeds, |seed| {
        let mut r = rng(seed);
        let n = 3 + (seed % 4) as usize;
        let state = random_state(n, 0.5, &mut r).unwrap();
        let a = random_subspace(n, 1, &mut r).unwrap();
        let en = log_negativity(&state, &a).unwrap();
        if en <= 0.0 {
            return None;
        }
        let ep = entanglement_partner(&a, &state.complex_structure()).unwrap();
        Some((en - localized_log_negativity(&state, &a, &ep.partner).unwrap()).abs())
    });
    let gaps: Vec<f64> = rows.into_iter().flatten().take(100).collect();
    let elapsed = t.elapsed();
    let worst = gaps.iter().cloned().fold(0.0, f64::max);
    Verdict {
        passed: gaps.len() == 100 && worst < 1e-8 && elapsed < Duration::from_secs(5),
        detail: format!(
            "{} non-PPT states; worst |E_N - E_N(A + A_ep)| {worst:.3e}; {:.0} ms",
            gaps.len(),
            ms(elapsed)
        ),
        derived: None,
    }
}

/// Factorizes across `A` and its complement, disguised by a global symplectic map.
fn product_case(seed: u64) -> (GaussianState, ModeSubspace) {
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

fn criterion_7() -> Verdict {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut passed = true;

    let seeds: Vec<u64> = (0..200).collect();
    let rows = sweep(&seeds, |seed| {
        let n = 1 + (seed % 6) as usize;
        let state = random_state(n, 2.0, &mut rng(seed)).unwrap();
        let j = state.complex_structure();
        let back = covariance_of(&j);
        let round_trip = (&back - state.covariance()).norm() / state.covariance().norm();
        (round_trip, symplectic_spectrum(&j).unwrap().min())
    });
    let worst_trip = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let min_nu = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    passed &= worst_trip < 1e-12 && min_nu >= 1.0 - 1e-9;
    parts.push(format!("round trip {worst_trip:.3e}; min nu {min_nu:.12}"));

    let seeds: Vec<u64> = (0..100).collect();
    let verdicts = sweep(&seeds, |seed| {
        let (state, a) = if seed % 2 == 0 {
            product_case(seed)
        } else {
            let mut r = rng(seed);
            let n = 3 + (seed % 3) as usize;
            let state = random_state(n, 2.0, &mut r).unwrap();
            let a = random_subspace(n, 1 + (seed % 2) as usize, &mut r).unwrap();
            (state, a)
        };
        let commutator = is_uncorrelated(&a, &state.complex_structure())
            .unwrap()
            .uncorrelated;
        let blockform = verify_uncorrelated_blockform(&state, &a).unwrap().passed();
        commutator == blockform && commutator == (seed % 2 == 0)
    });
    let agree = verdicts.iter().filter(|&&v| v).count();
    passed &= agree == 100;
    parts.push(format!("uncorrelated verdicts agree {agree}/100"));

    let seeds: Vec<u64> = (0..500).collect();
    let bounded = sweep(&seeds, |seed| {
        let mut r = rng(seed ^ 0xb0b);
        let n = 2 + (seed % 5) as usize;
        let state = random_state(n, 1.0, &mut r).unwrap();
        let k = 1 + (seed as usize % (n - 1));
        let a = random_subspace(n, k, &mut r).unwrap();
        let report = subunity_count_check(&state.complex_structure(), &a).unwrap();
        report.count <= report.n_a
    });
    let ok = bounded.iter().filter(|&&b| b).count();
    passed &= ok == 500;
    parts.push(format!("subunity bound holds {ok}/500"));

    let seeds: Vec<u64> = (0..100).collect();
    let defects = sweep(&seeds, |seed| {
        let mut r = rng(seed ^ 0x9e3);
        let n = 2 + (seed % 5) as usize;
        let state = random_pure_state(n, &mut r).unwrap();
        let j = state.complex_structure();
        let a = random_subspace(n, 1 + (seed as usize % (n / 2)), &mut r).unwrap();
        let p = pure_partner(&a, &j).unwrap();
        let joint = direct_sum(&a, &p.partner).unwrap();
        let jr = reduce(&j, &joint).unwrap();
        let m = jr.matrix();
        (m * m + RMatrix::identity(m.nrows(), m.ncols())).norm()
    });
    let worst_pure = defects.iter().cloned().fold(0.0, f64::max);
    passed &= worst_pure < 1e-8;
    parts.push(format!("restricted J^2 + I {worst_pure:.3e}"));

    let seeds: Vec<u64> = (0..100).collect();
    let moves = sweep(&seeds, |seed| {
        let mut r = rng(seed ^ 0x10c);
        let n = 3 + (seed % 3) as usize;
        let state = random_state(n, 1.0, &mut r).unwrap();
        let j = state.complex_structure();
        let a = random_subspace(n, 1 + (seed % 2) as usize, &mut r).unwrap();
        let b = locally_transformed(&a, &mut r).unwrap();
        let dc = distance(
            &correlation_partner(&a, &j).unwrap().partner,
            &correlation_partner(&b, &j).unwrap().partner,
        );
        let de = distance(
            &entanglement_partner(&a, &j).unwrap().partner,
            &entanglement_partner(&b, &j).unwrap().partner,
        );
        dc.max(de)
    });
    let worst_local = moves.iter().cloned().fold(0.0, f64::max);
    passed &= worst_local < 1e-8;
    parts.push(format!("local invariance {worst_local:.3e}"));

    let mut fermionic_ok = 0;
    for seed in 0..50u64 {
        let n = 2 + (seed % 4) as usize;
        let j = fermionic_complex_structure(
            &FermionicState::new(random_fermionic_omega(n, &mut rng(seed))).unwrap(),
        )
        .unwrap();
        let m = j.matrix();
        let square = (m * m + RMatrix::identity(2 * n, 2 * n)).norm();
        let q = random_orthogonal(2 * n, &mut rng(seed ^ 0xfe));
        let cols: Vec<RVector> = (0..2).map(|k| q.column(k).into_owned()).collect();
        let a = FermionicSubspace::new(&cols).unwrap();
        let p = fermionic_partner(&a, &j).unwrap();
        let joint = fermionic_direct_sum(&a, &p.partner).unwrap();
        let back = fermionic_partner(&p.partner, &j).unwrap();
        if square < 1e-9
            && !p.empty
            && fermionic_invariance_residual(&joint, &j) < 1e-9
            && back.partner.distance(&a) < 1e-8
        {
            fermionic_ok += 1;
        }
    }
    passed &= fermionic_ok == 50;
    parts.push(format!("fermionic {fermionic_ok}/50"));

    let elapsed = t.elapsed();
    passed &= elapsed < Duration::from_secs(30);
    Verdict {
        passed,
        detail: format!("{}; {:.0} ms", parts.join("; "), ms(elapsed)),
        derived: None,
    }
}

fn gpartners(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpartners"))
        .args(args)
        .env_remove("GAUSSIAN_PARTNERS_TOL_SCALE")
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn round_trips(dir: &Path) -> bool {
    let mut ok = true;
    for seed in 0..20u64 {
        let mut r = rng(seed);
        let n = 1 + (seed % 5) as usize;
        let state = random_state(n, 2.0, &mut r).unwrap();
        let text = serde_json::to_string(&StateDocument::from_state(&state)).unwrap();
        let path = dir.join(format!("state{seed}.json"));
        std::fs::write(&path, &text).unwrap();
        let loaded = StateDocument::load(&path)
            .unwrap()
            .to_state("state")
            .unwrap();
        ok &=
            loaded.state.covariance() == state.covariance() && loaded.state.mean() == state.mean();

        let sub = random_subspace(n.max(2), 1, &mut r).unwrap();
        let text = serde_json::to_string(&SubspaceDocument::canonical(sub.modes())).unwrap();
        let doc = SubspaceDocument::from_json("sub", &text).unwrap();
        let vectors = doc.vectors("sub", &[], n.max(2)).unwrap();
        ok &= vectors
            .iter()
            .zip(sub.modes())
            .all(|(a, b)| a.as_vector() == b.as_vector());
    }
    ok
}

fn criterion_8() -> Verdict {
    let (code, table) = gpartners(&["paper-examples"]);
    let failing: Vec<usize> = table
        .lines()
        .filter(|l| l.contains("  FAIL  "))
        .filter_map(|l| l.split_whitespace().next()?.parse().ok())
        .collect();
    let rows = table
        .lines()
        .filter(|l| l.contains("  PASS  ") || l.contains("  FAIL  "))
        .count();

    let dir = tempfile::tempdir().unwrap();
    let half = dir.path().join("half.json");
    std::fs::write(
        &half,
        r#"{"n_modes": 2, "covariance": [[0.5,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]}"#,
    )
    .unwrap();
    let (validate_code, _) = gpartners(&["validate", "--state", half.to_str().unwrap()]);
    let lossless = round_trips(dir.path());

    Verdict {
        passed: code == 0 && rows >= 9 && failing.is_empty() && validate_code == 2 && lossless,
        detail: format!(
            "paper-examples exit {code}, {rows} rows, failing {failing:?}; validate sigma = I/2 exit {validate_code}; round trip lossless {lossless}"
        ),
        derived: Some(code == 3 && rows >= 9 && failing == [1, 2, 3, 9] && validate_code == 2 && lossless),
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 8] = [
        ("pure single-mode partner", criterion_1),
        ("pure multi-mode partners", criterion_2),
        ("correlation partner catalog", criterion_3),
        ("single-mode entanglement partner", criterion_4),
        ("two-mode entanglement partner", criterion_5),
        ("negativity localizes on the partner", criterion_6),
        ("invariant suites", criterion_7),
        ("command line", criterion_8),
    ];
    let mut regressions = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let id = k + 1;
        let v = f();
        // Written to the process stdout so the lines survive output capture.
        writeln!(
            std::io::stdout().lock(),
            "criterion {id}  {}  {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        )
        .unwrap();
        let accounted = v.passed || (DOCUMENTED.contains(&id) && v.derived == Some(true));
        if !accounted {
            regressions.push(id);
        }
    }
    assert!(
        regressions.is_empty(),
        "criteria failing beyond the documented discrepancies: {regressions:?}"
    );
}
