//! Reference states and subsystems, written in the eigenbasis `{e_I, e_I*}`
//! of the state's complex structure.
//!
//! `printed_*` functions give reference spans exactly as they are usually
//! quoted; `expected_*` functions give the spans that the definitions
//! actually produce where the two differ. See the README for the comparison.

use crate::phase_space::{annihilation_basis, combine, PhaseVector, C64};
use crate::state::{state_from_spectrum, GaussianState};
use crate::subsystem::ModeSubspace;

fn s3() -> f64 {
    3f64.sqrt()
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn vector(n: usize, terms: &[(C64, usize, bool)]) -> PhaseVector {
    combine(&annihilation_basis(n), terms)
}

fn span(n: usize, vectors: &[PhaseVector]) -> ModeSubspace {
    ModeSubspace::new(n, vectors).expect("fixture subspace is symplectic")
}

fn state(nus: &[f64]) -> GaussianState {
    state_from_spectrum(nus, None).expect("fixture spectrum is physical")
}

/// Pure three-mode state in its own eigenbasis.
pub fn pure3() -> GaussianState {
    state(&[1.0; 3])
}

/// Pure four-mode state in its own eigenbasis.
pub fn pure4() -> GaussianState {
    state(&[1.0; 4])
}

/// Mixed state with `J = diag(2i, -2i, 2i, -2i, 3i, -3i)`.
pub fn j6() -> GaussianState {
    state(&[2.0, 2.0, 3.0])
}

/// Mixed state with `J = diag(2i, -2i, 2i, -2i, 3i, -3i, 4i, -4i)`.
pub fn j8() -> GaussianState {
    state(&[2.0, 2.0, 3.0, 4.0])
}

/// `2 e_1 - sqrt3 e_3*` in three modes.
pub fn single_mode_a() -> ModeSubspace {
    span(
        3,
        &[vector(3, &[(re(2.0), 0, false), (re(-s3()), 2, true)])],
    )
}

/// `{2 e_1 - sqrt3 e_3*, 2 e_2 - sqrt3 e_4*}` in four modes.
pub fn two_mode_a() -> ModeSubspace {
    span(
        4,
        &[
            vector(4, &[(re(2.0), 0, false), (re(-s3()), 2, true)]),
            vector(4, &[(re(2.0), 1, false), (re(-s3()), 3, true)]),
        ],
    )
}

/// `{2 e_1 - sqrt3 e_3*, (-2 sqrt3 e_1* + e_2 + 4 e_3) / sqrt5}` in four modes.
pub fn mixed_rank_a() -> ModeSubspace {
    let k = 1.0 / 5f64.sqrt();
    span(
        4,
        &[
            vector(4, &[(re(2.0), 0, false), (re(-s3()), 2, true)]),
            vector(
                4,
                &[
                    (re(-2.0 * s3() * k), 0, true),
                    (re(k), 1, false),
                    (re(4.0 * k), 2, false),
                ],
            ),
        ],
    )
}

/// `sqrt3 e_1 + 2 e_3*`.
pub fn printed_single_partner() -> ModeSubspace {
    span(3, &[vector(3, &[(re(s3()), 0, false), (re(2.0), 2, true)])])
}

/// `sqrt3 e_1 - 2 e_3*`, the symplectic complement direction of `2 e_1 - sqrt3 e_3*`.
pub fn expected_single_partner() -> ModeSubspace {
    span(
        3,
        &[vector(3, &[(re(s3()), 0, false), (re(-2.0), 2, true)])],
    )
}

/// `{sqrt3 e_1 + 2 e_3*, sqrt3 e_2 + 2 e_4*}`.
pub fn printed_two_mode_partner() -> ModeSubspace {
    span(
        4,
        &[
            vector(4, &[(re(s3()), 0, false), (re(2.0), 2, true)]),
            vector(4, &[(re(s3()), 1, false), (re(2.0), 3, true)]),
        ],
    )
}

pub fn expected_two_mode_partner() -> ModeSubspace {
    span(
        4,
        &[
            vector(4, &[(re(s3()), 0, false), (re(-2.0), 2, true)]),
            vector(4, &[(re(s3()), 1, false), (re(-2.0), 3, true)]),
        ],
    )
}

/// `sqrt3 e_1 + 2 e_3*` in four modes.
pub fn printed_mixed_rank_partner() -> ModeSubspace {
    span(4, &[vector(4, &[(re(s3()), 0, false), (re(2.0), 2, true)])])
}

/// `{sqrt3 e_1* - 2 e_3, sqrt3 e_1 - 2 e_3*}` for J6.
pub fn expected_single_entanglement_partner() -> ModeSubspace {
    span(
        3,
        &[vector(3, &[(re(s3()), 0, true), (re(-2.0), 2, false)])],
    )
}

/// The two partner modes of the J8 example, as closed forms.
pub fn printed_j8_entanglement_partner() -> ModeSubspace {
    let r57 = 57f64.sqrt();
    let r73 = 73f64.sqrt();
    let d = 5.0 * r73 - 17.0;
    let g1 = vector(
        4,
        &[
            (re(-0.25 * (9.0 * r57 - 3.0).sqrt()), 1, false),
            (re(-0.75 * (r57 + 5.0).sqrt()), 1, true),
            (re(0.5 * (3.0 * (r57 + 5.0)).sqrt()), 3, false),
            (re(8.0 * (2.0 / (3.0 * r57 + 1.0)).sqrt()), 3, true),
        ],
    );
    let im = |x: f64| C64::new(0.0, x);
    let g2 = vector(
        4,
        &[
            (im(4.0 * (6.0 / d).sqrt()), 0, false),
            (im(-(r73 - 5.0) * (3.0 / (2.0 * d)).sqrt()), 0, true),
            (im((r73 - 5.0) * (2.0 / d).sqrt()), 2, false),
            (im(-8.0 * (2.0 / d).sqrt()), 2, true),
        ],
    );
    span(4, &[g1, g2])
}

/// `sqrt57 - 7` and `(sqrt73 - 7) / 2`, ascending.
pub fn printed_j8_subunity() -> [f64; 2] {
    let mut v = [57f64.sqrt() - 7.0, 0.5 * (73f64.sqrt() - 7.0)];
    v.sort_by(f64::total_cmp);
    v
}

/// `(35 - sqrt1201) / 2` and `21 - sqrt433`, ascending.
pub fn expected_j8_subunity() -> [f64; 2] {
    [0.5 * (35.0 - 1201f64.sqrt()), 21.0 - 433f64.sqrt()]
}

/// `(-35 + sqrt1201) / 2`, as quoted for the J6 example.
pub fn printed_j6_subunity() -> f64 {
    0.5 * (-35.0 + 1201f64.sqrt())
}

/// `(35 - sqrt1201) / 2`.
pub fn expected_j6_subunity() -> f64 {
    0.5 * (35.0 - 1201f64.sqrt())
}

/// The four single-mode subsystems of the J6 correlation catalog, with
/// their expected partner mode counts.
pub fn correlation_catalog() -> Vec<(&'static str, ModeSubspace, usize)> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        (
            "e1 + e2",
            span(3, &[vector(3, &[(re(1.0), 0, false), (re(1.0), 1, false)])]),
            0,
        ),
        (
            "e1 + e3",
            span(3, &[vector(3, &[(re(1.0), 0, false), (re(1.0), 2, false)])]),
            1,
        ),
        (
            "e1 + e1* + e2",
            span(
                3,
                &[vector(
                    3,
                    &[(re(1.0), 0, false), (re(1.0), 0, true), (re(1.0), 1, false)],
                )],
            ),
            1,
        ),
        (
            "(e1 + e1* + e2 + e3) / sqrt2",
            span(
                3,
                &[vector(
                    3,
                    &[
                        (re(h), 0, false),
                        (re(h), 0, true),
                        (re(h), 1, false),
                        (re(h), 2, false),
                    ],
                )],
            ),
            2,
        ),
    ]
}

/// Partner spans of catalog cases 2 and 3.
pub fn catalog_partner(case: usize) -> Option<ModeSubspace> {
    match case {
        2 => Some(span(
            3,
            &[vector(3, &[(re(1.0), 0, false), (re(-1.0), 2, false)])],
        )),
        3 => Some(span(
            3,
            &[vector(
                3,
                &[(re(1.0), 0, true), (re(1.0), 1, false), (re(-1.0), 1, true)],
            )],
        )),
        4 => {
            let vs = [
                vector(
                    3,
                    &[
                        (re(1.0), 0, false),
                        (re(1.0), 0, true),
                        (re(-1.0), 1, false),
                        (re(1.0), 2, false),
                    ],
                ),
                vector(
                    3,
                    &[
                        (re(1.0), 0, false),
                        (re(-1.0), 0, true),
                        (re(1.0), 1, true),
                        (re(-2.0), 2, false),
                        (re(1.0), 2, true),
                    ],
                ),
            ];
            Some(span(3, &vs))
        }
        _ => None,
    }
}
