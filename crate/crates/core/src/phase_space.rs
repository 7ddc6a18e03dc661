//! The complexified classical phase space of `N` bosonic modes.
//!
//! Vectors are stored in the canonical Darboux basis with interleaved
//! ordering `(x_1, p_1, ..., x_N, p_N)`. Complex conjugation acts
//! componentwise in that basis. `hbar` is fixed to one throughout.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Planck's constant in the unit system used by every formula here.
pub const HBAR: f64 = 1.0;

pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };

/// The symplectic form `Omega^{ij}` in the canonical basis: a direct sum of
/// `N` blocks `[[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    matrix: RMatrix,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidDimension(
                "a phase space needs at least one mode".into(),
            ));
        }
        Ok(SymplecticForm {
            n_modes,
            matrix: omega_matrix(n_modes),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    /// The real bilinear form `Omega(a, b) = sum_I (p_I b_x,I - x_I b_p,I)`,
    /// extended complex-bilinearly.
    pub fn omega(&self, a: &PhaseVector, b: &PhaseVector) -> Result<C64> {
        self.check(a)?;
        self.check(b)?;
        Ok(omega_bilinear(a.as_vector(), b.as_vector()))
    }

    /// The complexified product `<a, b> = -(i / hbar) Omega(a*, b)`.
    pub fn product(&self, a: &PhaseVector, b: &PhaseVector) -> Result<C64> {
        self.check(a)?;
        self.check(b)?;
        Ok(product(a.as_vector(), b.as_vector()))
    }

    fn check(&self, v: &PhaseVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }
}

/// Standard symplectic form for `n_modes` modes.
pub fn symplectic_form(n_modes: usize) -> Result<SymplecticForm> {
    SymplecticForm::new(n_modes)
}

/// `<gamma, delta>` for vectors of equal length.
pub fn symplectic_product(
    gamma: &PhaseVector,
    delta: &PhaseVector,
    form: &SymplecticForm,
) -> Result<C64> {
    form.product(gamma, delta)
}

pub fn conjugate(gamma: &PhaseVector) -> PhaseVector {
    gamma.conj()
}

/// Annihilation-type vectors `e_I`, one per mode, with
/// `<e_I, e_J> = delta_IJ`, `<e_I*, e_J*> = -delta_IJ` and `<e_I, e_J*> = 0`.
/// Mode `I` carries `(1, -i) / sqrt(2)` in its `(x, p)` slots; these are the
/// `+i` eigenvectors of the vacuum complex structure.
pub fn annihilation_basis(n_modes: usize) -> Vec<PhaseVector> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n_modes)
        .map(|k| {
            let mut v = CVector::zeros(2 * n_modes);
            v[2 * k] = C64::new(s, 0.0);
            v[2 * k + 1] = C64::new(0.0, -s);
            PhaseVector(v)
        })
        .collect()
}

/// A vector of the complexified phase space.
#[derive(Clone, PartialEq)]
pub struct PhaseVector(CVector);

impl PhaseVector {
    pub fn new(components: CVector) -> Result<Self> {
        if components.is_empty() || !components.len().is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!(
                "phase vector length must be even and positive, got {}",
                components.len()
            )));
        }
        Ok(PhaseVector(components))
    }

    pub fn from_components(components: Vec<C64>) -> Result<Self> {
        Self::new(CVector::from_vec(components))
    }

    pub fn from_real(components: &[f64]) -> Result<Self> {
        Self::new(CVector::from_iterator(
            components.len(),
            components.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    pub fn zeros(n_modes: usize) -> Self {
        PhaseVector(CVector::zeros(2 * n_modes))
    }

    pub(crate) fn from_vector_unchecked(v: CVector) -> Self {
        debug_assert!(v.len().is_multiple_of(2));
        PhaseVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn n_modes(&self) -> usize {
        self.0.len() / 2
    }

    pub fn as_vector(&self) -> &CVector {
        &self.0
    }

    pub fn into_vector(self) -> CVector {
        self.0
    }

    pub fn conj(&self) -> PhaseVector {
        PhaseVector(self.0.map(|z| z.conj()))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn real_part(&self) -> RVector {
        self.0.map(|z| z.re)
    }

    pub fn imag_part(&self) -> RVector {
        self.0.map(|z| z.im)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.0.iter().all(|z| z.im.abs() <= tol)
    }

    /// `<self, self>`, which is real.
    pub fn symplectic_norm(&self) -> f64 {
        product(&self.0, &self.0).re
    }

    pub fn scale(&self, z: C64) -> PhaseVector {
        PhaseVector(self.0.map(|c| c * z))
    }

    /// Rotate the global phase so that the largest-magnitude component is
    /// real and positive (lowest index wins ties).
    pub fn with_canonical_phase(&self) -> PhaseVector {
        PhaseVector(canonical_phase(&self.0))
    }
}

impl fmt::Debug for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(|z| (z.re, z.im)))
            .finish()
    }
}

impl Add for &PhaseVector {
    type Output = PhaseVector;
    fn add(self, rhs: &PhaseVector) -> PhaseVector {
        PhaseVector(&self.0 + &rhs.0)
    }
}

impl Sub for &PhaseVector {
    type Output = PhaseVector;
    fn sub(self, rhs: &PhaseVector) -> PhaseVector {
        PhaseVector(&self.0 - &rhs.0)
    }
}

impl Add for PhaseVector {
    type Output = PhaseVector;
    fn add(self, rhs: PhaseVector) -> PhaseVector {
        PhaseVector(self.0 + rhs.0)
    }
}

impl Sub for PhaseVector {
    type Output = PhaseVector;
    fn sub(self, rhs: PhaseVector) -> PhaseVector {
        PhaseVector(self.0 - rhs.0)
    }
}

impl Neg for &PhaseVector {
    type Output = PhaseVector;
    fn neg(self) -> PhaseVector {
        PhaseVector(-&self.0)
    }
}

impl Mul<&PhaseVector> for C64 {
    type Output = PhaseVector;
    fn mul(self, rhs: &PhaseVector) -> PhaseVector {
        rhs.scale(self)
    }
}

impl Mul<&PhaseVector> for f64 {
    type Output = PhaseVector;
    fn mul(self, rhs: &PhaseVector) -> PhaseVector {
        rhs.scale(C64::new(self, 0.0))
    }
}

/// Build `sum_k c_k v_k`, optionally conjugating members of `basis`.
/// Terms are `(coefficient, index into basis, conjugated)`; this is how the
/// fixtures write vectors such as `2 e_1 - sqrt(3) e_3*`.
pub fn combine(basis: &[PhaseVector], terms: &[(C64, usize, bool)]) -> PhaseVector {
    let dim = basis.first().map_or(0, PhaseVector::dim);
    let mut acc = CVector::zeros(dim);
    for &(c, k, conj) in terms {
        if conj {
            acc += basis[k].0.map(|z| z.conj()) * c;
        } else {
            acc += &basis[k].0 * c;
        }
    }
    PhaseVector(acc)
}

pub(crate) fn omega_matrix(n_modes: usize) -> RMatrix {
    let mut m = RMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// `Omega(a, b) = -a^T W b` with `W` the block matrix `Omega^{ij}`.
pub(crate) fn omega_bilinear(a: &CVector, b: &CVector) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..a.len() / 2 {
        let (ax, ap) = (a[2 * k], a[2 * k + 1]);
        let (bx, bp) = (b[2 * k], b[2 * k + 1]);
        acc += ap * bx - ax * bp;
    }
    acc
}

/// `<a, b> = i a^dagger W b / hbar`.
pub(crate) fn product(a: &CVector, b: &CVector) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..a.len() / 2 {
        let (ax, ap) = (a[2 * k].conj(), a[2 * k + 1].conj());
        let (bx, bp) = (b[2 * k], b[2 * k + 1]);
        acc += ax * bp - ap * bx;
    }
    I * acc / HBAR
}

/// The row functional `v -> <xi, v>` as the matrix `i xi^dagger W`.
#[cfg(test)]
pub(crate) fn bra(xi: &CVector) -> nalgebra::RowDVector<C64> {
    let n = xi.len();
    let mut row = nalgebra::RowDVector::zeros(n);
    for k in 0..n / 2 {
        // i (x* p' - p* x')
        row[2 * k + 1] = I * xi[2 * k].conj();
        row[2 * k] = -I * xi[2 * k + 1].conj();
    }
    row
}

pub(crate) fn canonical_phase(v: &CVector) -> CVector {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return v.clone();
    }
    let pivot = v
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-10))
        .copied()
        .unwrap();
    let rot = pivot.conj() / pivot.norm();
    v.map(|z| z * rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn form_blocks() {
        let f = symplectic_form(1).unwrap();
        assert_eq!(
            f.matrix(),
            &RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
        );
        let f2 = symplectic_form(2).unwrap();
        assert_eq!(f2.matrix()[(2, 3)], 1.0);
        assert_eq!(f2.matrix()[(0, 3)], 0.0);
        let f3 = symplectic_form(3).unwrap();
        let sq = f3.matrix() * f3.matrix();
        assert_eq!(sq, -RMatrix::identity(6, 6));
        assert!(matches!(
            symplectic_form(0),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn commutator_example_gives_minus_i() {
        let f = symplectic_form(2).unwrap();
        let g1 = PhaseVector::from_real(&[-1.0, 0.0, 0.0, 0.0]).unwrap();
        let g2 = PhaseVector::from_real(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        let z = symplectic_product(&g1, &g2, &f).unwrap();
        assert_abs_diff_eq!(z.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z.im, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn product_matches_bra_row() {
        let a = PhaseVector::from_components(vec![
            C64::new(0.3, -1.0),
            C64::new(2.0, 0.5),
            C64::new(-0.7, 0.1),
            C64::new(0.0, 1.5),
        ])
        .unwrap();
        let b = a.conj().scale(C64::new(0.2, 0.9));
        let via_row = (bra(a.as_vector()) * b.as_vector())[(0, 0)];
        let direct = product(a.as_vector(), b.as_vector());
        assert_abs_diff_eq!((via_row - direct).norm(), 0.0, epsilon = 1e-14);
        // <a, b> = -i Omega(a*, b)
        let omega = omega_bilinear(a.conj().as_vector(), b.as_vector());
        assert_abs_diff_eq!((direct - (-I * omega)).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let f = symplectic_form(2).unwrap();
        let a = PhaseVector::zeros(1);
        let b = PhaseVector::zeros(2);
        assert_eq!(
            f.product(&a, &b),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 2
            })
        );
        assert!(PhaseVector::from_real(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn conjugation() {
        let v = PhaseVector::from_components(vec![C64::new(1.0, 1.0), C64::new(0.0, 0.0)]).unwrap();
        let c = conjugate(&v);
        assert_eq!(c.as_vector()[0], C64::new(1.0, -1.0));
        assert_eq!(conjugate(&c), v);
        let r = PhaseVector::from_real(&[1.0, -2.0]).unwrap();
        assert_eq!(conjugate(&r), r);
    }

    #[test]
    fn annihilation_basis_is_orthonormal() {
        let basis = annihilation_basis(3);
        let f = symplectic_form(3).unwrap();
        let mut full = basis.clone();
        full.extend(basis.iter().map(PhaseVector::conj));
        for (i, a) in full.iter().enumerate() {
            for (j, b) in full.iter().enumerate() {
                let expected = match (i == j, i < 3) {
                    (true, true) => 1.0,
                    (true, false) => -1.0,
                    _ => 0.0,
                };
                let z = f.product(a, b).unwrap();
                assert_abs_diff_eq!(z.re, expected, epsilon = 1e-15);
                assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn canonical_phase_rule() {
        let v = CVector::from_vec(vec![C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
        let w = canonical_phase(&v);
        assert_abs_diff_eq!(w[0].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[0].im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1].re, -1.0, epsilon = 1e-15);
    }
}
