//! Numerical thresholds.
//!
//! Every comparison against zero, one, or a degeneracy band goes through the
//! process-wide [`Tolerances`] value. It defaults to [`Tolerances::DEFAULT`]
//! and may be replaced once, before first use, with [`Tolerances::install`]
//! (the command-line front end does this when asked to rescale thresholds).

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute tolerance for equality checks on O(1) quantities.
    pub equality: f64,
    /// Relative band used to group symplectic eigenvalues into one eigenspace.
    pub degeneracy: f64,
    /// A state is pure when its purity is at least `1 - purity`.
    pub purity: f64,
    /// A state is physical when every symplectic eigenvalue is at least `1 - physical`.
    pub physical: f64,
    /// Largest admissible Gram-matrix condition number.
    pub gram_condition: f64,
    /// Relative singular-value cutoff for rank decisions.
    pub rank: f64,
    /// Symplectic eigenvalues of a restriction above `1 + correlated` count as correlated modes.
    pub correlated: f64,
    /// Partially transposed eigenvalues below `1 - subunity` count as subunity.
    pub subunity: f64,
    /// Relative commutator threshold for the uncorrelated-subsystem test.
    pub uncorrelated: f64,
    /// Relative eigen-residual accepted from the spectrum solver.
    pub eigen_residual: f64,
}

static ACTIVE: OnceLock<Tolerances> = OnceLock::new();

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        equality: 1e-10,
        degeneracy: 1e-8,
        purity: 1e-8,
        physical: 1e-9,
        gram_condition: 1e12,
        rank: 1e-9,
        correlated: 1e-7,
        subunity: 1e-9,
        uncorrelated: 1e-9,
        eigen_residual: 1e-9,
    };

    /// The thresholds in effect for this process.
    pub fn active() -> &'static Tolerances {
        ACTIVE.get_or_init(|| Tolerances::DEFAULT)
    }

    /// Install process-wide thresholds. Fails (returning the rejected value)
    /// if thresholds were already installed or read.
    pub fn install(tol: Tolerances) -> Result<(), Tolerances> {
        ACTIVE.set(tol)
    }

    /// Every threshold multiplied by `factor`; the condition-number guard is
    /// divided by it so that a larger factor is uniformly more permissive.
    pub fn scaled(&self, factor: f64) -> Tolerances {
        Tolerances {
            equality: self.equality * factor,
            degeneracy: self.degeneracy * factor,
            purity: self.purity * factor,
            physical: self.physical * factor,
            gram_condition: self.gram_condition / factor,
            rank: self.rank * factor,
            correlated: self.correlated * factor,
            subunity: self.subunity * factor,
            uncorrelated: self.uncorrelated * factor,
            eigen_residual: self.eigen_residual * factor,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::DEFAULT
    }
}
