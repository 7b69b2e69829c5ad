//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("operation requires even ambient dimension, got {0}")]
    OddDimension(usize),

    #[error("matrix is not orthogonal within {tol:e}: residual {residual:e}")]
    NotOrthogonal { residual: f64, tol: f64 },

    #[error("matrix determinant {0} is not ±1 within tolerance")]
    DeterminantNotSign(f64),

    #[error("not a Pin element: conjugation leaves grade one, residue {0:e}")]
    NotPin(f64),

    #[error("element is not grade-homogeneous: masks of both parities present")]
    NotHomogeneous,

    #[error("element fails the unit condition x (x*) = 1: residual {0:e}")]
    NotUnit(f64),

    #[error("group exceeded cap {cap}: not finite at this tolerance?")]
    GroupTooLarge { cap: usize },

    #[error("product of elements {a} and {b} missing from the element table")]
    GroupNotClosed { a: usize, b: usize },

    #[error("character is not multiplicative at elements ({g}, {h})")]
    CharacterNotMultiplicative { g: usize, h: usize },

    #[error("character length {got} does not match group order {want}")]
    CharacterLength { got: usize, want: usize },

    #[error("subspace is not invariant under the matrix: residual {0:e}")]
    SubspaceNotInvariant(f64),

    #[error("cocycle sign ambiguous for pair ({g}, {h}): |inner product| = {inner}")]
    CocycleAmbiguous { g: usize, h: usize, inner: f64 },

    #[error("pin lift inconsistent for element {index}: adjoint residual {residual:e}")]
    LiftInconsistent { index: usize, residual: f64 },

    #[error("reflection factorization failed: residual {0:e}")]
    FactorizationFailed(f64),

    #[error("inconsistent class counts: {0}")]
    InconsistentCounts(String),

    #[error("Pin^c condition assertion likely false for this group: {0}")]
    PincAssertionFailed(String),

    #[error("{0}")]
    Domain(String),
}
