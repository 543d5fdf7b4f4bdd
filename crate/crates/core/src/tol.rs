//! Global tolerance constants.
//!
//! Every numeric tolerance used by the library lives in this single record so
//! that tests, documentation, and downstream code agree on the exact values.
//! These are compile-time constants, not knobs: changing them invalidates the
//! frozen expectations in the test suite.

/// Tolerance configuration shared across the crate.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Set-membership slack used by `ConvexSet::contains`.
    pub membership: f64,
    /// Orthonormality validation for affine-subspace bases.
    pub orthonormal: f64,
    /// Jacobi eigensolver: target off-diagonal Frobenius norm, relative to
    /// `1 + ||A||_F`.
    pub eigen_off: f64,
    /// Jacobi eigensolver: maximum number of full sweeps.
    pub eigen_max_sweeps: usize,
    /// Exponential-cone projection: absolute residual target for the scalar
    /// root equation.
    pub root_residual: f64,
    /// Exponential-cone projection: iteration cap for bracketing + polish.
    pub root_max_iter: usize,
    /// Golden-section bracket width for the radial-epigraph projection.
    pub golden_width: f64,
    /// Relative tolerance for adaptive quadrature panels.
    pub quadrature_rel: f64,
    /// Absolute bisection tolerance for the generalized inverse.
    pub inverse_abs: f64,
    /// Relative tolerance for inverting the smoothing transform.
    pub spade_inverse_rel: f64,
    /// Allowed Fejer-monotonicity violation per iteration.
    pub fejer_slack: f64,
    /// Allowed sufficient-decrease violation per iteration.
    pub decrease_slack: f64,
}

/// The single global tolerance record.
pub const TOL: Tolerances = Tolerances {
    membership: 1e-9,
    orthonormal: 1e-10,
    eigen_off: 1e-14,
    eigen_max_sweeps: 50,
    root_residual: 1e-12,
    root_max_iter: 200,
    golden_width: 1e-12,
    quadrature_rel: 1e-9,
    inverse_abs: 1e-12,
    spade_inverse_rel: 1e-10,
    fejer_slack: 1e-9,
    decrease_slack: 1e-8,
};
