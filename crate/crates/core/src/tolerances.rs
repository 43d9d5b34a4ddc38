//! Default numerical tolerances, collected in one place.
//!
//! Every operation that takes a `tol` argument treats `tol == 0.0` as a
//! request for the default listed here. Tolerances written as `*_REL` are
//! relative: they are multiplied by a norm of the input before use.

/// Machine epsilon for `f64`.
pub const EPS: f64 = f64::EPSILON;

/// Relative tolerance for the Hermiticity check `‖A − A†‖_F ≤ tol·‖A‖_F`.
pub const HERMITICITY_REL: f64 = 1e-10;

/// Relative tolerance for the skew-Hermiticity check
/// `‖D + D†‖_F ≤ tol·max(1, ‖D‖_F)`.
pub const SKEW_HERMITICITY_REL: f64 = 1e-10;

/// Jacobi eigensolver convergence: sweep until the off-diagonal Frobenius
/// norm is below `JACOBI_OFF_REL·‖A‖_F`.
pub const JACOBI_OFF_REL: f64 = 1e-12;

/// Maximum number of Jacobi sweeps (eigensolver and one-sided SVD) before
/// giving up with a convergence error.
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Magnitude threshold used by the deterministic phase convention: the first
/// component of an eigenvector or null-space vector whose modulus exceeds
/// this value is made real and positive.
pub const PHASE_PIVOT_MIN: f64 = 1e-8;

/// Maximum allowed deviation of a state vector from unit norm before
/// operations that assume normalization refuse the input.
pub const STATE_NORM_TOL: f64 = 1e-6;

/// Default residual bound for `verify_conserving`.
pub const CONSERVING_TOL: f64 = 1e-8;

/// Default mutual-projection residual bound for `spans_equal`.
pub const SPAN_TOL: f64 = 1e-9;

/// Unitarity residual accepted for matrices fed into `apply_local`.
pub const UNITARY_INPUT_TOL: f64 = 1e-8;

/// Default rank tolerance: `max(rows, cols)·ε·scale`, where `scale` is the
/// largest column norm of the matrix being ranked (the first pivot of its
/// column-pivoted QR factorization).
pub fn rank_tol(rows: usize, cols: usize, scale: f64) -> f64 {
    rows.max(cols) as f64 * EPS * scale
}

/// Default drop tolerance for Gram–Schmidt orthonormalization:
/// `max(dim, count)·ε·max_norm`, where `max_norm` is the largest Euclidean
/// norm among the input vectors.
pub fn orthonormalize_tol(dim: usize, count: usize, max_norm: f64) -> f64 {
    dim.max(count) as f64 * EPS * max_norm
}
