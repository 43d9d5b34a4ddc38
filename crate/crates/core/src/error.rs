use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix with zero rows or zero columns was passed to an operation
    /// that needs at least one entry.
    #[error("degenerate shape: {rows}x{cols} matrix")]
    DegenerateShape { rows: usize, cols: usize },

    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// A square matrix was required.
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Hermiticity residual exceeded its tolerance.
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    /// Skew-Hermiticity residual exceeded its tolerance.
    #[error("matrix is not skew-Hermitian: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotSkewHermitian { residual: f64, tolerance: f64 },

    /// A unitary matrix was required.
    #[error("matrix is not unitary: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotUnitary { residual: f64, tolerance: f64 },

    /// An iterative solver ran out of sweeps.
    #[error("{algorithm} did not converge after {sweeps} sweeps")]
    NoConvergence {
        algorithm: &'static str,
        sweeps: usize,
    },

    /// A state vector deviated too far from unit norm.
    #[error("state is not normalized: |norm - 1| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotNormalized { deviation: f64, tolerance: f64 },

    /// A stored value was NaN or infinite.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// A requested component rank cannot be realized.
    #[error("infeasible rank {rank} for dimensions ({dim_a}, {dim_b})")]
    InfeasibleRank {
        rank: usize,
        dim_a: usize,
        dim_b: usize,
    },

    /// Integer overflow while computing a dimension.
    #[error("dimension overflow: {base}^{exponent} exceeds usize range")]
    DimensionOverflow { base: usize, exponent: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
