//! Conserving unitary families for bipartite quantum states.
//!
//! A pure state shared between a sender (dimension `n`) and a receiver
//! (dimension `p`) decomposes into component vectors `φ_k` over the
//! receiver basis. Sender-side unitaries `E` with `(E ⊗ I)Ψ = Ψ` fix every
//! component and form a group: the identity on the component span `H`
//! times an arbitrary unitary on its complement `H⊥`. When the components
//! are linearly independent (the dense-coding regime) and `n > p`, that
//! group carries `(n − p)²` real parameters, enough freedom to mask which
//! station unitary actually encoded a message.
//!
//! The crate builds this family two independent ways and cross-checks them:
//!
//! - [`conserving::solve_family`] parameterizes skew-Hermitian generators
//!   by `n²` real unknowns, assembles the real linear system expressing
//!   `D·φ_k = 0`, and takes an orthonormal kernel basis;
//! - [`conserving::oracle_family`] constructs skew-Hermitian matrices
//!   supported on `H⊥` directly.
//!
//! [`channel`] simulates masked transmissions, and [`linalg`] provides the
//! dense numerical kernel (pivoted QR, Hermitian eigensolver, matrix
//! exponential) everything runs on. All operations are pure functions over
//! immutable values and safe to call from multiple threads.
//!
//! # Quick start
//!
//! ```
//! use densemask::{channel, conserving, BipartiteState};
//!
//! // Three sender qubits sharing a state with one receiver qubit.
//! let state = BipartiteState::random(8, 2, 2, 7).unwrap();
//! let decomp = state.decompose().unwrap();
//! assert!(decomp.dense_coding_report().capable);
//!
//! // 36 = (8 - 2)² orthonormal skew-Hermitian generators.
//! let family = conserving::solve_family(&decomp, 0.0).unwrap();
//! assert_eq!(family.s_count(), 36);
//!
//! // Any parameter choice leaves the shared state untouched.
//! let gammas = channel::sample_gammas(family.s_count(), 42);
//! let masking = family.masking_unitary(&gammas).unwrap();
//! let check = conserving::verify_conserving(&masking, &state, 0.0).unwrap();
//! assert!(check.conserving);
//! ```

pub mod channel;
pub mod conserving;
pub mod error;
pub mod linalg;
pub mod state;
pub mod tolerances;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, RealMatrix};
pub use state::{qubit_dims, BipartiteState, ComponentDecomposition, DenseCodingReport};

pub use num_complex::Complex64;
