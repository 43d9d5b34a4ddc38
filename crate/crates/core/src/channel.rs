//! Send simulation with station masking.
//!
//! The sender applies a station unitary to their half of a shared state.
//! Multiplying the message unitary by any conserving unitary changes the
//! station configuration, a classical object an eavesdropper could read,
//! without changing the outcome state the receiver sees. The routines here
//! quantify that gap: outcome distances stay at numerical zero while
//! station distances are generically large.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conserving::ConservingFamily;
use crate::error::{Error, Result};
use crate::linalg::{unitarity_residual, ComplexMatrix};
use crate::state::{apply_sender, BipartiteState};
use crate::tolerances;

/// Station distances above this count as "masked" in reports. A modeling
/// choice: Frobenius distance has no operational meaning, it only needs to
/// separate "visibly different station" from "numerically identical".
pub const MASK_DISTANCE_THRESHOLD: f64 = 0.1;

/// Record of one masked transmission.
#[derive(Debug, Clone)]
pub struct MaskedSend {
    /// The unitary encoding the message.
    pub message_unitary: ComplexMatrix,
    /// Masking parameters, one per family generator.
    pub gammas: Vec<f64>,
    /// What the station actually applies: message × masking unitary.
    pub station_unitary: ComplexMatrix,
    /// The state the receiver ends up sharing.
    pub outcome: BipartiteState,
    /// Frobenius distance between masked and unmasked station unitaries.
    pub station_distance: f64,
    /// Euclidean distance between masked and unmasked outcome states.
    pub outcome_distance: f64,
}

/// Message set plus aggregate distance statistics over random maskings.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbiguityReport {
    pub trials: usize,
    pub station_min: f64,
    pub station_mean: f64,
    pub station_max: f64,
    pub outcome_min: f64,
    pub outcome_mean: f64,
    pub outcome_max: f64,
    /// Fraction of trials with station distance above
    /// [`MASK_DISTANCE_THRESHOLD`].
    pub masked_fraction: f64,
}

/// Labeled unitary message set.
#[derive(Debug, Clone)]
pub struct Codebook {
    pub labels: Vec<String>,
    pub unitaries: Vec<ComplexMatrix>,
}

/// Apply `U ⊗ I` to the state.
///
/// `U` must act on the sender space and be unitary within `1e-8`; the
/// output keeps the input norm to machine precision.
pub fn apply_local(u: &ComplexMatrix, state: &BipartiteState) -> Result<BipartiteState> {
    let n = state.dim_a();
    if u.rows() != n || u.cols() != n {
        return Err(Error::DimensionMismatch {
            context: "local unitary order",
            expected: n,
            got: u.rows().max(u.cols()),
        });
    }
    let residual = unitarity_residual(u);
    if residual > tolerances::UNITARY_INPUT_TOL {
        return Err(Error::NotUnitary {
            residual,
            tolerance: tolerances::UNITARY_INPUT_TOL,
        });
    }
    Ok(apply_sender(u, state))
}

/// Send `message` masked by the conserving unitary with parameters
/// `gammas`, and compare against the unmasked send.
pub fn masked_send(
    message: &ComplexMatrix,
    family: &ConservingFamily,
    gammas: &[f64],
    state: &BipartiteState,
) -> Result<MaskedSend> {
    let masking = family.masking_unitary(gammas)?;
    let station_unitary = message * &masking;
    let outcome = apply_local(&station_unitary, state)?;
    let unmasked = apply_local(message, state)?;
    Ok(MaskedSend {
        message_unitary: message.clone(),
        gammas: gammas.to_vec(),
        station_distance: station_unitary.frobenius_distance(message),
        outcome_distance: outcome.distance(&unmasked),
        station_unitary,
        outcome,
    })
}

/// The `n²` generalized shift/phase unitaries `X^a·Z^b`, where `X` cycles
/// the basis and `Z` is the diagonal of `n`-th roots of unity. Labeled
/// `(a,b)` in row-major order.
pub fn pauli_codebook(n: usize) -> Codebook {
    assert!(n >= 2, "codebook needs dimension at least 2");
    let mut labels = Vec::with_capacity(n * n);
    let mut unitaries = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut u = ComplexMatrix::zeros(n, n);
            for j in 0..n {
                // (X^a Z^b)|j⟩ = ω^{bj}|j+a⟩, reduced mod n before
                // evaluating the angle to keep phases exact-ish.
                let angle = 2.0 * PI * ((b * j) % n) as f64 / n as f64;
                u[((j + a) % n, j)] = Complex64::from_polar(1.0, angle);
            }
            labels.push(format!("({a},{b})"));
            unitaries.push(u);
        }
    }
    Codebook { labels, unitaries }
}

/// Deterministic draw of `count` masking parameters, uniform on `[−π, π]`.
pub fn sample_gammas(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random_range(-PI..=PI)).collect()
}

/// Sample `trials` maskings with `γ_s` uniform on `[−π, π]` and aggregate
/// the station/outcome distances. Deterministic for a fixed seed; the
/// aggregation uses only sums and extrema, so the trial order does not
/// matter.
pub fn ambiguity_report(
    state: &BipartiteState,
    family: &ConservingFamily,
    message: &ComplexMatrix,
    trials: usize,
    seed: u64,
) -> Result<AmbiguityReport> {
    assert!(trials >= 1, "at least one trial required");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = family.s_count();

    let mut station_min = f64::INFINITY;
    let mut station_max = f64::NEG_INFINITY;
    let mut station_sum = 0.0;
    let mut outcome_min = f64::INFINITY;
    let mut outcome_max = f64::NEG_INFINITY;
    let mut outcome_sum = 0.0;
    let mut masked_count = 0usize;

    for _ in 0..trials {
        let gammas: Vec<f64> = (0..s).map(|_| rng.random_range(-PI..=PI)).collect();
        let send = masked_send(message, family, &gammas, state)?;
        station_min = station_min.min(send.station_distance);
        station_max = station_max.max(send.station_distance);
        station_sum += send.station_distance;
        outcome_min = outcome_min.min(send.outcome_distance);
        outcome_max = outcome_max.max(send.outcome_distance);
        outcome_sum += send.outcome_distance;
        if send.station_distance > MASK_DISTANCE_THRESHOLD {
            masked_count += 1;
        }
    }

    Ok(AmbiguityReport {
        trials,
        station_min,
        station_mean: station_sum / trials as f64,
        station_max,
        outcome_min,
        outcome_mean: outcome_sum / trials as f64,
        outcome_max,
        masked_fraction: masked_count as f64 / trials as f64,
    })
}
