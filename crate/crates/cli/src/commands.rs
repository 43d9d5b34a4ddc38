//! Implementations of the CLI subcommands.

use std::path::{Path, PathBuf};

use densemask::channel::{ambiguity_report, masked_send, sample_gammas, MASK_DISTANCE_THRESHOLD};
use densemask::conserving::{solve_family, verify_conserving, ConservingFamily};
use densemask::{qubit_dims, BipartiteState, ComplexMatrix};

use crate::documents::{
    emit, parse_json, to_json, AnalyzeReport, DistanceStats, GeneratorsDocument, MaskDocument,
    MatrixDocument, SimulateReport, StateDocument, VerificationSummary, VerifyReport,
    FORMAT_VERSION,
};
use crate::CliError;

fn load_state(path: &Path) -> Result<BipartiteState, CliError> {
    parse_json::<StateDocument>(path)?.into_state()
}

fn load_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    parse_json::<MatrixDocument>(path)?.into_matrix()
}

fn family_of(state: &BipartiteState, tol: f64) -> Result<ConservingFamily, CliError> {
    let decomp = state
        .decompose()
        .map_err(|e| CliError::Input(format!("invalid state: {e}")))?;
    solve_family(&decomp, tol).map_err(|e| CliError::Input(format!("{e}")))
}

pub fn analyze(state_file: &Path, tol: f64, out: Option<&Path>) -> Result<(), CliError> {
    let state = load_state(state_file)?;
    let decomp = state
        .decompose()
        .map_err(|e| CliError::Input(format!("invalid state: {e}")))?;
    let capability = decomp.dense_coding_report();
    let family = solve_family(&decomp, tol).map_err(|e| CliError::Input(format!("{e}")))?;

    let n = state.dim_a();
    let p = state.dim_b();
    let full_sphere_dimension = 2 * n * p - 1;
    let orbit_note = (family.orbit_dimension != full_sphere_dimension).then(|| {
        format!(
            "orbit dimension {} differs from the unit-sphere dimension 2np-1 = {}: \
             sender-side unitaries reach a strictly smaller outcome set than the full sphere",
            family.orbit_dimension, full_sphere_dimension
        )
    });

    let report = AnalyzeReport {
        format_version: FORMAT_VERSION,
        dim_a: n,
        dim_b: p,
        component_rank: capability.rank,
        dense_coding_capable: capability.capable,
        k_condition: capability.k_condition,
        k_positive: capability.k_positive,
        masking_condition: capability.masking_possible,
        s_count: family.s_count(),
        orbit_dimension: family.orbit_dimension,
        full_sphere_dimension,
        orbit_note,
    };
    emit(&to_json(&report), out)
}

pub fn generators(state_file: &Path, tol: f64, out: Option<&Path>) -> Result<(), CliError> {
    let state = load_state(state_file)?;
    let family = family_of(&state, tol)?;
    let document = GeneratorsDocument {
        format_version: FORMAT_VERSION,
        dim_a: state.dim_a(),
        count: family.s_count(),
        generators: family
            .generators
            .iter()
            .map(MatrixDocument::from_matrix)
            .collect(),
    };
    emit(&to_json(&document), out)
}

pub fn mask(
    state_file: &Path,
    message_file: &Path,
    gamma: Option<Vec<f64>>,
    seed: Option<u64>,
    tol: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let state = load_state(state_file)?;
    let message = load_matrix(message_file)?;
    let family = family_of(&state, tol)?;

    let gammas = match (gamma, seed) {
        (Some(g), None) => {
            if g.len() != family.s_count() {
                return Err(CliError::Input(format!(
                    "--gamma has {} values but the family has {} generators",
                    g.len(),
                    family.s_count()
                )));
            }
            g
        }
        (None, Some(s)) => sample_gammas(family.s_count(), s),
        _ => {
            return Err(CliError::Input(
                "provide exactly one of --gamma or --seed".into(),
            ))
        }
    };

    let send = masked_send(&message, &family, &gammas, &state)
        .map_err(|e| CliError::Input(format!("{e}")))?;
    let check = verify_conserving(
        &family.masking_unitary(&gammas)
            .map_err(|e| CliError::Input(format!("{e}")))?,
        &state,
        tol,
    )
    .map_err(|e| CliError::Input(format!("{e}")))?;

    let station = MatrixDocument::from_matrix(&send.station_unitary);
    let document = MaskDocument {
        format_version: FORMAT_VERSION,
        rows: station.rows,
        cols: station.cols,
        entries: station.entries,
        gammas,
        verification: VerificationSummary {
            conserving: check.conserving,
            outcome_residual: check.outcome_residual,
            max_component_residual: check.max_component_residual,
            tolerance: check.tolerance,
        },
    };
    emit(&to_json(&document), out)
}

pub fn verify(
    state_file: &Path,
    unitary_file: &Path,
    tol: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let state = load_state(state_file)?;
    let unitary = load_matrix(unitary_file)?;
    let check = verify_conserving(&unitary, &state, tol)
        .map_err(|e| CliError::Input(format!("{e}")))?;
    let report = VerifyReport {
        format_version: FORMAT_VERSION,
        conserving: check.conserving,
        outcome_residual: check.outcome_residual,
        max_component_residual: check.max_component_residual,
        tolerance: check.tolerance,
    };
    emit(&to_json(&report), out)?;
    if check.conserving {
        Ok(())
    } else {
        Err(CliError::Verification {
            residual: check.outcome_residual,
            tolerance: check.tolerance,
        })
    }
}

pub fn simulate(
    state_file: &Path,
    trials: usize,
    seed: u64,
    message_file: Option<&Path>,
    tol: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let state = load_state(state_file)?;
    let family = family_of(&state, tol)?;
    let (message, message_label) = match message_file {
        Some(path) => (load_matrix(path)?, path.display().to_string()),
        None => (ComplexMatrix::identity(state.dim_a()), "identity".into()),
    };

    let report = ambiguity_report(&state, &family, &message, trials, seed)
        .map_err(|e| CliError::Input(format!("{e}")))?;
    let document = SimulateReport {
        format_version: FORMAT_VERSION,
        dim_a: state.dim_a(),
        dim_b: state.dim_b(),
        s_count: family.s_count(),
        trials,
        seed,
        message: message_label,
        station_distance: DistanceStats {
            min: report.station_min,
            mean: report.station_mean,
            max: report.station_max,
        },
        outcome_distance: DistanceStats {
            min: report.outcome_min,
            mean: report.outcome_mean,
            max: report.outcome_max,
        },
        masked_fraction: report.masked_fraction,
        mask_distance_threshold: MASK_DISTANCE_THRESHOLD,
    };
    emit(&to_json(&document), out)
}

#[allow(clippy::too_many_arguments)]
pub fn random_state(
    n: Option<usize>,
    p: Option<usize>,
    qubits: Option<Vec<usize>>,
    rank: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (dim_a, dim_b) = match (n, p, qubits) {
        (None, None, Some(q)) => {
            let [d, m, qb]: [usize; 3] = q.try_into().map_err(|_| {
                CliError::Input("--qubits expects three values: d,m,q".into())
            })?;
            if d < 2 || m < 1 || qb < 1 {
                return Err(CliError::Input(
                    "--qubits requires d >= 2, m >= 1, q >= 1".into(),
                ));
            }
            qubit_dims(d, m as u32, qb as u32)
                .map_err(|e| CliError::Input(format!("{e}")))?
        }
        (Some(n), Some(p), None) => (n, p),
        _ => {
            return Err(CliError::Input(
                "provide either --n and --p, or --qubits d,m,q".into(),
            ))
        }
    };
    let rank = rank.unwrap_or_else(|| dim_a.min(dim_b));
    let state = BipartiteState::random(dim_a, dim_b, rank, seed)
        .map_err(|e| CliError::Input(format!("{e}")))?;
    emit(&to_json(&StateDocument::from_state(&state)), out)
}

/// Convenience used by `main` to turn owned clap values into borrowed
/// paths.
pub fn opt_path(p: &Option<PathBuf>) -> Option<&Path> {
    p.as_deref()
}
