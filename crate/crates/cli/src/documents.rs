//! JSON documents exchanged through the CLI: states, matrices, and report
//! shapes, plus the serializer that prints every float with 17 significant
//! digits so fixture files round-trip losslessly and re-runs are
//! bit-identical.

use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use densemask::{BipartiteState, Complex64, ComplexMatrix};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// State fixture: amplitudes as `[re, im]` pairs, row-major `a·p + b`.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateDocument {
    pub format_version: u32,
    pub dims: [usize; 2],
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateDocument {
    pub fn from_state(state: &BipartiteState) -> Self {
        StateDocument {
            format_version: FORMAT_VERSION,
            dims: [state.dim_a(), state.dim_b()],
            amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_state(self) -> Result<BipartiteState, CliError> {
        check_version(self.format_version)?;
        let amplitudes: Vec<Complex64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        BipartiteState::new(self.dims[0], self.dims[1], amplitudes)
            .map_err(|e| CliError::Input(format!("invalid state document: {e}")))
    }
}

/// Matrix fixture: entries as `[re, im]` pairs, row-major.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub format_version: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixDocument {
            format_version: FORMAT_VERSION,
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_matrix(self) -> Result<ComplexMatrix, CliError> {
        check_version(self.format_version)?;
        if self.entries.len() != self.rows * self.cols {
            return Err(CliError::Input(format!(
                "invalid matrix document: field 'entries' has {} pairs, expected {}x{} = {}",
                self.entries.len(),
                self.rows,
                self.cols,
                self.rows * self.cols
            )));
        }
        let entries: Vec<Complex64> = self
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CliError::Input(
                "invalid matrix document: non-finite entry".into(),
            ));
        }
        Ok(ComplexMatrix::from_vec(self.rows, self.cols, entries))
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub format_version: u32,
    pub dim_a: usize,
    pub dim_b: usize,
    pub component_rank: usize,
    pub dense_coding_capable: bool,
    /// Strict dimension-count condition `K = n² − 2np`.
    pub k_condition: i64,
    pub k_positive: bool,
    /// Softened condition `n > p` under which conserving freedom exists.
    pub masking_condition: bool,
    pub s_count: usize,
    pub orbit_dimension: usize,
    /// Real dimension of the unit sphere of the full space, `2np − 1`.
    pub full_sphere_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct GeneratorsDocument {
    pub format_version: u32,
    pub dim_a: usize,
    pub count: usize,
    pub generators: Vec<MatrixDocument>,
}

#[derive(Debug, Serialize)]
pub struct VerificationSummary {
    pub conserving: bool,
    pub outcome_residual: f64,
    pub max_component_residual: f64,
    pub tolerance: f64,
}

/// Mask output: a [`MatrixDocument`] (the station unitary) extended with
/// the masking parameters and the invariance check, so it can be piped
/// straight back into `verify`.
#[derive(Debug, Serialize)]
pub struct MaskDocument {
    pub format_version: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
    pub gammas: Vec<f64>,
    pub verification: VerificationSummary,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub format_version: u32,
    pub conserving: bool,
    pub outcome_residual: f64,
    pub max_component_residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Serialize)]
pub struct DistanceStats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub format_version: u32,
    pub dim_a: usize,
    pub dim_b: usize,
    pub s_count: usize,
    pub trials: usize,
    pub seed: u64,
    pub message: String,
    pub station_distance: DistanceStats,
    pub outcome_distance: DistanceStats,
    pub masked_fraction: f64,
    pub mask_distance_threshold: f64,
}

fn check_version(version: u32) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(CliError::Input(format!(
            "unsupported format_version {version}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

/// Compact JSON with every `f64` rendered as `{:.16e}`: one digit before
/// the point, sixteen after, 17 significant digits in total, enough to
/// reproduce any double exactly.
struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json(value: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serialized JSON is UTF-8")
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

/// Write to `--out` or stdout; write failures are I/O errors (exit 3).
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}
