//! Helpers for CLI tests: binary invocation, fixture files, and a
//! brute-force elimination rank oracle independent of the library's QR
//! path.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use densemask::RealMatrix;

pub fn densemask_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_densemask"))
        .args(args)
        .output()
        .expect("failed to spawn densemask binary")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process terminated by signal")
}

pub fn write_fixture(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("failed to write fixture");
    path
}

/// (|00⟩ + |11⟩)/√2 in a 2×2 system.
pub fn bell_json() -> String {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    format!(
        r#"{{"format_version":1,"dims":[2,2],"amplitudes":[[{r:.16e},0.0],[0.0,0.0],[0.0,0.0],[{r:.16e},0.0]]}}"#
    )
}

/// |0⟩⊗|0⟩ in an n×p system.
pub fn product_state_json(n: usize, p: usize) -> String {
    let amps: Vec<String> = (0..n * p)
        .map(|i| if i == 0 { "[1.0,0.0]" } else { "[0.0,0.0]" }.to_string())
        .collect();
    format!(
        r#"{{"format_version":1,"dims":[{n},{p}],"amplitudes":[{}]}}"#,
        amps.join(",")
    )
}

pub fn identity_matrix_json(n: usize) -> String {
    let entries: Vec<String> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j { "[1.0,0.0]" } else { "[0.0,0.0]" }.to_string()
        })
        .collect();
    format!(
        r#"{{"format_version":1,"rows":{n},"cols":{n},"entries":[{}]}}"#,
        entries.join(",")
    )
}

/// Rank by Gaussian elimination with partial pivoting; pivots with
/// magnitude at most `1e-10 × (largest entry)` count as zero.
pub fn gaussian_rank(m: &RealMatrix) -> usize {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut rows: Vec<Vec<f64>> = (0..nrows)
        .map(|i| (0..ncols).map(|j| m[(i, j)]).collect())
        .collect();
    let scale = m.entries().iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
    let cut = 1e-10 * scale;

    let mut rank = 0;
    for col in 0..ncols {
        let pivot_row = (rank..nrows).max_by(|&a, &b| {
            rows[a][col]
                .abs()
                .partial_cmp(&rows[b][col].abs())
                .unwrap()
        });
        let Some(pivot_row) = pivot_row else { break };
        if rows[pivot_row][col].abs() <= cut {
            continue;
        }
        rows.swap(rank, pivot_row);
        for r in (rank + 1)..nrows {
            let factor = rows[r][col] / rows[rank][col];
            if factor != 0.0 {
                for c in col..ncols {
                    rows[r][c] -= factor * rows[rank][c];
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
