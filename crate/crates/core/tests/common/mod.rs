//! Shared helpers for integration tests: independent oracles (brute-force
//! Gaussian elimination, Taylor-series matrix exponential) and deterministic
//! fixture generators. Nothing here touches the QR/Jacobi code paths under
//! test.

#![allow(dead_code)]

use densemask::linalg::{expm_skew_hermitian, ComplexMatrix, RealMatrix};
use densemask::Complex64;

/// Rank by Gaussian elimination with partial pivoting. Pivots with
/// magnitude at most `cut` count as zero; `cut == 0.0` picks
/// `1e-10 × (largest entry magnitude)`, adequate for the well-separated
/// systems exercised in tests.
pub fn gaussian_rank(m: &RealMatrix, cut: f64) -> usize {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut rows: Vec<Vec<f64>> = (0..nrows)
        .map(|i| (0..ncols).map(|j| m[(i, j)]).collect())
        .collect();

    let scale = m.entries().iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
    let cut = if cut == 0.0 { 1e-10 * scale } else { cut };

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

fn mat_add(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let entries: Vec<Complex64> = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x + y)
        .collect();
    ComplexMatrix::from_vec(a.rows(), a.cols(), entries)
}

/// `exp(γ·D)` via scaling-and-squaring with a Taylor series, truncated once
/// terms fall below 1e-16. Independent of the spectral route under test.
pub fn taylor_expm(d: &ComplexMatrix, gamma: f64) -> ComplexMatrix {
    let n = d.rows();
    let x = d.scaled(Complex64::new(gamma, 0.0));
    let norm = x.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let x_small = x.scaled(Complex64::new(0.5_f64.powi(squarings), 0.0));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for j in 1..=40u64 {
        term = &term * &x_small;
        term = term.scaled(Complex64::new(1.0 / j as f64, 0.0));
        sum = mat_add(&sum, &term);
        if term.frobenius_norm() < 1e-16 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// splitmix64: tiny deterministic generator for fixtures, unrelated to the
/// library's ChaCha streams.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.uniform(), self.uniform())
    }
}

pub fn random_complex_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = TestRng::new(seed);
    let entries: Vec<Complex64> = (0..rows * cols).map(|_| rng.complex()).collect();
    ComplexMatrix::from_vec(rows, cols, entries)
}

pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let a = random_complex_matrix(n, n, seed);
    let entries: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (a[(i, j)] + a[(j, i)].conj()) * Complex64::new(0.5, 0.0)
        })
        .collect();
    ComplexMatrix::from_vec(n, n, entries)
}

pub fn random_skew_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    random_hermitian(n, seed).scaled(Complex64::new(0.0, 1.0))
}

pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    expm_skew_hermitian(&random_skew_hermitian(n, seed), 1.0).unwrap()
}
