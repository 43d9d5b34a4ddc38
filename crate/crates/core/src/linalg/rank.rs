//! Numerical rank and kernel bases for real matrices via column-pivoted
//! Householder QR.
//!
//! Pivoting keeps the diagonal of `R` non-increasing in magnitude, so the
//! rank decision is a simple threshold on the pivots, with the default
//! tolerance scaled by the largest column norm (the first pivot). The
//! factorization runs in a fixed number of steps and every loop is
//! deterministic, so repeated runs give bit-identical output.

use crate::error::{Error, Result};
use crate::tolerances;

use super::matrix::{norm2_real, RealMatrix};
use super::orthonormal::orthonormalize_real;

struct PivotedQr {
    /// Columns of the factored matrix, Householder-reduced in place; the
    /// upper triangle holds `R`.
    columns: Vec<Vec<f64>>,
    /// `perm[k]` is the original index of the column now in position `k`.
    perm: Vec<usize>,
    /// Magnitudes of the `R` diagonal, non-increasing.
    pivots: Vec<f64>,
}

fn pivoted_qr(m: &RealMatrix) -> PivotedQr {
    let rows = m.rows();
    let cols = m.cols();
    let steps = rows.min(cols);

    let mut columns: Vec<Vec<f64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut pivots = Vec::with_capacity(steps);

    for k in 0..steps {
        // Recompute trailing norms exactly; cheaper downdating tricks can
        // cancel catastrophically.
        let (best, best_norm) = (k..cols)
            .map(|j| (j, norm2_real(&columns[j][k..])))
            .fold((k, -1.0), |acc, (j, norm)| {
                if norm > acc.1 {
                    (j, norm)
                } else {
                    acc
                }
            });
        if best_norm <= 0.0 {
            break;
        }
        columns.swap(k, best);
        perm.swap(k, best);

        // Householder reflection zeroing column k below the diagonal.
        let head = columns[k][k];
        let alpha = -head.signum() * best_norm;
        let mut v: Vec<f64> = columns[k][k..].to_vec();
        v[0] -= alpha;
        let v_sq = norm2_real(&v).powi(2);
        if v_sq > 0.0 {
            for col in columns.iter_mut().skip(k) {
                let tail = &mut col[k..];
                let proj: f64 = v.iter().zip(tail.iter()).map(|(a, b)| a * b).sum();
                let scale = 2.0 * proj / v_sq;
                for (t, vi) in tail.iter_mut().zip(&v) {
                    *t -= scale * vi;
                }
            }
        }
        columns[k][k] = alpha;
        for entry in columns[k][k + 1..].iter_mut() {
            *entry = 0.0;
        }
        pivots.push(alpha.abs());
    }

    PivotedQr {
        columns,
        perm,
        pivots,
    }
}

fn check_shape(m: &RealMatrix) -> Result<()> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::DegenerateShape {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

fn effective_tol(m: &RealMatrix, qr: &PivotedQr, tol: f64) -> f64 {
    if tol == 0.0 {
        let scale = qr.pivots.first().copied().unwrap_or(0.0);
        tolerances::rank_tol(m.rows(), m.cols(), scale)
    } else {
        tol
    }
}

fn rank_from(qr: &PivotedQr, cut: f64) -> usize {
    qr.pivots.iter().filter(|&&p| p > cut).count()
}

/// Numerical rank: the number of QR pivots strictly exceeding `tol`.
///
/// `tol == 0.0` selects the default `max(rows, cols)·ε·scale`, where
/// `scale` is the largest column norm of the matrix (the first pivot).
pub fn rank_real(m: &RealMatrix, tol: f64) -> Result<usize> {
    check_shape(m)?;
    let qr = pivoted_qr(m);
    let cut = effective_tol(m, &qr, tol);
    Ok(rank_from(&qr, cut))
}

/// Orthonormal basis of the kernel of `m`.
///
/// Returns `cols − rank` unit vectors with pairwise dot products at machine
/// precision. Each vector `v` satisfies `‖M·v‖₂ ≤ 10·tol·‖M‖_F` (Frobenius
/// bound). The basis is deterministic: raw kernel vectors come out of the
/// triangular solve in free-column order, are orthonormalized in that
/// order, and are signed so that the first component of magnitude above
/// [`tolerances::PHASE_PIVOT_MIN`] is positive.
pub fn null_space_real(m: &RealMatrix, tol: f64) -> Result<Vec<Vec<f64>>> {
    check_shape(m)?;
    let cols = m.cols();
    let qr = pivoted_qr(m);
    let cut = effective_tol(m, &qr, tol);
    let rank = rank_from(&qr, cut);

    // In pivoted coordinates R = [R1 | R2] with R1 the leading rank×rank
    // triangle. Each free column j gives a kernel vector [−R1⁻¹·R2_j; e_j].
    let mut raw: Vec<Vec<f64>> = Vec::with_capacity(cols - rank);
    for free in rank..cols {
        let mut w = vec![0.0; rank];
        for i in (0..rank).rev() {
            let mut acc = -qr.columns[free][i];
            for (l, &wl) in w.iter().enumerate().skip(i + 1) {
                acc -= qr.columns[l][i] * wl;
            }
            w[i] = acc / qr.columns[i][i];
        }
        let mut v = vec![0.0; cols];
        for (pos, &value) in w.iter().enumerate() {
            v[qr.perm[pos]] = value;
        }
        v[qr.perm[free]] = 1.0;
        raw.push(v);
    }

    let mut kernel = orthonormalize_real(&raw, 0.0);
    assert_eq!(
        kernel.len(),
        cols - rank,
        "kernel basis lost a direction during orthonormalization"
    );
    for v in &mut kernel {
        fix_sign_real(v);
    }
    Ok(kernel)
}

/// Sign convention shared with the eigensolver: make the first component of
/// magnitude above the pivot threshold positive.
fn fix_sign_real(v: &mut [f64]) {
    if let Some(&pivot) = v.iter().find(|x| x.abs() > tolerances::PHASE_PIVOT_MIN) {
        if pivot < 0.0 {
            for x in v {
                *x = -*x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot_real;

    #[test]
    fn identity_has_full_rank() {
        let m = RealMatrix::identity(3);
        assert_eq!(rank_real(&m, 0.0).unwrap(), 3);
        assert!(null_space_real(&m, 0.0).unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = RealMatrix::zeros(2, 2);
        assert_eq!(rank_real(&m, 0.0).unwrap(), 0);
        assert_eq!(null_space_real(&m, 0.0).unwrap().len(), 2);
    }

    #[test]
    fn empty_matrix_is_rejected() {
        let m = RealMatrix::zeros(0, 3);
        assert!(matches!(
            rank_real(&m, 0.0),
            Err(Error::DegenerateShape { .. })
        ));
    }

    #[test]
    fn kernel_of_row_vector() {
        // [1, 0] kills exactly the second coordinate direction.
        let m = RealMatrix::from_vec(1, 2, vec![1.0, 0.0]);
        let kernel = null_space_real(&m, 0.0).unwrap();
        assert_eq!(kernel.len(), 1);
        assert!((kernel[0][0]).abs() < 1e-14);
        assert!((kernel[0][1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        // rows are multiples of each other
        let m = RealMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0],
            vec![-1.0, -2.0, -3.0],
        ]);
        assert_eq!(rank_real(&m, 0.0).unwrap(), 1);
        let kernel = null_space_real(&m, 0.0).unwrap();
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            let image = m.mul_vec(v);
            assert!(norm2_real(&image) < 1e-12);
        }
    }

    #[test]
    fn kernel_vectors_are_orthonormal() {
        let m = RealMatrix::from_rows(&[vec![1.0, 1.0, 1.0, 1.0]]);
        let kernel = null_space_real(&m, 0.0).unwrap();
        assert_eq!(kernel.len(), 3);
        for i in 0..kernel.len() {
            for j in 0..kernel.len() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot_real(&kernel[i], &kernel[j]) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wide_matrix_with_noise_rows() {
        // 3x6 with one dependent row: rank 2, kernel 4.
        let m = RealMatrix::from_rows(&[
            vec![1.0, 0.5, -0.25, 2.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.75, -1.0, 3.0, 0.5],
            vec![2.0, 1.0, -0.5, 4.0, 0.0, 2.0],
        ]);
        assert_eq!(rank_real(&m, 0.0).unwrap(), 2);
        let kernel = null_space_real(&m, 0.0).unwrap();
        assert_eq!(kernel.len(), 4);
        for v in &kernel {
            assert!(norm2_real(&m.mul_vec(v)) < 1e-12);
        }
    }

    #[test]
    fn explicit_tolerance_overrides_default() {
        let m = RealMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1e-6]]);
        assert_eq!(rank_real(&m, 0.0).unwrap(), 2);
        assert_eq!(rank_real(&m, 1e-3).unwrap(), 1);
    }

    #[test]
    fn determinism_bit_for_bit() {
        let m = RealMatrix::from_rows(&[
            vec![0.3, -1.2, 0.7, 0.1],
            vec![1.1, 0.4, -0.6, 0.9],
        ]);
        let a = null_space_real(&m, 0.0).unwrap();
        let b = null_space_real(&m, 0.0).unwrap();
        assert_eq!(a, b);
    }
}
