//! Gram–Schmidt orthonormalization for complex and real vector sets.
//!
//! Both routines use modified Gram–Schmidt with one re-orthogonalization
//! pass, which keeps pairwise inner products of the output at the machine
//! precision level even for ill-conditioned input sets.

use num_complex::Complex64;

use super::matrix::{dot_real, inner, norm2, norm2_real};
use crate::tolerances;

/// Orthonormal basis of the span of `vs`.
///
/// Vectors whose residual after projection onto the already-accepted basis
/// has norm ≤ `tol` are dropped, so the output length equals the numerical
/// rank of the input set. `tol == 0.0` selects the default
/// `max(dim, count)·ε·max_norm`.
///
/// Panics if the input vectors do not all have the same length.
pub fn orthonormalize(vs: &[Vec<Complex64>], tol: f64) -> Vec<Vec<Complex64>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let dim = vs[0].len();
    for v in vs {
        assert_eq!(v.len(), dim, "orthonormalize: mixed vector lengths");
    }
    let max_norm = vs.iter().map(|v| norm2(v)).fold(0.0, f64::max);
    let drop_tol = if tol == 0.0 {
        tolerances::orthonormalize_tol(dim, vs.len(), max_norm)
    } else {
        tol
    };

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        // Two projection passes: the second removes the components the first
        // lost to cancellation.
        for _ in 0..2 {
            for u in &basis {
                let coeff = inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= coeff * ui;
                }
            }
        }
        let residual = norm2(&w);
        if residual > drop_tol {
            let inv = 1.0 / residual;
            for wi in &mut w {
                *wi *= inv;
            }
            basis.push(w);
        }
    }
    basis
}

/// Real counterpart of [`orthonormalize`].
pub fn orthonormalize_real(vs: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let dim = vs[0].len();
    for v in vs {
        assert_eq!(v.len(), dim, "orthonormalize_real: mixed vector lengths");
    }
    let max_norm = vs.iter().map(|v| norm2_real(v)).fold(0.0, f64::max);
    let drop_tol = if tol == 0.0 {
        tolerances::orthonormalize_tol(dim, vs.len(), max_norm)
    } else {
        tol
    };

    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &basis {
                let coeff = dot_real(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= coeff * ui;
                }
            }
        }
        let residual = norm2_real(&w);
        if residual > drop_tol {
            let inv = 1.0 / residual;
            for wi in &mut w {
                *wi *= inv;
            }
            basis.push(w);
        }
    }
    basis
}
