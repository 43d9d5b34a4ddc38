//! Construction of the conserving family: the skew-Hermitian generators
//! that annihilate every component vector of a bipartite state, and the
//! unitaries obtained by exponentiating them.
//!
//! A sender-side unitary `E` leaves the shared state untouched exactly when
//! it fixes every component vector `φ_k`. At the generator level this reads
//! `D·φ_k = 0` for a skew-Hermitian `D`. Writing `D` in terms of its `n²`
//! real degrees of freedom (diagonal phases `δ` and off-diagonal complex
//! entries `α`) and splitting the components into real and imaginary parts
//! turns the condition into a real linear system with `2np` equations. Its
//! kernel has dimension `(n − r)²`, where `r` is the component rank: the
//! generators are precisely the skew-Hermitian matrices supported on the
//! orthogonal complement `H⊥` of the component span. Both characterizations
//! are implemented here, [`solve_family`] via the linear system and
//! [`oracle_family`] via `H⊥` directly, so each validates the other.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    expm_skew_hermitian, norm2, null_space_real, orthonormalize_real, ComplexMatrix, RealMatrix,
};
use crate::state::{apply_sender, BipartiteState, ComponentDecomposition};
use crate::tolerances;

/// Real parameters of a skew-Hermitian matrix: diagonal phases `δ_k` and
/// the real/imaginary parts of the strict upper triangle `α_st` (pairs
/// `s < t` in lexicographic order).
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParameters {
    pub deltas: Vec<f64>,
    pub alphas_re: Vec<f64>,
    pub alphas_im: Vec<f64>,
}

impl GeneratorParameters {
    pub fn zeros(n: usize) -> Self {
        let pairs = n * n.saturating_sub(1) / 2;
        GeneratorParameters {
            deltas: vec![0.0; n],
            alphas_re: vec![0.0; pairs],
            alphas_im: vec![0.0; pairs],
        }
    }

    /// Matrix order `n`.
    pub fn dim(&self) -> usize {
        self.deltas.len()
    }

    /// Total real parameter count, always `n²`.
    pub fn parameter_count(&self) -> usize {
        self.deltas.len() + self.alphas_re.len() + self.alphas_im.len()
    }

    /// Flatten to the canonical unknown ordering: `δ_1..δ_n` first, then
    /// for each pair `s < t` the real part followed by the imaginary part.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = Vec::with_capacity(self.parameter_count());
        flat.extend_from_slice(&self.deltas);
        for (re, im) in self.alphas_re.iter().zip(&self.alphas_im) {
            flat.push(*re);
            flat.push(*im);
        }
        flat
    }

    /// Inverse of [`GeneratorParameters::to_flat`].
    pub fn from_flat(n: usize, flat: &[f64]) -> Self {
        assert_eq!(flat.len(), n * n, "parameter vector must have length n²");
        let pairs = n * (n - 1) / 2;
        let mut alphas_re = Vec::with_capacity(pairs);
        let mut alphas_im = Vec::with_capacity(pairs);
        for chunk in flat[n..].chunks_exact(2) {
            alphas_re.push(chunk[0]);
            alphas_im.push(chunk[1]);
        }
        GeneratorParameters {
            deltas: flat[..n].to_vec(),
            alphas_re,
            alphas_im,
        }
    }
}

/// Index of pair `(s, t)`, `s < t`, in lexicographic order.
fn pair_index(n: usize, s: usize, t: usize) -> usize {
    debug_assert!(s < t && t < n);
    s * n - s * (s + 1) / 2 + (t - s - 1)
}

/// Build the skew-Hermitian matrix with diagonal `i·δ_k` and upper triangle
/// `α_st = α_st^{re} + i·α_st^{im}`; the lower triangle is determined by
/// skew-Hermiticity.
pub fn assemble_generator(params: &GeneratorParameters) -> ComplexMatrix {
    let n = params.dim();
    let mut d = ComplexMatrix::zeros(n, n);
    for (k, &delta) in params.deltas.iter().enumerate() {
        d[(k, k)] = Complex64::new(0.0, delta);
    }
    for s in 0..n {
        for t in (s + 1)..n {
            let idx = pair_index(n, s, t);
            let alpha = Complex64::new(params.alphas_re[idx], params.alphas_im[idx]);
            d[(s, t)] = alpha;
            d[(t, s)] = -alpha.conj();
        }
    }
    d
}

/// Read the parameters back out of a skew-Hermitian matrix (diagonal
/// imaginary parts and the upper triangle). Exact inverse of
/// [`assemble_generator`] on skew-Hermitian input.
pub fn extract_parameters(d: &ComplexMatrix) -> GeneratorParameters {
    assert!(d.is_square(), "extract_parameters requires a square matrix");
    let n = d.rows();
    let mut params = GeneratorParameters::zeros(n);
    for k in 0..n {
        params.deltas[k] = d[(k, k)].im;
    }
    for s in 0..n {
        for t in (s + 1)..n {
            let idx = pair_index(n, s, t);
            params.alphas_re[idx] = d[(s, t)].re;
            params.alphas_im[idx] = d[(s, t)].im;
        }
    }
    params
}

/// The real linear system whose kernel parameterizes the conserving
/// generators.
///
/// Rows: for each component `k`, then each sender coordinate `a`, the real
/// part of `(D·φ_k)_a = 0` followed by the imaginary part, `2np` rows in
/// total. Columns follow the flat unknown ordering of
/// [`GeneratorParameters::to_flat`], `n²` in total.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub matrix: RealMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl ConstraintSystem {
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Numerical rank of the system (`tol == 0` → default rank tolerance).
    pub fn rank(&self, tol: f64) -> Result<usize> {
        crate::linalg::rank_real(&self.matrix, tol)
    }

    /// Orthonormal kernel basis in parameter space.
    pub fn kernel(&self, tol: f64) -> Result<Vec<Vec<f64>>> {
        null_space_real(&self.matrix, tol)
    }
}

/// Assemble the constraint system for a component decomposition.
pub fn build_constraint_system(decomp: &ComponentDecomposition) -> Result<ConstraintSystem> {
    let n = decomp.dim_a();
    let p = decomp.dim_b();
    if n == 0 || p == 0 {
        return Err(Error::DegenerateShape { rows: n, cols: p });
    }
    for phi in &decomp.components {
        if phi.len() != n {
            return Err(Error::DimensionMismatch {
                context: "component vector length",
                expected: n,
                got: phi.len(),
            });
        }
    }

    let mut m = RealMatrix::zeros(2 * n * p, n * n);
    for (k, phi) in decomp.components.iter().enumerate() {
        for a in 0..n {
            let row_re = k * 2 * n + 2 * a;
            let row_im = row_re + 1;

            // Diagonal term i·δ_a·φ[a].
            m[(row_re, a)] = -phi[a].im;
            m[(row_im, a)] = phi[a].re;

            // Upper-triangle term α_at·φ[t] for t > a.
            for t in (a + 1)..n {
                let col = n + 2 * pair_index(n, a, t);
                m[(row_re, col)] = phi[t].re;
                m[(row_re, col + 1)] = -phi[t].im;
                m[(row_im, col)] = phi[t].im;
                m[(row_im, col + 1)] = phi[t].re;
            }

            // Lower-triangle term −conj(α_sa)·φ[s] for s < a.
            for s in 0..a {
                let col = n + 2 * pair_index(n, s, a);
                m[(row_re, col)] = -phi[s].re;
                m[(row_re, col + 1)] = -phi[s].im;
                m[(row_im, col)] = -phi[s].im;
                m[(row_im, col + 1)] = phi[s].re;
            }
        }
    }

    Ok(ConstraintSystem {
        matrix: m,
        dim_a: n,
        dim_b: p,
    })
}

/// A complete family of conserving generators for one state.
///
/// The generators come from an orthonormal kernel basis in parameter space
/// (Euclidean norm on the flat `(δ, α)` vectors), not from Frobenius
/// normalization; the two norms are related by
/// `‖D‖_F² = ‖v‖₂² + Σ_{s<t}|α_st|²`, since every off-diagonal parameter
/// appears twice in the matrix.
#[derive(Debug, Clone)]
pub struct ConservingFamily {
    /// Skew-Hermitian generators, one per fundamental solution.
    pub generators: Vec<ComplexMatrix>,
    /// Rank of the component set the family was built from.
    pub component_rank: usize,
    /// Rank of the constraint system: the real dimension of the local
    /// orbit of the state under sender unitaries.
    pub orbit_dimension: usize,
    /// The orthonormal kernel vectors the generators were assembled from.
    pub parameter_vectors: Vec<Vec<f64>>,
    dim_a: usize,
}

impl ConservingFamily {
    /// Number of generators `S`.
    pub fn s_count(&self) -> usize {
        self.generators.len()
    }

    /// Sender-space dimension.
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    /// Product unitary `E_1(γ_1)·E_2(γ_2)·…·E_S(γ_S)`, factors in ascending
    /// generator order.
    pub fn masking_unitary(&self, gammas: &[f64]) -> Result<ComplexMatrix> {
        if gammas.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                context: "gamma parameter count",
                expected: self.generators.len(),
                got: gammas.len(),
            });
        }
        let mut u = ComplexMatrix::identity(self.dim_a);
        for (generator, &gamma) in self.generators.iter().zip(gammas) {
            let factor = expm_skew_hermitian(generator, gamma)?;
            u = &u * &factor;
        }
        Ok(u)
    }
}

/// Solve the constraint system and assemble the generator family.
///
/// `tol` is forwarded to the rank decision (`0` → default). The kernel
/// count, and with it `S = s_count`, equals `(n − r)²` for component
/// rank `r`; `orbit_dimension` is the complementary rank `n² − S`.
pub fn solve_family(decomp: &ComponentDecomposition, tol: f64) -> Result<ConservingFamily> {
    let system = build_constraint_system(decomp)?;
    let n = system.dim_a();
    let parameter_vectors = system.kernel(tol)?;
    let generators: Vec<ComplexMatrix> = parameter_vectors
        .iter()
        .map(|v| assemble_generator(&GeneratorParameters::from_flat(n, v)))
        .collect();
    let orbit_dimension = n * n - parameter_vectors.len();
    Ok(ConservingFamily {
        generators,
        component_rank: decomp.rank,
        orbit_dimension,
        parameter_vectors,
        dim_a: n,
    })
}

/// Result of checking whether a matrix conserves a state.
#[derive(Debug, Clone, Copy)]
pub struct ConservationCheck {
    /// True when the outcome residual is within tolerance.
    pub conserving: bool,
    /// `‖(E ⊗ I)Ψ − Ψ‖₂`.
    pub outcome_residual: f64,
    /// `max_k ‖E·φ_k − φ_k‖₂`, the per-component form of the same
    /// condition.
    pub max_component_residual: f64,
    /// The tolerance the verdict was taken against.
    pub tolerance: f64,
}

/// Check `(E ⊗ I)Ψ = Ψ` within `tol` (`0` → default `1e-8`).
pub fn verify_conserving(
    e: &ComplexMatrix,
    state: &BipartiteState,
    tol: f64,
) -> Result<ConservationCheck> {
    let n = state.dim_a();
    let p = state.dim_b();
    if e.rows() != n || e.cols() != n {
        return Err(Error::DimensionMismatch {
            context: "conserving-matrix order",
            expected: n,
            got: e.rows().max(e.cols()),
        });
    }
    let tolerance = if tol == 0.0 {
        tolerances::CONSERVING_TOL
    } else {
        tol
    };

    let outcome = apply_sender(e, state);
    let outcome_residual = outcome.distance(state);

    let mut max_component_residual = 0.0_f64;
    for k in 0..p {
        let phi: Vec<Complex64> = (0..n).map(|a| state.amplitudes()[a * p + k]).collect();
        let image = e.mul_vec(&phi);
        let diff: Vec<Complex64> = image.iter().zip(&phi).map(|(x, y)| x - y).collect();
        max_component_residual = max_component_residual.max(norm2(&diff));
    }

    Ok(ConservationCheck {
        conserving: outcome_residual <= tolerance,
        outcome_residual,
        max_component_residual,
        tolerance,
    })
}

/// Independent construction of the generator space: skew-Hermitian matrices
/// supported on `H⊥`, built as `B·K·B†` where the columns of `B` are the
/// `h_perp_basis` and `K` runs over the canonical skew-Hermitian basis of
/// the `(n−r)`-dimensional complement. Returns `(n−r)²` matrices whose span
/// must coincide with the [`solve_family`] span.
pub fn oracle_family(decomp: &ComponentDecomposition) -> Vec<ComplexMatrix> {
    let perp = &decomp.h_perp_basis;
    let m = perp.len();
    if m == 0 {
        return Vec::new();
    }
    let b = ComplexMatrix::from_columns(perp);
    let b_adj = b.adjoint();

    let mut family = Vec::with_capacity(m * m);
    let push = |k: ComplexMatrix, family: &mut Vec<ComplexMatrix>| {
        family.push(&(&b * &k) * &b_adj);
    };
    for j in 0..m {
        let mut k = ComplexMatrix::zeros(m, m);
        k[(j, j)] = Complex64::new(0.0, 1.0);
        push(k, &mut family);
    }
    for s in 0..m {
        for t in (s + 1)..m {
            let mut k_re = ComplexMatrix::zeros(m, m);
            k_re[(s, t)] = Complex64::new(1.0, 0.0);
            k_re[(t, s)] = Complex64::new(-1.0, 0.0);
            push(k_re, &mut family);

            let mut k_im = ComplexMatrix::zeros(m, m);
            k_im[(s, t)] = Complex64::new(0.0, 1.0);
            k_im[(t, s)] = Complex64::new(0.0, 1.0);
            push(k_im, &mut family);
        }
    }
    family
}

/// True when two matrix lists span the same real subspace.
///
/// Matrices are flattened to real vectors and the two spans are compared by
/// mutual projection: every basis vector of one span must project onto the
/// other with residual ≤ `tol` (`0` → default `1e-9`), in both directions.
pub fn spans_equal(a: &[ComplexMatrix], b: &[ComplexMatrix], tol: f64) -> Result<bool> {
    let shape = a
        .first()
        .or_else(|| b.first())
        .map(|m| (m.rows(), m.cols()));
    let Some((rows, cols)) = shape else {
        return Ok(true); // both empty
    };
    for m in a.iter().chain(b) {
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::DimensionMismatch {
                context: "span comparison matrix shape",
                expected: rows * cols,
                got: m.rows() * m.cols(),
            });
        }
    }
    let tolerance = if tol == 0.0 { tolerances::SPAN_TOL } else { tol };

    let flatten = |m: &ComplexMatrix| -> Vec<f64> {
        m.entries().iter().flat_map(|z| [z.re, z.im]).collect()
    };
    let basis_a = orthonormalize_real(&a.iter().map(flatten).collect::<Vec<_>>(), 0.0);
    let basis_b = orthonormalize_real(&b.iter().map(flatten).collect::<Vec<_>>(), 0.0);
    if basis_a.len() != basis_b.len() {
        return Ok(false);
    }

    let residual_outside = |v: &[f64], basis: &[Vec<f64>]| -> f64 {
        let mut rest = v.to_vec();
        for u in basis {
            let coeff = crate::linalg::dot_real(u, &rest);
            for (r, ui) in rest.iter_mut().zip(u) {
                *r -= coeff * ui;
            }
        }
        crate::linalg::norm2_real(&rest)
    };
    let ok_ab = basis_a
        .iter()
        .all(|v| residual_outside(v, &basis_b) <= tolerance);
    let ok_ba = basis_b
        .iter()
        .all(|v| residual_outside(v, &basis_a) <= tolerance);
    Ok(ok_ab && ok_ba)
}
