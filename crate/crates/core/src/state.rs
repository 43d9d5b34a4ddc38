//! Pure states of a bipartite system and their component structure.
//!
//! A state lives in the tensor product of a sender space of dimension `n`
//! and a receiver space of dimension `p`. Amplitudes are stored row-major:
//! the coefficient of `|a⟩⊗|b⟩` sits at index `a·p + b`. Expanding over the
//! receiver's computational basis writes the state as `Σ_k φ_k ⊗ e_k` with
//! component vectors `φ_k ∈ ℂⁿ`; the number of linearly independent
//! components is the diagnostic that decides whether sender-side unitaries
//! reach the maximal outcome set.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{norm2, orthonormalize, ComplexMatrix};
use crate::tolerances;

/// Pure state of a sender ⊗ receiver system.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
}

impl BipartiteState {
    /// Build a state from its amplitude vector (index `a·p + b`).
    ///
    /// Checks shape and finiteness; normalization is checked by the
    /// operations that rely on it, see [`BipartiteState::normalize`].
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::DegenerateShape {
                rows: dim_a,
                cols: dim_b,
            });
        }
        if amplitudes.len() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                context: "amplitude vector length",
                expected: dim_a * dim_b,
                got: amplitudes.len(),
            });
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite {
                context: "state amplitudes",
            });
        }
        Ok(BipartiteState {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    /// Assemble `Σ_k φ_k ⊗ e_k` from component vectors. The amplitudes are
    /// copied directly, with no arithmetic.
    pub fn from_components(components: &[Vec<Complex64>]) -> Result<Self> {
        let dim_b = components.len();
        let dim_a = components.first().map_or(0, Vec::len);
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::DegenerateShape {
                rows: dim_a,
                cols: dim_b,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim_a * dim_b];
        for (k, phi) in components.iter().enumerate() {
            if phi.len() != dim_a {
                return Err(Error::DimensionMismatch {
                    context: "component vector length",
                    expected: dim_a,
                    got: phi.len(),
                });
            }
            for (a, &value) in phi.iter().enumerate() {
                amplitudes[a * dim_b + k] = value;
            }
        }
        Self::new(dim_a, dim_b, amplitudes)
    }

    /// Sender-space dimension `n`.
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    /// Receiver-space dimension `p`.
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Coefficient of `|a⟩⊗|b⟩`.
    pub fn amplitude(&self, a: usize, b: usize) -> Complex64 {
        self.amplitudes[a * self.dim_b + b]
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        norm2(&self.amplitudes)
    }

    /// Rescaled copy with unit norm. Normalization is never performed
    /// implicitly elsewhere; call this when input data is only
    /// approximately normalized.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NonFinite {
                context: "state norm",
            });
        }
        let inv = 1.0 / norm;
        Ok(BipartiteState {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            amplitudes: self.amplitudes.iter().map(|z| z * inv).collect(),
        })
    }

    /// `‖self − other‖₂` over the amplitude vectors.
    pub fn distance(&self, other: &BipartiteState) -> f64 {
        assert_eq!(
            (self.dim_a, self.dim_b),
            (other.dim_a, other.dim_b),
            "state distance shape mismatch"
        );
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn check_normalized(&self) -> Result<()> {
        let deviation = (self.norm() - 1.0).abs();
        if deviation > tolerances::STATE_NORM_TOL {
            return Err(Error::NotNormalized {
                deviation,
                tolerance: tolerances::STATE_NORM_TOL,
            });
        }
        Ok(())
    }

    /// Expand the state over the receiver's computational basis.
    ///
    /// The component vectors are a pure re-indexing of the amplitudes
    /// (`φ_k[a] = amplitudes[a·p + k]`); all numerics happen in the rank
    /// computation. Fails when the norm deviates from 1 by more than 1e-6.
    pub fn decompose(&self) -> Result<ComponentDecomposition> {
        self.check_normalized()?;
        let n = self.dim_a;
        let p = self.dim_b;
        let components: Vec<Vec<Complex64>> = (0..p)
            .map(|k| (0..n).map(|a| self.amplitudes[a * p + k]).collect())
            .collect();

        let h_basis = orthonormalize(&components, 0.0);
        let rank = h_basis.len();

        // Complete to an orthonormal basis of the full sender space; the
        // vectors beyond the first `rank` span the orthogonal complement.
        let mut spanning = h_basis.clone();
        for a in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[a] = Complex64::new(1.0, 0.0);
            spanning.push(e);
        }
        let full = orthonormalize(&spanning, 0.0);
        assert_eq!(full.len(), n, "basis completion must span the sender space");
        let h_perp_basis = full[rank..].to_vec();

        Ok(ComponentDecomposition {
            components,
            rank,
            h_basis,
            h_perp_basis,
        })
    }

    /// Deterministic pseudo-random state whose component vectors span
    /// exactly `target_rank` dimensions.
    ///
    /// Draws `target_rank` Gaussian vectors in the sender space and mixes
    /// them with Gaussian coefficients into `dim_b` components, then
    /// normalizes. Identical seeds give bit-identical states.
    pub fn random(dim_a: usize, dim_b: usize, target_rank: usize, seed: u64) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::DegenerateShape {
                rows: dim_a,
                cols: dim_b,
            });
        }
        if target_rank == 0 || target_rank > dim_a.min(dim_b) {
            return Err(Error::InfeasibleRank {
                rank: target_rank,
                dim_a,
                dim_b,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = StandardNormal;
        let draw = |rng: &mut ChaCha8Rng| -> Complex64 {
            let re: f64 = normal.sample(rng);
            let im: f64 = normal.sample(rng);
            Complex64::new(re, im)
        };

        // Rank deficiency of Gaussian draws has probability zero, but the
        // rank check below makes the contract unconditional.
        for _ in 0..16 {
            let span: Vec<Vec<Complex64>> = (0..target_rank)
                .map(|_| (0..dim_a).map(|_| draw(&mut rng)).collect())
                .collect();
            let components: Vec<Vec<Complex64>> = (0..dim_b)
                .map(|_| {
                    let coeffs: Vec<Complex64> =
                        (0..target_rank).map(|_| draw(&mut rng)).collect();
                    let mut phi = vec![Complex64::new(0.0, 0.0); dim_a];
                    for (coeff, basis_vec) in coeffs.iter().zip(&span) {
                        for (out, &x) in phi.iter_mut().zip(basis_vec) {
                            *out += coeff * x;
                        }
                    }
                    phi
                })
                .collect();
            let state = Self::from_components(&components)?.normalize()?;
            if state.decompose()?.rank == target_rank {
                return Ok(state);
            }
        }
        unreachable!("Gaussian draws repeatedly missed the target rank");
    }
}

/// Component expansion of a state over the receiver basis, together with
/// orthonormal bases of the component span `H` and its complement `H⊥`.
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    /// The `p` component vectors in the sender space.
    pub components: Vec<Vec<Complex64>>,
    /// Number of linearly independent components.
    pub rank: usize,
    /// Orthonormal basis of `H = span{φ_k}`.
    pub h_basis: Vec<Vec<Complex64>>,
    /// Orthonormal basis of `H⊥`, completing `h_basis` to the full space.
    pub h_perp_basis: Vec<Vec<Complex64>>,
}

impl ComponentDecomposition {
    /// Sender-space dimension.
    pub fn dim_a(&self) -> usize {
        self.components.first().map_or(0, Vec::len)
    }

    /// Receiver-space dimension.
    pub fn dim_b(&self) -> usize {
        self.components.len()
    }

    /// Dense-coding diagnostic: capable exactly when the components are
    /// linearly independent (rank = p).
    pub fn dense_coding_report(&self) -> DenseCodingReport {
        let n = self.dim_a();
        let p = self.dim_b();
        let k_condition = (n * n) as i64 - 2 * (n * p) as i64;
        DenseCodingReport {
            dim_a: n,
            dim_b: p,
            rank: self.rank,
            capable: self.rank == p,
            masking_possible: n > p,
            k_condition,
            k_positive: k_condition > 0,
        }
    }
}

/// Outcome of the dense-coding capability check.
///
/// `capable` is the rank condition itself. `masking_possible` is the
/// softened dimension condition `n > p` under which conserving freedom
/// exists; `k_condition = n² − 2np` is the stricter original count,
/// reported for information.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseCodingReport {
    pub dim_a: usize,
    pub dim_b: usize,
    pub rank: usize,
    pub capable: bool,
    pub masking_possible: bool,
    pub k_condition: i64,
    pub k_positive: bool,
}

/// Dimensions `(n, p) = (d^m, d^q)` of a register of `m` sender qudits and
/// `q` receiver qudits of local dimension `d`.
pub fn qubit_dims(d: usize, m: u32, q: u32) -> Result<(usize, usize)> {
    assert!(d >= 2 && m >= 1 && q >= 1, "qubit_dims preconditions");
    let n = d
        .checked_pow(m)
        .ok_or(Error::DimensionOverflow { base: d, exponent: m })?;
    let p = d
        .checked_pow(q)
        .ok_or(Error::DimensionOverflow { base: d, exponent: q })?;
    Ok((n, p))
}

/// `(U ⊗ I)·state` without validation; callers check shapes and unitarity.
pub(crate) fn apply_sender(u: &ComplexMatrix, state: &BipartiteState) -> BipartiteState {
    let n = state.dim_a;
    let p = state.dim_b;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n * p];
    for a in 0..n {
        for b in 0..p {
            let mut acc = Complex64::new(0.0, 0.0);
            for a_src in 0..n {
                acc += u[(a, a_src)] * state.amplitudes[a_src * p + b];
            }
            amplitudes[a * p + b] = acc;
        }
    }
    BipartiteState {
        dim_a: n,
        dim_b: p,
        amplitudes,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// |a⟩⊗|b⟩ in an n×p system.
    pub(crate) fn basis_state(n: usize, p: usize, a: usize, b: usize) -> BipartiteState {
        let mut amps = vec![c(0.0, 0.0); n * p];
        amps[a * p + b] = c(1.0, 0.0);
        BipartiteState::new(n, p, amps).unwrap()
    }

    /// (|00⟩ + |11⟩)/√2 in a 2×2 system.
    pub(crate) fn bell_state() -> BipartiteState {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        BipartiteState::new(2, 2, vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)]).unwrap()
    }

    #[test]
    fn product_state_has_rank_one() {
        let state = basis_state(2, 2, 0, 0);
        let decomp = state.decompose().unwrap();
        assert_eq!(decomp.components[0], vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(decomp.components[1], vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(decomp.rank, 1);
        assert_eq!(decomp.h_perp_basis.len(), 1);
    }

    #[test]
    fn bell_state_has_full_rank() {
        let decomp = bell_state().decompose().unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(decomp.components[0], vec![c(r, 0.0), c(0.0, 0.0)]);
        assert_eq!(decomp.components[1], vec![c(0.0, 0.0), c(r, 0.0)]);
        assert_eq!(decomp.rank, 2);
        assert!(decomp.h_perp_basis.is_empty());
    }

    #[test]
    fn decomposition_reconstructs_exactly() {
        let state = BipartiteState::random(8, 2, 2, 7).unwrap();
        let decomp = state.decompose().unwrap();
        let rebuilt = BipartiteState::from_components(&decomp.components).unwrap();
        // Re-indexing only: bit-for-bit identical.
        assert_eq!(rebuilt.amplitudes(), state.amplitudes());
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let state = BipartiteState::new(2, 1, vec![c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            state.decompose(),
            Err(Error::NotNormalized { .. })
        ));
        assert!(state.normalize().unwrap().decompose().is_ok());
    }

    #[test]
    fn capability_reports() {
        let product = basis_state(2, 2, 0, 0).decompose().unwrap().dense_coding_report();
        assert!(!product.capable);

        let bell = bell_state().decompose().unwrap().dense_coding_report();
        assert!(bell.capable);
        assert!(!bell.masking_possible); // n = p leaves no conserving freedom
        assert_eq!(bell.k_condition, -4);

        let wide = BipartiteState::random(8, 2, 2, 1)
            .unwrap()
            .decompose()
            .unwrap()
            .dense_coding_report();
        assert!(wide.capable);
        assert!(wide.masking_possible);
        assert_eq!(wide.k_condition, 32);
        assert!(wide.k_positive);
    }

    #[test]
    fn random_state_hits_requested_rank() {
        for (n, p, r) in [(2, 2, 2), (4, 2, 1), (6, 3, 2), (8, 2, 2)] {
            let state = BipartiteState::random(n, p, r, 42).unwrap();
            assert_eq!(state.decompose().unwrap().rank, r);
            assert!((state.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_state_is_deterministic() {
        let a = BipartiteState::random(5, 3, 2, 123).unwrap();
        let b = BipartiteState::random(5, 3, 2, 123).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        let other = BipartiteState::random(5, 3, 2, 124).unwrap();
        assert_ne!(a.amplitudes(), other.amplitudes());
    }

    #[test]
    fn infeasible_rank_is_rejected() {
        assert!(matches!(
            BipartiteState::random(4, 2, 3, 0),
            Err(Error::InfeasibleRank { .. })
        ));
        assert!(matches!(
            BipartiteState::random(4, 2, 0, 0),
            Err(Error::InfeasibleRank { .. })
        ));
    }

    #[test]
    fn qubit_register_dimensions() {
        assert_eq!(qubit_dims(2, 3, 1).unwrap(), (8, 2));
        assert_eq!(qubit_dims(2, 1, 1).unwrap(), (2, 2));
        assert_eq!(qubit_dims(3, 2, 1).unwrap(), (9, 3));
        assert!(matches!(
            qubit_dims(2, 200, 1),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn bases_are_mutually_orthogonal() {
        use crate::linalg::inner;
        let state = BipartiteState::random(6, 3, 2, 9).unwrap();
        let decomp = state.decompose().unwrap();
        assert_eq!(decomp.h_basis.len() + decomp.h_perp_basis.len(), 6);
        for u in &decomp.h_basis {
            for v in &decomp.h_perp_basis {
                assert!(inner(u, v).norm() < 1e-10);
            }
        }
    }
}
