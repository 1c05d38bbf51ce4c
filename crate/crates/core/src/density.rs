//! Density operators on bipartite spaces and their product decomposition.
//!
//! Every state `ρ` on `H_a ⊗ H_b` splits as `ρ = ρ_a ⊗ ρ_b + M(ρ)`, where
//! `ρ_a`, `ρ_b` are the reduced states and `M(ρ)` (the holistic term) is
//! traceless, Hermitian and vanishes exactly when `ρ` is a product state.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, Subsystem, DEFAULT_TOL};
use crate::pauli::generalized_paulis;

/// Checks the three density-operator invariants and names the first one that
/// fails.
pub fn check_density(a: &ComplexMatrix, tol: f64) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotDensity(format!(
            "matrix is {}x{}, not square",
            a.rows(),
            a.cols()
        )));
    }
    let deviation = a.hermitian_deviation()?;
    if deviation > tol {
        return Err(Error::NotDensity(format!(
            "not Hermitian (max |a - a^dagger| = {deviation:e})"
        )));
    }
    let tr = a.trace()?;
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Err(Error::NotDensity(format!(
            "trace is {}{:+}i, expected 1",
            tr.re, tr.im
        )));
    }
    let min = a.hermitian_eigenvalues(tol)?[0];
    if min < -tol {
        return Err(Error::NotDensity(format!(
            "not positive semidefinite (smallest eigenvalue {min:e})"
        )));
    }
    Ok(())
}

/// A validated density operator, optionally carrying a bipartite split.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    dims: Option<(usize, usize)>,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        check_density(&matrix, tol)?;
        Ok(Self { matrix, dims: None })
    }

    /// Attaches the split `m x k`; fails unless `m * k` is the side length.
    pub fn with_dims(mut self, m: usize, k: usize) -> Result<Self> {
        if m * k != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "side {} is not {m} x {k}",
                self.dim()
            )));
        }
        self.dims = Some((m, k));
        Ok(self)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dims(&self) -> Option<(usize, usize)> {
        self.dims
    }

    /// `ρ ⊗ σ`, with the split recorded.
    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        DensityOperator {
            matrix: self.matrix.kron(&other.matrix),
            dims: Some((self.dim(), other.dim())),
        }
    }

    fn require_split(&self, m: usize, k: usize) -> Result<()> {
        if m == 0 || k == 0 || m * k != self.dim() {
            Err(Error::DimensionMismatch(format!(
                "side {} is not {m} x {k}",
                self.dim()
            )))
        } else {
            Ok(())
        }
    }
}

impl Serialize for DensityOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(deserializer)?;
        DensityOperator::new(m).map_err(serde::de::Error::custom)
    }
}

/// Reduced states `(ρ_a, ρ_b)` for the split `m x k`.
pub fn reduced_states(
    rho: &DensityOperator,
    m: usize,
    k: usize,
) -> Result<(DensityOperator, DensityOperator)> {
    rho.require_split(m, k)?;
    let a = rho.matrix.partial_trace(m, k, Subsystem::A)?;
    let b = rho.matrix.partial_trace(m, k, Subsystem::B)?;
    Ok((DensityOperator::new(a)?, DensityOperator::new(b)?))
}

/// `M(ρ) = ρ - ρ_a ⊗ ρ_b`. Not a state in general.
pub fn holistic_term(rho: &DensityOperator, m: usize, k: usize) -> Result<ComplexMatrix> {
    let (a, b) = reduced_states(rho, m, k)?;
    Ok(&rho.matrix - &a.matrix.kron(&b.matrix))
}

/// Correlation coefficients
/// `M_jl = tr(ρ σ_j⊗σ_l) - tr(ρ σ_j⊗I) tr(ρ I⊗σ_l)`
/// against the generalized Pauli bases of both factors. Rows index `j`.
pub fn m_coefficients(rho: &DensityOperator, m: usize, k: usize) -> Result<Vec<Vec<f64>>> {
    rho.require_split(m, k)?;
    let basis_a = generalized_paulis(m)?;
    let basis_b = generalized_paulis(k)?;
    let ia = ComplexMatrix::identity(m);
    let ib = ComplexMatrix::identity(k);

    let real_trace = |op: &ComplexMatrix, index: usize| -> Result<f64> {
        let t = (&rho.matrix * op).trace()?;
        if t.im.abs() > DEFAULT_TOL {
            return Err(Error::NonRealCoefficient { index, imag: t.im });
        }
        Ok(t.re)
    };

    let local_a = basis_a
        .matrices()
        .iter()
        .enumerate()
        .map(|(j, s)| real_trace(&s.kron(&ib), j))
        .collect::<Result<Vec<_>>>()?;
    let local_b = basis_b
        .matrices()
        .iter()
        .enumerate()
        .map(|(l, s)| real_trace(&ia.kron(s), l))
        .collect::<Result<Vec<_>>>()?;

    basis_a
        .matrices()
        .iter()
        .enumerate()
        .map(|(j, sa)| {
            basis_b
                .matrices()
                .iter()
                .enumerate()
                .map(|(l, sb)| {
                    let joint = real_trace(&sa.kron(sb), j * basis_b.len() + l)?;
                    Ok(joint - local_a[j] * local_b[l])
                })
                .collect()
        })
        .collect()
}

/// `¼ Σ_jl M_jl σ_j ⊗ σ_l`; equals [`holistic_term`] for the same state.
pub fn holistic_from_coefficients(coeffs: &[Vec<f64>], m: usize, k: usize) -> Result<ComplexMatrix> {
    let basis_a = generalized_paulis(m)?;
    let basis_b = generalized_paulis(k)?;
    if coeffs.len() != basis_a.len() || coeffs.iter().any(|row| row.len() != basis_b.len()) {
        return Err(Error::DimensionMismatch(format!(
            "coefficient table must be {}x{}",
            basis_a.len(),
            basis_b.len()
        )));
    }
    let mut out = ComplexMatrix::zeros(m * k, m * k);
    for (sa, row) in basis_a.matrices().iter().zip(coeffs) {
        for (sb, &x) in basis_b.matrices().iter().zip(row) {
            if x != 0.0 {
                out = &out + &sa.kron(sb).scale_real(0.25 * x);
            }
        }
    }
    Ok(out)
}

/// Reduced states, holistic term and the product-form verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub rho_a: DensityOperator,
    pub rho_b: DensityOperator,
    pub holistic: ComplexMatrix,
    pub residual_norm: f64,
    pub factorizable: bool,
}

/// Tests whether `ρ = ρ_a ⊗ ρ_b` within `tol`. A product factorization, when
/// it exists, is always the one given by the reduced states.
pub fn is_factorizable(
    rho: &DensityOperator,
    m: usize,
    k: usize,
    tol: f64,
) -> Result<FactorizationReport> {
    let (rho_a, rho_b) = reduced_states(rho, m, k)?;
    let holistic = &rho.matrix - &rho_a.matrix.kron(&rho_b.matrix);
    let residual_norm = holistic.max_abs();
    Ok(FactorizationReport {
        rho_a,
        rho_b,
        holistic,
        residual_norm,
        factorizable: residual_norm <= tol,
    })
}

/// Random full-rank state `G G^† / tr(G G^†)` with standard-normal `G`.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityOperator {
    let g = ComplexMatrix::from_fn(n, n, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let gg = &g * &g.adjoint();
    let tr = gg.trace().expect("square").re;
    let matrix = gg.scale_real(1.0 / tr);
    // Re-symmetrize to remove rounding asymmetry from the product.
    let matrix = ComplexMatrix::from_fn(n, n, |i, j| (matrix.get(i, j) + matrix.get(j, i).conj()) * 0.5);
    DensityOperator { matrix, dims: None }
}
