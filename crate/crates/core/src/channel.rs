//! Quantum operations in Kraus form and the probability readout.

use serde::{Deserialize, Serialize};

use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DEFAULT_TOL};

/// A completely positive trace-preserving map `ρ ↦ Σ A_i ρ A_i^†`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelJson")]
pub struct KrausChannel {
    kraus: Vec<ComplexMatrix>,
}

#[derive(Deserialize)]
struct ChannelJson {
    kraus: Vec<ComplexMatrix>,
}

impl TryFrom<ChannelJson> for KrausChannel {
    type Error = Error;

    fn try_from(raw: ChannelJson) -> Result<Self> {
        validate_kraus(raw.kraus, DEFAULT_TOL)
    }
}

impl KrausChannel {
    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn input_dim(&self) -> usize {
        self.kraus[0].cols()
    }

    pub fn output_dim(&self) -> usize {
        self.kraus[0].rows()
    }

    /// `Σ A_i a A_i^†` on an arbitrary matrix of the input dimension.
    pub fn apply_matrix(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.rows() != self.input_dim() || a.cols() != self.input_dim() {
            return Err(Error::DimensionMismatch(format!(
                "channel acts on {0}x{0}, got {1}x{2}",
                self.input_dim(),
                a.rows(),
                a.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.output_dim(), self.output_dim());
        for op in &self.kraus {
            out = &out + &(&(op * a) * &op.adjoint());
        }
        Ok(out)
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        DensityOperator::new(self.apply_matrix(rho.matrix())?)
    }
}

/// Checks `Σ A_i^† A_i = I` and wraps the operators as a channel.
pub fn validate_kraus(ops: Vec<ComplexMatrix>, tol: f64) -> Result<KrausChannel> {
    let first = ops
        .first()
        .ok_or_else(|| Error::InvalidArgument("a channel needs at least one Kraus operator".into()))?;
    let (rows, cols) = (first.rows(), first.cols());
    if ops.iter().any(|a| a.rows() != rows || a.cols() != cols) {
        return Err(Error::ShapeMismatch);
    }
    let mut sum = ComplexMatrix::zeros(cols, cols);
    for a in &ops {
        sum = &sum + &(&a.adjoint() * a);
    }
    let residual = sum.max_abs_diff(&ComplexMatrix::identity(cols))?;
    if residual > tol {
        return Err(Error::IncompleteKraus { residual });
    }
    Ok(KrausChannel { kraus: ops })
}

/// The channel `ρ ↦ U ρ U^†` of a unitary `U`.
pub fn lift_unitary(u: &ComplexMatrix, tol: f64) -> Result<KrausChannel> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let residual = (&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(u.rows()))?;
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    Ok(KrausChannel {
        kraus: vec![u.clone()],
    })
}

/// `|i⟩|j⟩ ↦ |i⟩|i ⊕ j⟩` with the first factor as control.
pub fn cnot_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

/// The CNOT gate lifted to a channel on two-qubit density operators.
pub fn cnot_channel() -> KrausChannel {
    KrausChannel {
        kraus: vec![cnot_matrix()],
    }
}

/// `I ⊗ … ⊗ I ⊗ P₁` on `n` qubits: the last qubit carries the truth value.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthProjector {
    n: usize,
    matrix: ComplexMatrix,
}

impl TruthProjector {
    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

pub fn truth_projector(n: usize) -> Result<TruthProjector> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidDimension(format!(
            "truth projector needs 1 <= n <= 16 qubits, got {n}"
        )));
    }
    let side = 1usize << n;
    let diag: Vec<f64> = (0..side).map(|i| (i & 1) as f64).collect();
    Ok(TruthProjector {
        n,
        matrix: ComplexMatrix::diag(&diag),
    })
}

fn qubit_count(side: usize) -> Result<usize> {
    if side.is_power_of_two() && side >= 2 {
        Ok(side.trailing_zeros() as usize)
    } else {
        Err(Error::NotQubitDimension(side))
    }
}

/// `Tr(P₁⁽ⁿ⁾ a)` for any square matrix on `n` qubits: the sum of the
/// odd-indexed diagonal entries. Also defined for non-states such as the
/// holistic term.
pub fn truth_expectation(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    qubit_count(a.rows())?;
    Ok((1..a.rows()).step_by(2).map(|i| a.get(i, i).re).sum())
}

/// Probability that the last qubit reads true, `p(ρ) = Tr(P₁⁽ⁿ⁾ ρ)`.
pub fn probability(rho: &DensityOperator) -> Result<f64> {
    let p = truth_expectation(rho.matrix())?;
    if !(-DEFAULT_TOL..=1.0 + DEFAULT_TOL).contains(&p) {
        return Err(Error::OutOfRange {
            value: p,
            range: "[0, 1]",
        });
    }
    // rounding just outside [0, 1] is clamped
    Ok(p.clamp(0.0, 1.0))
}
