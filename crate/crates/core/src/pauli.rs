//! Generalized Pauli bases and Bloch-vector coordinates.
//!
//! For dimension `n` the basis has `n² - 1` traceless Hermitian matrices with
//! `tr(σ_i σ_j) = 2 δ_ij`, ordered as: all symmetric `σ1[k,j]` for `k < j`
//! (lexicographic), all antisymmetric `σ2[k,j]` in the same order, then the
//! diagonal `σ3[k]` for `k = 1..n-1`. A density operator is recovered as
//! `ρ = I/n + ½ Σ s_j σ_j` with `s_j = tr(ρ σ_j)`.

use serde::{Deserialize, Serialize};

use crate::density::{check_density, DensityOperator};
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct PauliBasis {
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl PauliBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// Builds the canonical generalized Pauli basis of dimension `n >= 2`.
pub fn generalized_paulis(n: usize) -> Result<PauliBasis> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!(
            "Pauli basis needs n >= 2, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|k| ((k + 1)..n).map(move |j| (k, j)))
        .collect();
    let mut matrices = Vec::with_capacity(n * n - 1);

    // |j><k| + |k><j|
    for &(k, j) in &pairs {
        matrices.push(ComplexMatrix::from_fn(n, n, |r, s| {
            if (r, s) == (j, k) || (r, s) == (k, j) {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }));
    }
    // i(|j><k| - |k><j|)
    for &(k, j) in &pairs {
        matrices.push(ComplexMatrix::from_fn(n, n, |r, s| {
            if (r, s) == (j, k) {
                c(0.0, 1.0)
            } else if (r, s) == (k, j) {
                c(0.0, -1.0)
            } else {
                c(0.0, 0.0)
            }
        }));
    }
    // sqrt(2/(k(k+1))) (|1><1| + ... + |k><k| - k|k+1><k+1|), k 1-based
    for k in 1..n {
        let norm = (2.0 / (k * (k + 1)) as f64).sqrt();
        let diag: Vec<f64> = (0..n)
            .map(|i| match i.cmp(&k) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -(k as f64) * norm,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        matrices.push(ComplexMatrix::diag(&diag));
    }
    Ok(PauliBasis { dim: n, matrices })
}

/// Real coordinates of a state against the canonical generalized Pauli basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlochJson")]
pub struct BlochVector {
    dim: usize,
    coeffs: Vec<f64>,
}

#[derive(Deserialize)]
struct BlochJson {
    dim: usize,
    coeffs: Vec<f64>,
}

impl TryFrom<BlochJson> for BlochVector {
    type Error = Error;

    fn try_from(raw: BlochJson) -> Result<Self> {
        BlochVector::new(raw.dim, raw.coeffs)
    }
}

impl BlochVector {
    pub fn new(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(format!(
                "Bloch vector needs dim >= 2, got {dim}"
            )));
        }
        if coeffs.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for dimension {dim} (expected {})",
                coeffs.len(),
                dim * dim - 1
            )));
        }
        if coeffs.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// `s_j = tr(a σ_j)` for an arbitrary square matrix; fails when a coefficient
/// is not real within `tol`.
pub fn bloch_coefficients(a: &ComplexMatrix, tol: f64) -> Result<BlochVector> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let basis = generalized_paulis(a.rows())?;
    let coeffs = basis
        .matrices()
        .iter()
        .enumerate()
        .map(|(index, s)| {
            let t = (a * s).trace()?;
            if t.im.abs() > tol {
                Err(Error::NonRealCoefficient { index, imag: t.im })
            } else {
                Ok(t.re)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    BlochVector::new(a.rows(), coeffs)
}

pub fn bloch_vector(rho: &DensityOperator) -> Result<BlochVector> {
    bloch_coefficients(rho.matrix(), DEFAULT_TOL)
}

/// `I/n + ½ Σ s_j σ_j`. The result is Hermitian with unit trace but is only a
/// density operator when its spectrum is non-negative.
pub fn from_bloch(v: &BlochVector) -> ComplexMatrix {
    let n = v.dim();
    let basis = generalized_paulis(n).expect("BlochVector dim is at least 2");
    basis
        .matrices()
        .iter()
        .zip(v.coeffs())
        .fold(ComplexMatrix::identity(n).scale_real(1.0 / n as f64), |acc, (s, &x)| {
            &acc + &s.scale_real(0.5 * x)
        })
}

/// Hermitian within `tol`, trace within `tol` of 1, smallest eigenvalue `>= -tol`.
pub fn is_density(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(check_density(a, tol).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::consts::*;

    #[test]
    fn qubit_basis_is_the_pauli_triple() {
        let b = generalized_paulis(2).unwrap();
        assert_eq!(b.matrices(), &[sigma_x(), sigma_y(), sigma_z()]);
    }

    #[test]
    fn qutrit_basis() {
        let b = generalized_paulis(3).unwrap();
        assert_eq!(b.len(), 8);
        // σ3[1] has prefactor sqrt(2/2) = 1
        assert_eq!(b.matrices()[6], ComplexMatrix::diag(&[1.0, -1.0, 0.0]));
        let s = (1.0_f64 / 3.0).sqrt();
        let expect = ComplexMatrix::diag(&[s, s, -2.0 * s]);
        assert!(b.matrices()[7].max_abs_diff(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(matches!(generalized_paulis(1), Err(Error::InvalidDimension(_))));
        assert!(matches!(generalized_paulis(0), Err(Error::InvalidDimension(_))));
    }

    #[test]
    fn bloch_examples() {
        let mixed = DensityOperator::new(ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert_eq!(bloch_vector(&mixed).unwrap().coeffs(), &[0.0, 0.0, 0.0]);
        let one = DensityOperator::new(p1()).unwrap();
        assert_eq!(bloch_vector(&one).unwrap().coeffs(), &[0.0, 0.0, -1.0]);
    }

    #[test]
    fn bloch_coefficients_reject_non_hermitian() {
        let a = ComplexMatrix::from_real(&[&[0.5, 1.0], &[0.0, 0.5]]);
        assert!(matches!(
            bloch_coefficients(&a, DEFAULT_TOL),
            Err(Error::NonRealCoefficient { index: 1, .. })
        ));
    }

    #[test]
    fn from_bloch_examples() {
        let centre = BlochVector::new(2, vec![0.0; 3]).unwrap();
        assert_eq!(from_bloch(&centre), ComplexMatrix::identity(2).scale_real(0.5));

        let outside = from_bloch(&BlochVector::new(2, vec![2.0, 0.0, 0.0]).unwrap());
        let ev = outside.hermitian_eigenvalues(DEFAULT_TOL).unwrap();
        assert!((ev[0] + 0.5).abs() < 1e-14 && (ev[1] - 1.5).abs() < 1e-14);
        assert!(!is_density(&outside, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn is_density_examples() {
        assert!(is_density(&ComplexMatrix::identity(2).scale_real(0.5), DEFAULT_TOL).unwrap());
        assert!(!is_density(&sigma_x(), DEFAULT_TOL).unwrap());
        assert!(is_density(&ComplexMatrix::zeros(2, 3), DEFAULT_TOL).is_err());
    }

    #[test]
    fn bloch_json() {
        let v = BlochVector::new(2, vec![0.5, 0.0, -0.5]).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"dim":2,"coeffs":[0.5,0.0,-0.5]}"#);
        assert_eq!(serde_json::from_str::<BlochVector>(&text).unwrap(), v);
        assert!(serde_json::from_str::<BlochVector>(r#"{"dim":2,"coeffs":[0.5]}"#).is_err());
    }
}
