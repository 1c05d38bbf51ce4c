//! Dense complex matrices for small systems.
//!
//! Storage is row-major. Every operation returns a fresh value, so matrices
//! can be shared freely between threads.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Library-wide default tolerance for Hermiticity, positivity and equality checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Jacobi sweeps before giving up on convergence.
const MAX_SWEEPS: usize = 100;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Which tensor factor to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// First factor (indexes the blocks).
    A,
    /// Second factor (indexes inside each block).
    B,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting bad lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension(format!(
                "matrix shape {rows}x{cols} must be positive"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for
    /// literals in code and tests.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let cl = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == cl), "ragged rows");
        let entries = rows.iter().flatten().copied().collect();
        Self::new(r, cl, entries).expect("invalid matrix literal")
    }

    /// Real-valued literal.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = c(1.0, 0.0);
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = c(v, 0.0);
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::default() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`; block `(i, j)` is `self[i, j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Result<Complex64> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.get(i, i)).sum())
    }

    /// Block-wise partial trace of a square matrix of side `m * k`.
    ///
    /// The matrix is viewed as `m x m` blocks of size `k x k`. Keeping `A`
    /// returns the matrix of block traces; keeping `B` returns the sum of the
    /// diagonal blocks.
    pub fn partial_trace(&self, m: usize, k: usize, keep: Subsystem) -> Result<Self> {
        let n = self.require_square()?;
        if m == 0 || k == 0 || m * k != n {
            return Err(Error::DimensionMismatch(format!(
                "side {n} is not {m} x {k}"
            )));
        }
        let out = match keep {
            Subsystem::A => Self::from_fn(m, m, |i, j| {
                (0..k).map(|l| self.get(i * k + l, j * k + l)).sum()
            }),
            Subsystem::B => Self::from_fn(k, k, |i, j| {
                (0..m).map(|b| self.get(b * k + i, b * k + j)).sum()
            }),
        };
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.require_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |a - a^dagger|` over entries.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        Ok(dev)
    }

    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        Ok(self.hermitian_deviation()? <= tol)
    }

    /// Ascending real spectrum of a Hermitian matrix.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        Ok(self.hermitian_eigen(tol)?.values)
    }

    /// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix by
    /// cyclic complex Jacobi rotations.
    pub fn hermitian_eigen(&self, tol: f64) -> Result<HermitianEigen> {
        let n = self.require_square()?;
        let deviation = self.hermitian_deviation()?;
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        // Symmetrize so rounding noise in the input cannot stall the sweeps.
        let mut a = Self::from_fn(n, n, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5);
        let mut v = Self::identity(n);
        let scale = a.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let threshold = f64::EPSILON * scale.max(f64::MIN_POSITIVE);

        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a.get(i, j).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= threshold {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
        let values = order.iter().map(|&i| diag[i]).collect();
        let vectors = Self::from_fn(n, n, |i, j| v.get(i, order[j]));
        Ok(HermitianEigen { values, vectors })
    }

    /// Column vector from amplitudes.
    pub fn column(values: &[Complex64]) -> Self {
        Self {
            rows: values.len(),
            cols: 1,
            entries: values.to_vec(),
        }
    }

    /// Projector `|psi><psi|` for a column vector.
    pub fn outer(psi: &[Complex64]) -> Self {
        let n = psi.len();
        Self::from_fn(n, n, |i, j| psi[i] * psi[j].conj())
    }
}

/// Zeroes `a[p][q]` with the unitary `J = D R`, where `D` removes the phase
/// of `a[p][q]` and `R` is the real Jacobi rotation. Updates `a <- J^† a J`
/// and `v <- v J`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows;
    let apq = a.get(p, q);
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    // signum(0.0) is 1.0, so the degenerate diagonal case rotates by pi/4.
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    let jpp = c(cs, 0.0);
    let jpq = c(sn, 0.0);
    let jqp = -phase.conj() * sn;
    let jqq = phase.conj() * cs;

    // a <- a J
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.entries[k * n + p] = akp * jpp + akq * jqp;
        a.entries[k * n + q] = akp * jpq + akq * jqq;
    }
    // a <- J^† a
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.entries[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
        a.entries[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a.entries[p * n + q] = Complex64::default();
    a.entries[q * n + p] = Complex64::default();
    a.entries[p * n + p].im = 0.0;
    a.entries[q * n + q].im = 0.0;

    for k in 0..v.rows {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.entries[k * n + p] = vkp * jpp + vkq * jqp;
        v.entries[k * n + q] = vkp * jpq + vkq * jqq;
    }
}

/// Spectral decomposition `a = V diag(values) V^†`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V f(diag) V^†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mapped: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|l| self.vectors.get(i, l) * mapped[l] * self.vectors.get(j, l).conj())
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch.
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.require_same_shape(rhs).expect("shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch.
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.require_same_shape(rhs).expect("shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in mul")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let entries = raw.entries.iter().map(|&[re, im]| c(re, im)).collect();
        ComplexMatrix::new(raw.rows, raw.cols, entries).map_err(serde::de::Error::custom)
    }
}

impl ComplexMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Pauli matrices and the computational-basis projectors.
pub mod consts {
    use super::{c, ComplexMatrix};

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0])
    }

    /// `|0><0|`
    pub fn p0() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, 0.0])
    }

    /// `|1><1|`
    pub fn p1() -> ComplexMatrix {
        ComplexMatrix::diag(&[0.0, 1.0])
    }
}
