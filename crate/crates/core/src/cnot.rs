//! Closed-form analysis of the CNOT channel on two-qubit states.
//!
//! For a general state `ρ` with reduced states `ρ₁, ρ₂` the output splits as
//! `CNOT(ρ) = CNOT(ρ₁ ⊗ ρ₂) + C(ρ)` with `C(ρ) = CNOT M(ρ) CNOT`. The
//! probability of the first summand (the fuzzy component) follows the CNOT
//! polynomial of the marginal probabilities; `Tr(P₁ C(ρ))` is the shift
//! contributed by the non-product part.
//!
//! For product inputs `ρ ⊗ σ` the output stays a product state exactly when
//! the control is a basis projector, the target is `|±⟩⟨±|`, or the control
//! is diagonal while the target has a flat diagonal and a real coherence.

use serde::{Deserialize, Serialize};

use crate::channel::{cnot_channel, cnot_matrix, probability, truth_expectation};
use crate::density::{holistic_term, is_factorizable, reduced_states, DensityOperator};
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix};

/// Probability readouts of the CNOT output and its two summands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CnotReport {
    /// `p(CNOT(ρ))`
    pub p_total: f64,
    /// `p(CNOT(ρ₁ ⊗ ρ₂))`
    pub p_fuzzy: f64,
    /// `Tr(P₁ C(ρ))`
    pub incidence: f64,
}

fn require_side(rho: &DensityOperator, side: usize) -> Result<()> {
    if rho.dim() == side {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "expected a {side}x{side} state, got {0}x{0}",
            rho.dim()
        )))
    }
}

/// The three readouts from the diagonal of `ρ` alone.
pub fn cnot_report(rho: &DensityOperator) -> Result<CnotReport> {
    require_side(rho, 4)?;
    let r = |i: usize| rho.matrix().get(i, i).re;
    let (r11, r22, r33, r44) = (r(0), r(1), r(2), r(3));
    Ok(CnotReport {
        p_total: r22 + r33,
        p_fuzzy: (r11 + r22) * (r22 + r44) + (r11 + r33) * (r33 + r44),
        incidence: 2.0 * (r22 * r33 - r11 * r44),
    })
}

/// The same readouts by running the channel: apply CNOT to `ρ` and to
/// `ρ₁ ⊗ ρ₂`, and take the truth expectation of `CNOT M(ρ) CNOT`.
pub fn cnot_report_by_channel(rho: &DensityOperator) -> Result<CnotReport> {
    require_side(rho, 4)?;
    let channel = cnot_channel();
    let p_total = probability(&channel.apply(rho)?)?;
    let (rho1, rho2) = reduced_states(rho, 2, 2)?;
    let p_fuzzy = probability(&channel.apply(&rho1.tensor(&rho2))?)?;
    let holistic = holistic_term(rho, 2, 2)?;
    let incidence = truth_expectation(&channel.apply_matrix(&holistic)?)?;
    Ok(CnotReport {
        p_total,
        p_fuzzy,
        incidence,
    })
}

/// Werner state with parameter `alpha ∈ [0, 1]`:
/// `¼ [[1-α,0,0,0],[0,1+α,-2α,0],[0,-2α,1+α,0],[0,0,0,1-α]]`.
pub fn werner(alpha: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::OutOfRange {
            value: alpha,
            range: "[0, 1]",
        });
    }
    let d = (1.0 - alpha) / 4.0;
    let e = (1.0 + alpha) / 4.0;
    let o = -alpha / 2.0;
    let m = ComplexMatrix::from_real(&[
        &[d, 0.0, 0.0, 0.0],
        &[0.0, e, o, 0.0],
        &[0.0, o, e, 0.0],
        &[0.0, 0.0, 0.0, d],
    ]);
    DensityOperator::new(m)?.with_dims(2, 2)
}

/// `M(CNOT(ρ ⊗ σ))` assembled entry by entry from closed forms in the
/// parameters `ρ = [[a₁, a], [a*, 1-a₁]]`, `σ = [[b₁, b], [b*, 1-b₁]]`.
///
/// The lower triangle is the conjugate of the upper one.
pub fn residual_entries(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ComplexMatrix> {
    require_side(rho, 2)?;
    require_side(sigma, 2)?;
    let a1 = rho.matrix().get(0, 0).re;
    let a = rho.matrix().get(0, 1);
    let b1 = sigma.matrix().get(0, 0).re;
    let b = sigma.matrix().get(0, 1);
    let (re_b, im_b) = (b.re, b.im);
    let i = c(0.0, 1.0);

    let x11 = a1 * (1.0 - a1) * (2.0 * b1 - 1.0);
    let x12 = -2.0 * i * a1 * (a1 - 1.0) * im_b;
    let x13 = -a * (b.conj() + 2.0 * re_b * (a1 * (2.0 * b1 - 1.0) - b1));
    let x14 = a * (b1 - 2.0 * re_b * (b.conj() + 2.0 * i * a1 * im_b));
    let x23 = -a * (b1 - 1.0 + 2.0 * re_b * (b - 2.0 * i * a1 * im_b));
    let x24 = a * (b.conj() - 2.0 * re_b * (a1 + b1 - 2.0 * a1 * b1));
    let x34 = 2.0 * i * a1 * im_b * (a1 - 1.0);

    let upper = [
        [c(x11, 0.0), x12, x13, x14],
        [c(0.0, 0.0), c(-x11, 0.0), x23, x24],
        [c(0.0, 0.0), c(0.0, 0.0), c(-x11, 0.0), x34],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(x11, 0.0)],
    ];
    Ok(ComplexMatrix::from_fn(4, 4, |r, s| {
        if r <= s {
            upper[r][s]
        } else {
            upper[s][r].conj()
        }
    }))
}

/// Which input family keeps `CNOT(ρ ⊗ σ)` a product state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `ρ` diagonal, `σ = [[½, b], [b, ½]]` with real `b`.
    DiagonalControlHalfDiagTarget,
    /// `ρ = |0⟩⟨0|`, any `σ`.
    ControlIsP0,
    /// `ρ = |1⟩⟨1|`, any `σ`.
    ControlIsP1,
    /// `σ = ½[[1, ±1], [±1, 1]]`, any `ρ`.
    TargetIsPlusMinus,
    NotPreserved,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::DiagonalControlHalfDiagTarget => "DiagonalControlHalfDiagTarget",
            Family::ControlIsP0 => "ControlIsP0",
            Family::ControlIsP1 => "ControlIsP1",
            Family::TargetIsPlusMinus => "TargetIsPlusMinus",
            Family::NotPreserved => "NotPreserved",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreservationVerdict {
    pub preserved: bool,
    pub family: Family,
    /// Largest entry of `M(CNOT(ρ ⊗ σ))`, computed by running the channel.
    pub residual_norm: f64,
}

/// Distance of `(ρ, σ)` from each preserving family, in reporting order.
pub fn family_distances(rho: &DensityOperator, sigma: &DensityOperator) -> Result<[(Family, f64); 4]> {
    require_side(rho, 2)?;
    require_side(sigma, 2)?;
    let r = rho.matrix();
    let s = sigma.matrix();
    let p0 = ComplexMatrix::diag(&[1.0, 0.0]);
    let p1 = ComplexMatrix::diag(&[0.0, 1.0]);
    let plus = ComplexMatrix::from_real(&[&[0.5, 0.5], &[0.5, 0.5]]);
    let minus = ComplexMatrix::from_real(&[&[0.5, -0.5], &[-0.5, 0.5]]);

    let to_plus_minus = s.max_abs_diff(&plus)?.min(s.max_abs_diff(&minus)?);
    let to_diag_flat = r
        .get(0, 1)
        .norm()
        .max((s.get(0, 0).re - 0.5).abs())
        .max(s.get(0, 1).im.abs());
    Ok([
        (Family::ControlIsP0, r.max_abs_diff(&p0)?),
        (Family::ControlIsP1, r.max_abs_diff(&p1)?),
        (Family::TargetIsPlusMinus, to_plus_minus),
        (Family::DiagonalControlHalfDiagTarget, to_diag_flat),
    ])
}

/// Decides whether CNOT keeps `ρ ⊗ σ` factorizable.
///
/// The verdict comes from running the channel and testing the output against
/// its reduced states; the family label comes from parameter tests and is
/// the first match in the order control projector, target `|±⟩`, diagonal
/// control with flat target.
pub fn classify_preservation(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    tol: f64,
) -> Result<PreservationVerdict> {
    let distances = family_distances(rho, sigma)?;
    let output = cnot_channel().apply(&rho.tensor(sigma))?;
    let report = is_factorizable(&output, 2, 2, tol)?;

    let family = if !report.factorizable {
        Family::NotPreserved
    } else {
        distances
            .iter()
            .find(|(_, d)| *d <= tol)
            .or_else(|| distances.iter().min_by(|x, y| x.1.total_cmp(&y.1)))
            .map(|(f, _)| *f)
            .expect("four candidate families")
    };
    Ok(PreservationVerdict {
        preserved: report.factorizable,
        family,
        residual_norm: report.residual_norm,
    })
}

/// `CNOT (ρ ⊗ σ) CNOT` as a plain matrix.
pub fn cnot_product_output(rho: &DensityOperator, sigma: &DensityOperator) -> ComplexMatrix {
    let g = cnot_matrix();
    &(&g * &rho.matrix().kron(sigma.matrix())) * &g
}
