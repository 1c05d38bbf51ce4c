//! Seeded random states for verification campaigns.
//!
//! All sampling goes through ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded from a
//! `u64`, with one stream per campaign so that results do not depend on the
//! order campaigns run in.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnot::Family;
use crate::density::{random_density, DensityOperator};
use crate::linalg::{c, ComplexMatrix};

pub type SampleRng = ChaCha8Rng;

/// Generator for `stream` under `seed`.
pub fn rng_for(seed: u64, stream: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `[[p, z], [z*, 1-p]]`, trusting the caller that `|z|² <= p(1-p)`.
fn qubit(p: f64, z: num_complex::Complex64) -> DensityOperator {
    DensityOperator::new(ComplexMatrix::from_rows(&[
        vec![c(p, 0.0), z],
        vec![z.conj(), c(1.0 - p, 0.0)],
    ]))
    .expect("parameters inside the Bloch ball")
}

/// Uniform coherence for diagonal `p`: radius fraction in `[lo, 1]` of the
/// admissible disc and a uniform phase.
fn coherence<R: Rng + ?Sized>(rng: &mut R, p: f64, min_modulus: f64) -> num_complex::Complex64 {
    let max = (p * (1.0 - p)).sqrt();
    let modulus = if max > min_modulus {
        rng.random_range(min_modulus..=max)
    } else {
        0.0
    };
    let phase = rng.random_range(0.0..2.0 * PI);
    num_complex::Complex64::from_polar(modulus, phase)
}

/// A random input `(ρ, σ)` from one of the factorization-preserving families.
/// `ControlIsP0` and `ControlIsP1` each draw their own projector.
pub fn sample_family<R: Rng + ?Sized>(family: Family, rng: &mut R) -> (DensityOperator, DensityOperator) {
    match family {
        Family::DiagonalControlHalfDiagTarget => {
            let a1 = rng.random_range(0.0..=1.0);
            let b = rng.random_range(-0.5..=0.5);
            (qubit(a1, c(0.0, 0.0)), qubit(0.5, c(b, 0.0)))
        }
        Family::ControlIsP0 => (qubit(1.0, c(0.0, 0.0)), random_density(2, rng)),
        Family::ControlIsP1 => (qubit(0.0, c(0.0, 0.0)), random_density(2, rng)),
        Family::TargetIsPlusMinus => {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            (random_density(2, rng), qubit(0.5, c(0.5 * sign, 0.0)))
        }
        Family::NotPreserved => sample_outside_families(rng),
    }
}

/// A random input bounded away from every preserving family:
/// `a₁ ∈ (0.1, 0.9)`, `|a| > 0.1`, `|b₁ - ½| > 0.1`.
pub fn sample_outside_families<R: Rng + ?Sized>(rng: &mut R) -> (DensityOperator, DensityOperator) {
    let a1 = loop {
        let x: f64 = rng.random_range(0.1..0.9);
        if x > 0.1 {
            break x;
        }
    };
    // sqrt(a1 (1 - a1)) > 0.3 here, so the annulus is never empty
    let a = loop {
        let z = coherence(rng, a1, 0.1);
        if z.norm() > 0.1 {
            break z;
        }
    };
    let b1 = loop {
        let x: f64 = rng.random_range(0.0..=1.0);
        if (x - 0.5).abs() > 0.1 {
            break x;
        }
    };
    let b = coherence(rng, b1, 0.0);
    (qubit(a1, a), qubit(b1, b))
}
