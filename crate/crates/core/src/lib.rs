//! Quantum computation with mixed states on small systems.
//!
//! The crate covers dense complex matrices ([`linalg`]), generalized Pauli
//! bases and Bloch vectors ([`pauli`]), density operators and the product
//! decomposition `ρ = ρ_a ⊗ ρ_b + M(ρ)` ([`density`]), Kraus channels and the
//! truth-probability readout ([`channel`]), the product MV-algebra connectives
//! ([`fuzzy`]) and closed-form analysis of the CNOT channel ([`cnot`]).

pub mod channel;
pub mod cli;
pub mod cnot;
pub mod density;
pub mod error;
pub mod fuzzy;
pub mod linalg;
pub mod pauli;
pub mod sampling;
pub mod verify;

pub use channel::{
    cnot_channel, cnot_matrix, lift_unitary, probability, truth_expectation, truth_projector, validate_kraus,
    KrausChannel, TruthProjector,
};
pub use cnot::{
    classify_preservation, cnot_report, cnot_report_by_channel, residual_entries, werner, CnotReport, Family,
    PreservationVerdict,
};
pub use density::{
    holistic_from_coefficients, holistic_term, is_factorizable, m_coefficients, random_density, reduced_states,
    DensityOperator, FactorizationReport,
};
pub use error::{Error, Result};
pub use fuzzy::{cnot_polynomial, luk_neg, luk_sum, product, FuzzyValue};
pub use linalg::{ComplexMatrix, Subsystem, DEFAULT_TOL};
pub use num_complex::Complex64;
pub use pauli::{bloch_vector, from_bloch, generalized_paulis, is_density, BlochVector, PauliBasis};
