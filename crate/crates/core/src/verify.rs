//! Seeded randomized checks of the library's identities, as run by
//! `qmix verify`.

use std::fmt::Write as _;

use crate::channel::{cnot_channel, probability};
use crate::cnot::{classify_preservation, cnot_report, cnot_report_by_channel, residual_entries, Family};
use crate::density::{holistic_from_coefficients, holistic_term, m_coefficients, random_density};
use crate::error::{Error, Result};
use crate::fuzzy::{cnot_polynomial, FuzzyValue};
use crate::linalg::Subsystem;
use crate::pauli::{bloch_vector, from_bloch};
use crate::sampling::{rng_for, sample_family, sample_outside_families, SampleRng};

/// Residual that inputs outside every preserving family must exceed.
pub const COMPLETENESS_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub output_path: Option<std::path::PathBuf>,
}

impl RunConfig {
    pub fn new(seed: u64, samples: usize, tolerance: f64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(Self {
            seed,
            samples,
            tolerance,
            output_path: None,
        })
    }
}

/// Outcome of one campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// Worst residual seen. For the completeness campaign this is the
    /// smallest residual instead, since large values are the goal there.
    pub worst: f64,
    pub worst_label: &'static str,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub suites: Vec<SuiteResult>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<26} {} {:>6}/{:<6} {}={:.3e}",
                s.name,
                if s.ok() { "PASS" } else { "FAIL" },
                s.passed,
                s.total,
                s.worst_label,
                s.worst
            );
        }
        let _ = writeln!(out, "overall: {}", if self.all_passed() { "PASS" } else { "FAIL" });
        out
    }
}

struct Tally {
    name: &'static str,
    passed: usize,
    total: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            passed: 0,
            total: 0,
            worst: 0.0,
        }
    }

    fn record(&mut self, residual: f64, ok: bool) {
        self.total += 1;
        if ok {
            self.passed += 1;
        }
        self.worst = self.worst.max(residual);
    }

    fn record_error(&mut self) {
        self.total += 1;
        self.worst = f64::INFINITY;
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.passed,
            total: self.total,
            worst: self.worst,
            worst_label: "max_residual",
        }
    }
}

fn run_suite(
    name: &'static str,
    config: &RunConfig,
    stream: u64,
    mut sample: impl FnMut(&mut SampleRng, usize) -> Result<(f64, bool)>,
) -> SuiteResult {
    let mut rng = rng_for(config.seed, stream);
    let mut tally = Tally::new(name);
    for i in 0..config.samples {
        match sample(&mut rng, i) {
            Ok((residual, ok)) => tally.record(residual, ok),
            Err(_) => tally.record_error(),
        }
    }
    tally.finish()
}

fn fuzzy_probability(rng: &mut SampleRng, tol: f64) -> Result<(f64, bool)> {
    let rho = random_density(2, rng);
    let sigma = random_density(2, rng);
    let out = cnot_channel().apply(&rho.tensor(&sigma))?;
    let x = FuzzyValue::new(probability(&rho)?)?;
    let y = FuzzyValue::new(probability(&sigma)?)?;
    let r = (probability(&out)? - cnot_polynomial(x, y).value()).abs();
    Ok((r, r <= tol))
}

fn closed_forms(rng: &mut SampleRng, tol: f64) -> Result<(f64, bool)> {
    let rho = random_density(4, rng);
    let a = cnot_report(&rho)?;
    let b = cnot_report_by_channel(&rho)?;
    let r = (a.p_total - b.p_total)
        .abs()
        .max((a.p_fuzzy - b.p_fuzzy).abs())
        .max((a.incidence - b.incidence).abs())
        .max((a.p_total - a.p_fuzzy - a.incidence).abs());
    let bounded = a.incidence.abs() <= 0.5 + tol;
    Ok((r, r <= tol && bounded))
}

fn decomposition(rng: &mut SampleRng, tol: f64) -> Result<(f64, bool)> {
    let rho = random_density(4, rng);
    let direct = holistic_term(&rho, 2, 2)?;
    let via = holistic_from_coefficients(&m_coefficients(&rho, 2, 2)?, 2, 2)?;
    let r = direct
        .max_abs_diff(&via)?
        .max(direct.trace()?.norm())
        .max(direct.hermitian_deviation()?)
        .max(direct.partial_trace(2, 2, Subsystem::A)?.max_abs())
        .max(direct.partial_trace(2, 2, Subsystem::B)?.max_abs());
    Ok((r, r <= tol))
}

fn bloch_round_trip(rng: &mut SampleRng, i: usize, tol: f64) -> Result<(f64, bool)> {
    let n = if i.is_multiple_of(2) { 2 } else { 4 };
    let rho = random_density(n, rng);
    let back = from_bloch(&bloch_vector(&rho)?);
    let r = back.max_abs_diff(rho.matrix())?;
    Ok((r, r <= tol))
}

fn residual_forms(rng: &mut SampleRng, tol: f64) -> Result<(f64, bool)> {
    let rho = random_density(2, rng);
    let sigma = random_density(2, rng);
    let closed = residual_entries(&rho, &sigma)?;
    let out = cnot_channel().apply(&rho.tensor(&sigma))?;
    let r = closed.max_abs_diff(&holistic_term(&out, 2, 2)?)?;
    Ok((r, r <= tol))
}

const SOUND_FAMILIES: [Family; 3] = [
    Family::DiagonalControlHalfDiagTarget,
    Family::ControlIsP1,
    Family::TargetIsPlusMinus,
];

fn soundness(rng: &mut SampleRng, i: usize, tol: f64) -> Result<(f64, bool)> {
    let family = match SOUND_FAMILIES[i % 3] {
        // alternate the two projector controls
        Family::ControlIsP1 if (i / 3).is_multiple_of(2) => Family::ControlIsP0,
        f => f,
    };
    let (rho, sigma) = sample_family(family, rng);
    let v = classify_preservation(&rho, &sigma, tol)?;
    Ok((v.residual_norm, v.preserved && v.residual_norm <= tol))
}

fn completeness_sample(rng: &mut SampleRng, tol: f64) -> Result<(f64, bool)> {
    let (rho, sigma) = sample_outside_families(rng);
    let v = classify_preservation(&rho, &sigma, tol)?;
    let ok = !v.preserved && v.family == Family::NotPreserved && v.residual_norm > COMPLETENESS_FLOOR;
    Ok((v.residual_norm, ok))
}

fn completeness(config: &RunConfig, stream: u64) -> SuiteResult {
    let mut rng = rng_for(config.seed, stream);
    let mut passed = 0;
    let mut smallest = f64::INFINITY;
    for _ in 0..config.samples {
        if let Ok((r, ok)) = completeness_sample(&mut rng, config.tolerance) {
            smallest = smallest.min(r);
            passed += ok as usize;
        } else {
            smallest = 0.0;
        }
    }
    SuiteResult {
        name: "preservation-completeness",
        passed,
        total: config.samples,
        worst: smallest,
        worst_label: "min_residual",
    }
}

/// Runs every campaign with `config.samples` samples each.
pub fn run(config: &RunConfig) -> Summary {
    let tol = config.tolerance;
    let suites = vec![
        run_suite("holistic-decomposition", config, 0, |rng, _| decomposition(rng, tol)),
        run_suite("bloch-round-trip", config, 1, |rng, i| bloch_round_trip(rng, i, tol)),
        run_suite("fuzzy-cnot-probability", config, 2, |rng, _| fuzzy_probability(rng, tol)),
        run_suite("cnot-closed-forms", config, 3, |rng, _| closed_forms(rng, tol)),
        run_suite("residual-closed-forms", config, 4, |rng, _| residual_forms(rng, tol)),
        run_suite("preservation-soundness", config, 5, |rng, i| soundness(rng, i, tol)),
        completeness(config, 6),
    ];
    Summary { suites }
}
