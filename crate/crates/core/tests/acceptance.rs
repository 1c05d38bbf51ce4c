//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line and
//! fails on the first violated criterion. Run with
//! `cargo test -p qmix --test acceptance -- --nocapture --test-threads 1`.

use std::process::Command;

use qmix::cnot::cnot_product_output;
use qmix::linalg::c;
use qmix::linalg::consts::{p0, p1, sigma_x};
use qmix::sampling::{rng_for, sample_family, sample_outside_families, SampleRng};
use qmix::*;
use rand::Rng;

const SEED: u64 = 42;

fn report(id: u32, what: &str, ok: bool, detail: String) {
    println!("criterion {id:>2} [{}] {what} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} failed: {what} ({detail})");
}

fn rng(criterion: u64) -> SampleRng {
    rng_for(SEED, 100 + criterion)
}

fn qubit(p: f64, z: Complex64) -> DensityOperator {
    DensityOperator::new(ComplexMatrix::from_rows(&[
        vec![c(p, 0.0), z],
        vec![z.conj(), c(1.0 - p, 0.0)],
    ]))
    .unwrap()
}

#[test]
fn criterion_01_fuzzy_cnot_probability() {
    let mut rng = rng(1);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let rho = random_density(2, &mut rng);
        let sigma = random_density(2, &mut rng);
        let p = probability(&cnot_channel().apply(&rho.tensor(&sigma)).unwrap()).unwrap();
        let (x, y) = (probability(&rho).unwrap(), probability(&sigma).unwrap());
        worst = worst.max((p - ((1.0 - x) * y + (1.0 - y) * x)).abs());
    }
    report(1, "p(CNOT(ρ⊗σ)) = (1-p(ρ))p(σ) + (1-p(σ))p(ρ), 1000 pairs", worst <= 1e-9, format!("max err {worst:.2e} <= 1e-9"));
}

#[test]
fn criterion_02_cnot_closed_forms() {
    let mut rng = rng(2);
    let mut worst = 0.0_f64;
    let mut worst_incidence = 0.0_f64;
    for _ in 0..1000 {
        let rho = random_density(4, &mut rng);
        let closed = cnot_report(&rho).unwrap();
        let brute = cnot_report_by_channel(&rho).unwrap();
        worst = worst
            .max((closed.p_total - brute.p_total).abs())
            .max((closed.p_fuzzy - brute.p_fuzzy).abs())
            .max((closed.incidence - brute.incidence).abs());
        worst_incidence = worst_incidence.max(closed.incidence.abs());
    }
    let ok = worst <= 1e-9 && worst_incidence <= 0.5 + 1e-9;
    report(
        2,
        "closed forms r22+r33, fuzzy product, 2(r22r33-r11r44) vs channel route; |incidence| <= 1/2",
        ok,
        format!("max err {worst:.2e}, max |incidence| {worst_incidence:.4}"),
    );
}

#[test]
fn criterion_03_incidence_extremes() {
    let psi_plus = {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::outer(&[c(0.0, 0.0), c(h, 0.0), c(h, 0.0), c(0.0, 0.0)])
    };
    let phi_plus = {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::outer(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])
    };
    let cases = [
        (ComplexMatrix::diag(&[0.0, 0.5, 0.5, 0.0]), 0.5),
        (psi_plus, 0.5),
        (ComplexMatrix::diag(&[0.5, 0.0, 0.0, 0.5]), -0.5),
        (phi_plus, -0.5),
    ];
    let mut worst = 0.0_f64;
    for (m, expect) in cases {
        let rep = cnot_report(&DensityOperator::new(m).unwrap()).unwrap();
        worst = worst.max((rep.incidence - expect).abs());
    }
    report(3, "diag (0,½,½,0) gives +½ and diag (½,0,0,½) gives -½", worst <= 1e-12, format!("max err {worst:.2e}"));
}

#[test]
fn criterion_04_werner_family() {
    let mut worst = 0.0_f64;
    for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let r = cnot_report(&werner(alpha).unwrap()).unwrap();
        worst = worst
            .max((r.p_total - (1.0 + alpha) / 2.0).abs())
            .max((r.p_fuzzy - 0.5).abs())
            .max((r.incidence - alpha / 2.0).abs());
    }

    // figure data: incidence linear in α with slope ½
    let rows = qmix::cli::werner_rows(20).unwrap();
    let mut sweep_worst = 0.0_f64;
    for pair in rows.windows(2) {
        let slope = (pair[1].1.incidence - pair[0].1.incidence) / (pair[1].0 - pair[0].0);
        sweep_worst = sweep_worst.max((slope - 0.5).abs());
    }
    for (alpha, r) in &rows {
        sweep_worst = sweep_worst
            .max((r.incidence - alpha / 2.0).abs())
            .max((r.p_total - r.p_fuzzy - r.incidence).abs());
    }

    let out = Command::new(env!("CARGO_BIN_EXE_qmix"))
        .args(["werner-sweep", "--steps", "4"])
        .output()
        .unwrap();
    let csv = String::from_utf8(out.stdout).unwrap();
    let csv_ok = csv
        == "alpha,p_total,p_fuzzy,incidence\n0,0.5,0.5,0\n0.25,0.625,0.5,0.125\n0.5,0.75,0.5,0.25\n0.75,0.875,0.5,0.375\n1,1,0.5,0.5\n";

    report(
        4,
        "Werner p_total=(1+α)/2, p_fuzzy=½, incidence=α/2; sweep slope ½",
        worst <= 1e-12 && sweep_worst <= 1e-12 && csv_ok,
        format!("closed-form err {worst:.2e}, sweep err {sweep_worst:.2e}, csv exact {csv_ok}"),
    );
}

#[test]
fn criterion_05_preservation_soundness() {
    let mut rng = rng(5);
    let mut worst = 0.0_f64;
    let mut all_preserved = true;
    let families = [
        Family::DiagonalControlHalfDiagTarget,
        Family::ControlIsP0,
        Family::TargetIsPlusMinus,
    ];
    for family in families {
        for i in 0..200 {
            // the projector family alternates |0><0| and |1><1|
            let f = if family == Family::ControlIsP0 && i % 2 == 1 { Family::ControlIsP1 } else { family };
            let (rho, sigma) = sample_family(f, &mut rng);
            let v = classify_preservation(&rho, &sigma, 1e-9).unwrap();
            worst = worst.max(v.residual_norm);
            all_preserved &= v.preserved && v.family != Family::NotPreserved;
        }
    }

    // worked factorizations
    let mut worked = 0.0_f64;
    for _ in 0..50 {
        // diagonal control, flat target with real coherence
        let a1: f64 = rng.random_range(0.0..=1.0);
        let b: f64 = rng.random_range(-0.5..=0.5);
        let rho = qubit(a1, c(0.0, 0.0));
        let sigma = qubit(0.5, c(b, 0.0));
        let out = cnot_product_output(&rho, &sigma);
        let shown = ComplexMatrix::from_real(&[
            &[a1 / 2.0, a1 * b, 0.0, 0.0],
            &[a1 * b, a1 / 2.0, 0.0, 0.0],
            &[0.0, 0.0, (1.0 - a1) / 2.0, (1.0 - a1) * b],
            &[0.0, 0.0, (1.0 - a1) * b, (1.0 - a1) / 2.0],
        ]);
        worked = worked
            .max(out.max_abs_diff(&shown).unwrap())
            .max(out.max_abs_diff(&rho.matrix().kron(sigma.matrix())).unwrap());

        // target |±><±|, arbitrary control
        let rho = random_density(2, &mut rng);
        let (a1, a) = (rho.matrix().get(0, 0).re, rho.matrix().get(0, 1));
        for sign in [1.0, -1.0] {
            let sigma = qubit(0.5, c(0.5 * sign, 0.0));
            let out = cnot_product_output(&rho, &sigma);
            let control = ComplexMatrix::from_rows(&[
                vec![c(a1 / 2.0, 0.0), a * sign / 2.0],
                vec![a.conj() * sign / 2.0, c((1.0 - a1) / 2.0, 0.0)],
            ]);
            let target = ComplexMatrix::from_real(&[&[1.0, sign], &[sign, 1.0]]);
            worked = worked.max(out.max_abs_diff(&control.kron(&target)).unwrap());
        }

        // control |1><1| flips the target; control |0><0| leaves it alone
        let sigma = random_density(2, &mut rng);
        let flipped = &(&sigma_x() * sigma.matrix()) * &sigma_x();
        let one = DensityOperator::new(p1()).unwrap();
        let zero = DensityOperator::new(p0()).unwrap();
        worked = worked
            .max(cnot_product_output(&one, &sigma).max_abs_diff(&p1().kron(&flipped)).unwrap())
            .max(cnot_product_output(&zero, &sigma).max_abs_diff(&p0().kron(sigma.matrix())).unwrap());
    }

    report(
        5,
        "600 family samples preserved with residual <= 1e-9; worked factorizations exact",
        worst <= 1e-9 && all_preserved && worked <= 1e-12,
        format!("max residual {worst:.2e}, all preserved {all_preserved}, worked err {worked:.2e}"),
    );
}

#[test]
fn criterion_06_preservation_completeness() {
    let mut rng = rng(6);
    let mut smallest = f64::INFINITY;
    let mut all_rejected = true;
    for _ in 0..1000 {
        let (rho, sigma) = sample_outside_families(&mut rng);
        let v = classify_preservation(&rho, &sigma, 1e-9).unwrap();
        smallest = smallest.min(v.residual_norm);
        all_rejected &= !v.preserved && v.family == Family::NotPreserved;
    }
    report(
        6,
        "1000 samples outside every family give residual > 1e-6 and NotPreserved",
        smallest > 1e-6 && all_rejected,
        format!("min residual {smallest:.3e}, all NotPreserved {all_rejected}"),
    );
}

#[test]
fn criterion_07_residual_closed_forms() {
    let mut rng = rng(7);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let rho = random_density(2, &mut rng);
        let sigma = random_density(2, &mut rng);
        let closed = residual_entries(&rho, &sigma).unwrap();
        let out = cnot_channel().apply(&rho.tensor(&sigma)).unwrap();
        let brute = holistic_term(&out, 2, 2).unwrap();
        worst = worst.max(closed.max_abs_diff(&brute).unwrap());
    }
    report(7, "closed-form M(CNOT(ρ⊗σ)) entries match brute force, 1000 pairs", worst <= 1e-9, format!("max err {worst:.2e}"));
}

#[test]
fn criterion_08_decomposition_identities() {
    let mut rng = rng(8);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let rho = random_density(4, &mut rng);
        let (a, b) = reduced_states(&rho, 2, 2).unwrap();
        let direct = holistic_term(&rho, 2, 2).unwrap();
        let via = holistic_from_coefficients(&m_coefficients(&rho, 2, 2).unwrap(), 2, 2).unwrap();
        let rebuilt = &a.matrix().kron(b.matrix()) + &via;
        worst = worst
            .max(direct.max_abs_diff(&via).unwrap())
            .max(rebuilt.max_abs_diff(rho.matrix()).unwrap())
            .max(direct.trace().unwrap().norm())
            .max(direct.partial_trace(2, 2, Subsystem::A).unwrap().max_abs())
            .max(direct.partial_trace(2, 2, Subsystem::B).unwrap().max_abs());
    }
    report(8, "ρ = ρa⊗ρb + M(ρ) by both routes; M traceless with null marginals", worst <= 1e-9, format!("max err {worst:.2e}"));
}

#[test]
fn criterion_09_bloch_round_trip() {
    let mut rng = rng(9);
    let mut worst = 0.0_f64;
    for n in [2, 4] {
        for _ in 0..500 {
            let rho = random_density(n, &mut rng);
            let back = from_bloch(&bloch_vector(&rho).unwrap());
            worst = worst.max(back.max_abs_diff(rho.matrix()).unwrap());
        }
    }
    let mut basis_worst = 0.0_f64;
    for n in 2..=4 {
        let basis = generalized_paulis(n).unwrap();
        assert_eq!(basis.len(), n * n - 1);
        for (i, s) in basis.matrices().iter().enumerate() {
            basis_worst = basis_worst.max(s.hermitian_deviation().unwrap()).max(s.trace().unwrap().norm());
            for (j, t) in basis.matrices().iter().enumerate() {
                let expect = if i == j { 2.0 } else { 0.0 };
                basis_worst = basis_worst.max(((s * t).trace().unwrap() - c(expect, 0.0)).norm());
            }
        }
    }
    report(
        9,
        "Bloch round trip in dims 2 and 4; Pauli bases n=2,3,4 Hermitian, traceless, orthogonal",
        worst <= 1e-10 && basis_worst <= 1e-12,
        format!("round-trip err {worst:.2e}, basis err {basis_worst:.2e}"),
    );
}

#[test]
fn criterion_10_truth_surface() {
    let rows = qmix::cli::surface_rows(100).unwrap();
    let at = |x: f64, y: f64| rows.iter().find(|r| r.0 == x && r.1 == y).map(|r| r.2).unwrap();
    let corners_ok = at(0.0, 0.0) == 0.0
        && at(1.0, 1.0) == 0.0
        && at(1.0, 0.0) == 1.0
        && at(0.0, 1.0) == 1.0
        && at(0.5, 0.5) == 0.5;
    let worst = rows
        .iter()
        .map(|&(x, y, p)| (p - ((1.0 - x) * y + (1.0 - y) * x)).abs())
        .fold(0.0, f64::max);

    let out = Command::new(env!("CARGO_BIN_EXE_qmix"))
        .args(["surface", "--steps", "2"])
        .output()
        .unwrap();
    let csv = String::from_utf8(out.stdout).unwrap();
    let csv_ok = ["0,0,0", "1,1,0", "1,0,1", "0,1,1", "0.5,0.5,0.5"]
        .iter()
        .all(|row| csv.lines().any(|l| l == *row));

    report(
        10,
        "surface corners and centre exact; matches (1-x)y + (1-y)x",
        corners_ok && csv_ok && worst <= 1e-15,
        format!("corners {corners_ok}, csv {csv_ok}, max err {worst:.2e}"),
    );
}
