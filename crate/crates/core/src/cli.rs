//! Command-line front end. Data goes to stdout (or `--out`), diagnostics to
//! stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::channel::{cnot_channel, probability};
use crate::cnot::{classify_preservation, cnot_report, werner, CnotReport};
use crate::density::{is_factorizable, DensityOperator};
use crate::error::{Error, Result};
use crate::fuzzy::{cnot_polynomial, FuzzyValue};
use crate::linalg::{ComplexMatrix, DEFAULT_TOL};
use crate::verify::{self, RunConfig};

/// Exit code for any error.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qmix", version, about = "Mixed-state CNOT analysis on small systems")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the ChaCha8 sampler.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Samples per verification campaign.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,

    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Grid resolution for `surface` and `werner-sweep`.
    #[arg(long, global = true, default_value_t = 20)]
    steps: usize,

    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Probability that the last qubit of a state reads true.
    Prob { state: PathBuf },
    /// Reduced states, holistic term and product-form verdict.
    Decompose {
        state: PathBuf,
        #[arg(short, default_value_t = 2)]
        m: usize,
        #[arg(short, default_value_t = 2)]
        k: usize,
    },
    /// Apply the CNOT channel to a two-qubit state.
    ApplyCnot { state: PathBuf },
    /// CSV samples of the CNOT truth polynomial over [0,1]².
    Surface,
    /// CSV of the CNOT readouts along the Werner family.
    WernerSweep,
    /// Whether CNOT keeps a product input factorizable.
    Classify { rho: PathBuf, sigma: PathBuf },
    /// Seeded randomized verification campaigns.
    Verify,
}

/// Renders `x` with 12 significant digits in plain decimal notation,
/// trailing zeros removed.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("exponent in scientific formatting");
    let decimals = (11 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Uniform grid `i / steps` for `i = 0..=steps`.
fn grid(steps: usize) -> impl Iterator<Item = f64> + Clone {
    (0..=steps).map(move |i| i as f64 / steps as f64)
}

/// `(x, y, p)` rows of the CNOT polynomial on the `(steps+1)²` grid, `x`
/// varying slowest.
pub fn surface_rows(steps: usize) -> Result<Vec<(f64, f64, f64)>> {
    if steps < 2 {
        return Err(Error::InvalidArgument("surface needs --steps >= 2".into()));
    }
    let mut rows = Vec::with_capacity((steps + 1) * (steps + 1));
    for x in grid(steps) {
        for y in grid(steps) {
            let p = cnot_polynomial(FuzzyValue::new(x)?, FuzzyValue::new(y)?).value();
            rows.push((x, y, p));
        }
    }
    Ok(rows)
}

pub fn surface_csv(steps: usize) -> Result<String> {
    let mut out = String::from("x,y,p\n");
    for (x, y, p) in surface_rows(steps)? {
        let _ = writeln!(out, "{},{},{}", format_sig12(x), format_sig12(y), format_sig12(p));
    }
    Ok(out)
}

/// CNOT readouts for `α = i / steps`.
pub fn werner_rows(steps: usize) -> Result<Vec<(f64, CnotReport)>> {
    if steps < 1 {
        return Err(Error::InvalidArgument("werner-sweep needs --steps >= 1".into()));
    }
    grid(steps).map(|alpha| Ok((alpha, cnot_report(&werner(alpha)?)?))).collect()
}

pub fn werner_csv(steps: usize) -> Result<String> {
    let mut out = String::from("alpha,p_total,p_fuzzy,incidence\n");
    for (alpha, r) in werner_rows(steps)? {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_sig12(alpha),
            format_sig12(r.p_total),
            format_sig12(r.p_fuzzy),
            format_sig12(r.incidence)
        );
    }
    Ok(out)
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    ComplexMatrix::from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_state(path: &Path, tol: f64) -> Result<DensityOperator> {
    let m = read_matrix(path)?;
    DensityOperator::with_tol(m, tol).map_err(|e| match e {
        Error::NotDensity(why) => Error::NotDensity(format!("{}: {why}", path.display())),
        other => other,
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::InvalidArgument(format!("cannot write stdout: {e}")))
        }
    }
}

fn to_json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable report");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Prob { state } => {
            let rho = read_state(state, cli.tol)?;
            emit(&cli.out, &format!("{:.12}\n", probability(&rho)?))?;
            Ok(0)
        }
        Command::Decompose { state, m, k } => {
            let rho = read_state(state, cli.tol)?;
            let report = is_factorizable(&rho, *m, *k, cli.tol)?;
            emit(&cli.out, &to_json_line(&report))?;
            Ok(0)
        }
        Command::ApplyCnot { state } => {
            let rho = read_state(state, cli.tol)?;
            let out = cnot_channel().apply(&rho)?;
            emit(&cli.out, &to_json_line(out.matrix()))?;
            Ok(0)
        }
        Command::Surface => {
            emit(&cli.out, &surface_csv(cli.steps)?)?;
            Ok(0)
        }
        Command::WernerSweep => {
            emit(&cli.out, &werner_csv(cli.steps)?)?;
            Ok(0)
        }
        Command::Classify { rho, sigma } => {
            let rho = read_state(rho, cli.tol)?;
            let sigma = read_state(sigma, cli.tol)?;
            let verdict = classify_preservation(&rho, &sigma, cli.tol)?;
            emit(&cli.out, &to_json_line(&verdict))?;
            Ok(if verdict.preserved { 0 } else { 1 })
        }
        Command::Verify => {
            let mut config = RunConfig::new(cli.seed, cli.samples, cli.tol)?;
            config.output_path = cli.out.clone();
            let summary = verify::run(&config);
            let header = format!(
                "seed={} samples={} tol={:e}\n",
                config.seed, config.samples, config.tolerance
            );
            emit(&config.output_path, &(header + &summary.render()))?;
            Ok(if summary.all_passed() { 0 } else { 1 })
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
