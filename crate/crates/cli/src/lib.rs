//! `sp4r` command line: closed-form spectra with oracle residuals, verification
//! suites, coherent-state tables and wavefunction samples.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
//! invalid input or a domain error.

pub mod config;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sp4r::algebra::{build_generators, verify_commutation_table};
use sp4r::fock::{interior_projector, FockBasis, Interior};
use sp4r::hamiltonian::{closed_form_spectrum, pipeline_spectrum, wavefunction, EntryFlag};
use sp4r::models::ModelName;
use sp4r::tilt::{
    closed_form_grid_report, coherent_oracle, perelomov_state, su11_series_length, tilt_grid, CoherentKind, DiscrepancyLedger,
};
use sp4r::verify::{compare_spectra, interaction_oracle, uncoupled_oracle, verify_model, ModelCheck};
use sp4r::{FormulaMode, SpectrumTable, VerificationReport};

pub use config::{ModelChoice, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] sp4r::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "sp4r", version, about = "Exact spectra of two-level two-mode Hamiltonians via sp(4,R) tilting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form spectrum table with oracle residual columns (CSV).
    Spectrum(SpectrumArgs),
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Perelomov (number) coherent-state coefficients against expm.
    Coherent(CoherentArgs),
    /// One evaluation of the planar oscillator eigenfunction.
    Wavefunction(WavefunctionArgs),
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    config: PathBuf,
    /// Cutoff for both modes, overriding the config.
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the parsed config in canonical form and exit.
    #[arg(long)]
    dump_config: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Closure of the 45 commutators and comparison with the printed table.
    Algebra {
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed-form tilting against expm conjugation over a parameter grid.
    Tilting {
        #[arg(long, default_value_t = 0.5)]
        max_xi: f64,
        #[arg(long, default_value_t = 24)]
        cutoff: usize,
        #[arg(long, default_value_t = 8)]
        margin: usize,
        #[arg(long, default_value_t = 8)]
        phases: usize,
        /// Check the printed formulas instead of the corrected ones.
        #[arg(long)]
        literal: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Printed preset spectrum against direct diagonalization.
    Model {
        name: String,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        margin: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Preset parameter, `key=value` (complex as `key=re,im`); repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Su11,
    Su2,
}

#[derive(Args, Debug)]
struct CoherentArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Bargmann index (su11).
    #[arg(long)]
    k: Option<f64>,
    /// Spin (su2).
    #[arg(long)]
    j: Option<f64>,
    /// Displacement parameter `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    xi: String,
    /// Excitation of the displaced state (0 gives the coherent state).
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug)]
struct WavefunctionArgs {
    #[arg(long, allow_hyphen_values = true)]
    nl: i64,
    #[arg(long, allow_hyphen_values = true)]
    mn: i64,
    #[arg(long, allow_hyphen_values = true)]
    rho: f64,
    #[arg(long, allow_hyphen_values = true)]
    phi: f64,
}

/// 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub const SPECTRUM_HEADER: &str = "n,m_n,E_plus,E_minus,oracle_match,abs_err,flag";

/// CSV rendering of a compared spectrum table.
pub fn spectrum_csv(table: &SpectrumTable, tol: f64) -> String {
    let mut s = String::from(SPECTRUM_HEADER);
    s.push('\n');
    for e in &table.entries {
        let err = e.abs_err();
        let matched = e.flag == EntryFlag::Ok && err.is_some_and(|r| r <= tol);
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            e.n,
            e.m,
            fmt17(e.e_plus),
            fmt17(e.e_minus),
            matched,
            err.map(fmt17).unwrap_or_default(),
            e.flag
        );
    }
    s
}

/// The closed-form table of a config compared with its oracle.
pub fn spectrum_table(cfg: &RunConfig) -> Result<(SpectrumTable, VerificationReport), CliError> {
    let tol = cfg.tolerance("spectrum", 1e-8);
    let (mut table, interior) = match cfg.preset()? {
        Some(p) => {
            let (_, interior) = p.oracle_layout(cfg.cutoff_a, cfg.margin)?;
            let keep = |n: usize, m: i64| p.single_mode() || n as i64 + m <= cfg.n_max as i64;
            (p.printed_table(cfg.n_max, false, keep)?, interior)
        }
        None => {
            let params = cfg.model_params()?;
            let table = match closed_form_spectrum(&params, cfg.n_max) {
                Err(sp4r::Error::ConditionViolated(_)) => pipeline_spectrum(&params, cfg.n_max)?.0,
                other => other?,
            };
            let basis = FockBasis::new(cfg.cutoff_a, cfg.cutoff_b)?;
            (table, Interior::uniform(basis, cfg.margin)?)
        }
    };
    let params = table.params;
    let oracle = if params.is_hermitian() {
        interaction_oracle(&params, &interior)?
    } else {
        let (oracle, off) = uncoupled_oracle(&params, &interior, tol)?;
        if off > tol {
            return Err(sp4r::Error::NotHermitian { defect: off, tolerance: tol }.into());
        }
        oracle
    };
    table.cutoffs = Some((interior.basis.cutoff_a(), interior.basis.cutoff_b()));
    let report = compare_spectra(&mut table, &oracle, tol);
    Ok((table, report))
}

fn exit_for(report: &VerificationReport) -> i32 {
    if report.all_passed() {
        0
    } else {
        1
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv(),
    }
}

fn spectrum(args: &SpectrumArgs) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(n) = args.cutoff {
        if n == 0 {
            return Err(CliError::Config("cutoff must be positive".into()));
        }
        cfg.cutoff_a = n;
        cfg.cutoff_b = n;
    }
    if args.dump_config {
        print!("{}", cfg.to_text());
        return Ok(0);
    }
    let (table, report) = spectrum_table(&cfg)?;
    let out = args.out.clone().or_else(|| cfg.output.as_ref().map(PathBuf::from));
    emit(&spectrum_csv(&table, cfg.tolerance("spectrum", 1e-8)), out.as_ref())?;
    Ok(exit_for(&report))
}

fn magnitudes(max_xi: f64) -> Vec<f64> {
    let m: Vec<f64> = [0.1, 0.3, 0.5].into_iter().filter(|&x| x <= max_xi + 1e-12).collect();
    if m.is_empty() {
        vec![max_xi]
    } else {
        m
    }
}

fn verify(cmd: &VerifyCommand) -> Result<i32, CliError> {
    match cmd {
        VerifyCommand::Algebra { cutoff, margin, format } => {
            let basis = FockBasis::new(*cutoff, *cutoff)?;
            let gens = build_generators(&basis);
            let table = verify_commutation_table(&gens, &interior_projector(&basis, *margin)?)?;
            print!("{}", render(&table.report, *format));
            Ok(exit_for(&table.report))
        }
        VerifyCommand::Tilting { max_xi, cutoff, margin, phases, literal, tol, format } => {
            if !(max_xi.is_finite() && *max_xi > 0.0) || *phases == 0 {
                return Err(CliError::Config("--max-xi must be positive and --phases at least 1".into()));
            }
            let gens = build_generators(&FockBasis::new(*cutoff, *cutoff)?);
            let mode = if *literal { FormulaMode::Literal } else { FormulaMode::Verified };
            let report = closed_form_grid_report(&gens, *margin, &tilt_grid(&magnitudes(*max_xi), *phases), mode, *tol)?;
            let ledger = DiscrepancyLedger::standard();
            match format {
                Format::Text => print!("{}\n{}", report.to_text(), ledger.to_text()),
                Format::Csv => print!("{}", report.to_csv()),
            }
            Ok(exit_for(&report))
        }
        VerifyCommand::Model { name, cutoff, margin, n_max, tol, set } => {
            let model: ModelName = name.parse()?;
            let mut values = std::collections::BTreeMap::new();
            for kv in set {
                let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Config(format!("--set expects KEY=VALUE, got '{kv}'")))?;
                values.insert(k.trim().to_string(), config::parse_complex(k, v)?);
            }
            let preset = sp4r::models::preset(model.as_str(), &values)?;
            let mut opts = default_check(model);
            opts.cutoff = cutoff.unwrap_or(opts.cutoff);
            opts.margin = margin.unwrap_or(opts.margin);
            opts.n_max = n_max.unwrap_or(opts.n_max);
            opts.tol = tol.unwrap_or(opts.tol);
            let v = verify_model(&preset, &opts)?;
            print!("{}", v.interaction.to_text());
            if let Some(full) = &v.full {
                println!("\n# informational: printed full line against H0 + H_I");
                print!("{}", full.to_text());
            }
            Ok(exit_for(&v.interaction))
        }
    }
}

/// Cutoff, margin, index range and tolerance used by `verify model` per preset.
pub fn default_check(model: ModelName) -> ModelCheck {
    match model {
        ModelName::Jc => ModelCheck { cutoff: 60, margin: 4, n_max: 15, tol: 1e-8 },
        ModelName::Dirac => ModelCheck { cutoff: 60, margin: 4, n_max: 15, tol: 1e-10 },
        ModelName::GeneralizedJc => ModelCheck { cutoff: 120, margin: 4, n_max: 15, tol: 1e-6 },
        ModelName::Mjc | ModelName::JcAjc => ModelCheck { cutoff: 25, margin: 4, n_max: 10, tol: 1e-6 },
    }
}

fn coherent(args: &CoherentArgs) -> Result<i32, CliError> {
    let xi = config::parse_complex("--xi", &args.xi)?;
    let (kind, label) = match args.kind {
        KindArg::Su11 => (CoherentKind::Su11, args.k.ok_or_else(|| CliError::Config("--kind su11 needs --k".into()))?),
        KindArg::Su2 => (CoherentKind::Su2, args.j.ok_or_else(|| CliError::Config("--kind su2 needs --j".into()))?),
    };
    let length = match kind {
        CoherentKind::Su11 => su11_series_length(label, args.n, xi),
        CoherentKind::Su2 => 0,
    };
    let analytic = perelomov_state(kind, label, args.n, xi, length)?;
    let oracle = coherent_oracle(kind, label, args.n, xi, analytic.len())?;
    let mut s = String::from("index,re,im,oracle_re,oracle_im,abs_err\n");
    let mut report = VerificationReport::new("coherent state");
    let mut worst: f64 = 0.0;
    for (i, (a, o)) in analytic.iter().zip(&oracle).enumerate() {
        let err = (a - o).norm();
        worst = worst.max(err);
        let _ = writeln!(s, "{i},{},{},{},{},{}", fmt17(a.re), fmt17(a.im), fmt17(o.re), fmt17(o.im), fmt17(err));
    }
    let norm: f64 = analytic.iter().map(|z| z.norm_sqr()).sum();
    report.push("max entry error", worst, args.tol, "");
    report.push("normalization", (norm - 1.0).abs(), 1e-10, "");
    print!("{s}");
    eprint!("{}", report.to_text());
    Ok(exit_for(&report))
}

fn wavefunction_cmd(args: &WavefunctionArgs) -> Result<i32, CliError> {
    let w = wavefunction(args.nl, args.mn, args.rho, args.phi)?;
    println!("n_l,m_n,rho,phi,re,im");
    println!("{},{},{},{},{},{}", w.n_l, w.m_n, fmt17(w.rho), fmt17(w.phi), fmt17(w.value.re), fmt17(w.value.im));
    Ok(0)
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let first = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            eprintln!("{first}");
            return 2;
        }
    };
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum(a),
        Command::Verify(v) => verify(v),
        Command::Coherent(a) => coherent(a),
        Command::Wavefunction(a) => wavefunction_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
