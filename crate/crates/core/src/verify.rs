//! Direct diagonalization on the interior of a truncated space, spectrum
//! matching and cutoff scans.

use crate::error::{Error, Result};
use crate::fock::{projector_indices, spin_lift, FockBasis, Interior, OperatorMatrix};
use crate::hamiltonian::{uncoupled_operator_sparse, EntryFlag, ModelParams, PipelineResult, SpectrumTable};
use crate::linalg::{hermitian_eigensolve, hermitian_eigenvalues, ComplexMatrix, SparseMatrix};
use crate::report::VerificationReport;
use crate::tilt::displacement_sparse;
use crate::algebra::build_generators;
use crate::models::ModelPreset;

/// Ascending eigenvalues of `P·H·P` on the range of `P`.
///
/// A Fock-space projector is lifted to spin ⊗ Fock when `H` carries the spin factor.
pub fn oracle_spectrum(h: &OperatorMatrix, p: &OperatorMatrix) -> Result<Vec<f64>> {
    let p = if h.spin_factor && !p.spin_factor { spin_lift(p) } else { p.clone() };
    if p.dim() != h.dim() {
        return Err(Error::Dimension(format!("projector of dimension {} for operator of dimension {}", p.dim(), h.dim())));
    }
    let idx = projector_indices(&p);
    hermitian_eigenvalues(&h.matrix.submatrix(&idx, &idx))
}

/// Ascending interior eigenvalues of a sparse operator; `spin` selects spin ⊗ Fock indices.
pub fn oracle_sparse(h: &SparseMatrix, interior: &Interior, spin: bool) -> Result<Vec<f64>> {
    let idx = if spin { interior.spin_indices() } else { interior.indices() };
    hermitian_eigenvalues(&h.submatrix(&idx, &idx).to_dense())
}

/// Nearest unused oracle value, ties toward the smaller index.
fn take_nearest(oracle: &[f64], used: &mut [bool], x: f64) -> Option<f64> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &o) in oracle.iter().enumerate() {
        if used[i] {
            continue;
        }
        let d = (o - x).abs();
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| {
        used[i] = true;
        oracle[i]
    })
}

/// Greedy nearest matching of the real closed-form entries into the oracle list
/// without reuse. Fills the table's oracle columns and unmatched list.
pub fn compare_spectra(table: &mut SpectrumTable, oracle: &[f64], tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new("closed form vs oracle");
    let mut used = vec![false; oracle.len()];
    let mut skipped = 0;
    for e in table.entries.iter_mut() {
        if e.flag == EntryFlag::NonReal {
            skipped += 1;
            continue;
        }
        e.oracle_plus = take_nearest(oracle, &mut used, e.e_plus);
        e.oracle_minus = take_nearest(oracle, &mut used, e.e_minus);
        match e.abs_err() {
            Some(err) => {
                report.push(format!("E(n={}, m={})", e.n, e.m), err, tol, "");
            }
            None => {
                e.flag = EntryFlag::Unmatched;
                report.push_flag(format!("E(n={}, m={}) matched", e.n, e.m), false, "oracle exhausted");
            }
        }
    }
    table.oracle_eigenvalues = oracle.to_vec();
    table.unmatched = oracle.iter().zip(&used).filter(|(_, u)| !**u).map(|(o, _)| *o).collect();
    if skipped > 0 {
        report.note(format!("{skipped} non-real entries skipped"));
    }
    report.note(format!("{} oracle eigenvalues unmatched", table.unmatched.len()));
    report
}

/// Values ordered by magnitude, then by value.
pub fn by_magnitude(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    v
}

/// Tracks the `track` smallest-magnitude eigenvalues returned by `oracle` at the
/// largest cutoff back through the smaller ones (nearest value at each) and checks
/// the last successive difference against `tol`.
pub fn convergence_scan_with<F>(cutoffs: &[(usize, usize)], track: usize, tol: f64, mut oracle: F) -> Result<VerificationReport>
where
    F: FnMut(&FockBasis) -> Result<Vec<f64>>,
{
    let mut report = VerificationReport::new("cutoff convergence");
    if cutoffs.is_empty() {
        return Ok(report);
    }
    if cutoffs.windows(2).any(|w| w[1].0 < w[0].0 || w[1].1 < w[0].1) {
        return Err(Error::InvalidArgument("cutoffs must be ascending".into()));
    }
    let mut runs = Vec::with_capacity(cutoffs.len());
    for &(ca, cb) in cutoffs {
        runs.push(oracle(&FockBasis::new(ca, cb)?)?);
    }
    let reference: Vec<f64> = by_magnitude(runs.last().expect("non-empty")).into_iter().take(track).collect();
    for (k, &target) in reference.iter().enumerate() {
        let seq: Vec<f64> = runs
            .iter()
            .map(|run| run.iter().copied().min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs())).unwrap_or(f64::NAN))
            .collect();
        let diffs: Vec<f64> = seq.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        let last = diffs.last().copied().unwrap_or(0.0);
        let shown = diffs.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(", ");
        report.push(format!("eigenvalue #{k} ({target:.10})"), if last.is_nan() { f64::INFINITY } else { last }, tol, format!("differences [{shown}]"));
    }
    Ok(report)
}

/// Eigenvalues of the full truncated operator whose eigenvectors put at most
/// `weight` of their norm outside `interior`, ascending.
pub fn localized_spectrum(h: &SparseMatrix, interior: &Interior, spin: bool, weight: f64) -> Result<Vec<f64>> {
    let eig = hermitian_eigensolve(&h.to_dense())?;
    let inside = if spin { interior.spin_indices() } else { interior.indices() };
    let mut mask = vec![false; h.rows()];
    for i in inside {
        mask[i] = true;
    }
    let mut out = Vec::new();
    for (j, &lambda) in eig.values.iter().enumerate() {
        let outside: f64 = (0..h.rows()).filter(|&i| !mask[i]).map(|i| eig.vectors[(i, j)].norm_sqr()).sum();
        if outside <= weight {
            out.push(lambda);
        }
    }
    Ok(out)
}

/// Convergence of the spectrum of `H_I` over cutoffs with a fixed margin.
///
/// Only eigenvalues whose eigenvectors keep all but `1e−12` of their weight
/// inside the interior are candidates, so truncation artefacts at the edge drop out.
pub fn convergence_scan(params: &ModelParams, cutoffs: &[(usize, usize)], margin: (usize, usize)) -> Result<VerificationReport> {
    convergence_scan_with(cutoffs, 10, 1e-8, |basis| {
        let (_, _, hi) = crate::hamiltonian::build_hamiltonian_sparse(params, basis);
        localized_spectrum(&hi, &Interior::new(*basis, margin.0, margin.1)?, true, 1e-10)
    })
}

/// The full pipeline displacement as a sparse unitary on `basis`.
pub fn pipeline_displacement(result: &PipelineResult, basis: &FockBasis) -> Result<SparseMatrix> {
    let gens = build_generators(basis);
    let mut d = SparseMatrix::identity(basis.dim());
    for t in result.tilts() {
        d = d.matmul(&displacement_sparse(&t, &gens)?)?;
    }
    Ok(d)
}

/// Interior block of `D†·U·D` for the uncoupled operator `U` of component 1.
pub fn conjugated_uncoupled(params: &ModelParams, result: &PipelineResult, interior: &Interior) -> Result<ComplexMatrix> {
    let basis = interior.basis;
    let u = uncoupled_operator_sparse(params, &basis, 1)?;
    let d = pipeline_displacement(result, &basis)?;
    let conj = d.adjoint().matmul(&u)?.matmul(&d)?;
    let idx = interior.indices();
    Ok(conj.submatrix(&idx, &idx).to_dense())
}

/// Off-diagonal Frobenius mass of a matrix relative to its norm.
pub fn off_diagonal_fraction(m: &ComplexMatrix) -> f64 {
    m.off_diagonal_norm() / m.frobenius_norm().max(f64::MIN_POSITIVE)
}

/// Largest difference between the sorted eigenvalues of two Hermitian matrices.
pub fn spectrum_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let (x, y) = (hermitian_eigenvalues(a)?, hermitian_eigenvalues(b)?);
    if x.len() != y.len() {
        return Err(Error::Dimension("spectra of different length".into()));
    }
    Ok(x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
}

/// Ascending interior eigenvalues of `H_I` for Hermitian couplings.
pub fn interaction_oracle(params: &ModelParams, interior: &Interior) -> Result<Vec<f64>> {
    let (_, _, hi) = crate::hamiltonian::build_hamiltonian_sparse(params, &interior.basis);
    oracle_sparse(&hi, interior, true)
}

/// `±√((ħΔω)² + d)` over the diagonal entries `d` of the interior uncoupled
/// operator with a non-negative bracket, and the largest off-diagonal modulus.
/// Exact whenever that operator is diagonal, Hermitian or not.
pub fn uncoupled_oracle(params: &ModelParams, interior: &Interior, tol: f64) -> Result<(Vec<f64>, f64)> {
    let u = uncoupled_operator_sparse(params, &interior.basis, 1)?;
    let idx = interior.indices();
    let block = u.submatrix(&idx, &idx);
    let off = block.iter().filter(|(r, k, _)| r != k).map(|(_, _, v)| v.norm()).fold(0.0, f64::max);
    let det = params.detuning_energy();
    let mut oracle = Vec::new();
    for d in block.diagonal() {
        let b = det * det + d.re;
        if b >= 0.0 && d.im.abs() <= tol {
            oracle.extend([b.sqrt(), -b.sqrt()]);
        }
    }
    oracle.sort_by(f64::total_cmp);
    Ok((oracle, off))
}

/// Settings for [`verify_model`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelCheck {
    /// Per-mode cutoff; mode b is frozen at 0 for single-mode models.
    pub cutoff: usize,
    pub margin: usize,
    /// Largest `n`; two-mode models also keep only `n + m ≤ n_max`.
    pub n_max: usize,
    pub tol: f64,
}

impl Default for ModelCheck {
    fn default() -> Self {
        Self { cutoff: 40, margin: 4, n_max: 10, tol: 1e-8 }
    }
}

/// Outcome of [`verify_model`]. `interaction` decides pass/fail; `full` compares
/// the printed full line with the spectrum of `H₀ + H_I` and is informational.
#[derive(Clone, Debug)]
pub struct ModelVerification {
    pub table: SpectrumTable,
    pub interaction: VerificationReport,
    pub full_table: Option<SpectrumTable>,
    pub full: Option<VerificationReport>,
}

/// Printed spectrum of a preset against direct diagonalization.
///
/// Hermitian presets use the interior spectrum of `H_I`; the Dirac preset uses the
/// diagonal uncoupled operator, whose entries `d` give `E = ±√((ħΔω)² + d)`.
pub fn verify_model(preset: &ModelPreset, opts: &ModelCheck) -> Result<ModelVerification> {
    let params = preset.params();
    let (basis, interior) = preset.oracle_layout(opts.cutoff, opts.margin)?;
    let keep = |n: usize, m: i64| preset.single_mode() || n as i64 + m <= opts.n_max as i64;
    let mut table = preset.printed_table(opts.n_max, false, keep)?;
    table.cutoffs = Some((basis.cutoff_a(), basis.cutoff_b()));
    let title = format!("{} interaction spectrum vs oracle", preset.name());

    if !params.is_hermitian() {
        let mut report = VerificationReport::new(title);
        let (oracle, off) = uncoupled_oracle(&params, &interior, opts.tol)?;
        report.push("uncoupled operator off-diagonal", off, opts.tol, "");
        report.extend(compare_spectra(&mut table, &oracle, opts.tol));
        return Ok(ModelVerification { table, interaction: report, full_table: None, full: None });
    }

    let oracle = interaction_oracle(&params, &interior)?;
    let mut report = VerificationReport::new(title);
    report.extend(compare_spectra(&mut table, &oracle, opts.tol));

    let (full_table, full) = if preset.printed_includes_h0() {
        let h = preset.hamiltonian(&basis)?.h.to_sparse();
        let oracle = oracle_sparse(&h, &interior, true)?;
        let mut t = preset.printed_table(opts.n_max, true, keep)?;
        t.cutoffs = table.cutoffs;
        let mut r = VerificationReport::new(format!("{} full printed spectrum vs H0 + H_I", preset.name()));
        r.extend(compare_spectra(&mut t, &oracle, opts.tol));
        (Some(t), Some(r))
    } else {
        (None, None)
    };
    Ok(ModelVerification { table, interaction: report, full_table, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_basis;
    use crate::hamiltonian::{build_hamiltonian, SpectrumEntry};
    use crate::linalg::c;

    #[test]
    fn number_operator_oracle() {
        let basis = build_basis(3, 1).unwrap();
        let d: Vec<_> = basis.states().map(|(a, _)| c(a as f64, 0.0)).collect();
        let h = OperatorMatrix::new(ComplexMatrix::from_diagonal(&d), basis, false, "n").unwrap();
        let p = Interior::new(basis, 0, 1).unwrap().projector();
        assert_eq!(oracle_spectrum(&h, &p).unwrap(), vec![0.0, 1.0, 2.0, 3.0]);
        let z = OperatorMatrix::new(ComplexMatrix::zeros(8, 8), basis, false, "0").unwrap();
        assert_eq!(oracle_spectrum(&z, &p).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn greedy_matching() {
        let p = ModelParams::default();
        let mut t = SpectrumTable::new(
            vec![SpectrumEntry::new(0, 0, 1.0, -1.0, false), SpectrumEntry::new(1, 1, 2.0, -2.0, true)],
            p,
        );
        let r = compare_spectra(&mut t, &[-1.0, 0.5, 1.0], 1e-12);
        assert!(r.all_passed());
        assert_eq!(t.entries[0].abs_err(), Some(0.0));
        assert_eq!(t.entries[1].flag, EntryFlag::NonReal);
        assert_eq!(t.unmatched, vec![0.5]);
        let mut t2 = SpectrumTable::new(vec![SpectrumEntry::new(0, 0, 1.0, -1.0, false)], p);
        let r = compare_spectra(&mut t2, &[1.0], 1e-12);
        assert!(!r.all_passed() && t2.entries[0].flag == EntryFlag::Unmatched);
    }

    #[test]
    fn jc_oracle_contains_closed_form() {
        let mut p = ModelParams { omega0: 1.0, ..Default::default() };
        p.kappa[0] = c(1.0, 0.0);
        p.gamma[1] = c(1.0, 0.0);
        let basis = build_basis(30, 1).unwrap();
        let h = build_hamiltonian(&p, &basis);
        let ev = oracle_spectrum(&h.hi, &Interior::new(basis, 4, 1).unwrap().projector()).unwrap();
        for n in 0..10 {
            let e = (0.25 + (n as f64 + 1.0)).sqrt();
            assert!(ev.iter().any(|x| (x - e).abs() < 1e-10) && ev.iter().any(|x| (x + e).abs() < 1e-10));
        }
        assert!(ev.iter().any(|x| (x + 0.5).abs() < 1e-12));
    }

    #[test]
    fn scan_edge_cases() {
        let r = convergence_scan(&ModelParams::default(), &[], (1, 1)).unwrap();
        assert!(r.checks.is_empty());
        let r = convergence_scan_with(&[(4, 1), (8, 1)], 3, 1e-8, |b| Ok(vec![1.0; b.dim() / 2])).unwrap();
        assert!(r.all_passed());
        assert!(convergence_scan_with(&[(8, 1), (4, 1)], 3, 1e-8, |_| Ok(vec![])).is_err());
    }
    #[test]
    fn model_checks() {
        use crate::models::ModelPreset;
        let jc = ModelPreset::Jc { hbar: 1.0, omega0: 1.5, omega1: 1.0, kappa: 1.0 };
        let v = verify_model(&jc, &ModelCheck { cutoff: 30, margin: 4, n_max: 8, tol: 1e-10 }).unwrap();
        assert!(v.interaction.all_passed(), "{}", v.interaction.to_text());
        assert!(v.full.unwrap().all_passed());
        assert!(v.table.unmatched.iter().any(|x| (x + 0.25).abs() < 1e-12));
        let dirac = ModelPreset::Dirac { hbar: 1.0, m: 1.0, c: 1.0, omega: 0.05 };
        let v = verify_model(&dirac, &ModelCheck { cutoff: 20, margin: 2, n_max: 10, tol: 1e-10 }).unwrap();
        assert!(v.interaction.all_passed());
        assert!(v.table.entries.iter().filter(|e| e.flag == EntryFlag::NonReal).all(|e| e.oracle_plus.is_none()));
        assert!(v.table.entries.iter().any(|e| e.flag == EntryFlag::NonReal));
    }
}
