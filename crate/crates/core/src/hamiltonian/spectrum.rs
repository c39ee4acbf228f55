//! Closed-form spectra `E(n, m_n)` from the pipeline slopes.

use std::fmt;

use super::pipeline::{tilt_pipeline, PipelineResult};
use super::ModelParams;
use crate::error::{Error, Result};

/// Per-row status in a spectrum table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryFlag {
    Ok,
    /// Negative bracket; the entry carries `±√|bracket|` and is never matched.
    NonReal,
    /// At least one of `E±` found no oracle eigenvalue.
    Unmatched,
}

impl fmt::Display for EntryFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryFlag::Ok => "ok",
            EntryFlag::NonReal => "non-real",
            EntryFlag::Unmatched => "unmatched",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub n: usize,
    pub m: i64,
    pub e_plus: f64,
    pub e_minus: f64,
    pub flag: EntryFlag,
    /// Oracle eigenvalues matched to `E₊` and `E₋`.
    pub oracle_plus: Option<f64>,
    pub oracle_minus: Option<f64>,
}

impl SpectrumEntry {
    pub fn new(n: usize, m: i64, e_plus: f64, e_minus: f64, non_real: bool) -> Self {
        let flag = if non_real { EntryFlag::NonReal } else { EntryFlag::Ok };
        Self { n, m, e_plus, e_minus, flag, oracle_plus: None, oracle_minus: None }
    }

    /// `±√bracket`, flagged when the bracket is negative.
    pub fn from_bracket(n: usize, m: i64, offset: f64, bracket: f64) -> Self {
        let root = bracket.abs().sqrt();
        Self::new(n, m, offset + root, offset - root, bracket < 0.0)
    }

    /// Largest matching error over `E±`, if both were matched.
    pub fn abs_err(&self) -> Option<f64> {
        Some((self.e_plus - self.oracle_plus?).abs().max((self.e_minus - self.oracle_minus?).abs()))
    }
}

/// Closed-form spectrum with the oracle columns filled in by verification.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTable {
    pub entries: Vec<SpectrumEntry>,
    pub oracle_eigenvalues: Vec<f64>,
    /// Oracle eigenvalues left over after matching.
    pub unmatched: Vec<f64>,
    pub params: ModelParams,
    pub cutoffs: Option<(usize, usize)>,
}

impl SpectrumTable {
    pub fn new(entries: Vec<SpectrumEntry>, params: ModelParams) -> Self {
        Self { entries, oracle_eigenvalues: Vec::new(), unmatched: Vec::new(), params, cutoffs: None }
    }

    /// Largest per-entry matching error.
    pub fn max_abs_err(&self) -> f64 {
        self.entries.iter().filter_map(SpectrumEntry::abs_err).fold(0.0, f64::max)
    }
}

/// `(n, m_n)` for `n ≤ n_max`, `m_n ∈ {−n, −n+2, …, n}`.
pub fn index_pairs(n_max: usize) -> impl Iterator<Item = (usize, i64)> {
    (0..=n_max).flat_map(|n| (0..=n).map(move |k| (n, 2 * k as i64 - n as i64)))
}

fn bracket(det: f64, sa: f64, sb: f64, identity: f64, n: usize, m: i64) -> f64 {
    det * det + (sa + sb) * (n as f64 + 1.0) / 4.0 + (sa - sb) * m as f64 / 4.0 + identity
}

/// The printed closed form: needs `α₅ = α₆` and uses the constant `α₁₁ − α₅`.
pub fn closed_form_spectrum(params: &ModelParams, n_max: usize) -> Result<SpectrumTable> {
    params.validate()?;
    let alphas = params.alphas();
    if !alphas.condition_holds() {
        return Err(Error::ConditionViolated(format!("α5 = {} differs from α6 = {}", alphas.get(5), alphas.get(6))));
    }
    let r = tilt_pipeline(&alphas)?;
    let identity = (alphas.get(11) - alphas.get(5)).re;
    Ok(table(params, &r, identity, n_max))
}

/// The spectrum from the exact pipeline output, valid whenever the pipeline
/// reaches diagonal form; the constant is the one carried through the tilts.
pub fn pipeline_spectrum(params: &ModelParams, n_max: usize) -> Result<(SpectrumTable, PipelineResult)> {
    params.validate()?;
    let r = tilt_pipeline(&params.alphas())?;
    let identity = r.output.identity.re;
    Ok((table(params, &r, identity, n_max), r))
}

fn table(params: &ModelParams, r: &PipelineResult, identity: f64, n_max: usize) -> SpectrumTable {
    let det = params.detuning_energy();
    let entries = index_pairs(n_max)
        .map(|(n, m)| SpectrumEntry::from_bracket(n, m, 0.0, bracket(det, r.slope_a, r.slope_b, identity, n, m)))
        .collect();
    SpectrumTable::new(entries, *params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn index_pairs_layout() {
        let v: Vec<_> = index_pairs(2).collect();
        assert_eq!(v, vec![(0, 0), (1, -1), (1, 1), (2, -2), (2, 0), (2, 2)]);
    }

    #[test]
    fn zero_couplings_bare_splitting() {
        let p = ModelParams { omega0: 3.0, omega1: 1.0, ..Default::default() };
        let t = closed_form_spectrum(&p, 3).unwrap();
        assert!(t.entries.iter().all(|e| e.e_plus == 1.0 && e.e_minus == -1.0));
    }

    #[test]
    fn jc_condition_and_general_form() {
        let mut p = ModelParams { omega0: 4.0, ..Default::default() };
        p.kappa[0] = c(1.0, 0.0);
        p.gamma[1] = c(1.0, 0.0);
        assert!(matches!(closed_form_spectrum(&p, 3), Err(Error::ConditionViolated(_))));
        let (t, _) = pipeline_spectrum(&p, 3).unwrap();
        // n_a = (n + m)/2 = 3 appears at (3, 3): E = ±½√(4² + 4·4).
        let e = t.entries.iter().find(|e| e.n == 3 && e.m == 3).unwrap();
        assert!((e.e_plus - 0.5 * 32f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_real_flag() {
        let e = SpectrumEntry::from_bracket(0, 0, 0.0, -4.0);
        assert_eq!((e.flag, e.e_plus, e.e_minus), (EntryFlag::NonReal, 2.0, -2.0));
    }
}
