//! Named special cases of the general Hamiltonian and their printed spectra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock::{FockBasis, Interior, OperatorMatrix};
use crate::hamiltonian::{build_hamiltonian, index_pairs, spin_blocks, Hamiltonian, ModelParams, SpectrumEntry, SpectrumTable};
use crate::linalg::{c, SparseMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelName {
    Jc,
    Dirac,
    GeneralizedJc,
    Mjc,
    JcAjc,
}

impl ModelName {
    pub const ALL: [ModelName; 5] = [ModelName::Jc, ModelName::Dirac, ModelName::GeneralizedJc, ModelName::Mjc, ModelName::JcAjc];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::Jc => "jc",
            ModelName::Dirac => "dirac",
            ModelName::GeneralizedJc => "generalized_jc",
            ModelName::Mjc => "mjc",
            ModelName::JcAjc => "jc_ajc",
        }
    }

    /// Free-parameter keys with their defaults.
    pub fn keys(self) -> &'static [(&'static str, f64)] {
        match self {
            ModelName::Jc => &[("hbar", 1.0), ("omega0", 1.0), ("omega1", 1.0), ("kappa", 1.0)],
            ModelName::Dirac => &[("hbar", 1.0), ("m", 1.0), ("c", 1.0), ("omega", 0.1)],
            ModelName::GeneralizedJc => &[("hbar", 1.0), ("f", 0.3), ("g", 0.7), ("mc2", 1.0)],
            ModelName::Mjc => {
                &[("hbar", 1.0), ("omega0", 2.0), ("omega1", 1.0), ("omega2", 1.0), ("lambda1", 1.0), ("lambda2", 1.0)]
            }
            ModelName::JcAjc => {
                &[("hbar", 1.0), ("omega0", 0.3), ("omega1", 1.0), ("omega2", 1.0), ("lambda1", 1.0), ("lambda2", 0.3)]
            }
        }
    }

    /// Complex-valued keys; all others must be real.
    pub fn complex_keys(self) -> &'static [&'static str] {
        match self {
            ModelName::GeneralizedJc => &["f", "g"],
            _ => &[],
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelName::ALL
            .into_iter()
            .find(|m| m.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown model '{s}'")))
    }
}

/// A model with its free parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelPreset {
    /// `ħω₁a†a + ħω₀σ₀/2 + κ(aσ₊ + a†σ₋)`.
    Jc { hbar: f64, omega0: f64, omega1: f64, kappa: f64 },
    /// `mc²σ₀ + 2ic√(mωħ)(aσ₊ + a†σ₋)`.
    Dirac { hbar: f64, m: f64, c: f64, omega: f64 },
    /// `ħ[σ₋(g*a + f a†) + σ₊(g a† + f* a)] + mc²σ₀`.
    GeneralizedJc { hbar: f64, f: C64, g: C64, mc2: f64 },
    /// Two Jaynes-Cummings couplings on modes a and b.
    Mjc { hbar: f64, omega0: f64, omega1: f64, omega2: f64, lambda1: f64, lambda2: f64 },
    /// Jaynes-Cummings on mode a, anti-Jaynes-Cummings on mode b.
    JcAjc { hbar: f64, omega0: f64, omega1: f64, omega2: f64, lambda1: f64, lambda2: f64 },
}

/// A printed spectrum value: `offset ± √bracket` with the `H₀` part in `offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrintedLevel {
    pub offset: f64,
    pub bracket: f64,
}

impl PrintedLevel {
    pub fn pair(&self) -> (f64, f64) {
        let r = self.bracket.abs().sqrt();
        (self.offset + r, self.offset - r)
    }

    pub fn is_real(&self) -> bool {
        self.bracket >= 0.0
    }
}

/// Builds a preset from `key → value`; missing keys take their defaults.
pub fn preset(name: &str, values: &BTreeMap<String, C64>) -> Result<ModelPreset> {
    let model: ModelName = name.parse()?;
    for k in values.keys() {
        if !model.keys().iter().any(|(key, _)| key == k) {
            return Err(Error::InvalidArgument(format!("model {model} has no parameter '{k}'")));
        }
    }
    let get = |key: &str| -> Result<C64> {
        let default = model.keys().iter().find(|(k, _)| *k == key).map(|(_, v)| *v).unwrap_or(0.0);
        let v = values.get(key).copied().unwrap_or(c(default, 0.0));
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite(format!("parameter {key}")));
        }
        if v.im != 0.0 && !model.complex_keys().contains(&key) {
            return Err(Error::InvalidArgument(format!("parameter {key} must be real")));
        }
        Ok(v)
    };
    let r = |key: &str| get(key).map(|v| v.re);
    let p = match model {
        ModelName::Jc => ModelPreset::Jc { hbar: r("hbar")?, omega0: r("omega0")?, omega1: r("omega1")?, kappa: r("kappa")? },
        ModelName::Dirac => ModelPreset::Dirac { hbar: r("hbar")?, m: r("m")?, c: r("c")?, omega: r("omega")? },
        ModelName::GeneralizedJc => ModelPreset::GeneralizedJc { hbar: r("hbar")?, f: get("f")?, g: get("g")?, mc2: r("mc2")? },
        ModelName::Mjc => ModelPreset::Mjc {
            hbar: r("hbar")?,
            omega0: r("omega0")?,
            omega1: r("omega1")?,
            omega2: r("omega2")?,
            lambda1: r("lambda1")?,
            lambda2: r("lambda2")?,
        },
        ModelName::JcAjc => ModelPreset::JcAjc {
            hbar: r("hbar")?,
            omega0: r("omega0")?,
            omega1: r("omega1")?,
            omega2: r("omega2")?,
            lambda1: r("lambda1")?,
            lambda2: r("lambda2")?,
        },
    };
    p.params().validate()?;
    if let ModelPreset::Dirac { m, omega, .. } = p {
        if m < 0.0 || omega < 0.0 {
            return Err(Error::InvalidArgument("dirac needs m ≥ 0 and ω ≥ 0".into()));
        }
    }
    Ok(p)
}

impl ModelPreset {
    pub fn name(&self) -> ModelName {
        match self {
            ModelPreset::Jc { .. } => ModelName::Jc,
            ModelPreset::Dirac { .. } => ModelName::Dirac,
            ModelPreset::GeneralizedJc { .. } => ModelName::GeneralizedJc,
            ModelPreset::Mjc { .. } => ModelName::Mjc,
            ModelPreset::JcAjc { .. } => ModelName::JcAjc,
        }
    }

    /// Free parameters as `key → value`, in key order.
    pub fn values(&self) -> BTreeMap<String, C64> {
        let re = |x: f64| c(x, 0.0);
        let pairs: Vec<(&str, C64)> = match *self {
            ModelPreset::Jc { hbar, omega0, omega1, kappa } => {
                vec![("hbar", re(hbar)), ("omega0", re(omega0)), ("omega1", re(omega1)), ("kappa", re(kappa))]
            }
            ModelPreset::Dirac { hbar, m, c: cl, omega } => vec![("hbar", re(hbar)), ("m", re(m)), ("c", re(cl)), ("omega", re(omega))],
            ModelPreset::GeneralizedJc { hbar, f, g, mc2 } => vec![("hbar", re(hbar)), ("f", f), ("g", g), ("mc2", re(mc2))],
            ModelPreset::Mjc { hbar, omega0, omega1, omega2, lambda1, lambda2 }
            | ModelPreset::JcAjc { hbar, omega0, omega1, omega2, lambda1, lambda2 } => vec![
                ("hbar", re(hbar)),
                ("omega0", re(omega0)),
                ("omega1", re(omega1)),
                ("omega2", re(omega2)),
                ("lambda1", re(lambda1)),
                ("lambda2", re(lambda2)),
            ],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// The general-Hamiltonian parameters of this model.
    pub fn params(&self) -> ModelParams {
        let z = c(0.0, 0.0);
        match *self {
            ModelPreset::Jc { hbar, omega0, omega1, kappa } => ModelParams {
                omega0,
                omega1,
                omega2: 0.0,
                kappa: [c(kappa, 0.0), z, z, z],
                gamma: [z, c(kappa, 0.0), z, z],
                hbar,
            },
            ModelPreset::Dirac { hbar, m, c: cl, omega } => {
                let k = c(0.0, 2.0 * cl * (m * omega * hbar).sqrt());
                ModelParams { omega0: 2.0 * m * cl * cl / hbar, omega1: 0.0, omega2: 0.0, kappa: [k, z, z, z], gamma: [z, k, z, z], hbar }
            }
            ModelPreset::GeneralizedJc { hbar, f, g, mc2 } => ModelParams {
                omega0: 2.0 * mc2 / hbar,
                omega1: 0.0,
                omega2: 0.0,
                kappa: [hbar * f.conj(), hbar * g, z, z],
                gamma: [hbar * g.conj(), hbar * f, z, z],
                hbar,
            },
            ModelPreset::Mjc { hbar, omega0, omega1, omega2, lambda1, lambda2 } => ModelParams {
                omega0,
                omega1,
                omega2,
                kappa: [c(lambda1, 0.0), z, c(lambda2, 0.0), z],
                gamma: [z, c(lambda1, 0.0), z, c(lambda2, 0.0)],
                hbar,
            },
            ModelPreset::JcAjc { hbar, omega0, omega1, omega2, lambda1, lambda2 } => ModelParams {
                omega0,
                omega1,
                // The interaction detuning of this model is (ω₀ + ω₂ − ω₁)/2.
                omega2: -omega2,
                kappa: [c(lambda1, 0.0), z, z, c(lambda2, 0.0)],
                gamma: [z, c(lambda1, 0.0), c(lambda2, 0.0), z],
                hbar,
            },
        }
    }

    /// Only mode a is coupled.
    pub fn single_mode(&self) -> bool {
        matches!(self.name(), ModelName::Jc | ModelName::Dirac | ModelName::GeneralizedJc)
    }

    /// Whether the printed spectrum line includes the free part `H₀`.
    pub fn printed_includes_h0(&self) -> bool {
        matches!(self.name(), ModelName::Jc | ModelName::Mjc | ModelName::JcAjc)
    }

    /// Basis and interior for an oracle at the given cutoff (mode b frozen at 0 for
    /// single-mode models).
    pub fn oracle_layout(&self, cutoff: usize, margin: usize) -> Result<(FockBasis, Interior)> {
        if self.single_mode() {
            let basis = FockBasis::new(cutoff, 1)?;
            Ok((basis, Interior::new(basis, margin, 1)?))
        } else {
            let basis = FockBasis::new(cutoff, cutoff)?;
            Ok((basis, Interior::uniform(basis, margin)?))
        }
    }

    /// `H`, `H₀`, `H_I` with the free part as the model prints it.
    pub fn hamiltonian(&self, basis: &FockBasis) -> Result<Hamiltonian> {
        let params = self.params();
        let mut h = build_hamiltonian(&params, basis);
        if let ModelPreset::JcAjc { hbar, omega1, omega2, .. } = *self {
            let (w1, w2) = (hbar * omega1, hbar * omega2);
            let up: Vec<C64> = basis.states().map(|(na, nb)| c(w1 * (na as f64 + 0.5) + w2 * (nb as f64 - 0.5), 0.0)).collect();
            let down: Vec<C64> = basis.states().map(|(na, nb)| c(w1 * (na as f64 - 0.5) + w2 * (nb as f64 + 0.5), 0.0)).collect();
            let zero = SparseMatrix::zeros(basis.dim(), basis.dim());
            let blocks = spin_blocks(&SparseMatrix::from_diagonal(&up), &zero, &zero, &SparseMatrix::from_diagonal(&down));
            let h0 = OperatorMatrix::from_sparse(&blocks, *basis, true, "H0")?;
            h.h = OperatorMatrix::new(&h0.matrix + &h.hi.matrix, *basis, true, "H")?;
            h.h0 = h0;
        }
        Ok(h)
    }

    fn check_index(&self, n: usize, m: i64) -> Result<()> {
        if self.single_mode() {
            return Ok(());
        }
        if m.unsigned_abs() as usize > n || (n as i64 - m) % 2 != 0 {
            return Err(Error::InvalidArgument(format!("m = {m} is not in {{-n, -n+2, …, n}} for n = {n}")));
        }
        Ok(())
    }

    /// Printed interaction part `±√bracket`.
    pub fn interaction_level(&self, n: usize, m: i64) -> Result<PrintedLevel> {
        self.check_index(n, m)?;
        let nf = n as f64;
        let bracket = match *self {
            ModelPreset::Jc { hbar, omega0, omega1, kappa } => {
                let d = hbar * (omega0 - omega1);
                0.25 * (d * d + 4.0 * kappa * kappa * (nf + 1.0))
            }
            ModelPreset::Dirac { hbar, m: mass, c: cl, omega } => {
                let mc2 = mass * cl * cl;
                mc2 * mc2 - 4.0 * hbar * omega * mc2 * (nf + 1.0)
            }
            ModelPreset::GeneralizedJc { hbar, f, g, mc2 } => hbar * hbar * (g.norm_sqr() - f.norm_sqr()) * nf + mc2 * mc2,
            ModelPreset::Mjc { hbar, omega0, omega1, omega2, lambda1, lambda2 } => {
                let d = hbar * (omega0 - omega1 - omega2);
                let k = (n as i64 + m) / 2;
                0.25 * (d * d + 4.0 * (lambda1 * lambda1 + lambda2 * lambda2) * (k as f64 + 1.0))
            }
            ModelPreset::JcAjc { hbar, omega0, omega1, omega2, lambda1, lambda2 } => {
                let d = hbar * (omega0 + omega2 - omega1);
                let k = (n as i64 + m) / 2;
                0.25 * (d * d + 4.0 * (lambda1 * lambda1 - lambda2 * lambda2) * (k as f64 + 1.0))
            }
        };
        Ok(PrintedLevel { offset: 0.0, bracket })
    }

    /// The printed spectrum line, with the `H₀` part where the model prints it.
    pub fn level(&self, n: usize, m: i64) -> Result<PrintedLevel> {
        let mut l = self.interaction_level(n, m)?;
        let (nf, mf) = (n as f64, m as f64);
        l.offset = match *self {
            ModelPreset::Jc { hbar, omega1, .. } => hbar * omega1 * (nf + 0.5),
            ModelPreset::Mjc { hbar, omega1, omega2, .. } => {
                hbar * 0.5 * (omega1 + omega2) * (nf + 1.0) + hbar * 0.5 * (omega1 - omega2) * mf
            }
            ModelPreset::JcAjc { hbar, omega1, omega2, .. } => {
                hbar * 0.5 * (omega1 + omega2) * nf + hbar * 0.5 * (omega1 - omega2) * (mf + 1.0)
            }
            _ => 0.0,
        };
        Ok(l)
    }

    /// Index pairs of the printed spectrum: `m = 0` for single-mode models.
    pub fn index_pairs(&self, n_max: usize) -> Vec<(usize, i64)> {
        if self.single_mode() {
            (0..=n_max).map(|n| (n, 0)).collect()
        } else {
            index_pairs(n_max).collect()
        }
    }

    /// Table of printed levels over `index_pairs(n_max)` filtered by `keep`.
    pub fn printed_table(&self, n_max: usize, with_h0: bool, keep: impl Fn(usize, i64) -> bool) -> Result<SpectrumTable> {
        let mut entries = Vec::new();
        for (n, m) in self.index_pairs(n_max) {
            if !keep(n, m) {
                continue;
            }
            let l = if with_h0 { self.level(n, m)? } else { self.interaction_level(n, m)? };
            let (p, q) = l.pair();
            entries.push(SpectrumEntry::new(n, m, p, q, !l.is_real()));
        }
        Ok(SpectrumTable::new(entries, self.params()))
    }
}

/// `(E₊, E₋)` of the printed line at `(n, m)`.
pub fn model_spectrum(preset: &ModelPreset, n: usize, m: i64) -> Result<(f64, f64)> {
    Ok(preset.level(n, m)?.pair())
}
