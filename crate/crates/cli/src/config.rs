//! `key = value` run configuration.
//!
//! ```text
//! # Jaynes-Cummings on resonance
//! model = jc
//! kappa = 1
//! cutoff_a = 60
//! tol.spectrum = 1e-8
//! ```
//!
//! Complex values are written `re,im`. Model parameters use the preset's keys,
//! or `omega0 omega1 omega2 hbar kappa1..kappa4 gamma1..gamma4` for `custom`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sp4r::linalg::c;
use sp4r::models::{preset, ModelName, ModelPreset};
use sp4r::{ModelParams, C64};

use crate::CliError;

pub const CUSTOM_KEYS: [&str; 12] =
    ["hbar", "omega0", "omega1", "omega2", "kappa1", "kappa2", "kappa3", "kappa4", "gamma1", "gamma2", "gamma3", "gamma4"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelChoice {
    Preset(ModelName),
    Custom,
}

impl ModelChoice {
    fn as_str(&self) -> &'static str {
        match self {
            ModelChoice::Preset(m) => m.as_str(),
            ModelChoice::Custom => "custom",
        }
    }

    fn allows(&self, key: &str) -> bool {
        match self {
            ModelChoice::Preset(m) => m.keys().iter().any(|(k, _)| *k == key),
            ModelChoice::Custom => CUSTOM_KEYS.contains(&key),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelChoice,
    /// Model parameters exactly as given; missing keys take the preset defaults.
    pub values: BTreeMap<String, C64>,
    pub cutoff_a: usize,
    pub cutoff_b: usize,
    pub margin: usize,
    pub n_max: usize,
    /// `tol.<name>` overrides.
    pub tolerances: BTreeMap<String, f64>,
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelChoice::Custom,
            values: BTreeMap::new(),
            cutoff_a: 40,
            cutoff_b: 40,
            margin: 4,
            n_max: 10,
            tolerances: BTreeMap::new(),
            output: None,
        }
    }
}

fn parse_real(key: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = v.trim().parse().map_err(|_| CliError::Config(format!("{key}: '{v}' is not a number")))?;
    if !x.is_finite() {
        return Err(CliError::Config(format!("{key}: value is not finite")));
    }
    Ok(x)
}

pub fn parse_complex(key: &str, v: &str) -> Result<C64, CliError> {
    match v.split_once(',') {
        Some((re, im)) => Ok(c(parse_real(key, re)?, parse_real(key, im)?)),
        None => Ok(c(parse_real(key, v)?, 0.0)),
    }
}

fn parse_count(key: &str, v: &str) -> Result<usize, CliError> {
    v.trim().parse().map_err(|_| CliError::Config(format!("{key}: '{v}' is not a non-negative integer")))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut raw: Vec<(usize, String, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected 'key = value'", i + 1)))?;
            let k = k.trim().to_string();
            if raw.iter().any(|(_, seen, _)| *seen == k) {
                return Err(CliError::Config(format!("line {}: duplicate key '{k}'", i + 1)));
            }
            raw.push((i + 1, k, v.trim().to_string()));
        }

        let mut cfg = RunConfig::default();
        cfg.model = match raw.iter().find(|(_, k, _)| k == "model") {
            Some((_, _, v)) if v == "custom" => ModelChoice::Custom,
            Some((line, _, v)) => ModelChoice::Preset(v.parse().map_err(|_| CliError::Config(format!("line {line}: unknown model '{v}'")))?),
            None => return Err(CliError::Config("missing 'model'".into())),
        };
        for (line, k, v) in &raw {
            match k.as_str() {
                "model" => {}
                "cutoff" => {
                    let n = parse_count(k, v)?;
                    cfg.cutoff_a = n;
                    cfg.cutoff_b = n;
                }
                "cutoff_a" => cfg.cutoff_a = parse_count(k, v)?,
                "cutoff_b" => cfg.cutoff_b = parse_count(k, v)?,
                "margin" => cfg.margin = parse_count(k, v)?,
                "n_max" => cfg.n_max = parse_count(k, v)?,
                "output" => cfg.output = Some(v.clone()),
                _ if k.starts_with("tol.") && k.len() > 4 => {
                    let t = parse_real(k, v)?;
                    if t <= 0.0 {
                        return Err(CliError::Config(format!("line {line}: {k} must be positive")));
                    }
                    cfg.tolerances.insert(k[4..].to_string(), t);
                }
                _ if cfg.model.allows(k) => {
                    cfg.values.insert(k.clone(), parse_complex(k, v)?);
                }
                _ => return Err(CliError::Config(format!("line {line}: unknown key '{k}' for model {}", cfg.model.as_str()))),
            }
        }
        if cfg.cutoff_a == 0 || cfg.cutoff_b == 0 {
            return Err(CliError::Config("cutoffs must be positive".into()));
        }
        cfg.model_params()?;
        Ok(cfg)
    }

    /// Canonical text that parses back to an identical config.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "model = {}", self.model.as_str());
        for (k, v) in &self.values {
            if v.im == 0.0 {
                let _ = writeln!(s, "{k} = {}", v.re);
            } else {
                let _ = writeln!(s, "{k} = {},{}", v.re, v.im);
            }
        }
        let _ = writeln!(s, "cutoff_a = {}", self.cutoff_a);
        let _ = writeln!(s, "cutoff_b = {}", self.cutoff_b);
        let _ = writeln!(s, "margin = {}", self.margin);
        let _ = writeln!(s, "n_max = {}", self.n_max);
        for (k, t) in &self.tolerances {
            let _ = writeln!(s, "tol.{k} = {t}");
        }
        if let Some(o) = &self.output {
            let _ = writeln!(s, "output = {o}");
        }
        s
    }

    pub fn preset(&self) -> Result<Option<ModelPreset>, CliError> {
        match self.model {
            ModelChoice::Preset(m) => Ok(Some(preset(m.as_str(), &self.values)?)),
            ModelChoice::Custom => Ok(None),
        }
    }

    pub fn model_params(&self) -> Result<ModelParams, CliError> {
        if let Some(p) = self.preset()? {
            return Ok(p.params());
        }
        let get = |k: &str, default: f64| self.values.get(k).copied().unwrap_or(c(default, 0.0));
        let real = |k: &str, default: f64| -> Result<f64, CliError> {
            let v = get(k, default);
            if v.im != 0.0 {
                return Err(CliError::Config(format!("{k} must be real")));
            }
            Ok(v.re)
        };
        let lane = |prefix: &str| [1, 2, 3, 4].map(|i| get(&format!("{prefix}{i}"), 0.0));
        let params = ModelParams {
            omega0: real("omega0", 0.0)?,
            omega1: real("omega1", 0.0)?,
            omega2: real("omega2", 0.0)?,
            kappa: lane("kappa"),
            gamma: lane("gamma"),
            hbar: real("hbar", 1.0)?,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}
