//! Removing the ladder terms of `a₀K₀ + a₁K₊ + a₂K₋` (and the su(2) analogue) by a
//! single tilt.

use super::params::{theta_phi, TiltParameters};
use crate::error::{Error, Result};
use crate::linalg::{c, C64};

/// Outcome of a single-algebra reduction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reduction {
    pub theta: f64,
    /// Phase of the tilt parameter, `ξ = −(θ/2)e^{−iφ}`.
    pub phi: f64,
    /// The printed `φ = i ln[a₀α / (2a₂(2β+1))]` (or its su(2) analogue); complex in general.
    pub phi_printed: Option<C64>,
    /// Coefficient of `K₀` (or `J₀`) after the tilt.
    pub slope: f64,
    /// The tilt parameter, stored in `xi` (su(1,1)) or `chi` (su(2)).
    pub tilt: TiltParameters,
}

fn validate(a0: C64, a1: C64, a2: C64) -> Result<f64> {
    for z in [a0, a1, a2] {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite("reduction coefficients".into()));
        }
    }
    let scale = a0.norm().max(a1.norm()).max(a2.norm()).max(1e-300);
    if a0.im.abs() > 1e-12 * scale {
        return Err(Error::InvalidArgument(format!("a0 = {a0} is not real")));
    }
    if (a2 - a1.conj()).norm() > 1e-12 * scale {
        return Err(Error::InvalidArgument("reduction needs a2 = a1* (Hermitian form)".into()));
    }
    Ok(a0.re)
}

fn phase_of(a1: C64) -> C64 {
    a1 / a1.norm()
}

/// Tilt for `a₀K₀ + a₁K₊ + a₂K₋`: `θ = tanh⁻¹(2√(a₁a₂)/a₀)`, slope `√(a₀² − 4a₁a₂)`
/// carrying the sign of `a₀`.
pub fn reduce_su11_form(a0: C64, a1: C64, a2: C64) -> Result<Reduction> {
    let zero = c(0.0, 0.0);
    if a1.norm() == 0.0 && a2.norm() == 0.0 {
        let a0 = validate(a0, zero, zero)?;
        return Ok(Reduction { theta: 0.0, phi: 0.0, phi_printed: None, slope: a0, tilt: TiltParameters::two_mode(zero) });
    }
    let a0r = validate(a0, a1, a2)?;
    let g = 2.0 * a1.norm();
    if a0r.abs() == g {
        return Err(Error::DegenerateReduction(format!("a0² = 4a1a2 = {}", a0r * a0r)));
    }
    let ratio = g / a0r;
    if ratio.abs() >= 1.0 {
        return Err(Error::OutOfDomain(format!("|2√(a1a2)/a0| = {} ≥ 1", ratio.abs())));
    }
    let theta_signed = ratio.atanh();
    let slope = a0r.signum() * (a0r * a0r - g * g).sqrt();
    let mut xi = -0.5 * theta_signed * phase_of(a1);
    if xi.norm() == 0.0 {
        xi = zero;
    }
    let (theta, phi) = theta_phi(xi);
    let alpha = c(theta.sinh(), 0.0);
    let two_beta_1 = theta.cosh();
    let phi_printed = Some(c(0.0, 1.0) * (a0 * alpha / (2.0 * a2 * two_beta_1)).ln());
    Ok(Reduction { theta, phi, phi_printed, slope, tilt: TiltParameters::two_mode(xi) })
}

/// Tilt for `a₀J₀ + a₁J₊ + a₂J₋`: `θ = arctan(2√(a₁a₂)/a₀)`, slope `√(a₀² + 4a₁a₂)`
/// carrying the sign of `a₀` (positive when `a₀ = 0`).
pub fn reduce_su2_form(a0: C64, a1: C64, a2: C64) -> Result<Reduction> {
    let zero = c(0.0, 0.0);
    if a1.norm() == 0.0 && a2.norm() == 0.0 {
        let a0 = validate(a0, zero, zero)?;
        if a0 == 0.0 {
            return Err(Error::DegenerateReduction("a0 = 0 with a1a2 = 0".into()));
        }
        return Ok(Reduction { theta: 0.0, phi: 0.0, phi_printed: None, slope: a0, tilt: TiltParameters::su2(zero) });
    }
    let a0r = validate(a0, a1, a2)?;
    let g = 2.0 * a1.norm();
    // atan2 keeps the slope positive when a0 < 0.
    let (theta_signed, slope) = (g.atan2(a0r), (a0r * a0r + g * g).sqrt());
    let chi = -0.5 * theta_signed * phase_of(a1);
    let (theta, phi) = theta_phi(chi);
    let delta = c(theta.sin(), 0.0);
    let two_eps_1 = theta.cos();
    let phi_printed = Some(c(0.0, 1.0) * (a0 * delta / (2.0 * a2 * two_eps_1)).ln());
    Ok(Reduction { theta, phi, phi_printed, slope, tilt: TiltParameters::su2(chi) })
}
