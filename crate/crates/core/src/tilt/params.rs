use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{c, C64};

/// Which displacement operator a [`TiltParameters`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TiltKind {
    /// `exp(ξK₊⁽ᵃᵇ⁾ − ξ*K₋⁽ᵃᵇ⁾)`.
    Su11TwoMode,
    /// `exp(ξₐK₊⁽ᵃ⁾ − ξₐ*K₋⁽ᵃ⁾)`.
    Su11ModeA,
    /// `exp(ξ_bK₊⁽ᵇ⁾ − ξ_b*K₋⁽ᵇ⁾)`.
    Su11ModeB,
    /// `exp(χJ₊ − χ*J₋)`.
    Su2,
    /// `D(ξₐ)D(ξ_b)`.
    ProductAb,
    /// `D(ξₐ)D(ξ_b)D(ξ)D(χ)`.
    Sp4rProduct,
}

impl TiltKind {
    pub const ALL: [TiltKind; 6] = [
        TiltKind::Su11TwoMode,
        TiltKind::Su11ModeA,
        TiltKind::Su11ModeB,
        TiltKind::Su2,
        TiltKind::ProductAb,
        TiltKind::Sp4rProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TiltKind::Su11TwoMode => "su11_two_mode",
            TiltKind::Su11ModeA => "su11_mode_a",
            TiltKind::Su11ModeB => "su11_mode_b",
            TiltKind::Su2 => "su2",
            TiltKind::ProductAb => "product_ab",
            TiltKind::Sp4rProduct => "sp4r_product",
        }
    }
}

impl fmt::Display for TiltKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TiltKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TiltKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown tilt kind '{s}'")))
    }
}

/// The single-generator factors a displacement is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    TwoMode,
    ModeA,
    ModeB,
    Su2,
}

/// Complex tilt parameters; fields not used by `kind` are ignored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TiltParameters {
    pub kind: TiltKind,
    pub xi: C64,
    pub chi: C64,
    pub xi_a: C64,
    pub xi_b: C64,
}

impl TiltParameters {
    fn base(kind: TiltKind) -> Self {
        let z = c(0.0, 0.0);
        Self { kind, xi: z, chi: z, xi_a: z, xi_b: z }
    }

    pub fn two_mode(xi: C64) -> Self {
        Self { xi, ..Self::base(TiltKind::Su11TwoMode) }
    }

    pub fn mode_a(xi_a: C64) -> Self {
        Self { xi_a, ..Self::base(TiltKind::Su11ModeA) }
    }

    pub fn mode_b(xi_b: C64) -> Self {
        Self { xi_b, ..Self::base(TiltKind::Su11ModeB) }
    }

    pub fn su2(chi: C64) -> Self {
        Self { chi, ..Self::base(TiltKind::Su2) }
    }

    pub fn product_ab(xi_a: C64, xi_b: C64) -> Self {
        Self { xi_a, xi_b, ..Self::base(TiltKind::ProductAb) }
    }

    pub fn sp4r_product(xi_a: C64, xi_b: C64, xi: C64, chi: C64) -> Self {
        Self { kind: TiltKind::Sp4rProduct, xi, chi, xi_a, xi_b }
    }

    /// A parameter set of `kind` with every used parameter equal to `z`.
    pub fn uniform(kind: TiltKind, z: C64) -> Self {
        Self { kind, xi: z, chi: z, xi_a: z, xi_b: z }
    }

    /// Factors in operator order, left to right.
    pub fn factors(&self) -> Vec<(Factor, C64)> {
        match self.kind {
            TiltKind::Su11TwoMode => vec![(Factor::TwoMode, self.xi)],
            TiltKind::Su11ModeA => vec![(Factor::ModeA, self.xi_a)],
            TiltKind::Su11ModeB => vec![(Factor::ModeB, self.xi_b)],
            TiltKind::Su2 => vec![(Factor::Su2, self.chi)],
            TiltKind::ProductAb => vec![(Factor::ModeA, self.xi_a), (Factor::ModeB, self.xi_b)],
            TiltKind::Sp4rProduct => vec![
                (Factor::ModeA, self.xi_a),
                (Factor::ModeB, self.xi_b),
                (Factor::TwoMode, self.xi),
                (Factor::Su2, self.chi),
            ],
        }
    }

    /// Largest parameter modulus among the factors.
    pub fn max_modulus(&self) -> f64 {
        self.factors().iter().map(|(_, z)| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_identity(&self) -> bool {
        self.factors().iter().all(|(_, z)| z.norm() == 0.0)
    }
}

/// `(θ, φ)` with `z = −(θ/2)e^{−iφ}`, `θ ≥ 0` and `φ ∈ [0, 2π)`.
pub fn theta_phi(z: C64) -> (f64, f64) {
    let theta = 2.0 * z.norm();
    if theta == 0.0 {
        return (0.0, 0.0);
    }
    let phi = (-(-z).arg()).rem_euclid(2.0 * PI);
    (theta, phi)
}

/// Inverse of [`theta_phi`].
pub fn from_theta_phi(theta: f64, phi: f64) -> C64 {
    -0.5 * theta * C64::from_polar(1.0, -phi)
}

/// `ξ/|ξ|`, or zero when `ξ = 0`.
pub fn unit_phase(z: C64) -> C64 {
    let r = z.norm();
    if r == 0.0 {
        c(0.0, 0.0)
    } else {
        z / r
    }
}

/// `(α, β) = (sinh 2|ξ|, (cosh 2|ξ| − 1)/2)`.
pub fn hyperbolic_scalars(xi: C64) -> (f64, f64) {
    let r = 2.0 * xi.norm();
    (r.sinh(), 0.5 * (r.cosh() - 1.0))
}

/// `(δ, ε) = (sin 2|χ|, (cos 2|χ| − 1)/2)`.
pub fn trigonometric_scalars(chi: C64) -> (f64, f64) {
    let r = 2.0 * chi.norm();
    (r.sin(), 0.5 * (r.cos() - 1.0))
}

/// Normal-form parameters `D = exp(ζK₊)exp(ηK₀)exp(−ζ*K₋)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalForm {
    pub zeta: C64,
    pub eta: f64,
}

impl NormalForm {
    /// su(1,1): `ζ = (ξ/|ξ|)tanh|ξ|`, `η = ln(1 − |ζ|²)`.
    pub fn su11(xi: C64) -> Self {
        let zeta = unit_phase(xi) * xi.norm().tanh();
        Self { zeta, eta: (1.0 - zeta.norm_sqr()).ln() }
    }

    /// su(2): `ζ = (χ/|χ|)tan|χ|`, `η = ln(1 + |ζ|²)`; requires `|χ| < π/2`.
    pub fn su2(chi: C64) -> Result<Self> {
        if chi.norm() >= PI / 2.0 {
            return Err(Error::InvalidArgument(format!("|χ| = {} has no su(2) normal form", chi.norm())));
        }
        let zeta = unit_phase(chi) * chi.norm().tan();
        Ok(Self { zeta, eta: (1.0 + zeta.norm_sqr()).ln() })
    }
}
