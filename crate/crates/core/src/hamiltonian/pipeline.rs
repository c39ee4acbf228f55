//! Three successive tilts that bring the uncoupled operator to the diagonal
//! form `S_a K₀⁽ᵃ⁾ + S_b K₀⁽ᵇ⁾ + const`.
//!
//! Stage 1 (two-mode su(1,1)) removes `J±`, stage 2 (su(2)) removes `K±⁽ᵃᵇ⁾` and
//! stage 3 (one su(1,1) per mode) removes `K±⁽ᵃ⁾` and `K±⁽ᵇ⁾`. Each stage's
//! parameter is solved in closed form and the generator coefficients are carried
//! forward by exact conjugation.

use std::fmt;

use super::AlphaCoefficients;
use crate::algebra::{Coefficients, Generator};
use crate::error::{Error, Result};
use crate::linalg::{c, C64};
use crate::tilt::symplectic::{conjugate_with, identity4, mul4, transform, Mat4};
use crate::tilt::{reduce_su11_form, reduce_su2_form, theta_phi, TiltParameters};

/// Coefficients below this are treated as absent when choosing stages.
const SKIP: f64 = 1e-12;
/// Relative size of ladder terms left after the pipeline that still counts as diagonal.
const RESIDUAL: f64 = 1e-9;

/// Which reduction was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionPath {
    /// No ladder terms to begin with.
    Diagonal,
    /// Only `J±`: a single su(2) tilt.
    Su2,
    /// Only `K±⁽ᵃᵇ⁾`: a single two-mode su(1,1) tilt.
    Su11TwoMode,
    /// Only single-mode ladders: stage 3 alone.
    SingleMode,
    /// The three-stage sequence, stages skipped where their targets vanish.
    Full,
}

impl fmt::Display for ReductionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionPath::Diagonal => "diagonal",
            ReductionPath::Su2 => "su2",
            ReductionPath::Su11TwoMode => "su11-two-mode",
            ReductionPath::SingleMode => "single-mode",
            ReductionPath::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageName {
    TwoMode,
    Su2,
    ModeA,
    ModeB,
}

/// Angles from the printed closed-form parameter formulas, kept for comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrintedAngles {
    pub theta: C64,
    pub phi: C64,
}

/// One applied (or skipped) tilt.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub name: StageName,
    pub tilt: TiltParameters,
    pub skipped: bool,
    /// `θ ≥ 0`, `φ ∈ [0, 2π)` with the parameter `−(θ/2)e^{−iφ}`.
    pub theta: f64,
    pub phi: f64,
    pub printed: Option<PrintedAngles>,
    /// Coefficients after this stage.
    pub after: Coefficients,
}

/// Everything the pipeline produced.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineResult {
    pub path: ReductionPath,
    pub input: Coefficients,
    pub stages: Vec<Stage>,
    /// Mode map of the full displacement product, in application order.
    pub transform: Mat4,
    pub output: Coefficients,
    /// Coefficients of `K₀⁽ᵃ⁾` and `K₀⁽ᵇ⁾` after the pipeline.
    pub slope_a: f64,
    pub slope_b: f64,
    /// `√(β₀² − 4α₊α₋)` per mode as printed, from the stage-2 coefficients.
    pub printed_slopes: (C64, C64),
    /// Largest ladder coefficient left, relative to the input scale.
    pub residual: f64,
}

impl PipelineResult {
    /// Coefficient of `J₀` (SU(2) path) or `K₀⁽ᵃᵇ⁾` (two-mode SU(1,1) path) after
    /// the single reduction; `None` on the other paths.
    pub fn reduction_slope(&self) -> Option<f64> {
        match self.path {
            ReductionPath::Su2 => Some(self.output[Generator::J0].re),
            ReductionPath::Su11TwoMode => Some(self.output[Generator::K0AB].re),
            _ => None,
        }
    }

    fn stage(&self, name: StageName) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// The tilt of a stage, zero when skipped or not on the path.
    pub fn parameter(&self, name: StageName) -> C64 {
        self.stage(name)
            .map(|s| match name {
                StageName::TwoMode => s.tilt.xi,
                StageName::Su2 => s.tilt.chi,
                StageName::ModeA => s.tilt.xi_a,
                StageName::ModeB => s.tilt.xi_b,
            })
            .unwrap_or(c(0.0, 0.0))
    }

    /// Coefficients after stage 1 (the `β` set).
    pub fn beta(&self) -> Coefficients {
        self.after(StageName::TwoMode).unwrap_or(self.input)
    }

    /// Coefficients after stage 2 (the `α′` set).
    pub fn tilted(&self) -> Coefficients {
        self.after(StageName::Su2).unwrap_or_else(|| self.beta())
    }

    fn after(&self, name: StageName) -> Option<Coefficients> {
        self.stage(name).map(|s| s.after)
    }

    /// Largest `|ξ|` or `|χ|` over the stages.
    pub fn max_modulus(&self) -> f64 {
        self.stages.iter().map(|s| s.tilt.max_modulus()).fold(0.0, f64::max)
    }

    /// The applied tilts in operator order.
    pub fn tilts(&self) -> Vec<TiltParameters> {
        self.stages.iter().filter(|s| !s.skipped).map(|s| s.tilt).collect()
    }
}

fn scale_of(x: &Coefficients) -> f64 {
    x.max_abs().max(f64::MIN_POSITIVE)
}

/// Unit `t` with `P t* + Q t` real and positive for `P = p·g`, `Q = q·g`, `g = −x*/|x|`;
/// returns `(t, (p t* + q t)/2)`.
fn phase_solve(x: C64, p: C64, q: C64) -> (C64, C64) {
    let g = -x.conj() / x.norm();
    let (pp, qq) = (p * g, q * g);
    let d = qq - pp.conj();
    let psi = if d.norm() > 1e-14 * (pp.norm() + qq.norm()).max(f64::MIN_POSITIVE) { -d.arg() } else { pp.arg() };
    let mut t = C64::from_polar(1.0, psi);
    let mut w = 0.5 * (p * t.conj() + q * t);
    if (w * g).re < 0.0 {
        t = -t;
        w = -w;
    }
    (t, w)
}

fn printed_stage1(x: &Coefficients) -> PrintedAngles {
    use Generator::*;
    let (a1, a2, a3, a4) = (x[KmA] / 2.0, x[KpA] / 2.0, x[KmB] / 2.0, x[KpB] / 2.0);
    let (a8, a9) = (x[Jm], x[Jp]);
    let u = a3 * a8 - a1 * a9;
    let v = a4 * a9 - a2 * a8;
    let theta = ((u * v).sqrt() / (a1 * a2 - a3 * a4)).atanh();
    let phi = c(0.0, 0.5) * (v / u).ln();
    PrintedAngles { theta, phi }
}

fn printed_stage2(x: &Coefficients) -> PrintedAngles {
    use Generator::*;
    let (bma, bpa, bmb, bpb) = (x[KmA], x[KpA], x[KmB], x[KpB]);
    let (bmab, bpab) = (x[KmAB], x[KpAB]);
    let num = (bma * bpab + bpb * bmab) * (bmb * bpab + bpa * bmab);
    let theta = (2.0 * num.sqrt() / (bmb * bpb - bma * bpa)).atan();
    let phi = c(0.0, 1.0) * ((bmab * bpab + bpa * bmab) / (bma + bpab + bpb * bmab)).sqrt().ln();
    PrintedAngles { theta, phi }
}

fn printed_stage3(beta0: C64, plus: C64, minus: C64) -> PrintedAngles {
    let theta = (2.0 * (plus * minus).sqrt() / beta0).atanh();
    let alpha = theta.sinh();
    let beta = (theta.cosh() - 1.0) / 2.0;
    let phi = c(0.0, 1.0) * (beta0 * alpha / (2.0 * minus * (2.0 * beta + 1.0))).ln();
    PrintedAngles { theta, phi }
}

struct Builder {
    current: Coefficients,
    t: Mat4,
    stages: Vec<Stage>,
    scale: f64,
}

impl Builder {
    fn apply(&mut self, name: StageName, tilt: TiltParameters, z: C64, printed: Option<PrintedAngles>) {
        let skipped = z.norm() == 0.0;
        let t = transform(&tilt);
        self.current = conjugate_with(&self.current, &t);
        self.t = mul4(&self.t, &t);
        let (theta, phi) = theta_phi(z);
        self.stages.push(Stage { name, tilt, skipped, theta, phi, printed, after: self.current });
    }

    fn skip(&mut self, name: StageName, tilt: TiltParameters) {
        self.stages.push(Stage { name, tilt, skipped: true, theta: 0.0, phi: 0.0, printed: None, after: self.current });
    }

    fn small(&self, gs: &[Generator]) -> bool {
        gs.iter().all(|&g| self.current[g].norm() <= SKIP * self.scale)
    }
}

/// Runs the pipeline on the uncoupled operator of `alphas`.
pub fn tilt_pipeline(alphas: &AlphaCoefficients) -> Result<PipelineResult> {
    let condition = alphas.condition_holds();
    tilt_pipeline_coefficients(&alphas.uncoupled()).map_err(|e| match e {
        Error::PipelineIndeterminate(msg) if !condition => {
            Error::ConditionViolated(format!("α5 ≠ α6 ({} vs {}); {msg}", alphas.get(5), alphas.get(6)))
        }
        other => other,
    })
}

/// Runs the pipeline on any generator combination.
pub fn tilt_pipeline_coefficients(input: &Coefficients) -> Result<PipelineResult> {
    use Generator::*;
    if !input.gens.iter().chain(std::iter::once(&input.identity)).all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("pipeline input".into()));
    }
    let mut b = Builder { current: *input, t: identity4(), stages: Vec::new(), scale: scale_of(input) };
    let has = |g: &[Generator]| g.iter().any(|&x| input[x].norm() > SKIP * b.scale);
    let su2_only = !has(&[KpA, KmA, KpB, KmB, KpAB, KmAB]);
    let su11_only = !has(&[KpA, KmA, KpB, KmB, Jp, Jm]);
    let single_only = !has(&[KpAB, KmAB, Jp, Jm]);

    let path = if input.ladder_max() <= SKIP * b.scale {
        ReductionPath::Diagonal
    } else if su2_only {
        let r = reduce_su2_form(input[J0], input[Jp], input[Jm])?;
        b.apply(StageName::Su2, r.tilt, r.tilt.chi, r.phi_printed.map(|phi| PrintedAngles { theta: c(r.theta, 0.0), phi }));
        ReductionPath::Su2
    } else if su11_only {
        let r = reduce_su11_form(input[K0AB], input[KpAB], input[KmAB])?;
        b.apply(StageName::TwoMode, r.tilt, r.tilt.xi, r.phi_printed.map(|phi| PrintedAngles { theta: c(r.theta, 0.0), phi }));
        ReductionPath::Su11TwoMode
    } else {
        if !single_only {
            stage_two_mode(&mut b)?;
            stage_su2(&mut b)?;
        }
        stage_single(&mut b)?;
        if single_only {
            ReductionPath::SingleMode
        } else {
            ReductionPath::Full
        }
    };

    let output = b.current;
    let residual = output.ladder_max() / b.scale;
    if residual > RESIDUAL {
        return Err(Error::PipelineIndeterminate(format!(
            "ladder terms of relative size {residual:.3e} remain after the {path} path"
        )));
    }
    let tilted = b.stages.iter().rev().find(|s| s.name == StageName::Su2).map(|s| s.after).unwrap_or(b.current);
    let beta0 = tilted[K0AB];
    let printed_slopes = (
        (beta0 * beta0 - 4.0 * tilted[KpA] * tilted[KmA]).sqrt(),
        (beta0 * beta0 - 4.0 * tilted[KpB] * tilted[KmB]).sqrt(),
    );
    Ok(PipelineResult {
        path,
        input: *input,
        transform: b.t,
        slope_a: (output[K0AB] + output[J0]).re,
        slope_b: (output[K0AB] - output[J0]).re,
        printed_slopes,
        residual,
        stages: b.stages,
        output,
    })
}

fn stage_two_mode(b: &mut Builder) -> Result<()> {
    use Generator::*;
    let zero = c(0.0, 0.0);
    if b.small(&[Jp, Jm]) {
        b.skip(StageName::TwoMode, TiltParameters::two_mode(zero));
        return Ok(());
    }
    let x = b.current[Jp];
    let printed = Some(printed_stage1(&b.current));
    if x.norm() <= SKIP * b.scale {
        return Err(Error::PipelineIndeterminate("J- present without J+; stage 1 has no Hermitian solution".into()));
    }
    let (t, w) = phase_solve(x, b.current[KpA], b.current[KmB]);
    if w.norm() <= SKIP * b.scale {
        return Err(Error::PipelineIndeterminate(format!(
            "stage 1: J+ = {x} with no single-mode terms to cancel against"
        )));
    }
    let ratio = x.norm() / w.norm();
    if ratio >= 1.0 {
        return Err(Error::OutOfDomain(format!("stage 1: tanh 2|ξ| = {ratio} ≥ 1")));
    }
    let xi = 0.5 * ratio.atanh() * t;
    b.apply(StageName::TwoMode, TiltParameters::two_mode(xi), xi, printed);
    if !b.small(&[Jp, Jm]) {
        return Err(Error::PipelineIndeterminate(format!(
            "stage 1 left J+ = {}, J- = {}",
            b.current[Jp], b.current[Jm]
        )));
    }
    Ok(())
}

fn stage_su2(b: &mut Builder) -> Result<()> {
    use Generator::*;
    let zero = c(0.0, 0.0);
    if b.small(&[KpAB, KmAB]) {
        b.skip(StageName::Su2, TiltParameters::su2(zero));
        return Ok(());
    }
    let x = b.current[KpAB];
    let printed = Some(printed_stage2(&b.current));
    if x.norm() <= SKIP * b.scale {
        return Err(Error::PipelineIndeterminate("K-ab present without K+ab; stage 2 has no Hermitian solution".into()));
    }
    let (t, w) = phase_solve(x, b.current[KpA], -b.current[KpB]);
    let two_r = x.norm().atan2(w.norm());
    let chi = 0.5 * two_r * t;
    b.apply(StageName::Su2, TiltParameters::su2(chi), chi, printed);
    if !b.small(&[KpAB, KmAB]) {
        return Err(Error::PipelineIndeterminate(format!(
            "stage 2 left K+ab = {}, K-ab = {}",
            b.current[KpAB], b.current[KmAB]
        )));
    }
    Ok(())
}

/// Root of `q z² + c z + p = 0` inside the unit disc (the smaller one if both are).
fn unit_disc_root(p: C64, cc: C64, q: C64, scale: f64) -> Result<C64> {
    let roots: Vec<C64> = if q.norm() <= SKIP * scale {
        if cc.norm() <= SKIP * scale {
            return Err(Error::PipelineIndeterminate("stage 3: K0 coefficient vanishes with ladder terms present".into()));
        }
        vec![-p / cc]
    } else {
        let disc = (cc * cc - 4.0 * p * q).sqrt();
        vec![(-cc + disc) / (2.0 * q), (-cc - disc) / (2.0 * q)]
    };
    roots
        .into_iter()
        .filter(|z| z.norm() < 1.0)
        .min_by(|x, y| x.norm().total_cmp(&y.norm()))
        .ok_or_else(|| {
            Error::OutOfDomain(format!(
                "stage 3: |2√(α+α-)/β0| ≥ 1 for K0 coefficient {cc}, K+ {p}, K- {q}"
            ))
        })
}

fn stage_single(b: &mut Builder) -> Result<()> {
    use Generator::*;
    let zero = c(0.0, 0.0);
    let mut xi = [zero, zero];
    let mut printed = [None, None];
    let tilted = b.current;
    for (k, (plus, minus, sign)) in [(KpA, KmA, 1.0), (KpB, KmB, -1.0)].into_iter().enumerate() {
        if b.small(&[plus, minus]) {
            continue;
        }
        let (p, q) = (tilted[plus], tilted[minus]);
        let cc = tilted[K0AB] + sign * tilted[J0];
        let z = unit_disc_root(p, cc, q, b.scale)?;
        xi[k] = z.norm().atanh() * z / z.norm();
        printed[k] = Some(printed_stage3(tilted[K0AB], p, q));
    }
    for (k, name) in [StageName::ModeA, StageName::ModeB].into_iter().enumerate() {
        let tilt = if k == 0 { TiltParameters::mode_a(xi[k]) } else { TiltParameters::mode_b(xi[k]) };
        if xi[k].norm() == 0.0 {
            b.skip(name, tilt);
        } else {
            b.apply(name, tilt, xi[k], printed[k]);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::ModelParams;

    fn params(k: [C64; 4]) -> ModelParams {
        ModelParams { kappa: k, gamma: [k[1].conj(), k[0].conj(), k[3].conj(), k[2].conj()], ..Default::default() }
    }

    #[test]
    fn jc_is_already_diagonal() {
        let r = tilt_pipeline(&params([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).alphas()).unwrap();
        assert_eq!(r.path, ReductionPath::Diagonal);
        assert!(r.stages.is_empty());
        assert_eq!((r.slope_a, r.slope_b), (2.0, 0.0));
    }

    #[test]
    fn mjc_routes_to_su2() {
        let (l1, l2) = (1.3, 0.4);
        let r = tilt_pipeline(&params([c(l1, 0.0), c(0.0, 0.0), c(l2, 0.0), c(0.0, 0.0)]).alphas()).unwrap();
        assert_eq!(r.path, ReductionPath::Su2);
        let j0 = r.output[Generator::J0].re;
        assert!((j0 - (l1 * l1 + l2 * l2)).abs() < 1e-12);
    }

    #[test]
    fn jc_ajc_routes_to_two_mode() {
        let (l1, l2) = (2.0, 1.0);
        let mut p = ModelParams::default();
        p.kappa[0] = c(l1, 0.0);
        p.gamma[1] = c(l1, 0.0);
        p.kappa[3] = c(l2, 0.0);
        p.gamma[2] = c(l2, 0.0);
        let r = tilt_pipeline(&p.alphas()).unwrap();
        assert_eq!(r.path, ReductionPath::Su11TwoMode);
        assert!((r.output[Generator::K0AB].re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_mode_squeezing() {
        let (f, g) = (0.3, 0.7);
        let mut p = ModelParams::default();
        p.kappa = [c(f, 0.0), c(g, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        p.gamma = [c(g, 0.0), c(f, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let r = tilt_pipeline(&p.alphas()).unwrap();
        assert_eq!(r.path, ReductionPath::SingleMode);
        let want = 2.0 * (g * g - f * f);
        assert!((r.slope_a - want).abs() < 1e-12, "{}", r.slope_a);
        // The printed root uses the K0ab coefficient alone, half of the mode-a K0 coefficient here.
        assert!((r.printed_slopes.0.re - want / 2.0).abs() < 1e-12);
    }

    #[test]
    fn full_path_on_generic_form() {
        let mut x = Coefficients::zero();
        x[Generator::K0AB] = c(5.0, 0.0);
        x[Generator::Jp] = c(-0.3, 0.05);
        x[Generator::Jm] = c(-0.3, -0.05);
        x[Generator::KpA] = c(1.4, -0.1);
        x[Generator::KmA] = c(1.4, 0.1);
        x[Generator::KpB] = c(1.2, 0.3);
        x[Generator::KmB] = c(1.2, -0.3);
        x[Generator::KpAB] = c(0.5, 0.1);
        x[Generator::KmAB] = c(0.5, -0.1);
        let r = tilt_pipeline_coefficients(&x).unwrap();
        assert_eq!(r.path, ReductionPath::Full);
        assert!(r.residual < 1e-12);
        assert!(r.stages.iter().all(|s| !s.skipped));
    }

    #[test]
    fn stage_one_domain_error() {
        let mut x = Coefficients::zero();
        x[Generator::K0AB] = c(1.0, 0.0);
        x[Generator::Jp] = c(2.0, 0.0);
        x[Generator::Jm] = c(2.0, 0.0);
        x[Generator::KpA] = c(0.1, 0.0);
        x[Generator::KmA] = c(0.1, 0.0);
        assert!(matches!(tilt_pipeline_coefficients(&x), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn phase_solve_cancels() {
        let (x, p, q) = (c(0.3, -0.7), c(1.1, 0.4), c(-0.5, 0.9));
        let (t, w) = phase_solve(x, p, q);
        assert!((t.norm() - 1.0).abs() < 1e-15);
        let ang = (w / -x).arg();
        assert!(ang.abs() < 1e-12);
    }
}
