//! The similarity transformations exactly as printed, kept for reproduction and
//! compared against the exact conjugation in a discrepancy ledger.

use super::params::{hyperbolic_scalars, trigonometric_scalars, unit_phase, Factor, TiltKind, TiltParameters};
use super::symplectic::conjugate_coefficients;
use crate::algebra::{Coefficients, Generator};
use crate::linalg::{c, C64};
use crate::report::csv_field;

fn r(x: f64) -> C64 {
    c(x, 0.0)
}

fn combo(terms: &[(Generator, C64)], identity: C64) -> Coefficients {
    let mut s = Coefficients::zero();
    for &(g, v) in terms {
        s[g] += v;
    }
    s.identity = identity;
    s
}

/// `ξ/ξ*` with the zero limit.
fn ratio(t: C64) -> C64 {
    t * t
}

/// Generic su(1,1) tilt of `(K₊, K₋, K₀)` given as coefficient vectors.
fn su11_generic(g: usize, xi: C64, kp: &Coefficients, km: &Coefficients, k0: &Coefficients) -> Coefficients {
    let t = unit_phase(xi);
    let (alpha, beta) = hyperbolic_scalars(xi);
    let (alpha, beta) = (r(alpha), r(beta));
    match g {
        0 => k0.scale(t.conj() * alpha).add(&kp.scale(beta + 1.0)).add(&km.scale(beta * ratio(t.conj()))),
        1 => k0.scale(t * alpha).add(&km.scale(beta + 1.0)).add(&kp.scale(beta * ratio(t))),
        _ => k0.scale(2.0 * beta + 1.0).add(&kp.scale(alpha * t / 2.0)).add(&km.scale(alpha * t.conj() / 2.0)),
    }
}

/// Generic su(2) tilt of `(J₊, J₋, J₀)`.
fn su2_generic(g: usize, chi: C64, jp: &Coefficients, jm: &Coefficients, j0: &Coefficients) -> Coefficients {
    let t = unit_phase(chi);
    let (delta, eps) = trigonometric_scalars(chi);
    let (delta, eps) = (r(delta), r(eps));
    match g {
        0 => j0.scale(-t.conj() * delta).add(&jp.scale(eps + 1.0)).add(&jm.scale(eps * ratio(t.conj()))),
        1 => j0.scale(-t * delta).add(&jm.scale(eps + 1.0)).add(&jp.scale(eps * ratio(t))),
        _ => j0.scale(2.0 * eps + 1.0).add(&jp.scale(delta * t / 2.0)).add(&jm.scale(delta * t.conj() / 2.0)),
    }
}

fn u(g: Generator) -> Coefficients {
    Coefficients::unit(g)
}

fn k0a() -> Coefficients {
    Coefficients::from_terms(&[(Generator::K0AB, 0.5), (Generator::J0, 0.5)])
}

fn k0b() -> Coefficients {
    Coefficients::from_terms(&[(Generator::K0AB, 0.5), (Generator::J0, -0.5)])
}

/// The printed two-mode transforms; `K±⁽ᵃᵇ⁾, K₀⁽ᵃᵇ⁾` follow the generic su(1,1) forms.
fn two_mode(g: Generator, xi: C64) -> Coefficients {
    use Generator::*;
    let t = unit_phase(xi);
    let x = 2.0 * xi.norm();
    let (ch2, sh2) = (x.cosh(), x.sinh());
    let p = r(0.5 * (ch2 + 1.0));
    let m = r(0.5 * (ch2 - 1.0));
    let z = r(0.0);
    match g {
        KmA => combo(&[(KmA, p), (KpB, ratio(t) * m), (Jm, -t * sh2 / 2.0)], z),
        KpA => combo(&[(KpA, p), (KmB, ratio(t.conj()) * m), (Jp, -t.conj() * sh2 / 2.0)], z),
        KmB => combo(&[(KmB, p), (KpA, ratio(t) * m), (Jp, -t * sh2 / 2.0)], z),
        KpB => combo(&[(KpB, p), (KmA, ratio(t.conj()) * m), (Jm, -t.conj() * sh2 / 2.0)], z),
        Jp => combo(&[(Jp, r(ch2)), (KpA, -t * sh2), (KmB, -t.conj() * sh2)], z),
        Jm => combo(&[(Jm, r(ch2)), (KmA, -t.conj() * sh2), (KpB, -t * sh2)], z),
        J0 => u(J0),
        KpAB => su11_generic(0, xi, &u(KpAB), &u(KmAB), &u(K0AB)),
        KmAB => su11_generic(1, xi, &u(KpAB), &u(KmAB), &u(K0AB)),
        K0AB => su11_generic(2, xi, &u(KpAB), &u(KmAB), &u(K0AB)),
    }
}

/// The printed SU(2) transforms; `J±, J₀` follow the generic su(2) forms.
fn su2(g: Generator, chi: C64) -> Coefficients {
    use Generator::*;
    let t = unit_phase(chi);
    let x = 2.0 * chi.norm();
    let (cs, sn) = (x.cos(), x.sin());
    let p = r(0.5 * (cs + 1.0));
    let m = r(0.5 * (cs - 1.0));
    let z = r(0.0);
    match g {
        KmA => combo(&[(KmA, p), (KmB, -ratio(t) * m), (KmAB, -t * sn / 2.0)], z),
        KpA => combo(&[(KpA, p), (KpB, -ratio(t.conj()) * m), (KpAB, -t.conj() * sn / 2.0)], z),
        KmB => combo(&[(KmB, p), (KmA, -ratio(t.conj()) * m), (KmAB, t.conj() * sn / 2.0)], z),
        KpB => combo(&[(KpB, p), (KpA, -ratio(t) * m), (KpAB, t * sn / 2.0)], z),
        KpAB => combo(&[(KpA, t * sn), (KpB, -t.conj() * sn), (KpAB, r(cs))], z),
        KmAB => combo(&[(KmA, t.conj() * sn), (KmB, -t * sn), (KmAB, r(cs))], z),
        K0AB => u(K0AB),
        Jp => su2_generic(0, chi, &u(Jp), &u(Jm), &u(J0)),
        Jm => su2_generic(1, chi, &u(Jp), &u(Jm), &u(J0)),
        J0 => su2_generic(2, chi, &u(Jp), &u(Jm), &u(J0)),
    }
}

/// The printed `D_{a,b}` transforms; single-mode ladders follow the generic su(1,1) forms.
fn product_ab(g: Generator, xa: C64, xb: C64) -> Coefficients {
    use Generator::*;
    let (ta, tb) = (unit_phase(xa), unit_phase(xb));
    let (ra, rb) = (xa.norm(), xb.norm());
    let (cha, sha, chb, shb) = (ra.cosh(), ra.sinh(), rb.cosh(), rb.sinh());
    let (c2a, s2a, c2b, s2b) = ((2.0 * ra).cosh(), (2.0 * ra).sinh(), (2.0 * rb).cosh(), (2.0 * rb).sinh());
    let z = r(0.0);
    match g {
        J0 => combo(
            &[
                (J0, r(c2a + c2b)),
                (K0AB, r(c2a - c2b)),
                (KpA, -s2a * ta),
                (KmA, -s2a * ta.conj()),
                (KpB, s2b * tb),
                (KmB, s2b * tb.conj()),
            ],
            z,
        ),
        K0AB => combo(
            &[
                (J0, r(c2a - c2b)),
                (K0AB, r(c2a + c2b)),
                (KpA, -s2a * ta),
                (KmA, -s2a * ta.conj()),
                (KpB, -s2b * tb),
                (KmB, -s2b * tb.conj()),
            ],
            r(-1.0),
        ),
        Jp => combo(
            &[
                (Jp, r(cha * chb)),
                (KmAB, -ta.conj() * chb * sha),
                (KpAB, -tb * cha * shb),
                (Jm, ta.conj() * tb * sha * shb),
            ],
            z,
        ),
        Jm => combo(
            &[
                (Jm, r(cha * chb)),
                (KpAB, -ta * chb * sha),
                (KmAB, -tb.conj() * cha * shb),
                (Jp, ta * tb.conj() * sha * shb),
            ],
            z,
        ),
        KmAB => combo(
            &[(KmAB, r(cha * chb)), (Jp, -ta * chb * sha), (Jm, -tb * cha * shb), (KpAB, ta * tb * sha * shb)],
            z,
        ),
        KpAB => combo(
            &[
                (KpAB, r(cha * chb)),
                (Jm, -ta.conj() * chb * sha),
                (Jp, -tb.conj() * cha * shb),
                (KmAB, ta.conj() * tb.conj() * sha * shb),
            ],
            z,
        ),
        KpA => su11_generic(0, xa, &u(KpA), &u(KmA), &k0a()),
        KmA => su11_generic(1, xa, &u(KpA), &u(KmA), &k0a()),
        KpB => su11_generic(0, xb, &u(KpB), &u(KmB), &k0b()),
        KmB => su11_generic(1, xb, &u(KpB), &u(KmB), &k0b()),
    }
}

fn factor_literal(g: Generator, factor: Factor, z: C64) -> Coefficients {
    match factor {
        Factor::TwoMode => two_mode(g, z),
        Factor::Su2 => su2(g, z),
        Factor::ModeA => product_ab(g, z, c(0.0, 0.0)),
        Factor::ModeB => product_ab(g, c(0.0, 0.0), z),
    }
}

fn apply_linear(x: &Coefficients, map: impl Fn(Generator) -> Coefficients) -> Coefficients {
    let mut out = Coefficients::zero();
    out.identity = x.identity;
    for g in Generator::ALL {
        if x[g].norm() != 0.0 {
            out = out.add(&map(g).scale(x[g]));
        }
    }
    out
}

/// `D†XD` from the printed formulas.
///
/// Single-mode kinds and `product_ab` use the printed `D_{a,b}` set (with the other
/// parameter zero); `sp4r_product` composes the printed single-factor maps.
pub fn literal_conjugate(g: Generator, params: &TiltParameters) -> Coefficients {
    literal_conjugate_coefficients(&Coefficients::unit(g), params)
}

pub fn literal_conjugate_coefficients(x: &Coefficients, params: &TiltParameters) -> Coefficients {
    if params.kind == TiltKind::ProductAb {
        return apply_linear(x, |g| product_ab(g, params.xi_a, params.xi_b));
    }
    params.factors().iter().fold(*x, |acc, &(f, z)| apply_linear(&acc, |g| factor_literal(g, f, z)))
}

/// Where a printed formula comes from.
pub fn literal_source(g: Generator, kind: TiltKind) -> &'static str {
    use Generator::*;
    match (kind, g) {
        (TiltKind::Su11TwoMode, KpAB | KmAB | K0AB) => "generic su(1,1) tilt with the two-mode realization",
        (TiltKind::Su11TwoMode, _) => "two-mode displacement set",
        (TiltKind::Su2, Jp | Jm | J0) => "generic su(2) tilt",
        (TiltKind::Su2, _) => "su(2) displacement set",
        (TiltKind::Su11ModeA | TiltKind::Su11ModeB | TiltKind::ProductAb, KpA | KmA | KpB | KmB) => {
            "generic su(1,1) tilt with the single-mode realization"
        }
        (TiltKind::Su11ModeA | TiltKind::Su11ModeB | TiltKind::ProductAb, _) => "D_{a,b} displacement set",
        (TiltKind::Sp4rProduct, _) => "composition of the printed single-factor sets",
    }
}

/// Printed versus exact coefficients for one (kind, generator) pair.
#[derive(Clone, Debug)]
pub struct LedgerEntry {
    pub kind: TiltKind,
    pub generator: Generator,
    pub params: TiltParameters,
    pub exact: Coefficients,
    pub printed: Coefficients,
    /// Largest coefficient difference relative to `max(1, max|exact|)`.
    pub deviation: f64,
    pub source: &'static str,
}

impl LedgerEntry {
    pub fn needs_correction(&self) -> bool {
        self.deviation > 1e-8
    }

    /// Short classification of the difference.
    pub fn diagnosis(&self) -> String {
        if !self.needs_correction() {
            return "matches".into();
        }
        let mut flipped = self.params;
        flipped.xi = -flipped.xi;
        flipped.chi = -flipped.chi;
        flipped.xi_a = -flipped.xi_a;
        flipped.xi_b = -flipped.xi_b;
        let mirrored = conjugate_coefficients(&Coefficients::unit(self.generator), &flipped);
        if mirrored.sub(&self.printed).max_abs() <= 1e-8 * self.exact.max_abs().max(1.0) {
            return "printed form equals the exact map with the tilt parameter negated".into();
        }
        let mut notes = Vec::new();
        if (self.printed.identity - self.exact.identity).norm() > 1e-8 {
            notes.push(format!("identity term {} instead of {}", self.printed.identity, self.exact.identity));
        }
        for g in Generator::ALL {
            let (p, e) = (self.printed[g], self.exact[g]);
            if (p - e).norm() > 1e-8 * self.exact.max_abs().max(1.0) {
                let q = if e.norm() > 1e-12 { p / e } else { c(f64::NAN, 0.0) };
                if q.norm().is_finite() && (q.im.abs() < 1e-8) && (q.re.abs() - 2.0).abs() < 1e-8 {
                    notes.push(format!("{g} coefficient off by factor {:.0}", q.re));
                } else if q.norm().is_finite() && (q + 1.0).norm() < 1e-8 {
                    notes.push(format!("{g} coefficient has the wrong sign"));
                } else {
                    notes.push(format!("{g}: printed {p:.6}, exact {e:.6}"));
                }
            }
        }
        notes.join("; ")
    }
}

/// Printed-versus-exact comparison over every (kind, generator) pair at `params_for(kind)`.
#[derive(Clone, Debug, Default)]
pub struct DiscrepancyLedger {
    pub entries: Vec<LedgerEntry>,
}

impl DiscrepancyLedger {
    pub fn build(params_for: impl Fn(TiltKind) -> TiltParameters) -> Self {
        let mut entries = Vec::new();
        for kind in TiltKind::ALL {
            let params = params_for(kind);
            for g in Generator::ALL {
                let exact = conjugate_coefficients(&Coefficients::unit(g), &params);
                let printed = literal_conjugate(g, &params);
                let deviation = exact.sub(&printed).max_abs() / exact.max_abs().max(1.0);
                entries.push(LedgerEntry { kind, generator: g, params, exact, printed, deviation, source: literal_source(g, kind) });
            }
        }
        Self { entries }
    }

    /// Ledger at a generic complex parameter shared by every factor.
    pub fn standard() -> Self {
        Self::build(|k| {
            let mut p = TiltParameters::uniform(k, c(0.3, 0.2));
            p.xi_b = c(-0.1, 0.25);
            p.chi = c(0.2, -0.15);
            p
        })
    }

    pub fn corrections(&self) -> Vec<&LedgerEntry> {
        self.entries.iter().filter(|e| e.needs_correction()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("# printed tilting formulas versus exact conjugation\n");
        for e in &self.entries {
            s.push_str(&format!(
                "{} {} D†{}D [{}] deviation={:.3e}: {}\n",
                if e.needs_correction() { "CORRECTED" } else { "OK" },
                e.kind,
                e.generator,
                e.source,
                e.deviation,
                e.diagnosis()
            ));
        }
        s.push_str(&format!("{} of {} printed formulas required correction\n", self.corrections().len(), self.entries.len()));
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("kind,generator,source,deviation,corrected,diagnosis,exact,printed\n");
        for e in &self.entries {
            s.push_str(&format!(
                "{},{},{},{:.16e},{},{},{},{}\n",
                e.kind,
                e.generator,
                csv_field(e.source),
                e.deviation,
                e.needs_correction(),
                csv_field(&e.diagnosis()),
                csv_field(&e.exact.snapped().to_string()),
                csv_field(&e.printed.snapped().to_string())
            ));
        }
        s
    }
}
