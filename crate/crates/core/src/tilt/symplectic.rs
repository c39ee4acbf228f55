//! Exact conjugation of quadratic boson forms through their symmetric
//! coefficient matrices.
//!
//! With `v = (a, b, a†, b†)` every generator is `½ vᵀ M v` for a symmetric 4×4 `M`
//! (symmetric ordering, so no constant is generated). A displacement acts
//! linearly, `D†vD = T v`, hence `D†(½vᵀMv)D = ½ vᵀ (TᵀMT) v`.

use super::params::{unit_phase, Factor, TiltParameters};
use crate::algebra::{Coefficients, Generator};
use crate::linalg::{c, C64};

pub type Mat4 = [[C64; 4]; 4];

const A: usize = 0;
const B: usize = 1;
const AD: usize = 2;
const BD: usize = 3;

fn zero4() -> Mat4 {
    [[c(0.0, 0.0); 4]; 4]
}

pub fn identity4() -> Mat4 {
    let mut m = zero4();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn mul4(x: &Mat4, y: &Mat4) -> Mat4 {
    let mut m = zero4();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    m
}

fn transpose4(x: &Mat4) -> Mat4 {
    let mut m = zero4();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = x[j][i];
        }
    }
    m
}

fn set_sym(m: &mut Mat4, i: usize, j: usize, v: C64) {
    m[i][j] += v;
    if i != j {
        m[j][i] += v;
    }
}

/// Symmetric coefficient matrix of a generator combination (identity part dropped).
pub fn weyl_matrix(x: &Coefficients) -> Mat4 {
    use Generator::*;
    let mut m = zero4();
    set_sym(&mut m, A, A, x[KmA]);
    set_sym(&mut m, B, B, x[KmB]);
    set_sym(&mut m, AD, AD, x[KpA]);
    set_sym(&mut m, BD, BD, x[KpB]);
    set_sym(&mut m, A, B, x[KmAB]);
    set_sym(&mut m, AD, BD, x[KpAB]);
    set_sym(&mut m, B, AD, x[Jp]);
    set_sym(&mut m, A, BD, x[Jm]);
    set_sym(&mut m, A, AD, 0.5 * (x[K0AB] + x[J0]));
    set_sym(&mut m, B, BD, 0.5 * (x[K0AB] - x[J0]));
    m
}

/// Inverse of [`weyl_matrix`] for symmetric input.
pub fn from_weyl_matrix(m: &Mat4, identity: C64) -> Coefficients {
    use Generator::*;
    let mut x = Coefficients::zero();
    x[KmA] = m[A][A];
    x[KmB] = m[B][B];
    x[KpA] = m[AD][AD];
    x[KpB] = m[BD][BD];
    x[KmAB] = 0.5 * (m[A][B] + m[B][A]);
    x[KpAB] = 0.5 * (m[AD][BD] + m[BD][AD]);
    x[Jp] = 0.5 * (m[B][AD] + m[AD][B]);
    x[Jm] = 0.5 * (m[A][BD] + m[BD][A]);
    let pa = 0.5 * (m[A][AD] + m[AD][A]);
    let pb = 0.5 * (m[B][BD] + m[BD][B]);
    x[K0AB] = pa + pb;
    x[J0] = pa - pb;
    x.identity = identity;
    x
}

/// Mode map `D†vD = T v` of one displacement factor.
pub fn factor_transform(factor: Factor, z: C64) -> Mat4 {
    let r = z.norm();
    let t = unit_phase(z);
    let mut m = zero4();
    match factor {
        Factor::TwoMode => {
            let (ch, sh) = (c(r.cosh(), 0.0), c(r.sinh(), 0.0));
            m[A][A] = ch;
            m[A][BD] = t * sh;
            m[B][B] = ch;
            m[B][AD] = t * sh;
            m[AD][AD] = ch;
            m[AD][B] = t.conj() * sh;
            m[BD][BD] = ch;
            m[BD][A] = t.conj() * sh;
        }
        Factor::ModeA | Factor::ModeB => {
            let (ch, sh) = (c(r.cosh(), 0.0), c(r.sinh(), 0.0));
            let (x, xd, y, yd) = if factor == Factor::ModeA { (A, AD, B, BD) } else { (B, BD, A, AD) };
            m[x][x] = ch;
            m[x][xd] = t * sh;
            m[xd][xd] = ch;
            m[xd][x] = t.conj() * sh;
            m[y][y] = c(1.0, 0.0);
            m[yd][yd] = c(1.0, 0.0);
        }
        Factor::Su2 => {
            let (cs, sn) = (c(r.cos(), 0.0), c(r.sin(), 0.0));
            m[A][A] = cs;
            m[A][B] = t * sn;
            m[B][B] = cs;
            m[B][A] = -t.conj() * sn;
            m[AD][AD] = cs;
            m[AD][BD] = t.conj() * sn;
            m[BD][BD] = cs;
            m[BD][AD] = -t * sn;
        }
    }
    m
}

/// Mode map of the full displacement: the product of the factor maps in operator order.
pub fn transform(params: &TiltParameters) -> Mat4 {
    params.factors().iter().fold(identity4(), |acc, &(f, z)| mul4(&acc, &factor_transform(f, z)))
}

/// `D†XD` for a generator combination `X`, exact.
pub fn conjugate_coefficients(x: &Coefficients, params: &TiltParameters) -> Coefficients {
    conjugate_with(x, &transform(params))
}

pub fn conjugate_with(x: &Coefficients, t: &Mat4) -> Coefficients {
    let m = weyl_matrix(x);
    from_weyl_matrix(&mul4(&mul4(&transpose4(t), &m), t), x.identity)
}

/// The commutator form `[a, a†] = [b, b†] = 1` as `T Ω Tᵀ = Ω`; zero for a canonical map.
pub fn symplectic_defect(t: &Mat4) -> f64 {
    let mut omega = zero4();
    omega[A][AD] = c(1.0, 0.0);
    omega[AD][A] = c(-1.0, 0.0);
    omega[B][BD] = c(1.0, 0.0);
    omega[BD][B] = c(-1.0, 0.0);
    let lhs = mul4(&mul4(t, &omega), &transpose4(t));
    let mut d: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            d = d.max((lhs[i][j] - omega[i][j]).norm());
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilt::params::TiltKind;

    #[test]
    fn weyl_round_trip() {
        let mut x = Coefficients::zero();
        for (i, g) in Generator::ALL.iter().enumerate() {
            x[*g] = c(i as f64 + 1.0, -(i as f64) / 3.0);
        }
        x.identity = c(0.25, 0.0);
        assert_eq!(from_weyl_matrix(&weyl_matrix(&x), x.identity), x);
    }

    #[test]
    fn maps_are_canonical() {
        for kind in TiltKind::ALL {
            let p = TiltParameters::uniform(kind, c(0.3, -0.2));
            assert!(symplectic_defect(&transform(&p)) < 1e-14, "{kind}");
        }
    }

    #[test]
    fn two_mode_keeps_j0() {
        let out = conjugate_coefficients(&Coefficients::unit(Generator::J0), &TiltParameters::two_mode(c(0.4, 0.1)));
        assert!(out.sub(&Coefficients::unit(Generator::J0)).max_abs() < 1e-15);
    }
}
