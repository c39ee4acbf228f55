//! Perelomov coherent and number-coherent states from the normal-form series,
//! with a matrix-exponential oracle on explicit boson realizations.

use super::params::NormalForm;
use crate::algebra::{build_generators, Generator};
use crate::error::{Error, Result};
use crate::fock::FockBasis;
use crate::linalg::{c, expm_multiply, ComplexMatrix, SparseMatrix, C64};

/// Group for [`perelomov_state`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoherentKind {
    Su11,
    Su2,
}

/// `ln Γ(x + n) − ln Γ(x)` for integer `n ≥ 0`.
fn ln_pochhammer(x: f64, n: usize) -> f64 {
    (0..n).map(|i| (x + i as f64).ln()).sum()
}

fn ln_factorial(n: usize) -> f64 {
    ln_pochhammer(1.0, n)
}

/// `ζ^p` with `0⁰ = 1`.
fn zpow(z: C64, p: usize) -> C64 {
    if p == 0 {
        c(1.0, 0.0)
    } else {
        z.powu(p as u32)
    }
}

fn half_integer(x: f64, what: &str) -> Result<usize> {
    let twice = 2.0 * x;
    if !(twice >= 0.0 && (twice - twice.round()).abs() < 1e-12) {
        return Err(Error::InvalidArgument(format!("{what} = {x} is not a non-negative half-integer")));
    }
    Ok(twice.round() as usize)
}

/// Expansion coefficients of `D(ξ)|k, n⟩` over `|k, s⟩`, `s < length` (su(1,1)),
/// or of `D(χ)|j, −j + n⟩` over `|j, μ⟩`, `μ = −j…j` (su(2), `length` ignored).
pub fn perelomov_state(kind: CoherentKind, k_or_j: f64, offset: usize, xi: C64, length: usize) -> Result<Vec<C64>> {
    if !xi.re.is_finite() || !xi.im.is_finite() {
        return Err(Error::NonFinite("coherent-state parameter".into()));
    }
    match kind {
        CoherentKind::Su11 => su11_state(k_or_j, offset, xi, length),
        CoherentKind::Su2 => su2_state(k_or_j, offset, xi),
    }
}

fn su11_state(k: f64, n: usize, xi: C64, length: usize) -> Result<Vec<C64>> {
    if !(k >= 0.25 - 1e-15) {
        return Err(Error::InvalidArgument(format!("Bargmann index {k} below 1/4")));
    }
    let nf = NormalForm::su11(xi);
    let (zeta, eta) = (nf.zeta, nf.eta);
    let two_k = 2.0 * k;
    let mut out = vec![c(0.0, 0.0); length];
    if n == 0 {
        for (s, o) in out.iter_mut().enumerate() {
            let mag = (k * eta + 0.5 * (ln_pochhammer(two_k, s) - ln_factorial(s))).exp();
            *o = zpow(zeta, s) * mag;
        }
        return Ok(out);
    }
    for j in 0..=n {
        let base = n - j;
        let lower = zpow(-zeta.conj(), j);
        for s in 0..length.saturating_sub(base) {
            let ln_mag = eta * (k + base as f64) - ln_factorial(s) - ln_factorial(j)
                + 0.5 * (ln_pochhammer(two_k + base as f64, j) + ln_pochhammer(two_k + base as f64, s))
                + 0.5 * (ln_factorial(n) + ln_factorial(base + s))
                - ln_factorial(base);
            out[base + s] += zpow(zeta, s) * lower * ln_mag.exp();
        }
    }
    Ok(out)
}

fn su2_state(j: f64, offset: usize, chi: C64) -> Result<Vec<C64>> {
    let two_j = half_integer(j, "j")?;
    if offset > two_j {
        return Err(Error::InvalidArgument(format!("offset {offset} outside [0, {two_j}]")));
    }
    let nf = NormalForm::su2(chi)?;
    let (zeta, eta) = (nf.zeta, nf.eta);
    let mut out = vec![c(0.0, 0.0); two_j + 1];
    if offset == 0 {
        for (p, o) in out.iter_mut().enumerate() {
            let ln_binom = ln_factorial(two_j) - ln_factorial(p) - ln_factorial(two_j - p);
            *o = zpow(zeta, p) * (0.5 * ln_binom - j * eta).exp();
        }
        return Ok(out);
    }
    // p = j + μ of the starting state; lowering by q then raising by s lands on p − q + s.
    let p0 = offset;
    for q in 0..=p0 {
        let lower = zpow(-zeta.conj(), q);
        let mu_q = p0 as f64 - q as f64 - j;
        for s in 0..=(two_j - (p0 - q)) {
            let ln_mag = eta * mu_q - ln_factorial(s) - ln_factorial(q)
                + ln_factorial(two_j - p0 + q)
                - ln_factorial(p0 - q)
                + 0.5 * (ln_factorial(p0) + ln_factorial(p0 - q + s) - ln_factorial(two_j - p0) - ln_factorial(two_j - p0 + q - s));
            out[p0 - q + s] += zpow(zeta, s) * lower * ln_mag.exp();
        }
    }
    Ok(out)
}

/// A boson realization of one irreducible representation: the generators on a
/// Fock basis and the basis index of each weight state.
pub struct Realization {
    pub basis: FockBasis,
    /// Exponent `ξK₊ − ξ*K₋` (or the su(2) analogue) with `ξ = 1`, split as `(K₊, K₋)`.
    pub raise: SparseMatrix,
    pub lower: SparseMatrix,
    pub states: Vec<usize>,
}

impl Realization {
    /// su(1,1) with `k ∈ {1/4, 3/4}` on mode a, `k ∈ {1/2, 1, 3/2, …}` on the two-mode
    /// realization with `n_b − n_a = 2k − 1`; `length` weight states, padded by `pad`.
    pub fn su11(k: f64, length: usize, pad: usize) -> Result<Self> {
        if (k - 0.25).abs() < 1e-12 || (k - 0.75).abs() < 1e-12 {
            let odd = usize::from((k - 0.75).abs() < 1e-12);
            let basis = FockBasis::new(2 * (length + pad) + odd, 1)?;
            let g = build_generators(&basis);
            let states = (0..length).map(|s| basis.index(2 * s + odd, 0).expect("inside")).collect();
            return Ok(Self { basis, raise: g.sparse(Generator::KpA).clone(), lower: g.sparse(Generator::KmA).clone(), states });
        }
        let two_k = half_integer(k, "k")?;
        if two_k < 1 {
            return Err(Error::InvalidArgument(format!("no realization for k = {k}")));
        }
        let d = two_k - 1;
        let basis = FockBasis::new(length + pad, length + pad + d)?;
        let g = build_generators(&basis);
        let states = (0..length).map(|s| basis.index(s, s + d).expect("inside")).collect();
        Ok(Self { basis, raise: g.sparse(Generator::KpAB).clone(), lower: g.sparse(Generator::KmAB).clone(), states })
    }

    /// su(2) spin `j` as `|j, μ⟩ = |j + μ, j − μ⟩`.
    pub fn su2(j: f64) -> Result<Self> {
        let two_j = half_integer(j, "j")?;
        let basis = FockBasis::new(two_j.max(1), two_j.max(1))?;
        let g = build_generators(&basis);
        let states = (0..=two_j).map(|p| basis.index(p, two_j - p).expect("inside")).collect();
        Ok(Self { basis, raise: g.sparse(Generator::Jp).clone(), lower: g.sparse(Generator::Jm).clone(), states })
    }

    /// `exp(ξ·raise − ξ*·lower)` applied to weight state `offset`, read back on the weight states.
    pub fn displaced(&self, xi: C64, offset: usize) -> Result<Vec<C64>> {
        let a = SparseMatrix::linear_combination(&[(xi, &self.raise), (-xi.conj(), &self.lower)])?;
        let mut w = ComplexMatrix::zeros(self.basis.dim(), 1);
        let start = *self.states.get(offset).ok_or_else(|| Error::InvalidArgument(format!("offset {offset} outside realization")))?;
        w[(start, 0)] = c(1.0, 0.0);
        let v = expm_multiply(&a, &w)?;
        Ok(self.states.iter().map(|&i| v[(i, 0)]).collect())
    }
}

/// Matrix-exponential oracle for [`perelomov_state`].
pub fn coherent_oracle(kind: CoherentKind, k_or_j: f64, offset: usize, xi: C64, length: usize) -> Result<Vec<C64>> {
    match kind {
        CoherentKind::Su11 => Realization::su11(k_or_j, length, length + 40)?.displaced(xi, offset),
        CoherentKind::Su2 => Realization::su2(k_or_j)?.displaced(xi, offset),
    }
}

/// Series length that carries all weight above `1e-16` for `D(ξ)|k, n⟩`.
pub fn su11_series_length(k: f64, n: usize, xi: C64) -> usize {
    let t = xi.norm().tanh();
    if t == 0.0 {
        return n + 1;
    }
    let mut s = n + 1;
    loop {
        let ln_tail = 2.0 * s as f64 * t.ln() + (2.0 * k + s as f64).ln() * (2.0 * k + n as f64);
        if ln_tail < (1e-32f64).ln() || s > 10_000 {
            return s + 1;
        }
        s += 1;
    }
}
