//! Planar oscillator eigenfunctions in the printed Laguerre form.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{c, C64};

/// One evaluation of the eigenfunction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavefunctionSample {
    pub n_l: usize,
    pub m_n: usize,
    pub rho: f64,
    pub phi: f64,
    pub value: C64,
}

/// `L_n^{(α)}(x)` by the three-term recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + alpha - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n^{(α)}(x) = Σᵢ (−1)ⁱ C(n+α, n−i) xⁱ / i!`.
pub fn laguerre_explicit(n: usize, alpha: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..=n {
        // C(n+α, n−i) = Π_{j=1}^{n−i} (α + i + j) / j
        let binom: f64 = (1..=n - i).map(|j| (alpha + (i + j) as f64) / j as f64).product();
        let term = binom * x.powi(i as i32) / (1..=i).map(|j| j as f64).product::<f64>();
        sum += if i % 2 == 0 { term } else { -term };
    }
    sum
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `π^{−1/2} e^{imφ} (−1)^{n_l} √(2 n_l!/(n_l+m)!) ρ^m L_{n_l}^{m}(ρ²) e^{−ρ²/2}`.
pub fn wavefunction(n_l: i64, m_n: i64, rho: f64, phi: f64) -> Result<WavefunctionSample> {
    if n_l < 0 || m_n < 0 {
        return Err(Error::InvalidArgument(format!("indices n_l = {n_l}, m_n = {m_n} must be non-negative")));
    }
    if !rho.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite("wavefunction argument".into()));
    }
    if rho < 0.0 {
        return Err(Error::InvalidArgument(format!("radius {rho} is negative")));
    }
    let (n, m) = (n_l as usize, m_n as usize);
    let ln_norm = 0.5 * (2f64.ln() + ln_factorial(n) - ln_factorial(n + m));
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let radial = sign * ln_norm.exp() * rho.powi(m as i32) * laguerre(n, m as f64, rho * rho) * (-0.5 * rho * rho).exp();
    let value = C64::from_polar(radial / PI.sqrt(), m as f64 * phi);
    Ok(WavefunctionSample { n_l: n, m_n: m, rho, phi, value })
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n <= 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// `∫ φ₁* φ₂ ρ dρ dφ`: composite Gauss-Legendre in `ρ ∈ [0, 14]`, trapezoid in `φ`.
pub fn wavefunction_overlap(n1: i64, m1: i64, n2: i64, m2: i64) -> Result<C64> {
    const PANELS: usize = 56;
    const R: f64 = 14.0;
    const ANGLES: usize = 32;
    let (x, w) = gauss_legendre(10);
    let h = R / PANELS as f64;
    let mut total = c(0.0, 0.0);
    for k in 0..ANGLES {
        let phi = 2.0 * PI * k as f64 / ANGLES as f64;
        let mut radial = c(0.0, 0.0);
        for p in 0..PANELS {
            let a = p as f64 * h;
            for (xi, wi) in x.iter().zip(&w) {
                let rho = a + 0.5 * h * (xi + 1.0);
                let f1 = wavefunction(n1, m1, rho, phi)?.value;
                let f2 = wavefunction(n2, m2, rho, phi)?.value;
                radial += f1.conj() * f2 * (rho * wi * 0.5 * h);
            }
        }
        total += radial * (2.0 * PI / ANGLES as f64);
    }
    Ok(total)
}
