//! Shared inputs for the benchmarks.

use sp4r::linalg::{c, ComplexMatrix};
use sp4r::ModelPreset;

/// Dense Hermitian test matrix with a deterministic, well-spread spectrum.
pub fn hermitian(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        let (x, y) = (i as f64, j as f64);
        if i == j {
            c(x.sin() * 3.0 + x * 0.1, 0.0)
        } else {
            let s = 1.0 / (1.0 + (x - y).abs());
            c(s * (x + y).cos(), s * (x - y).sin())
        }
    })
}

/// Anti-Hermitian counterpart of [`hermitian`], scaled to norm around `scale`.
pub fn anti_hermitian(n: usize, scale: f64) -> ComplexMatrix {
    let h = hermitian(n);
    h.scale(c(0.0, scale / h.frobenius_norm().max(f64::MIN_POSITIVE) * (n as f64).sqrt()))
}

pub fn mjc() -> ModelPreset {
    ModelPreset::Mjc { hbar: 1.0, omega0: 2.3, omega1: 1.0, omega2: 1.0, lambda1: 0.8, lambda2: 0.5 }
}
