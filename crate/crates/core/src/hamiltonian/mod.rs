//! The general two-level two-mode Hamiltonian, its uncoupled (squared) spinor
//! equations, the three-stage tilting pipeline and the closed-form spectrum.

mod pipeline;
mod spectrum;
mod wavefunction;

pub use pipeline::{tilt_pipeline, tilt_pipeline_coefficients, PipelineResult, PrintedAngles, ReductionPath, Stage, StageName};
pub use spectrum::{closed_form_spectrum, index_pairs, pipeline_spectrum, EntryFlag, SpectrumEntry, SpectrumTable};
pub use wavefunction::{
    gauss_legendre, laguerre, laguerre_explicit, wavefunction, wavefunction_overlap, WavefunctionSample,
};

use crate::algebra::{Coefficients, Generator};
use crate::error::{Error, Result};
use crate::fock::{sparse_boson_operators, FockBasis, OperatorMatrix};
use crate::linalg::{c, SparseMatrix, C64};

/// Frequencies, couplings and `ħ` of the general Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub omega0: f64,
    pub omega1: f64,
    pub omega2: f64,
    /// Couplings multiplying `σ₊`: coefficients of `a, a†, b, b†`.
    pub kappa: [C64; 4],
    /// Couplings multiplying `σ₋`: coefficients of `a, a†, b, b†`.
    pub gamma: [C64; 4],
    pub hbar: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self { omega0: 0.0, omega1: 0.0, omega2: 0.0, kappa: [c(0.0, 0.0); 4], gamma: [c(0.0, 0.0); 4], hbar: 1.0 }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega0, self.omega1, self.omega2, self.hbar].iter().all(|x| x.is_finite())
            && self.kappa.iter().chain(&self.gamma).all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::NonFinite("model parameters".into()));
        }
        if self.hbar <= 0.0 {
            return Err(Error::InvalidArgument(format!("hbar = {} must be positive", self.hbar)));
        }
        Ok(())
    }

    /// `Δω = (ω₀ − ω₁ − ω₂)/2`.
    pub fn delta_omega(&self) -> f64 {
        0.5 * (self.omega0 - self.omega1 - self.omega2)
    }

    /// `ħΔω`, the coefficient of `σ₀` in the interaction part.
    pub fn detuning_energy(&self) -> f64 {
        self.hbar * self.delta_omega()
    }

    /// `γ₁ = κ₂*, γ₂ = κ₁*, γ₃ = κ₄*, γ₄ = κ₃*` within `tol`.
    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        let [k1, k2, k3, k4] = self.kappa;
        let [g1, g2, g3, g4] = self.gamma;
        [(g1, k2), (g2, k1), (g3, k4), (g4, k3)].iter().all(|(g, k)| (g - k.conj()).norm() <= tol)
    }

    pub fn is_hermitian(&self) -> bool {
        let scale = self.kappa.iter().chain(&self.gamma).map(|z| z.norm()).fold(1.0, f64::max);
        self.is_hermitian_within(1e-14 * scale)
    }

    pub fn alphas(&self) -> AlphaCoefficients {
        AlphaCoefficients::from_couplings(&self.kappa, &self.gamma, self.delta_omega())
    }
}

/// The eleven bilinears `αᵢ` of the uncoupled equation and the detuning.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaCoefficients {
    /// `alpha[i − 1] = αᵢ`.
    pub alpha: [C64; 11],
    pub delta_omega: f64,
}

impl AlphaCoefficients {
    /// Bilinears of `(κ·)(γ·)`; pass the couplings swapped for the second component.
    pub fn from_couplings(k: &[C64; 4], g: &[C64; 4], delta_omega: f64) -> Self {
        let [k1, k2, k3, k4] = *k;
        let [g1, g2, g3, g4] = *g;
        let alpha = [
            k1 * g1,
            k2 * g2,
            k3 * g3,
            k4 * g4,
            k1 * g2 + k2 * g1,
            k4 * g3 + k3 * g4,
            k1 * g3 + k3 * g1,
            k1 * g4 + k4 * g1,
            k2 * g3 + k3 * g2,
            k2 * g4 + k4 * g2,
            k1 * g2 + k3 * g4,
        ];
        Self { alpha, delta_omega }
    }

    /// `αᵢ` with the usual 1-based index.
    pub fn get(&self, i: usize) -> C64 {
        self.alpha[i - 1]
    }

    /// The generator combination equal to the uncoupled operator.
    pub fn uncoupled(&self) -> Coefficients {
        use Generator::*;
        let a = |i: usize| self.get(i);
        let mut x = Coefficients::zero();
        x[KmA] = 2.0 * a(1);
        x[KpA] = 2.0 * a(2);
        x[KmB] = 2.0 * a(3);
        x[KpB] = 2.0 * a(4);
        x[K0AB] = a(5) + a(6);
        x[KmAB] = a(7);
        x[KpAB] = a(10);
        x[J0] = a(5) - a(6);
        x[Jm] = a(8);
        x[Jp] = a(9);
        x.identity = a(11) - 0.5 * (a(5) + a(6));
        x
    }

    /// `|α₅ − α₆| ≤ 1e−10·max(|α₅|, |α₆|, ε)`.
    pub fn condition_holds(&self) -> bool {
        let (a5, a6) = (self.get(5), self.get(6));
        (a5 - a6).norm() <= 1e-10 * a5.norm().max(a6.norm()).max(f64::EPSILON)
    }
}

/// `H`, `H₀` and `H_I` on spin ⊗ Fock.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub h: OperatorMatrix,
    pub h0: OperatorMatrix,
    pub hi: OperatorMatrix,
}

/// `c₁a + c₂a† + c₃b + c₄b†` on a Fock basis.
pub fn ladder_combination(coeffs: &[C64; 4], basis: &FockBasis) -> SparseMatrix {
    let ops = sparse_boson_operators(basis);
    let terms: Vec<(C64, &SparseMatrix)> = coeffs.iter().copied().zip(ops.iter()).collect();
    SparseMatrix::linear_combination(&terms).expect("same basis")
}

/// Spin-major `[[upper-left, upper-right], [lower-left, lower-right]]`.
pub(crate) fn spin_blocks(ul: &SparseMatrix, ur: &SparseMatrix, ll: &SparseMatrix, lr: &SparseMatrix) -> SparseMatrix {
    let n = ul.rows();
    let mut t = Vec::with_capacity(ul.nnz() + ur.nnz() + ll.nnz() + lr.nnz());
    for (m, dr, dc) in [(ul, 0, 0), (ur, 0, n), (ll, n, 0), (lr, n, n)] {
        t.extend(m.iter().map(|(r, k, v)| (r + dr, k + dc, v)));
    }
    SparseMatrix::from_triplets(2 * n, 2 * n, t).expect("in range")
}

/// Sparse `(H, H₀, H_I)`.
pub fn build_hamiltonian_sparse(params: &ModelParams, basis: &FockBasis) -> (SparseMatrix, SparseMatrix, SparseMatrix) {
    let n = basis.dim();
    let zero = SparseMatrix::zeros(n, n);
    let id = SparseMatrix::identity(n);
    let det = params.detuning_energy();
    let hi = spin_blocks(
        &id.scale(c(det, 0.0)),
        &ladder_combination(&params.kappa, basis),
        &ladder_combination(&params.gamma, basis),
        &id.scale(c(-det, 0.0)),
    );
    let (w1, w2) = (params.hbar * params.omega1, params.hbar * params.omega2);
    let upper: Vec<C64> = basis.states().map(|(na, nb)| c(w1 * (na as f64 + 0.5) + w2 * (nb as f64 + 0.5), 0.0)).collect();
    let lower: Vec<C64> = basis.states().map(|(na, nb)| c(w1 * (na as f64 - 0.5) + w2 * (nb as f64 - 0.5), 0.0)).collect();
    let h0 = spin_blocks(&SparseMatrix::from_diagonal(&upper), &zero, &zero, &SparseMatrix::from_diagonal(&lower));
    let h = h0.add(&hi).expect("same shape");
    (h, h0, hi)
}

/// `H = H₀ + H_I` in spin-major layout (upper block is the first spinor component).
pub fn build_hamiltonian(params: &ModelParams, basis: &FockBasis) -> Hamiltonian {
    let (h, h0, hi) = build_hamiltonian_sparse(params, basis);
    let wrap = |m: &SparseMatrix, l: &str| OperatorMatrix::from_sparse(m, *basis, true, l).expect("spin dimension");
    Hamiltonian { h: wrap(&h, "H"), h0: wrap(&h0, "H0"), hi: wrap(&hi, "H_I") }
}

/// `(κ·)(γ·)` for component 1, `(γ·)(κ·)` for component 2, as truncated matrix products.
pub fn uncoupled_operator_sparse(params: &ModelParams, basis: &FockBasis, component: u8) -> Result<SparseMatrix> {
    let k = ladder_combination(&params.kappa, basis);
    let g = ladder_combination(&params.gamma, basis);
    match component {
        1 => k.matmul(&g),
        2 => g.matmul(&k),
        _ => Err(Error::InvalidArgument(format!("spinor component {component} is not 1 or 2"))),
    }
}

pub fn uncoupled_operator(params: &ModelParams, basis: &FockBasis, component: u8) -> Result<OperatorMatrix> {
    let m = uncoupled_operator_sparse(params, basis, component)?;
    OperatorMatrix::from_sparse(&m, *basis, false, format!("uncoupled[{component}]"))
}

/// α coefficients of the given component's uncoupled operator.
pub fn component_alphas(params: &ModelParams, component: u8) -> Result<AlphaCoefficients> {
    match component {
        1 => Ok(params.alphas()),
        2 => Ok(AlphaCoefficients::from_couplings(&params.gamma, &params.kappa, params.delta_omega())),
        _ => Err(Error::InvalidArgument(format!("spinor component {component} is not 1 or 2"))),
    }
}

pub fn alpha_coefficients(params: &ModelParams) -> AlphaCoefficients {
    params.alphas()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_generators;
    use crate::fock::{build_basis, Interior};

    fn jc(kappa: f64) -> ModelParams {
        let mut p = ModelParams::default();
        p.kappa[0] = c(kappa, 0.0);
        p.gamma[1] = c(kappa, 0.0);
        p
    }

    #[test]
    fn dimensions_and_split() {
        let basis = build_basis(3, 3).unwrap();
        let mut p = jc(0.7);
        p.omega0 = 2.0;
        p.omega1 = 0.5;
        p.omega2 = 0.25;
        let h = build_hamiltonian(&p, &basis);
        assert_eq!(h.h.dim(), 32);
        assert_eq!(h.h.matrix, &h.h0.matrix + &h.hi.matrix);
        assert!(h.h.matrix.hermiticity_defect() == 0.0);
    }

    #[test]
    fn zero_couplings_give_bare_splitting() {
        let basis = build_basis(2, 2).unwrap();
        let p = ModelParams { omega0: 3.0, omega1: 1.0, ..Default::default() };
        let hi = build_hamiltonian(&p, &basis).hi.matrix;
        let d = hi.diagonal();
        assert!(d[..9].iter().all(|z| *z == c(1.0, 0.0)) && d[9..].iter().all(|z| *z == c(-1.0, 0.0)));
        assert_eq!(hi.off_diagonal_norm(), 0.0);
        assert_eq!(uncoupled_operator(&p, &basis, 1).unwrap().matrix.max_abs(), 0.0);
    }

    #[test]
    fn jc_block_structure() {
        let basis = build_basis(4, 1).unwrap();
        let hi = build_hamiltonian(&jc(1.0), &basis).hi.matrix;
        let up = basis.index(2, 0).unwrap();
        let down = basis.dim() + basis.index(3, 0).unwrap();
        assert!((hi[(up, down)].re - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(hi[(down, up)], hi[(up, down)]);
    }

    #[test]
    fn jc_alphas_and_uncoupled() {
        let a = jc(1.5).alphas();
        assert!((a.get(5).re - 2.25).abs() < 1e-15 && (a.get(11).re - 2.25).abs() < 1e-15);
        assert!((1..=11).filter(|&i| i != 5 && i != 11).all(|i| a.get(i) == c(0.0, 0.0)));
        let basis = build_basis(6, 1).unwrap();
        let u = uncoupled_operator(&jc(1.0), &basis, 1).unwrap().matrix;
        for na in 0..6 {
            let i = basis.index(na, 0).unwrap();
            assert!((u[(i, i)].re - (na as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn mjc_alphas() {
        let (l1, l2) = (1.2, 0.5);
        let mut p = ModelParams::default();
        p.kappa[0] = c(l1, 0.0);
        p.gamma[1] = c(l1, 0.0);
        p.kappa[2] = c(l2, 0.0);
        p.gamma[3] = c(l2, 0.0);
        let a = p.alphas();
        let want = [0.0, 0.0, 0.0, 0.0, l1 * l1, l2 * l2, 0.0, l1 * l2, l1 * l2, 0.0, l1 * l1 + l2 * l2];
        for (i, w) in want.iter().enumerate() {
            assert!((a.alpha[i] - c(*w, 0.0)).norm() < 1e-15, "alpha{}", i + 1);
        }
        assert!(p.is_hermitian());
    }

    #[test]
    fn reconstruction_on_interior() {
        let k = [c(0.3, -0.1), c(0.7, 0.2), c(-0.4, 0.5), c(0.1, 0.9)];
        let g = [c(-0.2, 0.6), c(0.5, 0.0), c(0.8, -0.3), c(0.25, 0.15)];
        let p = ModelParams { kappa: k, gamma: g, ..Default::default() };
        let basis = build_basis(8, 8).unwrap();
        let gens = build_generators(&basis);
        let idx = Interior::uniform(basis, 2).unwrap().indices();
        for comp in [1, 2] {
            let direct = uncoupled_operator_sparse(&p, &basis, comp).unwrap().submatrix(&idx, &idx);
            let alg = component_alphas(&p, comp).unwrap().uncoupled().assemble(&gens).submatrix(&idx, &idx);
            assert!(direct.sub(&alg).unwrap().max_abs() < 1e-12, "component {comp}");
        }
    }

    #[test]
    fn rejects_bad_params() {
        let p = ModelParams { hbar: 0.0, ..Default::default() };
        assert!(matches!(p.validate(), Err(Error::InvalidArgument(_))));
        assert!(uncoupled_operator(&ModelParams::default(), &build_basis(1, 1).unwrap(), 3).is_err());
    }
}
