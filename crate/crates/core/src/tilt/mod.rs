//! Displacement (tilting) operators, their action on the generators in closed
//! form and numerically, coherent states and single-algebra reductions.

mod coherent;
mod literal;
mod params;
mod reduce;
pub mod symplectic;

pub use coherent::{coherent_oracle, perelomov_state, su11_series_length, CoherentKind, Realization};
pub use literal::{literal_conjugate, literal_conjugate_coefficients, literal_source, DiscrepancyLedger, LedgerEntry};
pub use params::{
    from_theta_phi, hyperbolic_scalars, theta_phi, trigonometric_scalars, unit_phase, Factor, NormalForm, TiltKind,
    TiltParameters,
};
pub use reduce::{reduce_su11_form, reduce_su2_form, Reduction};

use crate::algebra::{Coefficients, Generator, GeneratorSet};
use crate::error::{Error, Result};
use crate::fock::{projector_indices, OperatorMatrix};
use crate::linalg::{c, expm_multiply, expm_sparse, ComplexMatrix, SparseMatrix, C64};
use crate::report::VerificationReport;

/// Which closed forms to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FormulaMode {
    /// Exact conjugation, checked against the matrix exponential.
    #[default]
    Verified,
    /// The formulas as printed.
    Literal,
}

/// Exponent `zK₊ − z*K₋` of one factor.
pub fn factor_exponent(factor: Factor, z: C64) -> Coefficients {
    let (p, m) = match factor {
        Factor::TwoMode => (Generator::KpAB, Generator::KmAB),
        Factor::ModeA => (Generator::KpA, Generator::KmA),
        Factor::ModeB => (Generator::KpB, Generator::KmB),
        Factor::Su2 => (Generator::Jp, Generator::Jm),
    };
    let mut x = Coefficients::zero();
    x[p] = z;
    x[m] = -z.conj();
    x
}

/// Sparse anti-Hermitian exponents of the factors, in operator order.
pub fn displacement_factors(params: &TiltParameters, gens: &GeneratorSet) -> Vec<SparseMatrix> {
    params.factors().iter().map(|&(f, z)| factor_exponent(f, z).assemble(gens)).collect()
}

/// The displacement as a sparse unitary (each factor exponentiated per block).
pub fn displacement_sparse(params: &TiltParameters, gens: &GeneratorSet) -> Result<SparseMatrix> {
    let mut d = SparseMatrix::identity(gens.basis().dim());
    for e in displacement_factors(params, gens) {
        d = d.matmul(&expm_sparse(&e)?)?;
    }
    Ok(d)
}

/// The displacement of `params.kind`, as the ordered product of its factors.
pub fn displacement(params: &TiltParameters, gens: &GeneratorSet) -> Result<OperatorMatrix> {
    let d = displacement_sparse(params, gens)?;
    OperatorMatrix::from_sparse(&d, *gens.basis(), false, format!("D[{}]", params.kind))
}

/// `D(params)·W` column by column without forming `D`.
pub fn displace_columns(params: &TiltParameters, gens: &GeneratorSet, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut v = w.clone();
    for e in displacement_factors(params, gens).iter().rev() {
        v = expm_multiply(e, &v)?;
    }
    Ok(v)
}

/// `P·D†XD·P`.
pub fn conjugate_numeric(d: &OperatorMatrix, x: &OperatorMatrix, p: &OperatorMatrix) -> Result<OperatorMatrix> {
    if d.dim() != x.dim() || x.dim() != p.dim() {
        return Err(Error::Dimension(format!("conjugation of {} by {} under a {} projector", x.dim(), d.dim(), p.dim())));
    }
    let ds = d.to_sparse();
    let full = ds.adjoint().matmul(&x.to_sparse())?.matmul(&ds)?;
    let ps = p.to_sparse();
    let out = ps.matmul(&full)?.matmul(&ps)?;
    OperatorMatrix::from_sparse(&out, x.basis, x.spin_factor, format!("D†{}D", x.label))
}

/// Closed-form `D†XD` for a generator in the default (verified) mode.
pub fn conjugate_closed_form(g: Generator, params: &TiltParameters) -> Coefficients {
    conjugate_closed_form_mode(g, params, FormulaMode::Verified)
}

pub fn conjugate_closed_form_mode(g: Generator, params: &TiltParameters, mode: FormulaMode) -> Coefficients {
    match mode {
        FormulaMode::Verified => symplectic::conjugate_coefficients(&Coefficients::unit(g), params),
        FormulaMode::Literal => literal_conjugate(g, params),
    }
}

/// Closed-form `D†XD` by generator label.
pub fn conjugate_closed_form_by_label(label: &str, params: &TiltParameters, mode: FormulaMode) -> Result<Coefficients> {
    let g: Generator = label.parse()?;
    Ok(conjugate_closed_form_mode(g, params, mode))
}

/// Interior margin used around a displacement of the given size.
pub fn tilt_margin(max_modulus: f64) -> usize {
    8usize.max((10.0 * max_modulus).ceil() as usize)
}

/// Relative Frobenius error between `P·D†XD·P` and the closed form on the interior of `p`.
pub fn closed_form_error(
    g: Generator,
    params: &TiltParameters,
    gens: &GeneratorSet,
    d: &OperatorMatrix,
    p: &OperatorMatrix,
    mode: FormulaMode,
) -> Result<f64> {
    let numeric = conjugate_numeric(d, &gens.operator(g), p)?;
    let closed = conjugate_closed_form_mode(g, params, mode).assemble(gens);
    let idx = projector_indices(p);
    let cl = closed.submatrix(&idx, &idx);
    let nu = SparseMatrix::from_dense(&numeric.matrix).submatrix(&idx, &idx);
    Ok(nu.sub(&cl)?.frobenius_norm() / cl.frobenius_norm().max(f64::MIN_POSITIVE))
}

/// The tilt magnitudes and phases of the closed-form grid.
pub fn tilt_grid(magnitudes: &[f64], phases: usize) -> Vec<C64> {
    let mut out = Vec::new();
    for &m in magnitudes {
        for p in 0..phases {
            out.push(C64::from_polar(m, 2.0 * std::f64::consts::PI * p as f64 / phases as f64));
        }
    }
    out
}

/// Parameters of `kind` built from one grid value (product kinds vary the phase per factor).
pub fn grid_parameters(kind: TiltKind, z: C64) -> TiltParameters {
    let rot = |k: f64| z * C64::from_polar(1.0, k);
    TiltParameters { kind, xi: rot(0.7), chi: rot(1.9), xi_a: z, xi_b: rot(-1.1) }
}

/// Closed form against `P·D†XD·P` on one cutoff for every kind, generator and grid point.
pub fn closed_form_grid_report(
    gens: &GeneratorSet,
    margin: usize,
    grid: &[C64],
    mode: FormulaMode,
    tol: f64,
) -> Result<VerificationReport> {
    let p = crate::fock::interior_projector(gens.basis(), margin)?;
    let mut report = VerificationReport::new(format!(
        "tilting closed forms ({mode:?}) on cutoff {}, margin {margin}",
        gens.basis().cutoff_a()
    ));
    for kind in TiltKind::ALL {
        for &z in grid {
            let params = grid_parameters(kind, z);
            let d = displacement(&params, gens)?;
            for g in Generator::ALL {
                let err = closed_form_error(g, &params, gens, &d, &p, mode)?;
                report.push(format!("{kind} D†{g}D |z|={:.2} arg={:.3}", z.norm(), z.arg()), err, tol, "");
            }
        }
    }
    Ok(report)
}

/// Intertwining check `X·D = D·C` on padded cutoffs.
///
/// `D` is applied to the states with `n_a, n_b ≤ inner + 2` by per-block exponentials,
/// and the residual `‖(XD − DC)e_j‖` is measured on interior columns `n_a, n_b ≤ inner`
/// relative to `‖X D e_j‖`.
pub fn intertwining_report(
    gens: &GeneratorSet,
    inner: usize,
    grid: &[C64],
    kinds: &[TiltKind],
    tol: f64,
) -> Result<VerificationReport> {
    let basis = *gens.basis();
    if inner + 2 > basis.cutoff_a().min(basis.cutoff_b()) {
        return Err(Error::InvalidArgument("padded cutoff too small for the inner window".into()));
    }
    let wide: Vec<usize> = basis.states().enumerate().filter(|(_, (a, b))| *a <= inner + 2 && *b <= inner + 2).map(|(i, _)| i).collect();
    let cols: Vec<usize> = (0..wide.len()).filter(|&k| {
        let (a, b) = basis.state(wide[k]);
        a <= inner && b <= inner
    }).collect();
    let mut w = ComplexMatrix::zeros(basis.dim(), wide.len());
    for (k, &i) in wide.iter().enumerate() {
        w[(i, k)] = c(1.0, 0.0);
    }
    let mut report = VerificationReport::new(format!("tilting intertwining on cutoff {}, window {inner}", basis.cutoff_a()));
    for &kind in kinds {
        for &z in grid {
            let params = grid_parameters(kind, z);
            let dw = displace_columns(&params, gens, &w)?;
            let d_int = dw.submatrix(&(0..basis.dim()).collect::<Vec<_>>(), &cols);
            for g in Generator::ALL {
                let xd = gens.sparse(g).mul_dense(&d_int)?;
                let closed = symplectic::conjugate_coefficients(&Coefficients::unit(g), &params).assemble(gens);
                let cint = closed.submatrix(&wide, &wide.iter().enumerate().filter(|(k, _)| cols.contains(k)).map(|(_, &i)| i).collect::<Vec<_>>());
                let dc = cint.to_dense();
                let dcm = dw.matmul(&dc)?;
                let resid = (&xd - &dcm).frobenius_norm() / xd.frobenius_norm().max(f64::MIN_POSITIVE);
                report.push(format!("{kind} X·D = D·C for {g} |z|={:.2} arg={:.3}", z.norm(), z.arg()), resid, tol, "");
            }
        }
    }
    Ok(report)
}
