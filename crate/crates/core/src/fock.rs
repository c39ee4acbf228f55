//! Truncated two-mode Fock space and the boson ladder operators on it.

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, SparseMatrix, C64};

/// Two-mode occupation basis `|n_a, n_b⟩` with a rectangular cutoff.
///
/// States are ordered with `n_a` major and `n_b` minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FockBasis {
    cutoff_a: usize,
    cutoff_b: usize,
}

impl FockBasis {
    pub fn new(cutoff_a: usize, cutoff_b: usize) -> Result<Self> {
        if cutoff_a < 1 || cutoff_b < 1 {
            return Err(Error::InvalidArgument(format!(
                "cutoffs must be at least 1, got ({cutoff_a}, {cutoff_b})"
            )));
        }
        Ok(Self { cutoff_a, cutoff_b })
    }

    pub fn cutoff_a(&self) -> usize {
        self.cutoff_a
    }

    pub fn cutoff_b(&self) -> usize {
        self.cutoff_b
    }

    pub fn dim(&self) -> usize {
        (self.cutoff_a + 1) * (self.cutoff_b + 1)
    }

    pub fn index(&self, na: usize, nb: usize) -> Option<usize> {
        (na <= self.cutoff_a && nb <= self.cutoff_b).then(|| na * (self.cutoff_b + 1) + nb)
    }

    /// Occupations `(n_a, n_b)` of basis state `i`.
    pub fn state(&self, i: usize) -> (usize, usize) {
        (i / (self.cutoff_b + 1), i % (self.cutoff_b + 1))
    }

    pub fn states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(|i| self.state(i))
    }

    /// Unit vector for `|n_a, n_b⟩`.
    pub fn ket(&self, na: usize, nb: usize) -> Result<Vec<C64>> {
        let i = self.index(na, nb).ok_or_else(|| {
            Error::CutoffOverflow(format!("|{na},{nb}⟩ outside cutoff ({}, {})", self.cutoff_a, self.cutoff_b))
        })?;
        let mut v = vec![c(0.0, 0.0); self.dim()];
        v[i] = c(1.0, 0.0);
        Ok(v)
    }
}

/// Validating constructor for [`FockBasis`].
pub fn build_basis(cutoff_a: usize, cutoff_b: usize) -> Result<FockBasis> {
    FockBasis::new(cutoff_a, cutoff_b)
}

/// Dense operator tagged with the basis it acts on.
///
/// With `spin_factor` set the matrix acts on spin ⊗ Fock in spin-major layout:
/// the first `dim` rows belong to the upper spinor component.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: ComplexMatrix,
    pub basis: FockBasis,
    pub spin_factor: bool,
    pub label: String,
}

impl OperatorMatrix {
    pub fn new(matrix: ComplexMatrix, basis: FockBasis, spin_factor: bool, label: impl Into<String>) -> Result<Self> {
        let dim = basis.dim() * if spin_factor { 2 } else { 1 };
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a space of dimension {dim}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix, basis, spin_factor, label: label.into() })
    }

    pub fn from_sparse(m: &SparseMatrix, basis: FockBasis, spin_factor: bool, label: impl Into<String>) -> Result<Self> {
        Self::new(m.to_dense(), basis, spin_factor, label)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), basis: self.basis, spin_factor: self.spin_factor, label: format!("{}†", self.label) }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_dense(&self.matrix)
    }
}

/// The four single-mode ladder operators.
#[derive(Clone, Debug)]
pub struct BosonOperators {
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub b: OperatorMatrix,
    pub b_dag: OperatorMatrix,
}

/// Sparse `a, a†, b, b†`.
pub fn sparse_boson_operators(basis: &FockBasis) -> [SparseMatrix; 4] {
    let n = basis.dim();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, (na, nb)) in basis.states().enumerate() {
        if na > 0 {
            a.push((basis.index(na - 1, nb).expect("lower state"), i, c((na as f64).sqrt(), 0.0)));
        }
        if nb > 0 {
            b.push((basis.index(na, nb - 1).expect("lower state"), i, c((nb as f64).sqrt(), 0.0)));
        }
    }
    let a = SparseMatrix::from_triplets(n, n, a).expect("in range");
    let b = SparseMatrix::from_triplets(n, n, b).expect("in range");
    let (ad, bd) = (a.adjoint(), b.adjoint());
    [a, ad, b, bd]
}

/// Dense ladder operators with `⟨n−1|a|n⟩ = √n` per mode.
pub fn boson_operators(basis: &FockBasis) -> BosonOperators {
    let [a, ad, b, bd] = sparse_boson_operators(basis);
    let wrap = |m: &SparseMatrix, l: &str| OperatorMatrix::from_sparse(m, *basis, false, l).expect("basis dimension");
    BosonOperators { a: wrap(&a, "a"), a_dag: wrap(&ad, "a†"), b: wrap(&b, "b"), b_dag: wrap(&bd, "b†") }
}

/// Interior of a basis: states at least `margin` quanta below each cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interior {
    pub basis: FockBasis,
    pub margin_a: usize,
    pub margin_b: usize,
}

impl Interior {
    /// Per-mode margins; each must stay below its mode's cutoff.
    pub fn new(basis: FockBasis, margin_a: usize, margin_b: usize) -> Result<Self> {
        if margin_a >= basis.cutoff_a() + 1 || margin_b >= basis.cutoff_b() + 1 {
            return Err(Error::InvalidArgument(format!(
                "margins ({margin_a}, {margin_b}) leave no interior in cutoff ({}, {})",
                basis.cutoff_a(),
                basis.cutoff_b()
            )));
        }
        Ok(Self { basis, margin_a, margin_b })
    }

    /// Equal margin on both modes, which must be below both cutoffs.
    pub fn uniform(basis: FockBasis, margin: usize) -> Result<Self> {
        if margin >= basis.cutoff_a().min(basis.cutoff_b()) && margin > 0 {
            return Err(Error::InvalidArgument(format!(
                "margin {margin} not below min cutoff {}",
                basis.cutoff_a().min(basis.cutoff_b())
            )));
        }
        Self::new(basis, margin, margin)
    }

    pub fn max_a(&self) -> usize {
        self.basis.cutoff_a() - self.margin_a
    }

    pub fn max_b(&self) -> usize {
        self.basis.cutoff_b() - self.margin_b
    }

    pub fn contains(&self, na: usize, nb: usize) -> bool {
        na <= self.max_a() && nb <= self.max_b()
    }

    /// Basis indices of interior states, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.basis.states().enumerate().filter(|(_, (na, nb))| self.contains(*na, *nb)).map(|(i, _)| i).collect()
    }

    /// Interior indices in the spin ⊗ Fock space (both spinor components).
    pub fn spin_indices(&self) -> Vec<usize> {
        let idx = self.indices();
        let dim = self.basis.dim();
        idx.iter().copied().chain(idx.iter().map(|i| i + dim)).collect()
    }

    pub fn projector(&self) -> OperatorMatrix {
        let mut d = vec![c(0.0, 0.0); self.basis.dim()];
        for i in self.indices() {
            d[i] = c(1.0, 0.0);
        }
        OperatorMatrix::new(ComplexMatrix::from_diagonal(&d), self.basis, false, "P").expect("basis dimension")
    }
}

/// Orthogonal projector onto `n_a ≤ cutoff_a − margin`, `n_b ≤ cutoff_b − margin`.
pub fn interior_projector(basis: &FockBasis, margin: usize) -> Result<OperatorMatrix> {
    Ok(Interior::uniform(*basis, margin)?.projector())
}

/// Indices where a (possibly spin-lifted) diagonal projector has unit entries.
pub fn projector_indices(p: &OperatorMatrix) -> Vec<usize> {
    p.matrix.diagonal().iter().enumerate().filter(|(_, z)| (z.re - 1.0).abs() < 1e-12).map(|(i, _)| i).collect()
}

/// `I₂ ⊗ P` for a Fock-space projector.
pub fn spin_lift(p: &OperatorMatrix) -> OperatorMatrix {
    if p.spin_factor {
        return p.clone();
    }
    OperatorMatrix {
        matrix: ComplexMatrix::identity(2).kron(&p.matrix),
        basis: p.basis,
        spin_factor: true,
        label: format!("I₂⊗{}", p.label),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_ordering() {
        let b = build_basis(1, 1).unwrap();
        assert_eq!(b.dim(), 4);
        assert_eq!(b.states().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(build_basis(20, 20).unwrap().dim(), 441);
        assert!(matches!(build_basis(3, 0), Err(Error::InvalidArgument(_))));
        let b = build_basis(4, 2).unwrap();
        for i in 0..b.dim() {
            let (na, nb) = b.state(i);
            assert_eq!(b.index(na, nb), Some(i));
        }
    }

    #[test]
    fn ladder_elements() {
        let basis = build_basis(4, 4).unwrap();
        let ops = boson_operators(&basis);
        let i00 = basis.index(0, 0).unwrap();
        let i10 = basis.index(1, 0).unwrap();
        assert_eq!(ops.a.matrix[(i00, i10)], c(1.0, 0.0));
        let v = ops.a_dag.matrix.mul_vec(&basis.ket(2, 0).unwrap()).unwrap();
        let i30 = basis.index(3, 0).unwrap();
        assert!((v[i30] - c(3f64.sqrt(), 0.0)).norm() < 1e-15);
        assert_eq!(v.iter().filter(|z| z.norm() > 0.0).count(), 1);
        assert_eq!(ops.a_dag.matrix, ops.a.matrix.adjoint());
    }

    #[test]
    fn projector_laws() {
        let basis = build_basis(3, 3).unwrap();
        let p = interior_projector(&basis, 1).unwrap();
        assert_eq!(projector_indices(&p).len(), 9);
        assert_eq!(&p.matrix * &p.matrix, p.matrix);
        assert_eq!(p.matrix.adjoint(), p.matrix);
        assert_eq!(interior_projector(&basis, 0).unwrap().matrix, ComplexMatrix::identity(16));
        assert!(interior_projector(&basis, 3).is_err());
        assert_eq!(projector_indices(&spin_lift(&p)).len(), 18);
    }
}
