//! Complex matrix kernels: dense and sparse storage, block-aware matrix
//! exponential, a Jacobi eigensolver for Hermitian matrices and a pivoted
//! linear solver.

mod dense;
mod eigen;
mod expm;
mod solve;
mod sparse;

pub use num_complex::Complex64 as C64;

pub use dense::ComplexMatrix;
pub use eigen::{hermitian_eigensolve, hermitian_eigenvalues, HermitianEigen};
pub use expm::{expm, expm_multiply, expm_sparse};
pub use solve::solve;
pub use sparse::SparseMatrix;

/// Shorthand complex constructor.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Connected components of an undirected graph on `n` vertices.
///
/// Components are ordered by their smallest vertex and each is sorted.
pub fn connected_blocks(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(i);
    }
    blocks
}

/// Block structure of a dense square matrix from its exact nonzero pattern.
pub fn dense_blocks(a: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut edges = Vec::new();
    for r in 0..n {
        for (k, z) in a.row(r).iter().enumerate() {
            if k != r && (z.re != 0.0 || z.im != 0.0) {
                edges.push((r, k));
            }
        }
    }
    connected_blocks(n, edges)
}
