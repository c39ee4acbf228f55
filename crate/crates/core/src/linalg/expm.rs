use super::{c, dense_blocks, ComplexMatrix, SparseMatrix};
use crate::error::{Error, Result};

const TAYLOR_ORDER: usize = 16;
const SCALED_NORM: f64 = 0.5;
const DENSE_BLOCK: usize = 160;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The matrix is split into the connected blocks of its sparsity pattern and each
/// block is exponentiated separately.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("expm of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for block in dense_blocks(a) {
        let e = expm_block(&a.submatrix(&block, &block));
        for (i, &r) in block.iter().enumerate() {
            for (j, &k) in block.iter().enumerate() {
                out[(r, k)] = e[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Sparse matrix exponential; each connected block is exponentiated densely.
pub fn expm_sparse(a: &SparseMatrix) -> Result<SparseMatrix> {
    if a.rows() != a.cols() {
        return Err(Error::Dimension(format!("expm of a {}x{} matrix", a.rows(), a.cols())));
    }
    let mut triplets = Vec::new();
    for block in a.blocks() {
        if block.len() == 1 {
            let i = block[0];
            triplets.push((i, i, a.get(i, i).exp()));
            continue;
        }
        let e = expm_block(&a.submatrix(&block, &block).to_dense());
        for (i, &r) in block.iter().enumerate() {
            for (j, &k) in block.iter().enumerate() {
                triplets.push((r, k, e[(i, j)]));
            }
        }
    }
    SparseMatrix::from_triplets(a.rows(), a.cols(), triplets)
}

/// Computes `exp(A)·W` without forming `exp(A)`.
///
/// Works block by block on the sparsity pattern of `A`, skipping blocks where `W`
/// vanishes. Small blocks are exponentiated densely; larger ones step the Taylor
/// series in sub-intervals of one-norm at most two.
pub fn expm_multiply(a: &SparseMatrix, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != a.cols() || a.cols() != w.rows() {
        return Err(Error::Dimension(format!(
            "expm_multiply of {}x{} with {}x{}",
            a.rows(),
            a.cols(),
            w.rows(),
            w.cols()
        )));
    }
    let k = w.cols();
    let mut out = ComplexMatrix::zeros(w.rows(), k);
    for block in a.blocks() {
        let cols: Vec<usize> =
            (0..k).filter(|&j| block.iter().any(|&r| w[(r, j)].norm() > 0.0)).collect();
        if cols.is_empty() {
            continue;
        }
        let local = a.submatrix(&block, &block);
        let mut v = w.submatrix(&block, &cols);
        if block.len() <= DENSE_BLOCK {
            v = &expm_block(&local.to_dense()) * &v;
            for (i, &r) in block.iter().enumerate() {
                for (jj, &j) in cols.iter().enumerate() {
                    out[(r, j)] = v[(i, jj)];
                }
            }
            continue;
        }
        let steps = (local.norm_one() / 2.0).ceil().max(1.0) as usize;
        let h = c(1.0 / steps as f64, 0.0);
        for _ in 0..steps {
            let mut term = v.clone();
            let mut acc = v.clone();
            for order in 1..=60 {
                term = local.mul_dense(&term)?.scale(h / order as f64);
                acc = &acc + &term;
                if term.max_abs() <= 1e-18 * acc.max_abs().max(f64::MIN_POSITIVE) {
                    break;
                }
            }
            v = acc;
        }
        for (i, &r) in block.iter().enumerate() {
            for (jj, &j) in cols.iter().enumerate() {
                out[(r, j)] = v[(i, jj)];
            }
        }
    }
    Ok(out)
}

fn expm_block(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    if n == 1 {
        return ComplexMatrix::from_diagonal(&[a[(0, 0)].exp()]);
    }
    let norm = a.norm_one();
    let squarings = if norm > SCALED_NORM { (norm / SCALED_NORM).log2().ceil() as u32 } else { 0 };
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));
    let eye = ComplexMatrix::identity(n);
    let mut p = eye.clone();
    for k in (1..=TAYLOR_ORDER).rev() {
        p = &eye + &(&scaled * &p).scale_real(1.0 / k as f64);
    }
    for _ in 0..squarings {
        p = &p * &p;
    }
    p
}

#[allow(dead_code)]
pub(crate) fn taylor_reference(a: &ComplexMatrix, terms: usize) -> ComplexMatrix {
    let n = a.rows();
    let mut term = ComplexMatrix::identity(n);
    let mut sum = term.clone();
    for k in 1..terms {
        term = (&term * a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, scale: f64, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        m.scale_real(scale / m.frobenius_norm())
    }

    #[test]
    fn zero_and_diagonal() {
        assert_eq!(expm(&ComplexMatrix::zeros(3, 3)).unwrap(), ComplexMatrix::identity(3));
        let e = expm(&ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        assert!((e[(0, 0)].re - 1f64.exp()).abs() < 1e-15);
        assert!((e[(1, 1)].re - 2f64.exp()).abs() < 1e-14);
        assert_eq!(e[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(expm(&ComplexMatrix::zeros(2, 3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn matches_taylor_oracle() {
        for seed in 0..5 {
            let a = random(6, 0.5, seed);
            let e = expm(&a).unwrap();
            let t = taylor_reference(&a, 30);
            assert!((&e - &t).frobenius_norm() / t.frobenius_norm() <= 1e-12);
        }
    }

    #[test]
    fn sparse_and_multiply_agree_with_dense() {
        let a = random(7, 3.0, 11);
        let dense = expm(&a).unwrap();
        let sparse = expm_sparse(&SparseMatrix::from_dense(&a)).unwrap().to_dense();
        assert!((&dense - &sparse).max_abs() < 1e-12);
        let w = random(7, 1.0, 12);
        let ew = expm_multiply(&SparseMatrix::from_dense(&a), &w).unwrap();
        assert!((&ew - &(&dense * &w)).max_abs() < 1e-12);
    }

    #[test]
    fn stepped_taylor_path_on_large_block() {
        let n = 200;
        let mut t = Vec::new();
        for i in 0..n - 1 {
            let x = c(0.3 * ((i + 1) as f64).sqrt(), 0.1);
            t.push((i, i + 1, x));
            t.push((i + 1, i, -x.conj()));
        }
        let a = SparseMatrix::from_triplets(n, n, t).unwrap();
        let w = ComplexMatrix::from_fn(n, 2, |r, k| c(if r == k * 5 { 1.0 } else { 0.0 }, 0.0));
        let ew = expm_multiply(&a, &w).unwrap();
        let dense = &expm(&a.to_dense()).unwrap() * &w;
        assert!((&ew - &dense).max_abs() < 1e-11);
    }

    #[test]
    fn inverse_and_unitarity() {
        for seed in 0..3 {
            let a = random(8, 2.0, 20 + seed);
            let p = &expm(&a).unwrap() * &expm(&a.scale_real(-1.0)).unwrap();
            assert!((&p - &ComplexMatrix::identity(8)).max_abs() < 1e-10);
            let ah = (&a - &a.adjoint()).scale_real(0.5);
            let u = expm(&ah).unwrap();
            assert!((&(&u.adjoint() * &u) - &ComplexMatrix::identity(8)).max_abs() < 1e-10);
        }
    }
}
