use super::{c, dense_blocks, ComplexMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix: `A·V = V·diag(values)`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("eigensolve of a {}x{} matrix", a.rows(), a.cols())));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("eigensolver input".into()));
    }
    let defect = a.hermiticity_defect();
    let tolerance = 1e-10 * a.norm_inf();
    if defect > tolerance {
        return Err(Error::NotHermitian { defect, tolerance });
    }
    Ok(())
}

/// Full eigen-decomposition by cyclic complex Jacobi rotations.
///
/// Each connected block of the sparsity pattern is diagonalized on its own.
/// Eigenvalues are sorted ascending; ties keep the order in which the blocks
/// produced them.
pub fn hermitian_eigensolve(a: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(a)?;
    let n = a.rows();
    let mut pairs: Vec<(f64, usize, Vec<C64>)> = Vec::with_capacity(n);
    for block in dense_blocks(a) {
        let sub = a.submatrix(&block, &block);
        let (vals, vecs) = jacobi(&sub, true)?;
        let vecs = vecs.expect("vectors requested");
        for (j, &lambda) in vals.iter().enumerate() {
            let mut col = vec![c(0.0, 0.0); n];
            for (i, &r) in block.iter().enumerate() {
                col[r] = vecs[(i, j)];
            }
            pairs.push((lambda, pairs.len(), col));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (j, (lambda, _, col)) in pairs.into_iter().enumerate() {
        values.push(lambda);
        vectors.set_column(j, &col);
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(a)?;
    let mut values = Vec::with_capacity(a.rows());
    for block in dense_blocks(a) {
        let (vals, _) = jacobi(&a.submatrix(&block, &block), false)?;
        values.extend(vals);
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn jacobi(a: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.rows();
    let mut m: Vec<C64> = a.as_slice().to_vec();
    for i in 0..n {
        m[i * n + i] = c(m[i * n + i].re, 0.0);
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    if n == 1 {
        return Ok((vec![m[0].re], v));
    }
    let scale: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[p * n + q].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            converged = true;
            break;
        }
        let threshold = if sweep < 3 { 0.2 * off.sqrt() / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                if sweep > 3 && app.abs() + 100.0 * g == app.abs() && aqq.abs() + 100.0 * g == aqq.abs() {
                    m[p * n + q] = c(0.0, 0.0);
                    m[q * n + p] = c(0.0, 0.0);
                    continue;
                }
                if g <= threshold {
                    continue;
                }
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                let phase_conj = (apq / g).conj();
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    let new_kp = akp * cs - phase_conj * akq * sn;
                    let new_kq = akp * sn + phase_conj * akq * cs;
                    m[k * n + p] = new_kp;
                    m[p * n + k] = new_kp.conj();
                    m[k * n + q] = new_kq;
                    m[q * n + k] = new_kq.conj();
                }
                m[p * n + p] = c(app - t * g, 0.0);
                m[q * n + q] = c(aqq + t * g, 0.0);
                m[p * n + q] = c(0.0, 0.0);
                m[q * n + p] = c(0.0, 0.0);
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * cs - phase_conj * vkq * sn;
                        v[(k, q)] = vkp * sn + phase_conj * vkq * cs;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!("Jacobi sweeps exhausted on a {n}x{n} block")));
    }
    Ok(((0..n).map(|i| m[i * n + i].re).collect(), v))
}
