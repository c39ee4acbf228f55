use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return Err(Error::Dimension(format!("solve with {}x{} and rhs {}", a.rows(), a.cols(), b.len())));
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[(i, col)].norm().total_cmp(&m[(j, col)].norm()))
            .expect("non-empty pivot range");
        if m[(piv, col)].norm() <= 1e-14 * scale {
            return Err(Error::Singular(format!("pivot {col} vanishes")));
        }
        if piv != col {
            for k in 0..n {
                let t = m[(col, k)];
                m[(col, k)] = m[(piv, k)];
                m[(piv, k)] = t;
            }
            x.swap(col, piv);
        }
        let p = m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / p;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for k in col..n {
                let t = m[(col, k)];
                m[(r, k)] -= f * t;
            }
            let t = x[col];
            x[r] -= f * t;
        }
    }
    for r in (0..n).rev() {
        let mut s = x[r];
        for k in r + 1..n {
            s -= m[(r, k)] * x[k];
        }
        x[r] = s / m[(r, r)];
    }
    Ok(x)
}
