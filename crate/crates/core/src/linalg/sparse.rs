use super::{ComplexMatrix, C64};
use crate::error::{dim_err, Error, Result};

/// Compressed sparse row complex matrix.
///
/// Used for operators whose dense form would be wasteful at large cutoffs; every
/// result can be turned back into a [`ComplexMatrix`] with [`SparseMatrix::to_dense`].
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, indptr: vec![0; rows + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_triplets(n, n, diag.iter().enumerate().map(|(i, &d)| (i, i, d)))
            .expect("diagonal entries are in range")
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and exact zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Result<Self> {
        let mut t: Vec<(usize, usize, C64)> = triplets.into_iter().collect();
        for &(r, c, v) in &t {
            if r >= rows || c >= cols {
                return Err(Error::Dimension(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite(format!("entry ({r},{c})")));
            }
        }
        t.sort_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0; rows + 1];
        let mut indices = Vec::with_capacity(t.len());
        let mut values: Vec<C64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            if last == Some((r, c)) {
                *values.last_mut().expect("previous entry") += v;
            } else {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        let mut m = Self { rows, cols, indptr, indices, values };
        m.prune(0.0);
        Ok(m)
    }

    /// Drops entries with modulus at most `tol`.
    pub fn prune(&mut self, tol: f64) {
        let mut indptr = vec![0; self.rows + 1];
        let mut indices = Vec::with_capacity(self.indices.len());
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let v = self.values[k];
                if v.norm() > tol {
                    indices.push(self.indices[k]);
                    values.push(v);
                }
            }
            indptr[r + 1] = indices.len();
        }
        self.indptr = indptr;
        self.indices = indices;
        self.values = values;
    }

    pub fn from_dense(m: &ComplexMatrix) -> Self {
        let mut indptr = vec![0; m.rows() + 1];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for r in 0..m.rows() {
            for (c, &v) in m.row(r).iter().enumerate() {
                if v.re != 0.0 || v.im != 0.0 {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr[r + 1] = indices.len();
        }
        Self { rows: m.rows(), cols: m.cols(), indptr, indices, values }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut d = ComplexMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            d[(r, c)] = v;
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values stored in row `r`.
    pub fn row(&self, r: usize) -> (&[usize], &[C64]) {
        let span = self.indptr[r]..self.indptr[r + 1];
        (&self.indices[span.clone()], &self.values[span])
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let (idx, val) = self.row(r);
        match idx.binary_search(&c) {
            Ok(k) => val[k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.values[k]))
        })
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(r, c, _)| r == c)
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = self.clone();
        for v in &mut m.values {
            *v *= s;
        }
        m.prune(0.0);
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.iter().map(|(r, c, v)| (c, r, v.conj())))
            .expect("adjoint stays in range")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combination(&[(C64::new(1.0, 0.0), self), (C64::new(1.0, 0.0), other)])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combination(&[(C64::new(1.0, 0.0), self), (C64::new(-1.0, 0.0), other)])
    }

    /// `Σ cᵢ Mᵢ` over matrices of one shape.
    pub fn linear_combination(terms: &[(C64, &Self)]) -> Result<Self> {
        let Some(&(_, first)) = terms.first() else {
            return Err(Error::InvalidArgument("empty linear combination".into()));
        };
        let shape = first.shape();
        let mut triplets = Vec::new();
        for &(coef, m) in terms {
            if m.shape() != shape {
                return Err(dim_err("linear_combination", shape, m.shape()));
            }
            if coef.re == 0.0 && coef.im == 0.0 {
                continue;
            }
            triplets.extend(m.iter().map(|(r, c, v)| (r, c, coef * v)));
        }
        Self::from_triplets(shape.0, shape.1, triplets)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(dim_err("sparse matmul", self.shape(), other.shape()));
        }
        let mut acc = vec![C64::new(0.0, 0.0); other.cols];
        let mut mark = vec![usize::MAX; other.cols];
        let mut indptr = vec![0; self.rows + 1];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..self.rows {
            touched.clear();
            let (ai, av) = self.row(r);
            for (&k, &a) in ai.iter().zip(av) {
                let (bi, bv) = other.row(k);
                for (&c, &b) in bi.iter().zip(bv) {
                    if mark[c] != r {
                        mark[c] = r;
                        acc[c] = C64::new(0.0, 0.0);
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                let v = acc[c];
                if v.re != 0.0 || v.im != 0.0 {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr[r + 1] = indices.len();
        }
        Ok(Self { rows: self.rows, cols: other.cols, indptr, indices, values })
    }

    /// Product with a dense matrix.
    pub fn mul_dense(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != m.rows() {
            return Err(dim_err("sparse x dense", self.shape(), m.shape()));
        }
        let k = m.cols();
        let mut out = ComplexMatrix::zeros(self.rows, k);
        let data = out.as_mut_slice();
        for r in 0..self.rows {
            let (idx, val) = self.row(r);
            let orow = &mut data[r * k..(r + 1) * k];
            for (&c, &a) in idx.iter().zip(val) {
                for (o, &b) in orow.iter_mut().zip(m.row(c)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(dim_err("sparse mul_vec", self.shape(), (v.len(), 1)));
        }
        Ok((0..self.rows)
            .map(|r| {
                let (idx, val) = self.row(r);
                idx.iter().zip(val).map(|(&c, &a)| a * v[c]).sum()
            })
            .collect())
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = other.shape();
        let mut t = Vec::with_capacity(self.nnz() * other.nnz());
        for (r1, c1, v1) in self.iter() {
            for (r2, c2, v2) in other.iter() {
                t.push((r1 * p + r2, c1 * q + c2, v1 * v2));
            }
        }
        Self::from_triplets(self.rows * p, self.cols * q, t).expect("kron stays in range")
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let mut sums = vec![0.0; self.cols];
        for (_, c, v) in self.iter() {
            sums[c] += v.norm();
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Restriction to the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            pos[c] = j;
        }
        let mut t = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            let (idx, val) = self.row(r);
            for (&c, &v) in idx.iter().zip(val) {
                if pos[c] != usize::MAX {
                    t.push((i, pos[c], v));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), t).expect("submatrix stays in range")
    }

    /// Connected components of the symmetric sparsity graph of a square matrix.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        super::connected_blocks(self.rows, self.iter().map(|(r, c, _)| (r, c)))
    }
}
