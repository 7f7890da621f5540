use std::fmt;

use super::{Field, LinAlgError, Scalar};

/// Dense matrix over an exact field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(
        field: Field,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(LinAlgError::BadScalar(bad.to_string()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n * m);
        for r in rows {
            assert_eq!(r.len(), m, "ragged rows");
            data.extend(r.iter().map(|&v| field.from_i64(v)));
        }
        Matrix {
            field,
            rows: n,
            cols: m,
            data,
        }
    }

    pub fn column(field: Field, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Matrix {
            field,
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn row_vector(field: Field, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Matrix {
            field,
            rows: 1,
            cols: n,
            data: entries,
        }
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let idx = r * self.cols + c;
        self.data[idx] = &self.data[idx] + v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    fn same_shape(&self, other: &Matrix, what: &str) {
        assert_eq!(
            self.shape(),
            other.shape(),
            "shape mismatch in {what}: {:?} vs {:?}",
            self.shape(),
            other.shape()
        );
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.same_shape(other, "add");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.same_shape(other, "sub");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Matrix product `self · other`. Panics on incompatible shapes.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols,
            other.rows,
            "cannot multiply {:?} by {:?}",
            self.shape(),
            other.shape()
        );
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        // Row-sparse accumulation: most operators built here are very sparse.
        let other_rows: Vec<Vec<(usize, &Scalar)>> = (0..other.rows)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &other_rows[k] {
                    out.add_at(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Shape(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(self.mul(other))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product, left factor major:
    /// `(a⊗b)[i·rows_b + k, j·cols_b + l] = a[i,j]·b[k,l]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (ra, ca) = self.shape();
        let (rb, cb) = other.shape();
        let mut out = Matrix::zeros(self.field, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rb + k, j * cb + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let field = parts[0].field;
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.set_block(0, off, p);
            off += p.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend(p.data.iter().cloned());
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                self.set(r0 + r, c0 + c, v.clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| {
            self.get(r0 + r, c0 + c).clone()
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |r, c| {
            self.get(r, cols[c]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |r, c| {
            self.get(rows[r], c).clone()
        })
    }

    /// Reduced row-echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for c in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead_row, p);
            let inv = m.get(lead_row, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(lead_row, j) * &inv;
                m.set(lead_row, j, v);
            }
            let pivot_row: Vec<(usize, Scalar)> = (c..m.cols)
                .filter(|&j| !m.get(lead_row, j).is_zero())
                .map(|j| (j, m.get(lead_row, j).clone()))
                .collect();
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, pv) in &pivot_row {
                    let v = m.get(r, *j) - &(&factor * pv);
                    m.set(r, *j, v);
                }
            }
            pivots.push(c);
            lead_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space as the columns of the returned matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if !v.is_zero() {
                    out.set(p, k, -v);
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        // pivots increase, so the left block is invertible iff pivot n-1 sits in column n-1
        if n > 0 && (pivots.len() < n || pivots[n - 1] != n - 1) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Row `r` of `self` becomes row `target(r)` of the result.
    pub fn permute_rows(&self, target: impl Fn(usize) -> usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            let t = target(r);
            for c in 0..self.cols {
                out.set(t, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// First column where `self` and `other` differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<usize> {
        assert_eq!(self.shape(), other.shape());
        (0..self.cols).find(|&c| (0..self.rows).any(|r| self.get(r, c) != other.get(r, c)))
    }

    /// Swap of tensor factors `U⊗V → V⊗U` for `dim U = m`, `dim V = n`.
    pub fn swap(field: Field, m: usize, n: usize) -> Matrix {
        let mut out = Matrix::zeros(field, m * n, m * n);
        for i in 0..m {
            for j in 0..n {
                out.set(j * m + i, i * n + j, field.one());
            }
        }
        out
    }

    /// Permutation matrix sending basis vector `j` to basis vector `target(j)`.
    pub fn permutation(field: Field, n: usize, target: impl Fn(usize) -> usize) -> Matrix {
        let mut out = Matrix::zeros(field, n, n);
        for j in 0..n {
            out.set(target(j), j, field.one());
        }
        out
    }

    /// Evaluation `V*⊗V → k` as a `1 × n²` row.
    pub fn evaluation(field: Field, n: usize) -> Matrix {
        let mut out = Matrix::zeros(field, 1, n * n);
        for i in 0..n {
            out.set(0, i * n + i, field.one());
        }
        out
    }

    /// Coevaluation `k → V⊗V*` as an `n² × 1` column.
    pub fn coevaluation(field: Field, n: usize) -> Matrix {
        Self::evaluation(field, n).transpose()
    }
}
