use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;

use super::{Field, LinalgError, Scalar};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
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
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row-major data, checking the entry count and field membership.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|s| !field.contains(s)) {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows. `cols` is needed to give empty row lists a width.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(LinalgError::Shape(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        Matrix::from_vec(field, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer rows");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(self.field.contains(&value), "scalar from another field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// First nonzero entry in row-major order, with its position.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.data
            .iter()
            .position(|s| !s.is_zero())
            .map(|k| (k / self.cols, k % self.cols, &self.data[k]))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "matrix field mismatch");
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows).map(|i| dot(self.field, self.row(i), v)).collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    fn zip(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.field, rhs.field, "matrix field mismatch");
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Adds `block` into `self` at `(r0, c0)`.
    pub fn accumulate(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if b.is_zero() {
                    continue;
                }
                let idx = (r0 + i) * self.cols + c0 + j;
                self.data[idx] = &self.data[idx] + b;
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            out.data[k * self.cols..(k + 1) * self.cols].clone_from_slice(self.row(i));
        }
        out
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.paste(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            out.paste(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    /// Block-diagonal assembly.
    pub fn block_diagonal(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Matrix of `X ↦ left · X · right` acting on row-major vectorized `X`.
    ///
    /// With `X` of shape `left.cols × right.rows` this is `left ⊗ rightᵀ`.
    pub fn sandwich_operator(left: &Matrix, right: &Matrix) -> Matrix {
        assert_eq!(left.field, right.field, "matrix field mismatch");
        let field = left.field;
        let (p, q) = (left.rows, left.cols);
        let (s, t) = (right.rows, right.cols);
        // out[(i, j)][(k, l)] = left[i][k] * right[l][j]
        let mut out = Matrix::zeros(field, p * t, q * s);
        for i in 0..p {
            for k in 0..q {
                let a = left.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for l in 0..s {
                    for j in 0..t {
                        let b = right.get(l, j);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i * t + j) * (q * s) + k * s + l] = a * b;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form.
    ///
    /// Columns are scanned left to right; the pivot in each column is the
    /// first remaining row with a nonzero entry. Kernel bases and solutions
    /// derived from this form are therefore reproducible.
    pub fn rref(&self) -> Echelon {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for x in rows[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let (before, rest) = rows.split_at_mut(r);
            let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
            for other in before.iter_mut().chain(after.iter_mut()) {
                let factor = other[c].clone();
                if factor.is_zero() {
                    continue;
                }
                for (x, y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let reduced = Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: rows.into_iter().flatten().collect(),
        };
        Echelon { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column (ascending).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(row, free);
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = b`, or `None` if the system is inconsistent.
    ///
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        if b.iter().any(|s| !self.field.contains(s)) {
            return Err(LinalgError::FieldMismatch);
        }
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let aug = Matrix::hstack(self.field, self.rows, &[self, &rhs]);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(reduced.submatrix(0, n, n, n))
    }

    /// Indices of a maximal linearly independent subset of the columns, greedy from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

/// Exact dot product.
pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Rank of a family of vectors of common length `len`.
pub fn rank_of(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, len, vectors).rank()
}

/// Expresses vectors in a fixed linearly independent family.
///
/// A square invertible minor of the basis is inverted once, so repeated
/// coordinate queries cost a matrix-vector product plus a membership check.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: Matrix,
    rows: Vec<usize>,
    minor_inverse: Matrix,
}

impl SpanSolver {
    /// `vectors` must be linearly independent, each of length `len`.
    pub fn new(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let basis = Matrix::from_columns(field, len, vectors);
        let rows = basis.transpose().rref().pivots;
        if rows.len() != vectors.len() {
            return Err(LinalgError::Shape("span basis is linearly dependent".into()));
        }
        let minor_inverse = basis
            .select_rows(&rows)
            .inverse()
            .expect("pivot rows of an independent family give an invertible minor");
        Ok(SpanSolver {
            basis,
            rows,
            minor_inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.basis.rows(), "vector length mismatch");
        let picked: Vec<Scalar> = self.rows.iter().map(|&i| v[i].clone()).collect();
        let coords = self.minor_inverse.mul_vec(&picked);
        (self.basis.mul_vec(&coords) == v).then_some(coords)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}
