//! Dense exact matrices and the elimination kernel everything else is built on.
//!
//! Pivoting is deterministic: the first nonzero entry in scan order is taken, and rows are
//! never reordered by size heuristics. Identical inputs therefore give identical outputs,
//! including the choice of kernel and complement bases.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn scalar(n: usize, value: K) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn diagonal(values: &[K]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<K>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Matrix::from_vec",
                detail: format!("{} entries for a {rows}x{cols} matrix", data.len()),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from nested rows. `cols` disambiguates the shape when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<K>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    op: "Matrix::from_rows",
                    detail: format!("row {r} has {} entries, expected {cols}", row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Integer matrix literal; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| K::from_i64(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix literal")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<K>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[K] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<K> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.is_square()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &K) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * k.clone()).collect(),
        }
    }

    /// Columns `start..end`.
    pub fn column_range(&self, start: usize, end: usize) -> Self {
        self.submatrix(0, self.rows, start, end)
    }

    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, indices.len());
        for (j, &c) in indices.iter().enumerate() {
            for r in 0..self.rows {
                m[(r, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m[(r - r0, c - c0)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                detail: format!("{} rows vs {} rows", self.rows, other.rows),
            });
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        Ok(m)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                detail: format!("{} cols vs {} cols", self.cols, other.cols),
            });
        }
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        Ok(m)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                detail: format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        m[(r, c)] = m[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(m)
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(&K, &K) -> K) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                detail: format!(
                    "{}x{} vs {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a.clone() - b.clone())
    }

    pub fn rank(&self) -> usize {
        reduce(&mut self.clone(), self.cols, None).len()
    }

    pub fn det(&self) -> Result<K> {
        determinant(self)
    }

    pub fn inverse(&self) -> Result<Option<Self>> {
        Ok(det_and_inverse(self)?.1)
    }
}

impl<K> Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (r, c): (usize, usize)) -> &K {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl<K> IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut K {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl<K: Field> Mul for &Matrix<K> {
    type Output = Matrix<K>;
    fn mul(self, rhs: &Matrix<K>) -> Matrix<K> {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<K: Field> Add for &Matrix<K> {
    type Output = Matrix<K>;
    fn add(self, rhs: &Matrix<K>) -> Matrix<K> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<K: Field> Sub for &Matrix<K> {
    type Output = Matrix<K>;
    fn sub(self, rhs: &Matrix<K>) -> Matrix<K> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<K: Field> Neg for &Matrix<K> {
    type Output = Matrix<K>;
    fn neg(self) -> Matrix<K> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }
}

impl<K: fmt::Display> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.cols {
                write!(f, " {}", self[(r, c)])?;
            }
        }
        write!(f, " ]")
    }
}

impl<K: fmt::Debug> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}

/// Output of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<K> {
    pub reduced: Matrix<K>,
    pub pivots: Vec<usize>,
    /// Invertible, with `transform * m == reduced`.
    pub transform: Matrix<K>,
}

impl<K> Rref<K> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan reduction to reduced row-echelon form.
pub fn rref<K: Field>(m: &Matrix<K>) -> Rref<K> {
    let mut reduced = m.clone();
    let mut transform = Matrix::identity(m.rows());
    let pivots = reduce(&mut reduced, m.cols(), Some(&mut transform));
    Rref {
        reduced,
        pivots,
        transform,
    }
}

/// In-place Gauss-Jordan on the first `pivot_cols` columns of `a`, applying the same row
/// operations to `companion`. Returns the pivot columns.
fn reduce<K: Field>(
    a: &mut Matrix<K>,
    pivot_cols: usize,
    mut companion: Option<&mut Matrix<K>>,
) -> Vec<usize> {
    let rows = a.rows();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..pivot_cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&r| !a[(r, c)].is_zero()) else {
            continue;
        };
        swap_rows(a, pr, p);
        let inv = a[(pr, c)].recip();
        scale_row(a, pr, &inv);
        if let Some(t) = companion.as_deref_mut() {
            swap_rows(t, pr, p);
            scale_row(t, pr, &inv);
        }
        for r in 0..rows {
            if r != pr && !a[(r, c)].is_zero() {
                let factor = a[(r, c)].clone();
                axpy_row(a, r, pr, &factor);
                if let Some(t) = companion.as_deref_mut() {
                    axpy_row(t, r, pr, &factor);
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

fn swap_rows<K: Field>(m: &mut Matrix<K>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols {
        m.data.swap(a * m.cols + c, b * m.cols + c);
    }
}

fn scale_row<K: Field>(m: &mut Matrix<K>, r: usize, k: &K) {
    for c in 0..m.cols {
        if !m[(r, c)].is_zero() {
            m[(r, c)] = m[(r, c)].clone() * k.clone();
        }
    }
}

/// row[target] -= factor * row[source]
fn axpy_row<K: Field>(m: &mut Matrix<K>, target: usize, source: usize, factor: &K) {
    for c in 0..m.cols {
        let s = m[(source, c)].clone();
        if !s.is_zero() {
            m[(target, c)] = m[(target, c)].clone() - factor.clone() * s;
        }
    }
}

/// Columns form a basis of the null space, one per free column of the reduced form.
pub fn kernel_basis<K: Field>(m: &Matrix<K>) -> Matrix<K> {
    let mut reduced = m.clone();
    let pivots = reduce(&mut reduced, m.cols(), None);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(n, free.len());
    for (j, &f) in free.iter().enumerate() {
        basis[(f, j)] = K::one();
        for (r, &p) in pivots.iter().enumerate() {
            basis[(p, j)] = -reduced[(r, f)].clone();
        }
    }
    basis
}

/// Some `x` with `a * x == b`, or `None` when the system is inconsistent.
pub fn solve<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Result<Option<Matrix<K>>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "solve",
            detail: format!("lhs has {} rows, rhs has {}", a.rows(), b.rows()),
        });
    }
    let mut augmented = a.hstack(b)?;
    let pivots = reduce(&mut augmented, a.cols(), None);
    let n = a.cols();
    if (pivots.len()..a.rows()).any(|r| (0..b.cols()).any(|c| !augmented[(r, n + c)].is_zero())) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x[(p, c)] = augmented[(r, n + c)].clone();
        }
    }
    Ok(Some(x))
}

fn determinant<K: Field>(m: &Matrix<K>) -> Result<K> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "det",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    // Bareiss elimination: every division below is exact.
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = K::one();
    let mut prev = K::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
            return Ok(K::zero());
        };
        if p != k {
            swap_rows(&mut a, p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone()
                    - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
            a[(i, k)] = K::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(if n == 0 { K::one() } else { sign * prev })
}

/// Determinant by fraction-free elimination, and the inverse when it exists.
pub fn det_and_inverse<K: Field>(m: &Matrix<K>) -> Result<(K, Option<Matrix<K>>)> {
    let det = determinant(m)?;
    if det.is_zero() {
        return Ok((det, None));
    }
    let red = rref(m);
    debug_assert_eq!(red.rank(), m.rows());
    Ok((det, Some(red.transform)))
}

/// Extends the columns of `independent` to a basis of the column span of `within`,
/// greedily taking `within`'s columns in order. Returns `[independent | added]`.
pub fn extend_to_basis<K: Field>(independent: &Matrix<K>, within: &Matrix<K>) -> Result<Matrix<K>> {
    if independent.rows() != within.rows() {
        return Err(Error::DimensionMismatch {
            op: "extend_to_basis",
            detail: format!(
                "vectors of length {} inside a space of length {}",
                independent.rows(),
                within.rows()
            ),
        });
    }
    let k = independent.rank();
    if k != independent.cols() {
        return Err(Error::Precondition {
            op: "extend_to_basis",
            detail: "columns are linearly dependent".into(),
        });
    }
    let span_rank = within.rank();
    if independent.hstack(within)?.rank() != span_rank {
        return Err(Error::Precondition {
            op: "extend_to_basis",
            detail: "columns do not lie in the given span".into(),
        });
    }
    let mut basis = independent.clone();
    let mut rank = k;
    for c in 0..within.cols() {
        if rank == span_rank {
            break;
        }
        let candidate = basis.hstack(&within.column_range(c, c + 1))?;
        let r = candidate.rank();
        if r > rank {
            basis = candidate;
            rank = r;
        }
    }
    Ok(basis)
}
