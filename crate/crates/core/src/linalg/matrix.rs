use std::fmt;

use num_bigint::BigInt;

use crate::arith::{Poly, Rational, Ring};

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatrixQ = Matrix<Rational>;
pub type MatrixZ = Matrix<BigInt>;
pub type MatrixPoly = Matrix<Poly>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from rows; all rows must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds the matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
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
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, row: &[T]) -> Vec<T> {
        assert_eq!(row.len(), self.rows, "row vector length mismatch");
        let mut out = vec![T::zero(); self.cols];
        for (k, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o = o.add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn right_mul(&self, col: &[T]) -> Vec<T> {
        assert_eq!(col.len(), self.cols, "column vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), col)).collect()
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix<T>) -> Matrix<T> {
        let (r, c) = (self.rows, self.cols);
        Matrix::from_fn(r + other.rows, c + other.cols, |i, j| {
            if i < r && j < c {
                self.get(i, j).clone()
            } else if i >= r && j >= c {
                other.get(i - r, j - c).clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn hstack(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<T> {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<T> {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Determinant by cofactor expansion; only meant for the small matrices
    /// checked in tests and invariants.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        det_rec(self, 0, &idx)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j).add_ref(&c.mul_ref(s));
            self.set(target, j, v);
        }
    }

    /// `col[target] += c * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, target).add_ref(&c.mul_ref(s));
            self.set(i, target, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul_ref(c);
            self.set(i, j, v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul_ref(c);
            self.set(i, j, v);
        }
    }
}

fn det_rec<T: Ring>(m: &Matrix<T>, row: usize, cols: &[usize]) -> T {
    if cols.is_empty() {
        return T::one();
    }
    let mut acc = T::zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.mul_ref(&det_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    acc
}

pub fn dot<T: Ring>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add_ref(&x.mul_ref(y));
        }
    }
    acc
}

impl MatrixPoly {
    /// Entrywise evaluation at `x = k`.
    pub fn eval_at(&self, k: &Rational) -> MatrixQ {
        self.map(|p| p.eval(k))
    }

    /// Entrywise substitution `x -> x + k`.
    pub fn shift_by(&self, k: i64) -> MatrixPoly {
        self.map(|p| p.shift_by(k))
    }

    /// Largest entry degree, `None` when every entry is zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries().filter_map(Poly::degree).max()
    }
}

impl MatrixQ {
    pub fn to_poly(&self) -> MatrixPoly {
        self.map(|q| Poly::constant(q.clone()))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}
