//! Smith normal form over a Euclidean domain (Z or Q[x]).

use super::matrix::Matrix;
use crate::arith::EuclideanRing;

/// `A = S * diag(d_1, .., d_r, 0, ..) * T` with `S`, `T` invertible over the ring.
///
/// The inverses of both transforms are tracked alongside, since module
/// membership needs `S^-1` and `T^-1` rather than `S` and `T`.
#[derive(Debug, Clone)]
pub struct SnfDecomposition<R> {
    pub left: Matrix<R>,
    pub left_inverse: Matrix<R>,
    /// Nonzero invariant factors, each dividing the next.
    pub diagonal: Vec<R>,
    pub right: Matrix<R>,
    pub right_inverse: Matrix<R>,
}

impl<R: EuclideanRing> SnfDecomposition<R> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The full `rows x cols` diagonal factor.
    pub fn diagonal_matrix(&self) -> Matrix<R> {
        let (n, m) = (self.left.rows(), self.right.rows());
        Matrix::from_fn(n, m, |i, j| {
            if i == j && i < self.diagonal.len() {
                self.diagonal[i].clone()
            } else {
                R::zero()
            }
        })
    }

    pub fn reconstruct(&self) -> Matrix<R> {
        self.left.mul(&self.diagonal_matrix()).mul(&self.right)
    }
}

struct Work<R> {
    d: Matrix<R>,
    p: Matrix<R>,
    s: Matrix<R>,
    q: Matrix<R>,
    t: Matrix<R>,
}

impl<R: EuclideanRing> Work<R> {
    fn row_add(&mut self, target: usize, source: usize, c: &R) {
        self.d.add_row_multiple(target, source, c);
        self.p.add_row_multiple(target, source, c);
        self.s.add_col_multiple(source, target, &-c.clone());
    }

    fn col_add(&mut self, target: usize, source: usize, c: &R) {
        self.d.add_col_multiple(target, source, c);
        self.q.add_col_multiple(target, source, c);
        self.t.add_row_multiple(source, target, &-c.clone());
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.p.swap_rows(a, b);
        self.s.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.t.swap_rows(a, b);
    }

    fn row_scale(&mut self, i: usize, unit: &R, inverse: &R) {
        self.d.scale_row(i, unit);
        self.p.scale_row(i, unit);
        self.s.scale_col(i, inverse);
    }
}

pub fn smith_normal_form<R: EuclideanRing>(a: &Matrix<R>) -> SnfDecomposition<R> {
    let (n, m) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        p: Matrix::identity(n),
        s: Matrix::identity(n),
        q: Matrix::identity(m),
        t: Matrix::identity(m),
    };
    let mut diagonal = Vec::new();
    for k in 0..n.min(m) {
        let Some((pi, pj)) = min_entry(&w.d, k..n, k..m) else {
            break;
        };
        w.row_swap(k, pi);
        w.col_swap(k, pj);
        loop {
            let pivot = w.d.get(k, k).clone();
            for i in k + 1..n {
                if !w.d.get(i, k).is_zero() {
                    let (quo, _) = w.d.get(i, k).div_rem_euclid(&pivot);
                    w.row_add(i, k, &-quo);
                }
            }
            if let Some((i, _)) = min_entry(&w.d, k + 1..n, k..k + 1) {
                w.row_swap(k, i);
                continue;
            }
            for j in k + 1..m {
                if !w.d.get(k, j).is_zero() {
                    let (quo, _) = w.d.get(k, j).div_rem_euclid(&pivot);
                    w.col_add(j, k, &-quo);
                }
            }
            if let Some((_, j)) = min_entry(&w.d, k..k + 1, k + 1..m) {
                w.col_swap(k, j);
                continue;
            }
            let blocker = (k + 1..n).find(|&i| (k + 1..m).any(|j| !pivot.divides(w.d.get(i, j))));
            match blocker {
                Some(i) => w.row_add(k, i, &R::one()),
                None => break,
            }
        }
        let (unit, inverse) = w.d.get(k, k).normalizing_unit();
        w.row_scale(k, &unit, &inverse);
        diagonal.push(w.d.get(k, k).clone());
    }
    SnfDecomposition {
        left: w.s,
        left_inverse: w.p,
        diagonal,
        right: w.t,
        right_inverse: w.q,
    }
}

/// Position of a nonzero entry of minimal size in the given block.
fn min_entry<R: EuclideanRing>(
    d: &Matrix<R>,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), R::Size)> = None;
    for i in rows {
        for j in cols.clone() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let s = e.size();
            if best.as_ref().is_none_or(|(_, b)| s < *b) {
                best = Some(((i, j), s));
            }
        }
    }
    best.map(|(pos, _)| pos)
}
