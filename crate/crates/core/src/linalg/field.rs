//! Gaussian elimination over Q and over the fraction field Q(x).

use num_traits::{One, Zero};

use super::matrix::{MatrixPoly, MatrixQ};
use crate::arith::{Poly, Rational};

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: MatrixQ,
    pub pivots: Vec<usize>,
}

pub fn rref(a: &MatrixQ) -> Rref {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m.get(r, c).recip();
        m.scale_row(r, &inv);
        for i in 0..m.rows() {
            if i != r && !m.get(i, c).is_zero() {
                let f = -m.get(i, c).clone();
                m.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: m, pivots }
}

pub fn rank_over_field(a: &MatrixQ) -> usize {
    rref(a).pivots.len()
}

/// Some solution of `a * x = b` with every free variable set to zero.
pub fn solve_over_field(a: &MatrixQ, b: &[Rational]) -> Option<Vec<Rational>> {
    solve_many(a, std::slice::from_ref(&b.to_vec()))
        .pop()
        .flatten()
}

/// Solves `a * x = b` for several right-hand sides with one elimination.
pub fn solve_many(a: &MatrixQ, rhs: &[Vec<Rational>]) -> Vec<Option<Vec<Rational>>> {
    let n = a.cols();
    let aug = MatrixQ::from_fn(a.rows(), n + rhs.len(), |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            rhs[j - n][i].clone()
        }
    });
    // eliminate on the coefficient columns only
    let mut m = aug;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m.get(r, c).recip();
        m.scale_row(r, &inv);
        for i in 0..m.rows() {
            if i != r && !m.get(i, c).is_zero() {
                let f = -m.get(i, c).clone();
                m.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..rhs.len())
        .map(|k| {
            let col = n + k;
            if (r..m.rows()).any(|i| !m.get(i, col).is_zero()) {
                return None;
            }
            let mut x = vec![Rational::zero(); n];
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = m.get(i, col).clone();
            }
            Some(x)
        })
        .collect()
}

/// Some row vector `x` with `x * a = y`.
pub fn solve_left(a: &MatrixQ, y: &[Rational]) -> Option<Vec<Rational>> {
    solve_over_field(&a.transpose(), y)
}

/// Rank over Q(x), eliminating by cross-multiplication and keeping rows
/// primitive by dividing out their polynomial gcd.
pub fn rank_over_fraction_field(a: &MatrixPoly) -> usize {
    let mut span = FractionSpan::new(a.cols());
    for i in 0..a.rows() {
        span.insert(a.row(i));
    }
    span.rank()
}

/// Incrementally maintained echelon basis of a subspace of Q^n.
#[derive(Debug, Clone)]
pub struct RationalSpan {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RationalSpan {
    pub fn new(dim: usize) -> Self {
        RationalSpan {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank increased.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, v));
        true
    }
}

/// Incrementally maintained echelon basis of a subspace of Q(x)^n, stored
/// as primitive polynomial rows.
#[derive(Debug, Clone)]
pub struct FractionSpan {
    dim: usize,
    rows: Vec<(usize, Vec<Poly>)>,
}

impl FractionSpan {
    pub fn new(dim: usize) -> Self {
        FractionSpan {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            // v := a*v - b*row, which clears column p
            for (x, r) in v.iter_mut().zip(row) {
                *x = &(&a * x) - &(&b * r);
            }
            make_primitive(&mut v);
        }
        v
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn insert(&mut self, v: &[Poly]) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        self.rows.push((p, v));
        true
    }
}

fn make_primitive(v: &mut [Poly]) {
    let mut g = Poly::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.exact_div(&g).expect("gcd divides every entry");
    }
}
