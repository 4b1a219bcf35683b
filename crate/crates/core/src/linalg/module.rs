//! Submodules of R^n for R = Z or Q[x], via Smith normal form.

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::{Matrix, MatrixPoly};
use super::snf::{smith_normal_form, SnfDecomposition};
use crate::arith::{EuclideanRing, Poly, Rational};

/// Solves `a * c = v` over the ring itself given the SNF of `a`.
fn solve_with_snf<R: EuclideanRing>(snf: &SnfDecomposition<R>, v: &[R]) -> Option<Vec<R>> {
    let rhs = snf.left_inverse.right_mul(v);
    let r = snf.rank();
    if rhs[r..].iter().any(|e| !e.is_zero()) {
        return None;
    }
    let m = snf.right_inverse.rows();
    let mut y = vec![R::zero(); m];
    for i in 0..r {
        y[i] = rhs[i].exact_quotient(&snf.diagonal[i])?;
    }
    Some(snf.right_inverse.right_mul(&y))
}

/// Coefficients `c` with `sum c_i * g_i = v`, when `v` lies in the R-span of
/// the generators.
pub fn module_membership<R: EuclideanRing>(generators: &[Vec<R>], v: &[R]) -> Option<Vec<R>> {
    let n = v.len();
    assert!(
        generators.iter().all(|g| g.len() == n),
        "generator length mismatch"
    );
    if generators.is_empty() {
        return v.iter().all(R::is_zero).then(Vec::new);
    }
    let a = Matrix::from_columns(generators, n);
    solve_with_snf(&smith_normal_form(&a), v)
}

/// Some Q[x]-solution of `a * x = b`, if any exists.
pub fn solve_over_polynomial_ring(a: &MatrixPoly, b: &[Poly]) -> Option<Vec<Poly>> {
    assert_eq!(a.rows(), b.len());
    solve_with_snf(&smith_normal_form(a), b)
}

/// A basis `d_1 f_1, .., d_r f_r` of the span: the first `r` columns of `S * D`.
pub fn module_basis<R: EuclideanRing>(generators: &[Vec<R>], n: usize) -> Vec<Vec<R>> {
    if generators.is_empty() {
        return Vec::new();
    }
    let snf = smith_normal_form(&Matrix::from_columns(generators, n));
    snf.diagonal
        .iter()
        .enumerate()
        .map(|(i, d)| snf.left.column(i).iter().map(|s| s.mul_ref(d)).collect())
        .collect()
}

pub fn z_basis_from_generators(generators: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = generators.first().map_or(0, Vec::len);
    module_basis(generators, n)
}

/// Converts a rational vector to integers when every entry is integral.
pub fn to_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|q| q.denom().is_one().then(|| q.numer().clone()))
        .collect()
}

pub fn to_rational_vector(v: &[BigInt]) -> Vec<Rational> {
    v.iter()
        .map(|z| Rational::from_integer(z.clone()))
        .collect()
}

/// Growing finitely generated submodule of R^n that answers membership.
///
/// The SNF of the generator matrix is cached and only recomputed after an
/// insertion.
#[derive(Debug, Clone)]
pub struct Submodule<R> {
    dim: usize,
    generators: Vec<Vec<R>>,
    snf: Option<SnfDecomposition<R>>,
}

impl<R: EuclideanRing> Submodule<R> {
    pub fn new(dim: usize) -> Self {
        Submodule {
            dim,
            generators: Vec::new(),
            snf: None,
        }
    }

    pub fn generators(&self) -> &[Vec<R>] {
        &self.generators
    }

    pub fn coefficients(&mut self, v: &[R]) -> Option<Vec<R>> {
        if self.generators.is_empty() {
            return v.iter().all(R::is_zero).then(Vec::new);
        }
        let snf = self.snf.get_or_insert_with(|| {
            smith_normal_form(&Matrix::from_columns(&self.generators, self.dim))
        });
        solve_with_snf(snf, v)
    }

    pub fn contains(&mut self, v: &[R]) -> bool {
        self.coefficients(v).is_some()
    }

    pub fn push(&mut self, v: Vec<R>) {
        assert_eq!(v.len(), self.dim);
        self.generators.push(v);
        self.snf = None;
    }

    /// Adds `v` if it is not already a member; returns whether it was added.
    pub fn insert(&mut self, v: Vec<R>) -> bool {
        if self.contains(&v) {
            return false;
        }
        self.push(v);
        true
    }
}
