//! Exact linear algebra over Q and Q(x), and Smith normal form over Z and Q[x].

mod field;
mod matrix;
mod module;
mod snf;

pub use field::{
    rank_over_field, rank_over_fraction_field, rref, solve_left, solve_many, solve_over_field,
    FractionSpan, RationalSpan, Rref,
};
pub use matrix::{dot, Matrix, MatrixPoly, MatrixQ, MatrixZ};
pub use module::{
    module_basis, module_membership, solve_over_polynomial_ring, to_integer_vector,
    to_rational_vector, z_basis_from_generators, Submodule,
};
pub use snf::{smith_normal_form, SnfDecomposition};
