//! Small automata used throughout the examples and tests.

use crate::arith::{rat, ratio, Poly, Rational};
use crate::automata::{PAutomaton, QAutomaton};
use crate::linalg::{Matrix, MatrixPoly, MatrixQ};

fn unary() -> Vec<String> {
    vec!["a".to_string()]
}

fn q_matrix(rows: Vec<Vec<Rational>>) -> MatrixQ {
    let c = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(rows, c)
}

fn p_matrix(rows: Vec<Vec<Poly>>) -> MatrixPoly {
    let c = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(rows, c)
}

/// `f(a^k) = 2` for even `k` and `1` for odd `k`.
pub fn program1() -> QAutomaton {
    QAutomaton::new(
        unary(),
        vec![rat(2), rat(0)],
        vec![q_matrix(vec![
            vec![rat(0), ratio(1, 2)],
            vec![rat(2), rat(0)],
        ])],
        vec![rat(1), rat(1)],
    )
    .expect("well-formed")
}

/// `f(a^(k-1)) = F_k` with `F_0 = F_1 = 1`.
pub fn fibonacci() -> QAutomaton {
    QAutomaton::new(
        unary(),
        vec![rat(1), rat(1)],
        vec![q_matrix(vec![vec![rat(1), rat(1)], vec![rat(1), rat(0)]])],
        vec![rat(1), rat(0)],
    )
    .expect("well-formed")
}

/// `f(a^(k-1)) = I_k`, the number of involutions of `{1, .., k}`.
pub fn involutions() -> PAutomaton {
    let one = Poly::from_ints(&[1]);
    PAutomaton::new(
        unary(),
        vec![rat(1), rat(1)],
        vec![p_matrix(vec![
            vec![one.clone(), one.clone()],
            vec![Poly::x(), Poly::default()],
        ])],
        vec![one, Poly::default()],
    )
    .expect("well-formed")
}

/// `f(w) = (|w| + 1)!` when `w` has an odd number of `b`s, `0` otherwise.
pub fn program3() -> PAutomaton {
    let (x, z) = (Poly::x(), Poly::default());
    PAutomaton::new(
        vec!["a".to_string(), "b".to_string()],
        vec![rat(1), rat(0)],
        vec![
            p_matrix(vec![vec![x.clone(), z.clone()], vec![z.clone(), x.clone()]]),
            p_matrix(vec![vec![z.clone(), x.clone()], vec![x.clone(), z.clone()]]),
        ],
        vec![z, x],
    )
    .expect("well-formed")
}

/// One state, `f(a^k) = 2^-k`.
pub fn halving() -> QAutomaton {
    QAutomaton::new(
        unary(),
        vec![rat(1)],
        vec![q_matrix(vec![vec![ratio(1, 2)]])],
        vec![rat(1)],
    )
    .expect("well-formed")
}

/// The zero function over `{a}` in dimension `n`.
pub fn zero(n: usize) -> QAutomaton {
    QAutomaton::zero(unary(), n)
}
