#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use pfa_core::arith::{rat, ratio, EuclideanRing, Poly, Rational, Ring};
use pfa_core::automata::words_up_to;
use pfa_core::learning::CallRecord;
use pfa_core::linalg::{Matrix, MatrixPoly, MatrixQ};
use pfa_core::{PAutomaton, QAutomaton, Word};

pub fn letters(k: usize) -> Vec<String> {
    ["a", "b", "c"][..k].iter().map(|s| s.to_string()).collect()
}

/// Laplace expansion along the first row.
pub fn det<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut total = R::zero();
    for j in 0..n {
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul_ref(&det(&minor));
        total = if j % 2 == 0 {
            total.add_ref(&term)
        } else {
            total.sub_ref(&term)
        };
    }
    total
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k x k` minors, the k-th determinantal divisor.
pub fn determinantal_divisor<R: EuclideanRing>(a: &Matrix<R>, k: usize) -> R {
    let mut g = R::zero();
    for rows in combinations(a.rows(), k) {
        for cols in combinations(a.cols(), k) {
            let sub: Vec<Vec<R>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

pub fn associates<R: EuclideanRing>(a: &R, b: &R) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    a.divides(b) && b.divides(a)
}

pub fn is_unit<R: EuclideanRing>(a: &R) -> bool {
    !a.is_zero() && a.divides(&R::one())
}

pub fn small_rational(rng: &mut StdRng) -> Rational {
    if rng.gen_bool(0.6) {
        rat(rng.gen_range(-3..=3))
    } else {
        ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
    }
}

pub fn small_poly(rng: &mut StdRng, degree: usize) -> Poly {
    let d = rng.gen_range(0..=degree);
    Poly::new((0..=d).map(|_| rat(rng.gen_range(-2..=2))).collect())
}

pub fn random_q(rng: &mut StdRng, alphabet: usize, n: usize, integral: bool) -> QAutomaton {
    let entry = |rng: &mut StdRng| {
        if integral {
            rat(rng.gen_range(-2..=2))
        } else {
            small_rational(rng)
        }
    };
    let initial = (0..n).map(|_| entry(rng)).collect();
    let transitions = (0..alphabet)
        .map(|_| Matrix::from_fn(n, n, |_, _| entry(rng)))
        .collect();
    let fin = (0..n).map(|_| entry(rng)).collect();
    QAutomaton::new(letters(alphabet), initial, transitions, fin).unwrap()
}

pub fn random_p(rng: &mut StdRng, alphabet: usize, n: usize, degree: usize) -> PAutomaton {
    let initial = (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect();
    let transitions = (0..alphabet)
        .map(|_| {
            let rows = (0..n)
                .map(|_| (0..n).map(|_| small_poly(rng, degree)).collect())
                .collect();
            MatrixPoly::from_rows(rows, n)
        })
        .collect();
    let fin = (0..n).map(|_| small_poly(rng, degree)).collect();
    PAutomaton::new(letters(alphabet), initial, transitions, fin).unwrap()
}

/// Gauss-Jordan inverse over Q.
pub fn invert(m: &MatrixQ) -> Option<MatrixQ> {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(Matrix::from_fn(n, n, |i, j| a[i][n + j].clone()))
}

/// `(α P, P^-1 μ P, P^-1 β)`, same semantics for invertible `P`.
pub fn conjugate(a: &QAutomaton, p: &MatrixQ) -> QAutomaton {
    let pinv = invert(p).expect("invertible");
    QAutomaton::new(
        a.alphabet().to_vec(),
        p.left_mul(a.initial()),
        a.transitions().iter().map(|m| pinv.mul(m).mul(p)).collect(),
        pinv.right_mul(a.final_weights()),
    )
    .unwrap()
}

pub fn random_invertible(rng: &mut StdRng, n: usize) -> MatrixQ {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| small_rational(rng));
        if invert(&m).is_some() {
            return m;
        }
    }
}

pub fn fibonacci_numbers(count: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one(), BigInt::one()];
    while f.len() < count {
        let k = f.len();
        f.push(&f[k - 1] + &f[k - 2]);
    }
    f.truncate(count);
    f
}

pub fn involution_numbers(count: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one(), BigInt::one()];
    while f.len() < count {
        let k = f.len();
        f.push(&f[k - 1] + BigInt::from(k - 1) * &f[k - 2]);
    }
    f.truncate(count);
    f
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn suffix_closed(cols: &[Word]) -> bool {
    cols.iter()
        .all(|c| (0..=c.len()).all(|i| cols.contains(&c.suffix_from(i))))
}

/// Splits recorded calls into partial-learner invocations.
pub fn attempts(calls: &[CallRecord]) -> Vec<&[CallRecord]> {
    let starts: Vec<usize> = calls
        .iter()
        .enumerate()
        .filter(|(_, c)| c.rows.len() == 1 && c.cols.len() == 1)
        .map(|(i, _)| i)
        .collect();
    starts
        .iter()
        .enumerate()
        .map(|(k, &s)| &calls[s..*starts.get(k + 1).unwrap_or(&calls.len())])
        .collect()
}

pub fn agree_up_to(a: &PAutomaton, b: &PAutomaton, len: usize) -> bool {
    words_up_to(a.alphabet(), len)
        .iter()
        .all(|w| a.eval(w).unwrap() == b.eval(w).unwrap())
}

pub fn hankel_rank(a: &PAutomaton, len: usize) -> usize {
    let words = words_up_to(a.alphabet(), len);
    let m = Matrix::from_fn(words.len(), words.len(), |i, j| {
        a.eval(&words[i].concat(&words[j])).unwrap()
    });
    pfa_core::linalg::rank_over_field(&m)
}
