//! Deciding whether a Q-weighted automaton is integer valued, and producing
//! an equivalent minimal Z-weighted automaton when it is.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{is_integer, Rational};
use crate::automata::{QAutomaton, Word, ZAutomaton};
use crate::linalg::{
    solve_left, solve_over_field, to_integer_vector, to_rational_vector, z_basis_from_generators,
    MatrixQ, RationalSpan, Submodule,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugationKind {
    Forward,
    Backward,
}

/// An automaton conjugate to some original one, with its change of basis.
///
/// Forward: `α_f F = α`, `μ_f(σ) F = F μ(σ)`, `β_f = F β`.
/// Backward: `α_b = α B`, `B μ_b(σ) = μ(σ) B`, `B β_b = β`.
#[derive(Debug, Clone)]
pub struct ConjugationResult {
    pub automaton: QAutomaton,
    pub change_of_basis: MatrixQ,
    pub kind: ConjugationKind,
}

impl ConjugationResult {
    /// Checks the defining identities against `original` exactly.
    pub fn relations_hold(&self, original: &QAutomaton) -> bool {
        let c = &self.change_of_basis;
        let conj = &self.automaton;
        let letters = original.transitions().iter().zip(conj.transitions());
        match self.kind {
            ConjugationKind::Forward => {
                c.left_mul(conj.initial()) == original.initial()
                    && letters.into_iter().all(|(m, mf)| mf.mul(c) == c.mul(m))
                    && c.right_mul(original.final_weights()) == conj.final_weights()
            }
            ConjugationKind::Backward => {
                c.left_mul(original.initial()) == conj.initial()
                    && letters.into_iter().all(|(m, mb)| c.mul(mb) == m.mul(c))
                    && c.right_mul(conj.final_weights()) == original.final_weights()
            }
        }
    }
}

/// Conjugates by a matrix whose rows span a space containing `α` and
/// closed under every `μ(σ)`. `None` if that is not the case.
pub fn forward_conjugate(a: &QAutomaton, f: &MatrixQ) -> Option<ConjugationResult> {
    let m = f.rows();
    let initial = solve_left(f, a.initial())?;
    let mut transitions = Vec::with_capacity(a.transitions().len());
    for mu in a.transitions() {
        let image = f.mul(mu);
        let rows = (0..m)
            .map(|i| solve_left(f, image.row(i)))
            .collect::<Option<Vec<_>>>()?;
        transitions.push(MatrixQ::from_rows(rows, m));
    }
    let final_weights = f.right_mul(a.final_weights());
    let automaton =
        QAutomaton::new(a.alphabet().to_vec(), initial, transitions, final_weights).ok()?;
    Some(ConjugationResult {
        automaton,
        change_of_basis: f.clone(),
        kind: ConjugationKind::Forward,
    })
}

/// Conjugates by a matrix whose columns span a space containing `β` and
/// closed under every `μ(σ)`. `None` if that is not the case.
pub fn backward_conjugate(a: &QAutomaton, b: &MatrixQ) -> Option<ConjugationResult> {
    let m = b.cols();
    let final_weights = solve_over_field(b, a.final_weights())?;
    let mut transitions = Vec::with_capacity(a.transitions().len());
    for mu in a.transitions() {
        let image = mu.mul(b);
        let cols = (0..m)
            .map(|j| solve_over_field(b, &image.column(j)))
            .collect::<Option<Vec<_>>>()?;
        transitions.push(MatrixQ::from_columns(&cols, m));
    }
    let initial = b.left_mul(a.initial());
    let automaton =
        QAutomaton::new(a.alphabet().to_vec(), initial, transitions, final_weights).ok()?;
    Some(ConjugationResult {
        automaton,
        change_of_basis: b.clone(),
        kind: ConjugationKind::Backward,
    })
}

/// Words `w` whose vectors `μ(w) β` form a basis of the backward space,
/// found breadth first by extending on the left. Always starts with `ε`,
/// even when `β = 0`.
pub fn backward_basis_words(a: &QAutomaton) -> Vec<Word> {
    let mut span = RationalSpan::new(a.dimension());
    span.insert(a.final_weights());
    let mut words = vec![Word::empty()];
    let mut vectors = vec![a.final_weights().to_vec()];
    let mut i = 0;
    while i < words.len() {
        for (letter, mu) in a.alphabet().iter().zip(a.transitions()) {
            let v = mu.right_mul(&vectors[i]);
            if span.insert(&v) {
                words.push(words[i].prepend(letter));
                vectors.push(v);
            }
        }
        i += 1;
    }
    words
}

/// Words `w` whose vectors `α μ(w)` form a basis of the forward space,
/// found breadth first by extending on the right.
pub fn forward_basis_words(a: &QAutomaton) -> Vec<Word> {
    let mut span = RationalSpan::new(a.dimension());
    span.insert(a.initial());
    let mut words = vec![Word::empty()];
    let mut vectors = vec![a.initial().to_vec()];
    let mut i = 0;
    while i < words.len() {
        for (letter, mu) in a.alphabet().iter().zip(a.transitions()) {
            let v = mu.left_mul(&vectors[i]);
            if span.insert(&v) {
                words.push(words[i].append(letter));
                vectors.push(v);
            }
        }
        i += 1;
    }
    words
}

fn nonzero_columns(vectors: Vec<Vec<Rational>>, n: usize) -> MatrixQ {
    let cols: Vec<Vec<Rational>> = vectors
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    MatrixQ::from_columns(&cols, n)
}

/// Backward conjugate on a basis of the backward space, with the words
/// that index its states.
pub fn backward_reduce(a: &QAutomaton) -> (ConjugationResult, Vec<Word>) {
    let words: Vec<Word> = backward_basis_words(a)
        .into_iter()
        .filter(|w| {
            a.backward_vector(w)
                .expect("basis words use the alphabet")
                .iter()
                .any(|x| !x.is_zero())
        })
        .collect();
    let vectors = words
        .iter()
        .map(|w| a.backward_vector(w).expect("alphabet"))
        .collect();
    let b = nonzero_columns(vectors, a.dimension());
    let conj = backward_conjugate(a, &b).expect("the backward basis spans a closed space");
    (conj, words)
}

/// Forward conjugate on a basis of the forward space.
pub fn forward_reduce(a: &QAutomaton) -> ConjugationResult {
    let rows: Vec<Vec<Rational>> = forward_basis_words(a)
        .iter()
        .map(|w| a.forward_vector(w).expect("alphabet"))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let f = MatrixQ::from_rows(rows, a.dimension());
    forward_conjugate(a, &f).expect("the forward basis spans a closed space")
}

/// A minimal equivalent Q-weighted automaton; the zero function gives
/// dimension 0.
pub fn minimize_q(a: &QAutomaton) -> QAutomaton {
    let (back, _) = backward_reduce(a);
    forward_reduce(&back.automaton).automaton
}

/// Generators of the forward Z-module found by [`integer_generators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardGenerators {
    pub words: Vec<Word>,
    pub vectors: Vec<Vec<BigInt>>,
    /// Words added while the rank over Q was still growing.
    pub rank_steps: usize,
    /// Words added afterwards, each strictly enlarging the Z-module.
    pub augmentations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSearch {
    /// `α μ(w)` has a non-integer entry.
    Witness(Word),
    Generators(ForwardGenerators),
}

/// Searches for generators of the forward Z-module, stopping at the first
/// reachable vector that is not integral.
pub fn integer_generators(a: &QAutomaton) -> GeneratorSearch {
    let n = a.dimension();
    let Some(alpha) = to_integer_vector(a.initial()) else {
        return GeneratorSearch::Witness(Word::empty());
    };
    let mut words = vec![Word::empty()];
    let mut vectors = vec![alpha];
    let mut span = RationalSpan::new(n);
    span.insert(a.initial());

    let letters: Vec<(&String, &MatrixQ)> = a.alphabet().iter().zip(a.transitions()).collect();
    let mut i = 0;
    while i < words.len() {
        for &(letter, mu) in &letters {
            let v = mu.left_mul(&to_rational_vector(&vectors[i]));
            if span.contains(&v) {
                continue;
            }
            span.insert(&v);
            let w = words[i].append(letter);
            let Some(z) = to_integer_vector(&v) else {
                return GeneratorSearch::Witness(w);
            };
            words.push(w);
            vectors.push(z);
        }
        i += 1;
    }
    let rank_steps = words.len() - 1;

    let mut module = Submodule::new(n);
    for v in &vectors {
        module.push(v.clone());
    }
    let mut augmentations = 0;
    let mut i = 0;
    while i < words.len() {
        for &(letter, mu) in &letters {
            let v = mu.left_mul(&to_rational_vector(&vectors[i]));
            let w = words[i].append(letter);
            let Some(z) = to_integer_vector(&v) else {
                return GeneratorSearch::Witness(w);
            };
            if module.insert(z.clone()) {
                words.push(w);
                vectors.push(z);
                augmentations += 1;
            }
        }
        i += 1;
    }
    GeneratorSearch::Generators(ForwardGenerators {
        words,
        vectors,
        rank_steps,
        augmentations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZOutcome {
    /// A word whose value is not an integer.
    Witness(Word),
    Automaton(ZAutomaton),
}

/// Either a word on which `a` takes a non-integer value, or an equivalent
/// Z-weighted automaton that is minimal as a Q-weighted automaton.
pub fn compute_z(a: &QAutomaton) -> ZOutcome {
    let (back, basis_words) = backward_reduce(a);
    let a1 = &back.automaton;
    match integer_generators(a1) {
        GeneratorSearch::Witness(w) => {
            let x = a1.forward_vector(&w).expect("alphabet");
            let i = x
                .iter()
                .position(|q| !is_integer(q))
                .expect("witness vector is not integral");
            ZOutcome::Witness(w.concat(&basis_words[i]))
        }
        GeneratorSearch::Generators(g) => {
            let basis = z_basis_from_generators(&g.vectors);
            let rows = basis.iter().map(|v| to_rational_vector(v)).collect();
            let f = MatrixQ::from_rows(rows, a1.dimension());
            let conj = forward_conjugate(a1, &f)
                .expect("a Z-basis of the forward module spans the forward space");
            ZOutcome::Automaton(
                ZAutomaton::new(conj.automaton).expect("conjugate by a Z-basis is integral"),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::automata::words_up_to;
    use crate::fixtures;

    fn agree(a: &QAutomaton, b: &QAutomaton, len: usize) -> bool {
        words_up_to(a.alphabet(), len)
            .iter()
            .all(|w| a.eval(w).unwrap() == b.eval(w).unwrap())
    }

    #[test]
    fn backward_basis_examples() {
        assert_eq!(
            backward_basis_words(&fixtures::fibonacci()),
            vec![Word::empty(), Word::chars("a")]
        );
        assert_eq!(
            backward_basis_words(&fixtures::zero(3)),
            vec![Word::empty()]
        );
        assert_eq!(
            backward_basis_words(&fixtures::halving()),
            vec![Word::empty()]
        );
    }

    #[test]
    fn halving_witness() {
        assert_eq!(
            integer_generators(&fixtures::halving()),
            GeneratorSearch::Witness(Word::chars("a"))
        );
        assert_eq!(
            compute_z(&fixtures::halving()),
            ZOutcome::Witness(Word::chars("a"))
        );
    }

    #[test]
    fn non_integral_initial_vector() {
        let a = QAutomaton::new(
            vec!["a".into()],
            vec![ratio(1, 3)],
            vec![MatrixQ::identity(1)],
            vec![rat(3)],
        )
        .unwrap();
        assert_eq!(
            integer_generators(&a),
            GeneratorSearch::Witness(Word::empty())
        );
        // values are all 1, so the conjugated search must succeed
        assert!(matches!(compute_z(&a), ZOutcome::Automaton(_)));
    }

    #[test]
    fn program_one_to_z() {
        let a = fixtures::program1();
        let ZOutcome::Automaton(z) = compute_z(&a) else {
            panic!("f1 is integer valued")
        };
        assert_eq!(z.dimension(), 2);
        for k in 0..=10 {
            let w = Word::power("a", k);
            assert_eq!(z.eval(&w).unwrap(), rat(if k % 2 == 0 { 2 } else { 1 }));
        }
    }

    #[test]
    fn fibonacci_to_z() {
        let a = fixtures::fibonacci();
        let ZOutcome::Automaton(z) = compute_z(&a) else {
            panic!("integral")
        };
        assert_eq!(z.dimension(), 2);
        assert!(agree(&a, z.as_q(), 8));
        match integer_generators(&a) {
            GeneratorSearch::Generators(g) => {
                for (w, v) in g.words.iter().zip(&g.vectors) {
                    assert_eq!(&to_rational_vector(v), &a.forward_vector(w).unwrap());
                }
            }
            GeneratorSearch::Witness(w) => panic!("unexpected witness {w}"),
        }
    }

    #[test]
    fn conjugates_satisfy_relations() {
        let a = fixtures::program1();
        let (back, _) = backward_reduce(&a);
        assert!(back.relations_hold(&a));
        let fwd = forward_reduce(&back.automaton);
        assert!(fwd.relations_hold(&back.automaton));
        assert!(agree(&a, &fwd.automaton, 8));
    }

    #[test]
    fn minimize_examples() {
        let fib = fixtures::fibonacci();
        let doubled = QAutomaton::new(
            fib.alphabet().to_vec(),
            [fib.initial(), fib.initial()].concat(),
            vec![fib.transitions()[0].direct_sum(&fib.transitions()[0])],
            [fib.final_weights(), fib.final_weights()].concat(),
        )
        .unwrap();
        let m = minimize_q(&doubled);
        assert_eq!(m.dimension(), 2);
        for k in 0..=8 {
            let w = Word::power("a", k);
            assert_eq!(m.eval(&w).unwrap(), rat(2) * fib.eval(&w).unwrap());
        }
        assert_eq!(minimize_q(&fib).dimension(), 2);
        let z = minimize_q(&fixtures::zero(4));
        assert_eq!(z.dimension(), 0);
        assert_eq!(z.eval(&Word::power("a", 3)).unwrap(), rat(0));
        assert_eq!(minimize_q(&m).dimension(), 2);
    }

    #[test]
    fn zero_function_to_z() {
        let ZOutcome::Automaton(z) = compute_z(&fixtures::zero(2)) else {
            panic!()
        };
        assert_eq!(z.dimension(), 0);
    }
}
