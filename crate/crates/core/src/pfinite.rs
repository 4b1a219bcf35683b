//! Zeroness and equivalence of P-finite automata through generators of the
//! backward module.

use num_traits::Zero;

use crate::arith::{rat, Poly};
use crate::automata::{PAutomaton, Word};
use crate::error::Result;
use crate::linalg::{dot, FractionSpan, Submodule};

/// Words `u` whose backward vectors `B(u)` generate the backward module over Q[x].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardModuleGenerators {
    pub words: Vec<Word>,
    pub vectors: Vec<Vec<Poly>>,
    /// Number of leading generators found while the rank over Q(x) grew.
    pub rank_generators: usize,
    /// Generators added afterwards, each strictly enlarging the module.
    pub augmentations: usize,
}

impl BackwardModuleGenerators {
    pub fn rank(&self) -> usize {
        self.rank_generators - usize::from(self.vectors[0].iter().all(Poly::is_zero))
    }
}

pub fn generators_backward_module(a: &PAutomaton) -> BackwardModuleGenerators {
    let n = a.dimension();
    let mut words = vec![Word::empty()];
    let mut vectors = vec![a.final_weights().to_vec()];
    let mut span = FractionSpan::new(n);
    span.insert(&vectors[0]);

    let mut i = 0;
    while i < words.len() {
        for letter in a.alphabet() {
            let v = a.backward_step(letter, &vectors[i]).expect("own alphabet");
            if span.insert(&v) {
                words.push(words[i].prepend(letter));
                vectors.push(v);
            }
        }
        i += 1;
    }
    let rank_generators = words.len();

    let mut module = Submodule::new(n);
    for v in &vectors {
        module.push(v.clone());
    }
    let mut augmentations = 0;
    let mut i = 0;
    while i < words.len() {
        for letter in a.alphabet() {
            let v = a.backward_step(letter, &vectors[i]).expect("own alphabet");
            if module.insert(v.clone()) {
                words.push(words[i].prepend(letter));
                vectors.push(v);
                augmentations += 1;
            }
        }
        i += 1;
    }
    BackwardModuleGenerators {
        words,
        vectors,
        rank_generators,
        augmentations,
    }
}

/// `None` when the automaton computes the zero function, otherwise a word
/// with a nonzero value.
pub fn zeroness(a: &PAutomaton) -> Option<Word> {
    let gens = generators_backward_module(a);
    let one = rat(1);
    gens.words.into_iter().zip(gens.vectors).find_map(|(w, v)| {
        let at_one: Vec<_> = v.iter().map(|p| p.eval(&one)).collect();
        (!dot(a.initial(), &at_one).is_zero()).then_some(w)
    })
}

/// `None` when both automata compute the same function, otherwise a word
/// on which they differ.
pub fn equivalence(a1: &PAutomaton, a2: &PAutomaton) -> Result<Option<Word>> {
    Ok(zeroness(&PAutomaton::difference(a1, a2)?))
}
