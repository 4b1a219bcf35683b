//! Q-weighted, Z-weighted and P-finite automata and their exact semantics.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_integer, Poly, Rational};
use crate::error::{Error, Result};
use crate::linalg::{dot, MatrixPoly, MatrixQ};

/// A finite sequence of letters; letters are arbitrary non-empty tokens.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<String>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Self {
        Word(letters.into_iter().map(Into::into).collect())
    }

    /// One letter per character: `Word::chars("ab")`.
    pub fn chars(s: &str) -> Self {
        Word(s.chars().map(String::from).collect())
    }

    /// `a^k`
    pub fn power(letter: &str, k: usize) -> Self {
        Word(vec![letter.to_string(); k])
    }

    /// Parses user input against an alphabet. Whitespace separates tokens;
    /// without whitespace, each character is a letter when every letter of
    /// the alphabet is a single character. `""` and `"ε"` denote the empty word.
    pub fn parse(s: &str, alphabet: &[String]) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        let word = if s.contains(char::is_whitespace) {
            Word::from_letters(s.split_whitespace())
        } else if alphabet.iter().all(|l| l.chars().count() == 1) {
            Word::chars(s)
        } else {
            Word::from_letters([s])
        };
        for l in &word.0 {
            if !alphabet.contains(l) {
                return Err(Error::UnknownLetter(l.clone()));
            }
        }
        Ok(word)
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    /// `self · letter`
    pub fn append(&self, letter: &str) -> Word {
        let mut v = self.0.clone();
        v.push(letter.to_string());
        Word(v)
    }

    /// `letter · self`
    pub fn prepend(&self, letter: &str) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter.to_string());
        v.extend(self.0.iter().cloned());
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Compact rendering: letters concatenated when all are single
    /// characters, space separated otherwise; empty string for ε.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|l| l.chars().count() == 1) {
            self.0.concat()
        } else {
            self.0.join(" ")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", self.compact())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// All words over `alphabet` of length at most `max_len`, shortlex order.
pub fn words_up_to(alphabet: &[String], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |l| w.append(l)))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn check_alphabet(alphabet: &[String]) -> Result<()> {
    for (i, l) in alphabet.iter().enumerate() {
        if l.is_empty() {
            return Err(Error::Shape("empty letter".into()));
        }
        if alphabet[..i].contains(l) {
            return Err(Error::Shape(format!("duplicate letter `{l}`")));
        }
    }
    Ok(())
}

fn letter_index(alphabet: &[String], letter: &str) -> Result<usize> {
    alphabet
        .iter()
        .position(|l| l == letter)
        .ok_or_else(|| Error::UnknownLetter(letter.to_string()))
}

/// `(α, μ, β)` with rational entries; semantics `α μ(w) β`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QAutomaton {
    alphabet: Vec<String>,
    initial: Vec<Rational>,
    transitions: Vec<MatrixQ>,
    final_weights: Vec<Rational>,
}

impl QAutomaton {
    /// `transitions[i]` is the matrix of `alphabet[i]`.
    pub fn new(
        alphabet: Vec<String>,
        initial: Vec<Rational>,
        transitions: Vec<MatrixQ>,
        final_weights: Vec<Rational>,
    ) -> Result<Self> {
        check_alphabet(&alphabet)?;
        let n = initial.len();
        if final_weights.len() != n {
            return Err(Error::Shape(format!(
                "final vector has length {}, expected {n}",
                final_weights.len()
            )));
        }
        if transitions.len() != alphabet.len() {
            return Err(Error::Shape(
                "one transition matrix per letter expected".into(),
            ));
        }
        if let Some(m) = transitions.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape(format!(
                "transition matrix is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(QAutomaton {
            alphabet,
            initial,
            transitions,
            final_weights,
        })
    }

    /// The dimension-`n` automaton with all weights zero.
    pub fn zero(alphabet: Vec<String>, n: usize) -> Self {
        let transitions = alphabet.iter().map(|_| MatrixQ::zeros(n, n)).collect();
        QAutomaton {
            alphabet,
            initial: vec![Rational::zero(); n],
            transitions,
            final_weights: vec![Rational::zero(); n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.initial.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[Rational] {
        &self.final_weights
    }

    pub fn transitions(&self) -> &[MatrixQ] {
        &self.transitions
    }

    pub fn transition(&self, letter: &str) -> Result<&MatrixQ> {
        Ok(&self.transitions[letter_index(&self.alphabet, letter)?])
    }

    /// `α μ(w)`
    pub fn forward_vector(&self, w: &Word) -> Result<Vec<Rational>> {
        let mut x = self.initial.clone();
        for l in w.letters() {
            x = self.transition(l)?.left_mul(&x);
        }
        Ok(x)
    }

    /// `μ(w) β`
    pub fn backward_vector(&self, w: &Word) -> Result<Vec<Rational>> {
        let mut v = self.final_weights.clone();
        for l in w.letters().iter().rev() {
            v = self.transition(l)?.right_mul(&v);
        }
        Ok(v)
    }

    pub fn eval(&self, w: &Word) -> Result<Rational> {
        Ok(dot(&self.forward_vector(w)?, &self.final_weights))
    }

    pub fn is_integral(&self) -> bool {
        self.initial
            .iter()
            .chain(&self.final_weights)
            .all(is_integer)
            && self.transitions.iter().all(|m| m.entries().all(is_integer))
    }

    /// The Z-weighted view, present iff every entry is an integer.
    pub fn as_z_automaton(&self) -> Option<ZAutomaton> {
        self.is_integral().then(|| ZAutomaton(self.clone()))
    }

    /// Degree-0 P-finite automaton with the same semantics.
    pub fn lift(&self) -> PAutomaton {
        PAutomaton {
            alphabet: self.alphabet.clone(),
            initial: self.initial.clone(),
            transitions: self.transitions.iter().map(MatrixQ::to_poly).collect(),
            final_weights: self
                .final_weights
                .iter()
                .cloned()
                .map(Poly::constant)
                .collect(),
        }
    }
}

/// A Q-weighted automaton whose entries are all integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZAutomaton(QAutomaton);

impl ZAutomaton {
    pub fn new(a: QAutomaton) -> Result<Self> {
        if !a.is_integral() {
            return Err(Error::NotInteger(
                "automaton has a non-integer weight".into(),
            ));
        }
        Ok(ZAutomaton(a))
    }

    pub fn as_q(&self) -> &QAutomaton {
        &self.0
    }

    pub fn into_q(self) -> QAutomaton {
        self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.dimension()
    }

    pub fn eval(&self, w: &Word) -> Result<Rational> {
        self.0.eval(w)
    }
}

/// `(α, μ(x), β(x))` where `x` counts the letters read so far; semantics
/// `α μ(σ1, 1) ⋯ μ(σk, k) β(k + 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PAutomaton {
    alphabet: Vec<String>,
    initial: Vec<Rational>,
    transitions: Vec<MatrixPoly>,
    final_weights: Vec<Poly>,
}

impl PAutomaton {
    pub fn new(
        alphabet: Vec<String>,
        initial: Vec<Rational>,
        transitions: Vec<MatrixPoly>,
        final_weights: Vec<Poly>,
    ) -> Result<Self> {
        check_alphabet(&alphabet)?;
        let n = initial.len();
        if final_weights.len() != n {
            return Err(Error::Shape(format!(
                "final vector has length {}, expected {n}",
                final_weights.len()
            )));
        }
        if transitions.len() != alphabet.len() {
            return Err(Error::Shape(
                "one transition matrix per letter expected".into(),
            ));
        }
        if let Some(m) = transitions.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape(format!(
                "transition matrix is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(PAutomaton {
            alphabet,
            initial,
            transitions,
            final_weights,
        })
    }

    pub fn zero(alphabet: Vec<String>, n: usize) -> Self {
        QAutomaton::zero(alphabet, n).lift()
    }

    pub fn dimension(&self) -> usize {
        self.initial.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[Poly] {
        &self.final_weights
    }

    pub fn transitions(&self) -> &[MatrixPoly] {
        &self.transitions
    }

    pub fn transition(&self, letter: &str) -> Result<&MatrixPoly> {
        Ok(&self.transitions[letter_index(&self.alphabet, letter)?])
    }

    /// Largest degree among transition and final entries (0 when all vanish).
    pub fn max_degree(&self) -> usize {
        let t = self
            .transitions
            .iter()
            .filter_map(MatrixPoly::max_degree)
            .max();
        let f = self.final_weights.iter().filter_map(Poly::degree).max();
        t.max(f).unwrap_or(0)
    }

    /// `α μ(w, 1)`, i.e. the state vector after reading `w`.
    pub fn forward_vector(&self, w: &Word) -> Result<Vec<Rational>> {
        let mut x = self.initial.clone();
        for (i, l) in w.letters().iter().enumerate() {
            let m = self.transition(l)?;
            let k = Rational::from_integer((i as i64 + 1).into());
            x = m.eval_at(&k).left_mul(&x);
        }
        Ok(x)
    }

    pub fn eval(&self, w: &Word) -> Result<Rational> {
        let x = self.forward_vector(w)?;
        let k = Rational::from_integer((w.len() as i64 + 1).into());
        let beta: Vec<Rational> = self.final_weights.iter().map(|p| p.eval(&k)).collect();
        Ok(dot(&x, &beta))
    }

    /// `B(u)(x) = μ(u, x) β(x + |u|)`, via `B(σw) = μ(σ, x) B(w)(x + 1)`.
    pub fn backward_vector(&self, u: &Word) -> Result<Vec<Poly>> {
        let mut v = self.final_weights.clone();
        for l in u.letters().iter().rev() {
            v = self.backward_step(l, &v)?;
        }
        Ok(v)
    }

    /// `μ(σ, x) · v(x + 1)`
    pub fn backward_step(&self, letter: &str, v: &[Poly]) -> Result<Vec<Poly>> {
        let shifted: Vec<Poly> = v.iter().map(Poly::shift).collect();
        Ok(self.transition(letter)?.right_mul(&shifted))
    }

    /// Block-diagonal automaton computing `⟦a1⟧ - ⟦a2⟧`.
    pub fn difference(a1: &PAutomaton, a2: &PAutomaton) -> Result<PAutomaton> {
        if a1.alphabet != a2.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let initial = a1
            .initial
            .iter()
            .cloned()
            .chain(a2.initial.iter().map(|q| -q.clone()))
            .collect();
        let transitions = a1
            .transitions
            .iter()
            .zip(&a2.transitions)
            .map(|(m1, m2)| m1.direct_sum(m2))
            .collect();
        let final_weights = a1
            .final_weights
            .iter()
            .chain(&a2.final_weights)
            .cloned()
            .collect();
        Ok(PAutomaton {
            alphabet: a1.alphabet.clone(),
            initial,
            transitions,
            final_weights,
        })
    }

    /// The Q-weighted automaton, when every weight is a constant.
    pub fn to_q(&self) -> Option<QAutomaton> {
        let all_constant = self
            .transitions
            .iter()
            .all(|m| m.entries().all(Poly::is_constant))
            && self.final_weights.iter().all(Poly::is_constant);
        all_constant.then(|| QAutomaton {
            alphabet: self.alphabet.clone(),
            initial: self.initial.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|m| m.map(|p| p.coeff(0)))
                .collect(),
            final_weights: self.final_weights.iter().map(|p| p.coeff(0)).collect(),
        })
    }
}

/// Unit vector `e_i` of length `n`.
pub fn unit_vector<T: Zero + One + Clone>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}
