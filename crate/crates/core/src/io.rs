//! JSON file format for automata.
//!
//! ```json
//! {
//!   "kind": "p-finite",
//!   "alphabet": ["a"],
//!   "dimension": 2,
//!   "initial": ["1", "1"],
//!   "transitions": { "a": [[["1"], ["1"]], [["0", "1"], []]] },
//!   "final": [["1"], []]
//! }
//! ```
//!
//! Q- and Z-weighted files use rational strings (`"3"`, `"-1/2"`) as
//! entries; P-finite files use ascending coefficient arrays for transition
//! and final entries.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, Poly, Rational};
use crate::automata::{PAutomaton, QAutomaton, Word, ZAutomaton};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    QWeighted,
    ZWeighted,
    PFinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Int(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Scalar(Scalar),
    Poly(Vec<Scalar>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonFile {
    kind: Kind,
    alphabet: Vec<String>,
    dimension: usize,
    initial: Vec<Scalar>,
    transitions: IndexMap<String, Vec<Vec<Entry>>>,
    #[serde(rename = "final")]
    final_weights: Vec<Entry>,
}

/// An automaton of any of the three kinds, as stored in a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Q(QAutomaton),
    Z(ZAutomaton),
    P(PAutomaton),
}

impl Automaton {
    pub fn kind(&self) -> Kind {
        match self {
            Automaton::Q(_) => Kind::QWeighted,
            Automaton::Z(_) => Kind::ZWeighted,
            Automaton::P(_) => Kind::PFinite,
        }
    }

    pub fn alphabet(&self) -> &[String] {
        match self {
            Automaton::Q(a) => a.alphabet(),
            Automaton::Z(a) => a.as_q().alphabet(),
            Automaton::P(a) => a.alphabet(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Automaton::Q(a) => a.dimension(),
            Automaton::Z(a) => a.dimension(),
            Automaton::P(a) => a.dimension(),
        }
    }

    pub fn eval(&self, w: &Word) -> Result<Rational> {
        match self {
            Automaton::Q(a) => a.eval(w),
            Automaton::Z(a) => a.eval(w),
            Automaton::P(a) => a.eval(w),
        }
    }

    /// The P-finite view; Q- and Z-weighted automata become degree 0.
    pub fn lift(&self) -> PAutomaton {
        match self {
            Automaton::Q(a) => a.lift(),
            Automaton::Z(a) => a.as_q().lift(),
            Automaton::P(a) => a.clone(),
        }
    }

    /// The Q-weighted view, if there is one.
    pub fn to_q(&self) -> Option<QAutomaton> {
        match self {
            Automaton::Q(a) => Some(a.clone()),
            Automaton::Z(a) => Some(a.as_q().clone()),
            Automaton::P(a) => a.to_q(),
        }
    }

    pub fn from_json(text: &str) -> Result<Automaton> {
        let file: AutomatonFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_automaton()
    }

    /// Canonical text: one top-level field per line, one letter per line
    /// inside `transitions`, everything else compact.
    pub fn to_json(&self) -> String {
        let value =
            serde_json::to_value(AutomatonFile::from_automaton(self)).expect("serializable");
        let compact = |v: &serde_json::Value| serde_json::to_string(v).expect("serializable");
        let obj = value.as_object().expect("object");
        let fields: Vec<String> = obj
            .iter()
            .map(|(k, v)| match v.as_object() {
                Some(map) if !map.is_empty() => {
                    let inner: Vec<String> = map
                        .iter()
                        .map(|(l, m)| {
                            format!("    {}: {}", compact(&l.as_str().into()), compact(m))
                        })
                        .collect();
                    format!("  \"{k}\": {{\n{}\n  }}", inner.join(",\n"))
                }
                _ => format!("  \"{k}\": {}", compact(v)),
            })
            .collect();
        format!("{{\n{}\n}}\n", fields.join(",\n"))
    }
}

impl From<QAutomaton> for Automaton {
    fn from(a: QAutomaton) -> Self {
        Automaton::Q(a)
    }
}

impl From<ZAutomaton> for Automaton {
    fn from(a: ZAutomaton) -> Self {
        Automaton::Z(a)
    }
}

impl From<PAutomaton> for Automaton {
    fn from(a: PAutomaton) -> Self {
        Automaton::P(a)
    }
}

fn parse_scalar(s: &Scalar) -> Result<Rational> {
    match s {
        Scalar::Int(i) => Ok(Rational::from_integer((*i).into())),
        Scalar::Text(t) => {
            parse_rational(t).ok_or_else(|| Error::Parse(format!("`{t}` is not a rational number")))
        }
    }
}

fn scalar_entry(e: &Entry) -> Result<Rational> {
    match e {
        Entry::Scalar(s) => parse_scalar(s),
        Entry::Poly(_) => Err(Error::Parse(
            "expected a number, found a coefficient array".into(),
        )),
    }
}

fn poly_entry(e: &Entry) -> Result<Poly> {
    match e {
        Entry::Poly(cs) => Ok(Poly::new(
            cs.iter().map(parse_scalar).collect::<Result<_>>()?,
        )),
        Entry::Scalar(s) => Ok(Poly::constant(parse_scalar(s)?)),
    }
}

fn text(q: &Rational) -> Scalar {
    Scalar::Text(q.to_string())
}

fn poly_text(p: &Poly) -> Entry {
    Entry::Poly(p.coeffs().iter().map(text).collect())
}

impl AutomatonFile {
    fn check_shape(&self) -> Result<()> {
        let n = self.dimension;
        if self.initial.len() != n || self.final_weights.len() != n {
            return Err(Error::Parse(format!(
                "initial and final vectors must have {n} entries"
            )));
        }
        if self.transitions.len() != self.alphabet.len()
            || self
                .alphabet
                .iter()
                .any(|l| !self.transitions.contains_key(l))
        {
            return Err(Error::Parse(
                "transitions must list exactly the letters of the alphabet".into(),
            ));
        }
        for (l, m) in &self.transitions {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!(
                    "transition matrix of `{l}` must be {n}x{n}"
                )));
            }
        }
        Ok(())
    }

    fn grid<T>(&self, letter: &str, f: impl Fn(&Entry) -> Result<T>) -> Result<Vec<Vec<T>>> {
        self.transitions[letter]
            .iter()
            .map(|row| row.iter().map(&f).collect())
            .collect()
    }

    fn into_automaton(self) -> Result<Automaton> {
        self.check_shape()?;
        let n = self.dimension;
        let initial = self
            .initial
            .iter()
            .map(parse_scalar)
            .collect::<Result<Vec<_>>>()?;
        let parsed = match self.kind {
            Kind::QWeighted | Kind::ZWeighted => {
                let transitions = self
                    .alphabet
                    .iter()
                    .map(|l| Ok(Matrix::from_rows(self.grid(l, scalar_entry)?, n)))
                    .collect::<Result<Vec<_>>>()?;
                let final_weights = self
                    .final_weights
                    .iter()
                    .map(scalar_entry)
                    .collect::<Result<Vec<_>>>()?;
                let q =
                    QAutomaton::new(self.alphabet.clone(), initial, transitions, final_weights)?;
                if self.kind == Kind::ZWeighted {
                    Automaton::Z(ZAutomaton::new(q)?)
                } else {
                    Automaton::Q(q)
                }
            }
            Kind::PFinite => {
                let transitions = self
                    .alphabet
                    .iter()
                    .map(|l| Ok(Matrix::from_rows(self.grid(l, poly_entry)?, n)))
                    .collect::<Result<Vec<_>>>()?;
                let final_weights = self
                    .final_weights
                    .iter()
                    .map(poly_entry)
                    .collect::<Result<Vec<_>>>()?;
                Automaton::P(PAutomaton::new(
                    self.alphabet.clone(),
                    initial,
                    transitions,
                    final_weights,
                )?)
            }
        };
        Ok(parsed)
    }

    fn from_automaton(a: &Automaton) -> AutomatonFile {
        let alphabet = a.alphabet().to_vec();
        let (initial, transitions, final_weights) = match a {
            Automaton::Q(_) | Automaton::Z(_) => {
                let q = a.to_q().expect("Q view");
                let transitions = alphabet
                    .iter()
                    .zip(q.transitions())
                    .map(|(l, m)| {
                        let rows = m
                            .row_vecs()
                            .iter()
                            .map(|r| r.iter().map(|x| Entry::Scalar(text(x))).collect())
                            .collect();
                        (l.clone(), rows)
                    })
                    .collect();
                (
                    q.initial().iter().map(text).collect(),
                    transitions,
                    q.final_weights()
                        .iter()
                        .map(|x| Entry::Scalar(text(x)))
                        .collect(),
                )
            }
            Automaton::P(p) => {
                let transitions = alphabet
                    .iter()
                    .zip(p.transitions())
                    .map(|(l, m)| {
                        (
                            l.clone(),
                            m.row_vecs()
                                .iter()
                                .map(|r| r.iter().map(poly_text).collect())
                                .collect(),
                        )
                    })
                    .collect();
                (
                    p.initial().iter().map(text).collect(),
                    transitions,
                    p.final_weights().iter().map(poly_text).collect(),
                )
            }
        };
        AutomatonFile {
            kind: a.kind(),
            alphabet,
            dimension: a.dimension(),
            initial,
            transitions,
            final_weights,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::fixtures;

    #[test]
    fn round_trips() {
        let all: Vec<Automaton> = vec![
            fixtures::program1().into(),
            fixtures::fibonacci().as_z_automaton().unwrap().into(),
            fixtures::involutions().into(),
            fixtures::program3().into(),
            fixtures::zero(0).into(),
        ];
        for a in all {
            let text = a.to_json();
            let back = Automaton::from_json(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn handwritten_file() {
        let text = r#"{
            "kind": "p-finite",
            "alphabet": ["a"],
            "dimension": 2,
            "initial": [1, "1"],
            "transitions": { "a": [[["1"], ["1"]], [["0", "1"], []]] },
            "final": [["1"], []]
        }"#;
        let a = Automaton::from_json(text).unwrap();
        assert_eq!(a.eval(&Word::power("a", 3)).unwrap(), rat(10));
    }

    #[test]
    fn rejects_bad_files() {
        let non_integer = r#"{"kind":"z-weighted","alphabet":["a"],"dimension":1,"initial":["1/2"],"transitions":{"a":[["1"]]},"final":["1"]}"#;
        assert!(matches!(
            Automaton::from_json(non_integer),
            Err(Error::NotInteger(_))
        ));
        let missing = r#"{"kind":"q-weighted","alphabet":["a","b"],"dimension":1,"initial":["1"],"transitions":{"a":[["1"]]},"final":["1"]}"#;
        assert!(matches!(
            Automaton::from_json(missing),
            Err(Error::Parse(_))
        ));
        let ragged = r#"{"kind":"q-weighted","alphabet":["a"],"dimension":2,"initial":["1","0"],"transitions":{"a":[["1"],["0","1"]]},"final":["1","0"]}"#;
        assert!(matches!(Automaton::from_json(ragged), Err(Error::Parse(_))));
        assert!(matches!(Automaton::from_json("{"), Err(Error::Parse(_))));
        let bad_number = r#"{"kind":"q-weighted","alphabet":["a"],"dimension":1,"initial":["x"],"transitions":{"a":[["1"]]},"final":["1"]}"#;
        assert!(matches!(
            Automaton::from_json(bad_number),
            Err(Error::Parse(_))
        ));
    }
}
