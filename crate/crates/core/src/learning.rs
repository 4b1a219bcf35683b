//! Exact learning of P-finite automata from membership and equivalence
//! queries, and of Z-weighted automata through a Q-weighted learner.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{Poly, Rational};
use crate::automata::{unit_vector, PAutomaton, Word, ZAutomaton};
use crate::error::{Error, Result};
use crate::linalg::{rank_over_field, solve_many, MatrixPoly, MatrixQ};
use crate::pfinite::equivalence;
use crate::z_fatou::{compute_z, ZOutcome};

/// A minimally adequate teacher for some hidden function.
pub trait Teacher {
    fn alphabet(&self) -> &[String];
    fn membership(&mut self, w: &Word) -> Rational;
    /// `None` if the hypothesis is correct, otherwise a word where it is wrong.
    fn equivalence(&mut self, hypothesis: &PAutomaton) -> Option<Word>;
}

/// Answers queries about a known target automaton, counting them.
#[derive(Debug, Clone)]
pub struct SimulatedTeacher {
    target: PAutomaton,
    pub membership_count: u64,
    pub equivalence_count: u64,
    pub max_counterexample_length: usize,
}

impl SimulatedTeacher {
    pub fn new(target: PAutomaton) -> Self {
        SimulatedTeacher {
            target,
            membership_count: 0,
            equivalence_count: 0,
            max_counterexample_length: 0,
        }
    }

    pub fn target(&self) -> &PAutomaton {
        &self.target
    }
}

impl Teacher for SimulatedTeacher {
    fn alphabet(&self) -> &[String] {
        self.target.alphabet()
    }

    fn membership(&mut self, w: &Word) -> Rational {
        self.membership_count += 1;
        self.target
            .eval(w)
            .expect("learner only asks about words over the alphabet")
    }

    fn equivalence(&mut self, hypothesis: &PAutomaton) -> Option<Word> {
        self.equivalence_count += 1;
        let w =
            equivalence(&self.target, hypothesis).expect("hypothesis uses the target alphabet")?;
        self.max_counterexample_length = self.max_counterexample_length.max(w.len());
        Some(w)
    }
}

/// Equivalence for Q-weighted hypotheses on top of a teacher that only
/// accepts Z-weighted ones: a non-integer value is itself a counterexample.
pub struct ZEquivTeacher<'a> {
    inner: &'a mut dyn Teacher,
}

impl<'a> ZEquivTeacher<'a> {
    pub fn new(inner: &'a mut dyn Teacher) -> Self {
        ZEquivTeacher { inner }
    }
}

impl Teacher for ZEquivTeacher<'_> {
    fn alphabet(&self) -> &[String] {
        self.inner.alphabet()
    }

    fn membership(&mut self, w: &Word) -> Rational {
        self.inner.membership(w)
    }

    fn equivalence(&mut self, hypothesis: &PAutomaton) -> Option<Word> {
        let q = hypothesis.to_q().expect("Q-weighted hypothesis");
        match compute_z(&q) {
            ZOutcome::Witness(w) => Some(w),
            ZOutcome::Automaton(z) => self.inner.equivalence(&z.as_q().lift()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "event")]
pub enum Event {
    Attempt {
        d_max: usize,
        limit: String,
    },
    Membership {
        word: Word,
        answer: String,
    },
    Equivalence {
        dimension: usize,
        counterexample: Option<Word>,
    },
    RowAdded {
        word: Word,
    },
    ColumnAdded {
        word: Word,
    },
}

/// The state of the table at one call of the partial learner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallRecord {
    pub d_max: usize,
    pub d: usize,
    pub rows: Vec<Word>,
    pub cols: Vec<Word>,
    /// Rank of the stacked matrix at degree `d`.
    pub rank: usize,
    pub all_zero: bool,
}

/// One learning run: the teacher, the membership cache, counters and the
/// transcript.
pub struct Session<'a> {
    teacher: &'a mut dyn Teacher,
    cache: HashMap<Word, Rational>,
    pub membership_queries: u64,
    pub equivalence_queries: u64,
    pub max_queries: Option<u64>,
    pub transcript: Vec<Event>,
    pub calls: Vec<CallRecord>,
}

impl<'a> Session<'a> {
    pub fn new(teacher: &'a mut dyn Teacher) -> Self {
        Session {
            teacher,
            cache: HashMap::new(),
            membership_queries: 0,
            equivalence_queries: 0,
            max_queries: None,
            transcript: Vec::new(),
            calls: Vec::new(),
        }
    }

    pub fn with_max_queries(mut self, max: Option<u64>) -> Self {
        self.max_queries = max;
        self
    }

    pub fn alphabet(&self) -> Vec<String> {
        self.teacher.alphabet().to_vec()
    }

    fn charge(&self) -> Result<()> {
        match self.max_queries {
            Some(max) if self.membership_queries + self.equivalence_queries >= max => {
                Err(Error::QueryBudgetExceeded(max))
            }
            _ => Ok(()),
        }
    }

    pub fn membership(&mut self, w: &Word) -> Result<Rational> {
        if let Some(v) = self.cache.get(w) {
            return Ok(v.clone());
        }
        self.charge()?;
        self.membership_queries += 1;
        let v = self.teacher.membership(w);
        self.transcript.push(Event::Membership {
            word: w.clone(),
            answer: v.to_string(),
        });
        self.cache.insert(w.clone(), v.clone());
        Ok(v)
    }

    pub fn equivalence(&mut self, hypothesis: &PAutomaton) -> Result<Option<Word>> {
        self.charge()?;
        self.equivalence_queries += 1;
        let answer = self.teacher.equivalence(hypothesis);
        self.transcript.push(Event::Equivalence {
            dimension: hypothesis.dimension(),
            counterexample: answer.clone(),
        });
        Ok(answer)
    }

    pub fn table(&mut self, rows: &[Word], cols: &[Word]) -> Result<HankelTable> {
        let mut h = Vec::with_capacity(rows.len());
        for r in rows {
            let row = cols
                .iter()
                .map(|c| self.membership(&r.concat(c)))
                .collect::<Result<Vec<_>>>()?;
            h.push(row);
        }
        Ok(HankelTable {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            h,
        })
    }
}

/// `H(r, c) = f(rc)` restricted to the given rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelTable {
    pub rows: Vec<Word>,
    pub cols: Vec<Word>,
    pub h: Vec<Vec<Rational>>,
}

impl HankelTable {
    pub fn is_zero(&self) -> bool {
        self.h.iter().flatten().all(Zero::is_zero)
    }
}

/// `[Δ^0 H, .., Δ^d H]` with `Δ = diag(|r_1| + 1, .., |r_m| + 1)`.
pub fn stacked_matrix(table: &HankelTable, d: usize) -> MatrixQ {
    let n = table.cols.len();
    let weights: Vec<Rational> = table
        .rows
        .iter()
        .map(|r| Rational::from_integer((r.len() as i64 + 1).into()))
        .collect();
    MatrixQ::from_fn(table.rows.len(), (d + 1) * n, |i, j| {
        let k = (j / n) as i32;
        &table.h[i][j % n] * weights[i].pow(k)
    })
}

/// The hypothesis associated with a `d`-closed table; free variables of
/// the interpolation systems are set to zero.
pub fn build_hypothesis(
    d: usize,
    table: &HankelTable,
    session: &mut Session,
) -> Result<PAutomaton> {
    let alphabet = session.alphabet();
    let n = table.cols.len();
    let final_weights: Vec<Poly> = unit_vector(n, 0);
    if table.is_zero() {
        let zero = PAutomaton::zero(alphabet, n);
        return PAutomaton::new(
            zero.alphabet().to_vec(),
            zero.initial().to_vec(),
            zero.transitions().to_vec(),
            final_weights,
        );
    }
    let a = stacked_matrix(table, d);
    let mut transitions = Vec::with_capacity(alphabet.len());
    for letter in &alphabet {
        let mut rhs = Vec::with_capacity(n);
        for c in &table.cols {
            let col = table
                .rows
                .iter()
                .map(|r| session.membership(&r.append(letter).concat(c)))
                .collect::<Result<Vec<_>>>()?;
            rhs.push(col);
        }
        let mut cols = Vec::with_capacity(n);
        for y in solve_many(&a, &rhs) {
            let y = y.ok_or_else(|| Error::NotDClosed {
                letter: letter.clone(),
                degree: d,
            })?;
            cols.push(
                (0..n)
                    .map(|i| Poly::new((0..=d).map(|k| y[i + k * n].clone()).collect()))
                    .collect::<Vec<_>>(),
            );
        }
        transitions.push(MatrixPoly::from_columns(&cols, n));
    }
    PAutomaton::new(alphabet, table.h[0].clone(), transitions, final_weights)
}

/// Splits a counterexample `w` as `u σ …` where the hypothesis is correct
/// on `u` but not on `uσ`, and finds a column `c` with
/// `f(uσc) ≠ (α μ(uσ, 1))_c`.
pub fn largest_correct_prefix(
    hypothesis: &PAutomaton,
    cols: &[Word],
    w: &Word,
    session: &mut Session,
) -> Result<(Word, String, Word)> {
    let mut x = hypothesis.initial().to_vec();
    let mut u = Word::empty();
    for letter in w.letters() {
        let k = Rational::from_integer((u.len() as i64 + 1).into());
        x = hypothesis.transition(letter)?.eval_at(&k).left_mul(&x);
        let u_sigma = u.append(letter);
        for (j, c) in cols.iter().enumerate() {
            if x[j] != session.membership(&u_sigma.concat(c))? {
                return Ok((u, letter.clone(), c.clone()));
            }
        }
        u = u_sigma;
    }
    Err(Error::NoIncorrectPrefix(w.clone()))
}

fn fits(limit: &BigUint, cols: usize) -> bool {
    *limit >= BigUint::from(cols)
}

/// Learns with degree guess `d_max` and a limit on the number of columns.
/// `Ok(None)` when the limit is exceeded.
pub fn partial_learner(
    d_max: usize,
    limit: &BigUint,
    mut rows: Vec<Word>,
    mut cols: Vec<Word>,
    session: &mut Session,
) -> Result<Option<PAutomaton>> {
    session.transcript.push(Event::Attempt {
        d_max,
        limit: limit.to_string(),
    });
    loop {
        if !fits(limit, cols.len()) {
            return Ok(None);
        }
        let d = d_max * (cols.len() + 1) * cols.len();
        let table = session.table(&rows, &cols)?;
        let all_zero = table.is_zero();
        session.calls.push(CallRecord {
            d_max,
            d,
            rows: rows.clone(),
            cols: cols.clone(),
            rank: rank_over_field(&stacked_matrix(&table, d)),
            all_zero,
        });
        let hypothesis = build_hypothesis(d, &table, session)?;
        let Some(w) = session.equivalence(&hypothesis)? else {
            return Ok(Some(hypothesis));
        };
        let (u, letter, c) = largest_correct_prefix(&hypothesis, &cols, &w, session)?;
        let new_col = c.prepend(&letter);
        if all_zero {
            let full = u.concat(&new_col);
            for start in (0..full.len()).rev() {
                let s = full.suffix_from(start);
                if !cols.contains(&s) {
                    session
                        .transcript
                        .push(Event::ColumnAdded { word: s.clone() });
                    cols.push(s);
                }
            }
            continue;
        }
        if !rows.contains(&u) {
            rows.push(u.clone());
            session.transcript.push(Event::RowAdded { word: u });
        }
        let extended = session.table(&rows, &cols)?;
        if rank_over_field(&stacked_matrix(&extended, d)) < rows.len() && !cols.contains(&new_col) {
            session.transcript.push(Event::ColumnAdded {
                word: new_col.clone(),
            });
            cols.push(new_col);
        }
    }
}

/// `2 (d + 1)^n n^(2n)`
pub fn column_limit(d: usize, n: usize) -> BigUint {
    let n32 = u32::try_from(n).expect("small dimension guess");
    BigUint::from(2u8) * BigUint::from(d + 1).pow(n32) * BigUint::from(n).pow(2 * n32)
}

/// `((y1 + 1) y2^2)^y2`
pub fn column_bound(y1: usize, y2: usize) -> BigUint {
    let e = u32::try_from(y2).expect("small dimension");
    (BigUint::from(y1 + 1) * BigUint::from(y2).pow(2)).pow(e)
}

/// Enumerates degree and dimension guesses diagonally until the partial
/// learner succeeds.
pub fn exact_learner(session: &mut Session) -> Result<PAutomaton> {
    let mut sum = 1;
    loop {
        for n in 1..=sum {
            let d = sum - n;
            let limit = column_limit(d, n);
            if let Some(a) =
                partial_learner(d, &limit, vec![Word::empty()], vec![Word::empty()], session)?
            {
                return Ok(a);
            }
        }
        sum += 1;
    }
}

/// Learns a Z-weighted target. The session's teacher must already answer
/// equivalence for Q-weighted hypotheses, e.g. through [`ZEquivTeacher`].
pub fn learn_z(session: &mut Session) -> Result<ZAutomaton> {
    let mut n = 1;
    let hypothesis = loop {
        let limit = column_limit(0, n);
        if let Some(a) =
            partial_learner(0, &limit, vec![Word::empty()], vec![Word::empty()], session)?
        {
            break a;
        }
        n += 1;
    };
    let q = hypothesis.to_q().expect("degree 0 hypothesis");
    match compute_z(&q) {
        ZOutcome::Automaton(z) => Ok(z),
        ZOutcome::Witness(w) => Err(Error::TargetNotInteger(w)),
    }
}

/// `[0_{|u|n}, α μ(u, 1), 0_{(s - |u|)n}]`
pub fn bounded_forward_vector(a: &PAutomaton, u: &Word, s: usize) -> Result<Vec<Rational>> {
    if u.len() > s {
        return Err(Error::LengthExceeded {
            len: u.len(),
            bound: s,
        });
    }
    let n = a.dimension();
    let mut v = vec![Rational::zero(); (s + 1) * n];
    for (i, x) in a.forward_vector(u)?.into_iter().enumerate() {
        v[u.len() * n + i] = x;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::automata::words_up_to;
    use crate::fixtures;
    use num_traits::One;

    fn table(session: &mut Session, rows: &[&str], cols: &[&str]) -> HankelTable {
        let r: Vec<Word> = rows.iter().map(|s| Word::chars(s)).collect();
        let c: Vec<Word> = cols.iter().map(|s| Word::chars(s)).collect();
        session.table(&r, &c).unwrap()
    }

    #[test]
    fn stacked_examples() {
        let mut t = SimulatedTeacher::new(fixtures::fibonacci().lift());
        let mut s = Session::new(&mut t);
        assert_eq!(
            stacked_matrix(&table(&mut s, &[""], &[""]), 0),
            MatrixQ::from_rows(vec![vec![rat(1)]], 1)
        );
        let t2 = table(&mut s, &["", "a"], &[""]);
        assert_eq!(t2.h, vec![vec![rat(1)], vec![rat(2)]]);
        let m = stacked_matrix(&t2, 1);
        assert_eq!(
            m,
            MatrixQ::from_rows(vec![vec![rat(1), rat(1)], vec![rat(2), rat(4)]], 2)
        );
        let m3 = stacked_matrix(&t2, 3);
        assert_eq!(m3.select_cols(&[0, 1]), m);
    }

    #[test]
    fn program_one_first_hypothesis() {
        let mut t = SimulatedTeacher::new(fixtures::program1().lift());
        let mut s = Session::new(&mut t);
        let tab = table(&mut s, &[""], &[""]);
        let h = build_hypothesis(0, &tab, &mut s).unwrap();
        assert_eq!(h.initial(), &[rat(2)]);
        assert_eq!(h.transitions()[0].get(0, 0), &Poly::constant(ratio(1, 2)));
        assert_eq!(h.final_weights(), &[Poly::one()]);
        let (u, sigma, c) =
            largest_correct_prefix(&h, &tab.cols, &Word::chars("aa"), &mut s).unwrap();
        assert_eq!(
            (u, sigma.as_str(), c),
            (Word::chars("a"), "a", Word::empty())
        );
        assert!(largest_correct_prefix(&h, &tab.cols, &Word::empty(), &mut s).is_err());
    }

    #[test]
    fn membership_is_cached() {
        let mut t = SimulatedTeacher::new(fixtures::fibonacci().lift());
        {
            let mut s = Session::new(&mut t);
            s.membership(&Word::chars("aa")).unwrap();
            s.membership(&Word::chars("aa")).unwrap();
            assert_eq!(s.membership_queries, 1);
        }
        assert_eq!(t.membership_count, 1);
    }

    #[test]
    fn partial_learner_program_one() {
        let target = fixtures::program1().lift();
        let mut t = SimulatedTeacher::new(target.clone());
        let mut s = Session::new(&mut t);
        let a = partial_learner(
            0,
            &BigUint::from(8u8),
            vec![Word::empty()],
            vec![Word::empty()],
            &mut s,
        )
        .unwrap()
        .unwrap();
        for k in 0..=6 {
            let w = Word::power("a", k);
            assert_eq!(a.eval(&w).unwrap(), target.eval(&w).unwrap());
        }
    }

    #[test]
    fn partial_learner_times_out() {
        let mut t = SimulatedTeacher::new(fixtures::involutions());
        let mut s = Session::new(&mut t);
        let r = partial_learner(
            0,
            &BigUint::from(1u8),
            vec![Word::empty()],
            vec![Word::empty()],
            &mut s,
        )
        .unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn learns_fibonacci() {
        let target = fixtures::fibonacci().lift();
        let mut t = SimulatedTeacher::new(target.clone());
        let mut s = Session::new(&mut t);
        let a = exact_learner(&mut s).unwrap();
        assert_eq!(equivalence(&a, &target).unwrap(), None);
    }

    #[test]
    fn learns_zero_function() {
        let target = fixtures::zero(2).lift();
        let mut t = SimulatedTeacher::new(target.clone());
        let mut s = Session::new(&mut t);
        let a = exact_learner(&mut s).unwrap();
        assert_eq!(equivalence(&a, &target).unwrap(), None);
        assert_eq!(s.equivalence_queries, 1);
    }

    #[test]
    fn zero_table_is_repaired() {
        let target = fixtures::program3();
        let mut t = SimulatedTeacher::new(target.clone());
        let mut s = Session::new(&mut t);
        let a = exact_learner(&mut s).unwrap();
        assert_eq!(equivalence(&a, &target).unwrap(), None);
        assert!(s.calls[0].all_zero);
        for w in words_up_to(target.alphabet(), 3) {
            assert_eq!(a.eval(&w).unwrap(), target.eval(&w).unwrap());
        }
    }

    #[test]
    fn learns_involutions() {
        let target = fixtures::involutions();
        let mut t = SimulatedTeacher::new(target.clone());
        let mut s = Session::new(&mut t);
        let a = exact_learner(&mut s).unwrap();
        assert_eq!(equivalence(&a, &target).unwrap(), None);
    }

    #[test]
    fn learn_z_program_one() {
        let mut t = SimulatedTeacher::new(fixtures::program1().lift());
        let mut z = ZEquivTeacher::new(&mut t);
        let mut s = Session::new(&mut z);
        let a = learn_z(&mut s).unwrap();
        assert_eq!(a.dimension(), 2);
        for k in 0..=8 {
            assert_eq!(
                a.eval(&Word::power("a", k)).unwrap(),
                rat(if k % 2 == 0 { 2 } else { 1 })
            );
        }
    }

    #[test]
    fn query_budget() {
        let mut t = SimulatedTeacher::new(fixtures::involutions());
        let mut s = Session::new(&mut t).with_max_queries(Some(3));
        assert_eq!(exact_learner(&mut s), Err(Error::QueryBudgetExceeded(3)));
    }

    #[test]
    fn bounded_forward_layout() {
        let a = fixtures::fibonacci().lift();
        let v = bounded_forward_vector(&a, &Word::empty(), 2).unwrap();
        assert_eq!(v, vec![rat(1), rat(1), rat(0), rat(0), rat(0), rat(0)]);
        let v = bounded_forward_vector(&a, &Word::chars("a"), 2).unwrap();
        assert_eq!(v, vec![rat(0), rat(0), rat(2), rat(1), rat(0), rat(0)]);
        assert_eq!(
            bounded_forward_vector(&a, &Word::chars("aaa"), 2),
            Err(Error::LengthExceeded { len: 3, bound: 2 })
        );
    }

    #[test]
    fn limits() {
        assert_eq!(column_limit(0, 1), BigUint::from(2u8));
        assert_eq!(column_limit(1, 2), BigUint::from(128u8));
        assert_eq!(column_bound(1, 2), BigUint::from(64u8));
    }
}
