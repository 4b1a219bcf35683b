//! Exact algorithms for Q-weighted, Z-weighted and P-finite automata:
//! evaluation, equivalence, integer representations and active learning.

pub mod arith;
pub mod automata;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod learning;
pub mod linalg;
pub mod pfinite;
pub mod z_fatou;

pub use automata::{PAutomaton, QAutomaton, Word, ZAutomaton};
pub use error::{Error, Result};
