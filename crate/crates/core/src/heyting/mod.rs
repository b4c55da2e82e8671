//! Finite posets, bounded lattices and Heyting algebras: chains, downset
//! algebras, residuated implication, filters and quotients, currying, and
//! Hasse diagrams.

mod algebra;
mod curry;
mod filter;
mod poset;

use thiserror::Error;

pub use algebra::{Elem, HeytingAlgebra, Law, LawReport, LawViolation};
pub use curry::{curry, curry_check, uncurry, CurryReport, FunctionSpace};
pub use filter::{Filter, Quotient};
pub use poset::{parse_lattice_spec, FinitePoset, MAX_SUBSET_POSET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeytingError {
    #[error("relation matrix has the wrong shape")]
    Shape,
    #[error("element labels must be distinct")]
    DuplicateLabel,
    #[error("not a partial order: {0}")]
    NotAPoset(String),
    #[error("not a lattice: {0} and {1} lack a meet or join")]
    NotALattice(String, String),
    #[error("not a Heyting algebra: {0} → {1} has no largest candidate")]
    NotHeyting(String, String),
    #[error("the carrier is empty")]
    Empty,
    #[error("chain needs at least 2 elements, got {0}")]
    ChainTooShort(usize),
    #[error("structure of size {0} is too large to enumerate")]
    TooLarge(usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("atom `{0}` has no value")]
    UnboundAtom(String),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("set is not a filter")]
    NotAFilter,
    #[error("induced operations depend on representatives")]
    NotACongruence,
    #[error("size {0} is outside 1..=3")]
    SizeOutOfRange(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
