//! Propositional formulas: the DSL parser and printer, classical truth
//! tables, joint-denial normal form, structural numbering and diagonalization.

mod coding;
mod diag;
mod formula;
pub mod gen;
mod nform;
mod parser;

use thiserror::Error;

pub use coding::{
    cantor_pair, cantor_unpair, decode, diag, encode, fixed_point, quote_atom, CodedFormula,
    FixedPoint, DIAG_PREFIX, DIAG_VAR, QUOTE_PREFIX,
};
pub use diag::{diag_table, Antidiagonal};
pub use formula::{is_atom_name, Formula, TruthTable, MAX_TABLE_ATOMS};
pub use nform::{
    nor_complete_survey, to_n_form, SurveyEntry, SurveyReport, BINARY_FUNCTION_NAMES,
    RESERVED_ATOM,
};
pub use parser::parse;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("atom `{0}` has no value")]
    UnboundAtom(String),
    #[error("N needs at least one argument")]
    EmptyN,
    #[error("{0} atoms is too many for a truth table")]
    TooManyAtoms(usize),
    #[error("{0} is not the code of a formula")]
    NotACode(String),
    #[error("context must contain exactly one hole, found {0}")]
    HoleCount(usize),
    #[error("atom `{0}` uses a reserved quotation prefix")]
    ReservedAtom(String),
    #[error("{rows} rows cannot be diagonalized over 0..={m}")]
    TooManyRows { rows: usize, m: usize },
    #[error("row {row} has {len} entries, expected {}", m + 1)]
    RowLength { row: usize, len: usize, m: usize },
    #[error("arithmetic overflow")]
    Overflow,
}
