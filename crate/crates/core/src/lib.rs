//! Desk-scale machinery for ordinals, intuitionistic logic and finite
//! Heyting algebras, merge workspaces, subject vectors and small Turing
//! machines. Every algebraic property the crate relies on is checked by
//! exhaustive enumeration at the sizes it supports.

pub mod dot;
pub mod heyting;
pub mod hfset;
pub mod kripke;
pub mod logic;
pub mod machines;
pub mod subject;
pub mod workspace;
