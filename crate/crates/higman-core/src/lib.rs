//! Exact computation in Higman-like groups and their CAT(0) square complexes.
//!
//! A Higman-like group is presented on four generators `a0..a3` (indices mod 4) by
//! the relations `a_i a_{i+1} a_i^-1 = a_{i+1}^{m_i}` with all `m_i >= 2`. Each pair
//! of consecutive generators spans a solvable Baumslag-Solitar group `BS(1, m_i)`,
//! and the whole group acts on a CAT(0) square complex with one free orbit of
//! squares. Everything here is exact (big integers, no floats):
//!
//! - [`bs`]: affine-coordinate arithmetic, normal forms and membership in `BS(1,m)`;
//! - [`words`]: the word problem for the group via its iterated amalgam splitting;
//! - [`complex`]: lazy balls of the square complex, links, 2x2 grids, and the
//!   intersection graphs of maximal Baumslag-Solitar subgroups;
//! - [`flats`]: the inductive construction of isometrically embedded flats;
//! - [`diagram`]: disc diagrams, combinatorial curvature and Gauss-Bonnet audits;
//! - [`action`]: isometry classification, fixed sets, acylindricity audits and
//!   free-subgroup certificates;
//! - [`morphism`]: endomorphism checking and automorphism decomposition.

pub mod action;
pub mod bs;
pub mod complex;
pub mod diagram;
pub mod export;
pub mod flats;
pub mod morphism;
pub mod words;

use thiserror::Error;

/// Errors shared across the crate. Most operations are total; errors are
/// reserved for invalid construction data and exhausted resource caps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("structural invariant violated: {0}")]
    InvariantViolation(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
