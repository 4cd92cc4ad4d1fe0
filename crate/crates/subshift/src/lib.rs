//! Computable conjugacy invariants of synchronizing shift spaces.
//!
//! The crate works with shift spaces given by finite presentations: a finite
//! set of forbidden words, a finite labeled graph, a truncated member of one
//! of the built-in infinite graph families, or a substitution-generated
//! graph.  On top of those presentations it computes
//!
//! * word languages and membership ([`presentations`]),
//! * contexts of words, synchronizing-word classification and context
//!   equivalence ([`contexts`]),
//! * the leveled diagrams whose vertices are context classes, together with
//!   their integer transition matrices ([`bratteli`]),
//! * exact integer-matrix analysis of that transition data: ranks, Smith
//!   normal forms, Kronecker factorizations and rank-growth evidence
//!   ([`ktheory`]),
//! * characteristic-polynomial and Perron-eigenvalue machinery for the
//!   staircase matrix family, with rational certified bounds ([`spectra`]).
//!
//! [`zoo`] holds ready-made constructions of the shift spaces the other
//! modules are exercised on.  All values are immutable after construction
//! and every operation is pure, so shared presentations and diagrams can be
//! read concurrently without synchronization.

pub mod bits;
pub mod bratteli;
pub mod contexts;
pub mod graph;
pub mod ktheory;
pub mod presentations;
pub mod spectra;
pub mod words;
pub mod zoo;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("empty forbidden set is rejected; use an explicit full-shift graph")]
    EmptyForbiddenSet,
    #[error("forbidden words must have length >= 2 (got maximum {0})")]
    ForbiddenWordsTooShort(usize),
    #[error("graph vertex {0:?} is not declared")]
    UnknownVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("presentation has an empty language at the requested length")]
    EmptyLanguage,
    #[error("word {0:?} is not in the language")]
    WordNotInLanguage(String),
    #[error("operation requires a finite labeled-graph presentation")]
    NotSofic,
    #[error("subset construction exceeded the cap of {0} sets")]
    SubsetCapExceeded(usize),
    #[error("no synchronizing vertices at the requested depth")]
    NoSyncVertices,
    #[error("level {0} out of range (diagram has {1} levels)")]
    LevelOutOfRange(usize, usize),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is reducible; Perron iteration requires an irreducible matrix")]
    ReducibleMatrix,
    #[error("point {0:?} is not periodic for this presentation")]
    NotPeriodic(String),
    #[error("periodic point {0:?} could not be verified synchronizing")]
    NotSynchronizing(String),
    #[error("diagrams were built from different periodic points")]
    PeriodicPointMismatch,
    #[error("unknown shift name {0:?}")]
    UnknownShift(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("substitution seed {0:?} is not self-prolongable")]
    SeedNotProlongable(String),
    #[error("substitution must be non-erasing")]
    ErasingSubstitution,
    #[error("invalid shift document: {0}")]
    InvalidDocument(String),
    #[error("Perron iteration failed to reach the requested width")]
    ConvergenceFailure,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
}

pub type Result<T> = std::result::Result<T, Error>;
