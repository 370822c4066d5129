//! Dependency profiling for relational tables.
//!
//! The crate detects and enumerates three kinds of multi-column dependencies:
//!
//! - unique column combinations (attribute sets whose projected rows are
//!   pairwise distinct),
//! - functional dependencies `X -> a` (agreement on `X` forces agreement
//!   on `a`),
//! - inclusion dependencies (projected rows of one table all occur in
//!   another, under an injective column mapping).
//!
//! All three are driven by the same combinatorial core: the sets of
//! attributes on which two rows disagree form a hypergraph, and the minimal
//! dependencies are exactly the minimal hitting sets (transversals) of such
//! hypergraphs, or, for inclusion dependencies, the maximal satisfying
//! assignments of an antimonotone 3-normalized Boolean formula.
//!
//! On top of the profiling operations, [`reduce`] implements instance
//! transformations between the problem encodings (hypergraphs, tables,
//! formulas), each paired with a solution translation, and [`harness`]
//! verifies by exhaustive enumeration that each transformation maps solution
//! sets bijectively.

pub mod discovery;
pub mod formula;
pub mod harness;
pub mod hypergraph;
pub mod oracle;
pub mod reduce;
pub mod relation;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on the input was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An exhaustive (brute-force) operation refused to run because the
    /// instance exceeds the configured size bound.
    #[error("oracle bound exceeded: {what} has size {size}, bound is {bound}")]
    OracleBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    /// A text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use formula::{Assignment, Formula, Literal};
pub use hypergraph::{Hypergraph, TaggedTransversal, VertexSet};
pub use relation::{AttrSet, CsvLoad, Fd, Ind, Relation};
