//! Edit distance functions of hereditary graph properties, computed through
//! colored regularity graphs (CRGs).
//!
//! A CRG is a clique whose vertices are colored black or white and whose
//! edges are colored black, white or gray. Every CRG `K` carries a function
//! `g_K(p)`, the minimum of a quadratic form over the probability simplex,
//! and the edit distance function of a hereditary property is the pointwise
//! minimum of `g_K` over the CRGs that do not admit any forbidden graph.
//!
//! This crate provides the pieces needed to work with that machinery at desk
//! scale:
//!
//! * [`graphs`] — simple graphs, forbidden-family specifications, chromatic
//!   invariants and graph6 I/O;
//! * [`crg`] — the CRG data model and its structural constructions (gray and
//!   white joins, dalmatian substitution, complementation, canonical forms);
//! * [`colored`] — edge-colored cliques and compressed blow-ups;
//! * [`solver`] — certified evaluation of `g_K(p)` in exact rational or
//!   float arithmetic, p-core decisions, and algebraic identity checks;
//! * [`embed`] — the graph-to-CRG embedding relation and the colored-graph
//!   order, with explicit witnesses;
//! * [`enumerate`] — catalogs of admissible 0-core/1-core CRGs up to
//!   isomorphism;
//! * [`envelope`] — lower-envelope curves, small-p `q` curves, path bounds
//!   and accumulation probes;
//! * [`dist`] — exhaustive ground-truth edit distances on tiny graphs.
//!
//! With the default `parallel` feature the grid sweeps, catalog filters and
//! exhaustive searches run on rayon; disabling it yields a fully sequential
//! build with identical outputs.

pub mod colored;
pub mod crg;
pub mod dist;
pub mod embed;
pub mod enumerate;
pub mod envelope;
pub mod graphs;
pub mod par;
pub mod solver;
pub mod value;

pub use crate::colored::ColoredGraph;
pub use crate::crg::{Crg, EdgeColor, VertexColor};
pub use crate::enumerate::{Catalog, CoreSide};
pub use crate::envelope::EnvelopeCurve;
pub use crate::graphs::{FamilySpec, SimpleGraph};
pub use crate::solver::{solve_g, GRecord};
pub use crate::value::{PValue, Value};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An instance exceeds a configured size cap.
    #[error("{what}: size {got} exceeds cap {cap}")]
    SizeCap {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    /// Malformed input text; `offset` is a byte position into the input.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    /// A precondition on the mathematical domain was violated.
    #[error("{0}")]
    Domain(String),
    /// Two routes that must agree disagreed; indicates a numerical problem.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    /// The operation is not defined for this input shape.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by malformed input rather than by the
    /// mathematics of the request. The CLI maps these to usage errors.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io(_) | Error::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
