//! Ordered graphs with a forbidden ordered subgraph.
//!
//! An ordered graph has vertices `1..=n` carrying their integer order; a copy
//! of a pattern `H` in a host `G` is an order-preserving injection of vertices
//! that maps edges to edges (not necessarily induced). For a pattern `H`,
//! `f(H)` is the supremum of chromatic numbers over all hosts avoiding `H`.
//!
//! The crate classifies patterns by whether `f` is infinite, finite with an
//! explicit upper bound, or currently unknown:
//!
//! * [`graph`] is the ordered-graph model: parsing, reversal, segments,
//!   interval chromatic number, bipartite edge matrices.
//! * [`embed`] finds order-preserving embeddings of patterns in hosts.
//! * [`patterns`] detects the structures forcing `f` infinite (cycles,
//!   bonnets, tangled paths) and recognizes the segment shapes with known
//!   finite bounds.
//! * [`alternation`] decides monotone alternation of trees and cross-checks
//!   the equivalence with bonnet- and tangled-freeness.
//! * [`bounds`] classifies patterns and derives machine-checkable upper-bound
//!   certificates; [`color`] executes a certificate to properly color any
//!   avoiding host within the certified bound.
//! * [`constructions`] builds the lower-bound witnesses (complete, shift,
//!   spindle, spiral path, Tutte-style amplification).
//! * [`oracle`] is exhaustive ground truth at small scale: exact chromatic
//!   number, maximum chromatic number over avoiders, extremal edge counts,
//!   distinct vertex orderings.

pub mod alternation;
pub mod bounds;
pub mod color;
pub mod constructions;
pub mod embed;
pub mod graph;
pub mod oracle;
pub mod patterns;

pub use graph::OrderedGraph;

/// Crate-wide error type. Every fallible operation reports a dedicated
/// variant; invariant breaches inside certified algorithms panic instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {reason}")]
    Parse { pos: usize, reason: String },
    #[error("endpoint {v} out of range 1..={n}")]
    EndpointOutOfRange { v: usize, n: usize },
    #[error("loop edge at vertex {v}")]
    LoopEdge { v: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("graph on {n} vertices is too small (need at least {min})")]
    TooFewVertices { n: usize, min: usize },
    #[error("interval chromatic number is {value}, need at most 2")]
    NotIntervalBipartite { value: usize },
    #[error("not a tree: {reason}")]
    NotATree { reason: String },
    #[error("underlying graph is not a path: {reason}")]
    NotAPath { reason: String },
    #[error("vertex {v} is isolated")]
    IsolatedVertex { v: usize },
    #[error("search budget exhausted after exploring {explored} states")]
    BudgetExhausted { explored: u64 },
    #[error("construction needs {required} vertices, over the cap of {cap}")]
    SizeCap { required: String, cap: u64 },
    #[error("pattern is not minimally tangled: {reason}")]
    NotMinimalTangled { reason: String },
    #[error("base graph contains the forbidden pattern (embedding {0:?})")]
    BaseContainsPattern(Vec<usize>),
    #[error("host contains the pattern (embedding {0:?}); cannot color an avoider")]
    HostContainsPattern(Vec<usize>),
    #[error("pattern was not screened for infinite families: {reason}")]
    NotScreened { reason: String },
    #[error("every ordered graph on {n} vertices contains the pattern")]
    NoAvoiders { n: usize },
    #[error("certificate invalid at node {path:?}: {reason}")]
    BadCertificate { path: Vec<usize>, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
