use thiserror::Error;

use crate::degree::Degree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema violation: {0}")]
    Schema(String),

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),

    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingVertex { edge: String, vertex: String },

    #[error("square references unknown edge `{0}`")]
    DanglingEdge(String),

    #[error("edge `{edge}` has color {color}, expected a color in 1..={k}")]
    BadColor { edge: String, color: usize, k: usize },

    #[error("malformed square [{left}] ~ [{right}]: {reason}")]
    MalformedSquare { left: String, right: String, reason: String },

    #[error("incomplete square system: composable pair ({0}, {1}) has no square")]
    IncompleteSquares(String, String),

    #[error("non-bijective square system: pair ({first}, {second}) appears in {count} squares")]
    NonBijective { first: String, second: String, count: usize },

    #[error("cube condition fails on edge triple ({0}, {1}, {2})")]
    CubeFailure(String, String, String),

    #[error("commuting-domain condition fails at x={x} for maps {i} and {j}")]
    KgdsDomain { x: usize, i: usize, j: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("paths are not composable: source {source_vertex} differs from range {range_vertex}")]
    NotComposable { source_vertex: String, range_vertex: String },

    #[error("edge word is not composable at position {0}")]
    BrokenWord(usize),

    #[error("degree {requested} is out of range for a path of degree {available}")]
    OutOfRange { requested: Degree, available: Degree },

    #[error("degree has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("mixed degrees in a set that must be single-degree: {0} and {1}")]
    MixedDegrees(Degree, Degree),

    #[error("range mismatch: {0} vs {1}")]
    RangeMismatch(String, String),

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("groupoid elements are not composable")]
    NotComposableElements,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("labeling is not a functor: square [{left}] ~ [{right}] gets {lhs} vs {rhs}")]
    InvalidLabeling { left: String, right: String, lhs: String, rhs: String },

    #[error("this operation needs a finite presentation")]
    LazyGraph,
}

pub type Result<T> = std::result::Result<T, Error>;
