//! Finitely presented higher-rank graphs (k-graphs).
//!
//! The crate covers the combinatorics of a k-graph given by a 1-skeleton:
//! normal-form paths and unique factorization ([`path`]), minimal common
//! extensions and exhaustive sets ([`alignment`]), eventually periodic
//! infinite paths and boundary paths ([`boundary`]), elements and cylinders of
//! the path groupoid with isotropy analysis ([`groupoid`]), and skew products
//! by finite groups ([`skew`]).

pub mod alignment;
pub mod boundary;
pub mod degree;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod iso;
pub mod groupoid;
pub mod lattice;
pub mod path;
pub mod skeleton;
pub mod skew;

pub use degree::{Degree, INF};
pub use error::{Error, Result};
pub use graph::{validate_kgraph, KGraph, LazyFamily};
pub use path::{Enumeration, Path, PathDoc};
pub use skeleton::{parse_skeleton, EdgeId, Skeleton, SkeletonDoc, VertexId};
