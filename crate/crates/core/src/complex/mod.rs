//! Regular CW complexes of dimension at most 2, graphs, products of graphs
//! and face-closed subcomplexes of such products.

mod graph;
mod incidence;
mod product;
mod regular;

use thiserror::Error;

pub use graph::{Direction, Graph1Complex, GraphEdge};
pub(crate) use graph::UnionFind;
pub use incidence::{CellIncidence, HasIncidence};
pub use product::{CellTuple, Comp, ProductComplex, ProductSubcomplex};
pub use regular::{Face, FaceSpec, Regular2Complex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("edge {0} is a loop: tail and head coincide")]
    Loop(String),
    #[error("edge {edge} references undeclared vertex {vertex}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("face {face} references undeclared edge {edge}")]
    UnknownEdge { face: String, edge: String },
    #[error("duplicate cell id {0}")]
    DuplicateId(String),
    #[error("face {face} has an invalid boundary: {reason}")]
    BadBoundary { face: String, reason: String },
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("a product needs at least one factor")]
    NoFactors,
    #[error("expected {expected} factors, found {found}")]
    FactorCount { expected: usize, found: usize },
    #[error("invalid cell tuple {0}")]
    InvalidTuple(String),
    #[error("malformed component id {0}")]
    BadComponent(String),
    #[error("cell set is not face-closed: {cell} lacks its face {missing}")]
    NotFaceClosed { cell: String, missing: String },
    #[error("subcomplexes live in different products")]
    ParentMismatch,
}
