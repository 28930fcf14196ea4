//! Cell complexes living in products of graphs.
//!
//! The crate builds regular CW complexes of dimension at most two and
//! subcomplexes of products of graphs, computes their integral cellular
//! homology, recognises pseudo and ramified manifold complexes, analyses
//! projections onto factors, and collapses collapsible 2-complexes into
//! products of two trees.

pub mod abelian;
pub mod acceptance;
pub mod collapse;
pub mod complex;
pub mod constructions;
pub mod document;
pub mod homology;
pub mod projection;
pub mod verify;
