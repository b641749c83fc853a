//! Bipartite and general maximum matching.

mod bipartite;
mod general;

use thiserror::Error;

pub use bipartite::{
    classify_edges, forbidden_edges, max_bipartite_matching, BipartiteInstance, BipartiteMatching,
    EdgeClass, EdgeClassification,
};
pub(crate) use general::Blossom;
pub use general::{matching_size, max_general_matching};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge {edge} has an endpoint out of range")]
    IndexOutOfRange { edge: usize },
    #[error("edge {edge} duplicates an earlier edge")]
    DuplicateEdge { edge: usize },
    #[error("instance has no vertices")]
    EmptyInstance,
}
