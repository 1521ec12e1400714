use thiserror::Error;

/// Everything that can go wrong while building groups and graphs or running
/// the enumeration machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The group-spec string does not match the grammar.
    #[error("invalid group spec: {0}")]
    ParseSpec(String),

    /// A construction would produce a group larger than the configured cap.
    #[error("group order {order} exceeds cap {cap}")]
    OrderCap { order: usize, cap: usize },

    /// A hand-supplied multiplication table violates the group axioms.
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    /// The connection set contains the identity, an out-of-range index, or
    /// is not closed under inversion.
    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),

    /// A map handed to an operation that requires a (colour-permuting)
    /// automorphism is not one.
    #[error("map is not a colour-permuting automorphism of the graph")]
    NotColourPermuting,

    /// A witness structure does not satisfy its defining equations for the
    /// given group.
    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    /// An exhaustive enumeration was refused because the group is too large
    /// for the backtracking searches to be worthwhile.
    #[error("enumeration refused: order {order} exceeds search limit {limit}")]
    SearchLimit { order: usize, limit: usize },

    /// An internal step of the automorphism factorization failed.  This
    /// signals an implementation bug (or an invalid input map) and names the
    /// step that broke.
    #[error("factorization step failed: {0}")]
    FactorizationStep(&'static str),

    /// Images handed to `GroupMap::from_images` are not a permutation.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
