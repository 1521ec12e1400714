//! Edge-coloured Cayley graphs of small finite groups.
//!
//! The crate builds finite groups from a tiny spec grammar, forms their
//! Cayley graphs with the canonical colouring by inverse pairs, enumerates
//! colour-preserving and colour-permuting automorphisms by backtracking,
//! and checks the structural facts that govern them: which groups admit
//! non-affine colour symmetry, and how every colour-permuting automorphism
//! of a complete Cayley graph factors as (group automorphism) compose
//! (colour-preserving automorphism).

#![forbid(unsafe_code)]

mod error;
mod group;

pub mod families;
pub mod structure;
pub mod cayley;
pub mod colour_aut;
pub mod classify;
pub mod decompose;
pub mod catalog;
pub mod verify;

pub use crate::error::{Error, Result};
pub use crate::families::{build_group, build_group_with_cap, Atom, GroupSpec};
pub use crate::group::{FiniteGroup, GroupMap, DEFAULT_ORDER_CAP};

/// Largest group order the exhaustive searches accept.
pub const MAX_SEARCH_ORDER: usize = 64;

// The book chapters double as doctests so their snippets cannot rot.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(groups, "../../../book/src/groups.md");
    chapter!(cayley_graphs, "../../../book/src/cayley-graphs.md");
    chapter!(colour_automorphisms, "../../../book/src/colour-automorphisms.md");
    chapter!(complete_graphs, "../../../book/src/complete-graphs.md");
    chapter!(decomposition, "../../../book/src/decomposition.md");
}
