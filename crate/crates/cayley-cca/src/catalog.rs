//! A fixed roster of small groups used by the verification suites and the
//! command-line `verify` subcommand.
//!
//! The roster deliberately covers every stabilizer kind: cyclic and mixed
//! abelian groups (with and without elements of order above two), dihedral
//! groups, dicyclic groups, and the three smallest hamiltonian 2-groups.

use crate::error::Result;
use crate::families::GroupSpec;
use crate::group::FiniteGroup;

/// Parseable names of the roster groups, in ascending order of group order.
pub const CATALOG_SPECS: [&str; 18] = [
    "Z2",
    "Z3",
    "Z4",
    "Z2^2",
    "Z5",
    "Z6",
    "D6",
    "Z8",
    "Z2^3",
    "Z4xZ2",
    "D8",
    "Q8",
    "D12",
    "Dic(Z6)",
    "Dic(Z8)",
    "Q8xZ2",
    "Q8xZ3",
    "Q8xZ2^2",
];

/// Build every roster group of order at most `max_order`.
pub fn catalog_groups(max_order: usize) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    for spec in CATALOG_SPECS {
        let parsed = GroupSpec::parse(spec)?;
        if parsed.order() <= max_order {
            out.push(parsed.build()?);
        }
    }
    Ok(out)
}
