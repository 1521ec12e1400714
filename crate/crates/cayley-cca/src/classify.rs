//! Predicting the colour-preserving stabilizer of a complete Cayley graph
//! from the structure of the group alone.
//!
//! Complete graphs carry the canonical colouring in which every vertex pair
//! is an edge, so a colour-preserving map fixing the identity must send each
//! element to itself or its inverse.  Which patterns of such flips are
//! consistent turns out to depend only on coarse structure: whether the
//! group is abelian, has a dicyclic shape, or is a hamiltonian 2-group.
//! This module builds those maps explicitly and predicts the full
//! stabilizer; the search code in [`crate::colour_aut`] can confirm the
//! prediction by brute force.

use serde::Serialize;

use crate::group::{FiniteGroup, GroupMap};
use crate::structure::{DicyclicWitness, Ham2Decomposition};

/// What the colour-preserving stabilizer of a complete Cayley graph looks
/// like, keyed by the group structure that produces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabilizerKind {
    /// Only the identity map.
    #[serde(rename = "trivial")]
    Trivial,
    /// Identity and global inversion (abelian groups with an element of
    /// order greater than two).
    #[serde(rename = "abelian-inversion")]
    AbelianInversion,
    /// Identity and the flip across an index-two abelian subgroup.
    #[serde(rename = "dicyclic-flip")]
    DicyclicFlip,
    /// The eight unit-indexed maps of a hamiltonian 2-group.
    #[serde(rename = "hamiltonian-2-group")]
    Hamiltonian2Group,
}

impl std::fmt::Display for StabilizerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StabilizerKind::Trivial => "trivial",
            StabilizerKind::AbelianInversion => "abelian-inversion",
            StabilizerKind::DicyclicFlip => "dicyclic-flip",
            StabilizerKind::Hamiltonian2Group => "hamiltonian-2-group",
        })
    }
}

/// Predicted stabilizer of the complete graph on one group.
#[derive(Clone, Debug, Serialize)]
pub struct CompleteClassification {
    pub group: String,
    pub kind: StabilizerKind,
    /// The predicted maps, sorted.
    pub maps: Vec<GroupMap>,
    /// Whether every colour-preserving automorphism of the complete graph
    /// is a translation composed with a group automorphism.
    pub cca: bool,
    /// Same question for colour-permuting automorphisms.
    pub strongly_cca: bool,
}

impl CompleteClassification {
    pub fn stabilizer_size(&self) -> usize {
        self.maps.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group,
            "kind": self.kind,
            "stabilizer_size": self.stabilizer_size(),
            "cca": self.cca,
            "strongly_cca": self.strongly_cca,
        })
    }
}

/// x maps to its inverse.
pub fn inversion_map(g: &FiniteGroup) -> GroupMap {
    GroupMap::from_images_unchecked(g.elements().map(|x| g.inv(x)).collect())
}

/// x maps to b x b^{-1}.
pub fn conjugation_map(g: &FiniteGroup, b: usize) -> GroupMap {
    GroupMap::from_images_unchecked(g.elements().map(|x| g.conj(b, x)).collect())
}

/// The flip attached to a dicyclic shape: fix the index-two abelian
/// subgroup pointwise, multiply by the central involution outside it.
///
/// Every element outside the subgroup squares to that involution, so the
/// flip sends each element to itself or its inverse — which is exactly what
/// a colour-preserving map fixing the identity may do.
pub fn dicyclic_flip(g: &FiniteGroup, w: &DicyclicWitness) -> GroupMap {
    let inside = {
        let mut mask = vec![false; g.order()];
        for &a in &w.abelian {
            mask[a] = true;
        }
        mask
    };
    let images: Vec<usize> = g
        .elements()
        .map(|x| if inside[x] { x } else { g.mul(w.z, x) })
        .collect();
    let m = GroupMap::from_images(images).expect("flip is a bijection");
    debug_assert!(g
        .elements()
        .all(|x| m.apply(x) == x || m.apply(x) == g.inv(x)));
    m
}

/// A subset of the three quaternion unit slots of a hamiltonian 2-group
/// decomposition (bit 0 = first unit, bit 1 = second, bit 2 = third).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct UnitSet(pub u8);

impl UnitSet {
    pub const EMPTY: UnitSet = UnitSet(0);
    pub const FULL: UnitSet = UnitSet(0b111);

    pub fn all() -> [UnitSet; 8] {
        [0, 1, 2, 3, 4, 5, 6, 7].map(UnitSet)
    }

    pub fn contains(self, slot: usize) -> bool {
        slot < 3 && self.0 & (1 << slot) != 0
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_odd(self) -> bool {
        self.size() % 2 == 1
    }
}

/// The colour-preserving stabilizer map of a hamiltonian 2-group indexed by
/// which quaternion units it fixes.
///
/// Fixing all three units forces the identity map; fixing none forces
/// inversion; fixing one unit is conjugation by it; fixing two is
/// conjugation by the remaining unit composed with inversion.  The map is a
/// group automorphism exactly when the set has odd size.
pub fn unit_fixing_map(g: &FiniteGroup, d: &Ham2Decomposition, set: UnitSet) -> GroupMap {
    let units = [d.i, d.j, d.k];
    let m = match set.size() {
        3 => GroupMap::identity(g.order()),
        0 => inversion_map(g),
        1 => {
            let slot = (0..3).find(|&s| set.contains(s)).expect("one bit set");
            conjugation_map(g, units[slot])
        }
        2 => {
            let slot = (0..3).find(|&s| !set.contains(s)).expect("one bit clear");
            conjugation_map(g, units[slot]).compose(&inversion_map(g))
        }
        _ => unreachable!(),
    };
    debug_assert_eq!(m.apply(g.identity()), g.identity());
    debug_assert_eq!(
        crate::structure::is_group_automorphism(g, &m),
        set.is_odd()
    );
    for slot in 0..3 {
        debug_assert_eq!(m.apply(units[slot]) == units[slot], set.contains(slot));
    }
    m
}

/// Elements a map leaves in place.
pub fn fixed_points(m: &GroupMap) -> Vec<usize> {
    m.images()
        .iter()
        .enumerate()
        .filter_map(|(x, &y)| (x == y).then_some(x))
        .collect()
}

/// Does every colour-preserving automorphism of the complete graph on `g`
/// come from a translation and a group automorphism?  This fails exactly
/// for hamiltonian 2-groups, where inversion is colour-preserving but not
/// an automorphism of the (non-abelian) group.
pub fn complete_cca_verdict(g: &FiniteGroup) -> bool {
    crate::structure::decompose_hamiltonian_2group(g).is_none()
}

/// Predict the colour-preserving stabilizer of the complete graph on `g`
/// without searching.
///
/// Precedence matters only for the label: a hamiltonian 2-group is also
/// dicyclic-shaped, and an abelian group may be too, but the predicted map
/// sets coincide wherever the shapes overlap.
pub fn predict_stabilizer(g: &FiniteGroup) -> CompleteClassification {
    let identity = GroupMap::identity(g.order());
    let (kind, mut maps) = if let Some(d) = crate::structure::decompose_hamiltonian_2group(g) {
        (
            StabilizerKind::Hamiltonian2Group,
            UnitSet::all()
                .iter()
                .map(|&set| unit_fixing_map(g, &d, set))
                .collect(),
        )
    } else if g.is_abelian() && !g.has_exponent_two() {
        (
            StabilizerKind::AbelianInversion,
            vec![identity.clone(), inversion_map(g)],
        )
    } else if let Some(w) = crate::structure::is_dicyclic_type(g) {
        (
            StabilizerKind::DicyclicFlip,
            vec![identity.clone(), dicyclic_flip(g, &w)],
        )
    } else {
        (StabilizerKind::Trivial, vec![identity.clone()])
    };
    maps.sort_unstable();
    maps.dedup();
    let cca = kind != StabilizerKind::Hamiltonian2Group;
    CompleteClassification {
        group: g.name().to_string(),
        kind,
        maps,
        // every colour-permuting automorphism of a complete graph factors
        // through a group automorphism, so the two verdicts agree there
        cca,
        strongly_cca: cca,
    }
}
