//! Factoring colour-permuting automorphisms of complete Cayley graphs.
//!
//! On a complete graph every colour-permuting automorphism is a group
//! automorphism composed with a colour-preserving automorphism.  This
//! module carries out that factorization constructively and re-checks each
//! claimed property, so the output doubles as a machine-checkable
//! certificate.  The split is not unique — the two factor sets overlap —
//! and this routine always pushes as much as possible into the group
//! automorphism.

use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::colour_aut::{is_colour_permuting, is_colour_preserving};
use crate::error::{Error, Result};
use crate::group::GroupMap;
use crate::structure::{decompose_hamiltonian_2group, is_group_automorphism};

/// A verified split of one colour-permuting automorphism.
///
/// `original` equals `beta` composed with `psi` (psi applied first), where
/// `beta` is a group automorphism and `psi` is colour-preserving.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub original: GroupMap,
    pub beta: GroupMap,
    pub psi: GroupMap,
}

/// Results of re-checking a claimed decomposition, one flag per property.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DecompositionChecks {
    pub beta_automorphism: bool,
    pub psi_colour_preserving: bool,
    pub composition: bool,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.beta_automorphism && self.psi_colour_preserving && self.composition
    }
}

/// Split off the translation part: returns `g = m(1)` and the map
/// `L_g^{-1}` composed after `m`, which fixes the identity.
pub fn normalize_to_stabilizer(x: &CayleyGraph, m: &GroupMap) -> (usize, GroupMap) {
    let grp = x.group();
    let g = m.apply(grp.identity());
    let normalized = GroupMap::translation(grp, grp.inv(g)).compose(m);
    debug_assert!(normalized.apply(grp.identity()) == grp.identity());
    (g, normalized)
}

/// Factor a colour-permuting automorphism of a complete Cayley graph as
/// (group automorphism) compose (colour-preserving automorphism).
///
/// For most groups the identity-fixing part is already a group
/// automorphism and the colour-preserving factor is a plain translation.
/// The interesting case is a hamiltonian 2-group, where the automorphism
/// factor is rebuilt from the images of the quaternion units and the
/// colour-preserving remainder is one of the eight unit-indexed maps.
pub fn decompose_colour_permuting(x: &CayleyGraph, m: &GroupMap) -> Result<Decomposition> {
    let grp = x.group();
    if !x.is_complete() {
        return Err(Error::InvalidConnectionSet(
            "the factorization is defined on complete graphs".into(),
        ));
    }
    if is_colour_permuting(x, m).is_none() {
        return Err(Error::NotColourPermuting);
    }
    let (g, fixed) = normalize_to_stabilizer(x, m);

    let beta = match decompose_hamiltonian_2group(grp) {
        None => {
            // outside the hamiltonian 2-group case the stabilizer part is
            // itself a group automorphism
            if !is_group_automorphism(grp, &fixed) {
                return Err(Error::FactorizationStep(
                    "identity-fixing part must be a group automorphism",
                ));
            }
            fixed.clone()
        }
        Some(d) => {
            let fi = fixed.apply(d.i);
            let fj = fixed.apply(d.j);
            if grp.element_order(fi) != 4 || grp.element_order(fj) != 4 {
                return Err(Error::FactorizationStep(
                    "images of the quaternion units must have order four",
                ));
            }
            if fixed.apply(grp.mul(d.i, d.i)) != grp.mul(fi, fi) {
                return Err(Error::FactorizationStep(
                    "image of the central involution must be its square",
                ));
            }
            if grp.mul(fi, fj) == grp.mul(fj, fi) {
                return Err(Error::FactorizationStep(
                    "images of the quaternion units must not commute",
                ));
            }
            // rebuild the automorphism from the unit images: on the
            // quaternion subgroup send i^a j^b to fi^a fj^b, and carry the
            // central exponent-two complement along by the map itself
            let mut alpha = vec![usize::MAX; grp.order()];
            for a in 0..4 {
                for b in 0..2 {
                    let q = grp.mul(grp.power(d.i, a), grp.power(d.j, b));
                    let t = grp.mul(grp.power(fi, a), grp.power(fj, b));
                    if alpha[q] != usize::MAX && alpha[q] != t {
                        return Err(Error::FactorizationStep(
                            "unit images must induce a well-defined map on the quaternion subgroup",
                        ));
                    }
                    alpha[q] = t;
                }
            }
            let images: Vec<usize> = grp
                .elements()
                .map(|v| {
                    let (q, b) = d.factor(grp, v);
                    grp.mul(alpha[q], fixed.apply(b))
                })
                .collect();
            let beta = GroupMap::from_images(images).map_err(|_| {
                Error::FactorizationStep("candidate automorphism must be a bijection")
            })?;
            if !is_group_automorphism(grp, &beta) {
                return Err(Error::FactorizationStep(
                    "candidate must respect the group operation",
                ));
            }
            beta
        }
    };

    // the residual identity-fixing factor, then the translation folded in:
    // L_g beta psi' = beta L_{beta^{-1}(g)} psi'
    let beta_inv = beta.inverse();
    let residual = beta_inv.compose(&fixed);
    if !is_colour_preserving(x, &residual) {
        return Err(Error::FactorizationStep(
            "residual map must preserve colours",
        ));
    }
    let psi = GroupMap::translation(grp, beta_inv.apply(g)).compose(&residual);
    debug_assert!(is_colour_preserving(x, &psi));
    let out = Decomposition {
        original: m.clone(),
        beta,
        psi,
    };
    debug_assert!(verify_decomposition(x, &out).all());
    Ok(out)
}

/// Re-check the three properties a decomposition claims.
pub fn verify_decomposition(x: &CayleyGraph, d: &Decomposition) -> DecompositionChecks {
    DecompositionChecks {
        beta_automorphism: is_group_automorphism(x.group(), &d.beta),
        psi_colour_preserving: is_colour_preserving(x, &d.psi),
        composition: d.beta.compose(&d.psi) == d.original,
    }
}

/// A decomposition plus its re-checked properties, as one JSON document.
pub fn certificate(x: &CayleyGraph, d: &Decomposition) -> serde_json::Value {
    serde_json::json!({
        "group": x.group().name(),
        "original": d.original.images().to_vec(),
        "beta": d.beta.images().to_vec(),
        "psi": d.psi.images().to_vec(),
        "checks": verify_decomposition(x, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{conjugation_map, inversion_map, unit_fixing_map, UnitSet};
    use crate::colour_aut::{enumerate_stabilizer, full_automorphism_group, Mode};
    use crate::families::build_group;
    use crate::structure::is_affine;

    #[test]
    fn normalization_splits_off_the_translation() {
        let z5 = build_group("Z5").unwrap();
        let x = CayleyGraph::complete(&z5);
        let m = inversion_map(&z5).compose(&GroupMap::translation(&z5, 2));
        let (g, fixed) = normalize_to_stabilizer(&x, &m);
        assert_eq!(g, 3); // the inverse of the folded-in translation
        assert_eq!(fixed, inversion_map(&z5));
    }

    #[test]
    fn inversion_on_quaternions_factors_through_conjugation() {
        let q8 = build_group("Q8").unwrap();
        let x = CayleyGraph::complete(&q8);
        let d = crate::structure::decompose_hamiltonian_2group(&q8).unwrap();
        let iota = inversion_map(&q8);
        let dec = decompose_colour_permuting(&x, &iota).unwrap();
        assert!(verify_decomposition(&x, &dec).all());
        // the automorphism factor is conjugation by the unit whose image
        // the first two unit images multiply to
        assert_eq!(dec.beta, conjugation_map(&q8, 3));
        // the colour-preserving factor fixes the first two units
        assert_eq!(dec.psi, unit_fixing_map(&q8, &d, UnitSet(0b011)));
        assert!(is_affine(&q8, &dec.psi).is_none());
    }

    #[test]
    fn swapped_inversion_still_factors() {
        let q8 = build_group("Q8").unwrap();
        let x = CayleyGraph::complete(&q8);
        // swap the two generating units, then invert
        let swap = GroupMap::from_images(vec![0, 2, 1, 7, 4, 6, 5, 3]).unwrap();
        let m = swap.compose(&inversion_map(&q8));
        let dec = decompose_colour_permuting(&x, &m).unwrap();
        assert!(verify_decomposition(&x, &dec).all());
        assert!(!dec.beta.is_identity());
        assert!(is_affine(&q8, &dec.psi).is_none());
    }

    #[test]
    fn every_stabilizer_element_of_k_q8_factors() {
        let q8 = build_group("Q8").unwrap();
        let x = CayleyGraph::complete(&q8);
        let stab = enumerate_stabilizer(&x, Mode::ColourPermuting).unwrap();
        assert_eq!(stab.len(), 48);
        for m in &stab.maps {
            let dec = decompose_colour_permuting(&x, m).unwrap();
            assert!(verify_decomposition(&x, &dec).all());
        }
    }

    #[test]
    fn translated_automorphisms_factor_too() {
        let z6 = build_group("Z6").unwrap();
        let x = CayleyGraph::complete(&z6);
        let full = full_automorphism_group(&x, Mode::ColourPermuting).unwrap();
        for m in &full.maps {
            let dec = decompose_colour_permuting(&x, m).unwrap();
            assert!(verify_decomposition(&x, &dec).all());
            assert_eq!(dec.original, *m);
        }
    }

    #[test]
    fn non_colour_permuting_maps_are_rejected() {
        let z6 = build_group("Z6").unwrap();
        let x = CayleyGraph::complete(&z6);
        // a transposition of non-inverse elements is a graph automorphism
        // of the complete graph but scrambles colours
        let m = GroupMap::from_images(vec![0, 2, 1, 3, 4, 5]).unwrap();
        assert!(matches!(
            decompose_colour_permuting(&x, &m),
            Err(Error::NotColourPermuting)
        ));
    }

    #[test]
    fn non_complete_graphs_are_rejected() {
        let z6 = build_group("Z6").unwrap();
        let x = CayleyGraph::new(&z6, &[1, 5]).unwrap();
        let m = GroupMap::identity(6);
        assert!(matches!(
            decompose_colour_permuting(&x, &m),
            Err(Error::InvalidConnectionSet(_))
        ));
    }

    #[test]
    fn hand_built_bad_decomposition_fails_verification() {
        let d12 = build_group("D12").unwrap();
        let x = CayleyGraph::complete(&d12);
        let bad = Decomposition {
            original: inversion_map(&d12),
            beta: GroupMap::identity(12),
            psi: inversion_map(&d12),
        };
        let checks = verify_decomposition(&x, &bad);
        assert!(checks.beta_automorphism);
        assert!(checks.composition);
        // inversion does not preserve colours on a non-abelian group
        assert!(!checks.psi_colour_preserving);
        assert!(!checks.all());
    }

    #[test]
    fn certificate_shape() {
        let z4 = build_group("Z4").unwrap();
        let x = CayleyGraph::complete(&z4);
        let dec = decompose_colour_permuting(&x, &inversion_map(&z4)).unwrap();
        let v = certificate(&x, &dec);
        assert_eq!(v["group"], "Z4");
        assert_eq!(v["original"], serde_json::json!([0, 3, 2, 1]));
        assert_eq!(v["checks"]["beta_automorphism"], true);
        assert_eq!(v["checks"]["psi_colour_preserving"], true);
        assert_eq!(v["checks"]["composition"], true);
    }
}
