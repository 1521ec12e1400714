//! Randomized invariants over the small-group roster.

use proptest::prelude::*;

use cayley_cca::catalog::catalog_groups;
use cayley_cca::cayley::CayleyGraph;
use cayley_cca::colour_aut::{
    enumerate_stabilizer, is_colour_permuting, is_colour_preserving, Mode,
};
use cayley_cca::decompose::{
    decompose_colour_permuting, normalize_to_stabilizer, verify_decomposition,
};
use cayley_cca::structure::{enumerate_automorphisms, is_affine, is_group_automorphism};
use cayley_cca::{FiniteGroup, GroupMap};

fn roster(max_order: usize) -> impl Strategy<Value = FiniteGroup> {
    let pool = catalog_groups(max_order).expect("roster builds");
    (0..pool.len()).prop_map(move |i| pool[i].clone())
}

fn permutation(n: usize) -> impl Strategy<Value = GroupMap> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|image| GroupMap::from_images(image).expect("shuffle is a permutation"))
}

/// A union of colour classes of the complete graph, never empty.
fn class_union(g: &FiniteGroup, mask: u32) -> Vec<usize> {
    let complete = CayleyGraph::complete(g);
    let classes = complete.colour_classes();
    let mut s = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        if mask & (1 << (ci as u32 % classes.len() as u32)) != 0 {
            s.extend(class.members());
        }
    }
    if s.is_empty() {
        s.extend(classes[mask as usize % classes.len()].members());
    }
    s.sort_unstable();
    s
}

proptest! {
    #[test]
    fn compose_and_inverse_laws((a, b) in (2usize..20).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        let n = a.images().len();
        let ab = a.compose(&b);
        for x in 0..n {
            prop_assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.inverse().compose(&a).is_identity());
        prop_assert_eq!(ab.inverse(), b.inverse().compose(&a.inverse()));
    }

    #[test]
    fn translations_represent_the_group((g, s, t) in roster(16).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n, 0..n)
    })) {
        let ls = GroupMap::translation(&g, s);
        let lt = GroupMap::translation(&g, t);
        prop_assert_eq!(ls.compose(&lt), GroupMap::translation(&g, g.mul(s, t)));
    }

    #[test]
    fn edge_colours_are_well_defined((g, mask) in (roster(16), 1u32..4096)) {
        let s = class_union(&g, mask);
        let x = CayleyGraph::new(&g, &s).expect("class unions are valid connection sets");
        for v in g.elements() {
            for w in g.elements() {
                prop_assert_eq!(x.has_edge(v, w), x.has_edge(w, v));
                let c = x.edge_colour(v, w);
                prop_assert_eq!(c, x.edge_colour(w, v));
                if x.has_edge(v, w) {
                    prop_assert_eq!(c, x.class_of(g.mul(g.inv(v), w)));
                }
            }
        }
    }

    #[test]
    fn connectivity_matches_union_find((g, mask) in (roster(16), 1u32..4096)) {
        let s = class_union(&g, mask);
        let x = CayleyGraph::new(&g, &s).expect("class unions are valid connection sets");
        let mut parent: Vec<usize> = (0..g.order()).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let root = find(parent, parent[v]);
                parent[v] = root;
            }
            parent[v]
        }
        for (v, w, _) in x.edges() {
            let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
            parent[rv] = rw;
        }
        let root = find(&mut parent, 0);
        let connected = g.elements().all(|v| find(&mut parent, v) == root);
        prop_assert_eq!(x.is_connected(), connected);
    }

    #[test]
    fn affine_maps_reconstruct((g, ai, t) in roster(16).prop_flat_map(|g| {
        let autos = enumerate_automorphisms(&g).len();
        let n = g.order();
        (Just(g), 0..autos, 0..n)
    })) {
        let alpha = &enumerate_automorphisms(&g)[ai];
        let m = alpha.compose(&GroupMap::translation(&g, t));
        let w = is_affine(&g, &m).expect("automorphism after translation is affine");
        prop_assert!(is_group_automorphism(&g, &w.automorphism));
        for x in g.elements() {
            prop_assert_eq!(m.apply(x), w.automorphism.apply(g.mul(w.translation, x)));
        }
    }

    #[test]
    fn normalization_splits_off_the_translation((g, ai, t) in roster(16).prop_flat_map(|g| {
        let autos = enumerate_automorphisms(&g).len();
        let n = g.order();
        (Just(g), 0..autos, 0..n)
    })) {
        let alpha = &enumerate_automorphisms(&g)[ai];
        let m = GroupMap::translation(&g, t).compose(alpha);
        let x = CayleyGraph::complete(&g);
        let (moved, sigma) = normalize_to_stabilizer(&x, &m);
        prop_assert_eq!(moved, t, "translations move the identity vertex");
        prop_assert_eq!(sigma.apply(g.identity()), g.identity());
        prop_assert_eq!(GroupMap::translation(&g, moved).compose(&sigma), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn preserving_maps_permute_classes_identically((g, mask) in (roster(8), 1u32..4096)) {
        let s = class_union(&g, mask);
        let x = CayleyGraph::new(&g, &s).expect("class unions are valid connection sets");
        let stab = enumerate_stabilizer(&x, Mode::ColourPreserving).expect("within search cap");
        for m in &stab.maps {
            prop_assert!(is_colour_preserving(&x, m));
            let pi = is_colour_permuting(&x, m).expect("preserving maps permute colours");
            let k = x.colour_classes().len();
            prop_assert_eq!(pi, (0..k).collect::<Vec<usize>>());
        }
    }

    #[test]
    fn affine_colour_permuting_maps_factor((g, ai, t) in roster(16).prop_flat_map(|g| {
        let autos = enumerate_automorphisms(&g).len();
        let n = g.order();
        (Just(g), 0..autos, 0..n)
    })) {
        let alpha = &enumerate_automorphisms(&g)[ai];
        let m = alpha.compose(&GroupMap::translation(&g, t));
        let x = CayleyGraph::complete(&g);
        let d = decompose_colour_permuting(&x, &m).expect("affine maps factor");
        prop_assert!(verify_decomposition(&x, &d).all());
        prop_assert_eq!(&d.original, &m);
    }
}
