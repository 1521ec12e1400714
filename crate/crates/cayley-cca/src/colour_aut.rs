//! Colour-preserving and colour-permuting automorphisms of Cayley graphs.
//!
//! The central object is the vertex stabilizer of the identity: every
//! automorphism splits as (translation) compose (identity-fixing map), so
//! enumerating the stabilizer pins down the whole group.  The searches are
//! plain backtracking over vertex images in breadth-first order, pruning on
//! adjacency and colour constraints as they accumulate.

use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::group::GroupMap;
use crate::structure::{is_affine, is_group_automorphism, subgroup_generated};
use crate::MAX_SEARCH_ORDER;

/// Which kind of automorphism a search or set refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Every edge keeps its colour.
    #[serde(rename = "colour-preserving")]
    ColourPreserving,
    /// Same-coloured edges stay same-coloured: a permutation of the colour
    /// classes is induced.
    #[serde(rename = "colour-permuting")]
    ColourPermuting,
    /// Plain graph automorphisms, colours ignored.
    #[serde(rename = "all-graph-automorphisms")]
    AllGraph,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::ColourPreserving => "colour-preserving",
            Mode::ColourPermuting => "colour-permuting",
            Mode::AllGraph => "all-graph-automorphisms",
        })
    }
}

/// A set of automorphisms of one graph, as produced by the enumerators.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismSet {
    pub mode: Mode,
    /// True when the maps all fix the identity vertex.
    pub stabilized: bool,
    /// Sorted by image list.
    pub maps: Vec<GroupMap>,
}

impl AutomorphismSet {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn contains(&self, m: &GroupMap) -> bool {
        self.maps.binary_search(m).is_ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mode": self.mode,
            "stabilized": self.stabilized,
            "maps": self.maps.iter().map(|m| m.images().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Does `m` map every edge to an edge of the same colour?
pub fn is_colour_preserving(x: &CayleyGraph, m: &GroupMap) -> bool {
    let g = x.group();
    for v in g.elements() {
        for &s in x.connection() {
            let w = g.mul(v, s);
            if x.edge_colour(m.apply(v), m.apply(w)) != x.class_of(s) {
                return false;
            }
        }
    }
    true
}

/// If `m` maps same-coloured edges to same-coloured edges, return the
/// induced permutation of colour-class ids (position c holds the image of
/// class c).  The candidate permutation is read off the star of the
/// identity vertex — every colour appears there — and then checked against
/// every edge.
pub fn is_colour_permuting(x: &CayleyGraph, m: &GroupMap) -> Option<Vec<usize>> {
    let g = x.group();
    let classes = x.colour_classes().len();
    let mut pibar = vec![usize::MAX; classes];
    let base = g.identity();
    for &s in x.connection() {
        let c = x.class_of(s).expect("s is in the set");
        let c2 = x.edge_colour(m.apply(base), m.apply(g.mul(base, s)))?;
        if pibar[c] == usize::MAX {
            pibar[c] = c2;
        } else if pibar[c] != c2 {
            return None;
        }
    }
    // a permutation, not just a function
    let mut seen = vec![false; classes];
    for &c2 in &pibar {
        if c2 == usize::MAX || seen[c2] {
            return None;
        }
        seen[c2] = true;
    }
    // global verification
    for v in g.elements() {
        for &s in x.connection() {
            let w = g.mul(v, s);
            let c = x.class_of(s).expect("s is in the set");
            match x.edge_colour(m.apply(v), m.apply(w)) {
                Some(c2) if c2 == pibar[c] => {}
                _ => return None,
            }
        }
    }
    Some(pibar)
}

/// The permutation of the connection set seen at one vertex: s maps to
/// phi(g)^{-1} phi(gs).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalPermutation {
    pub base: usize,
    /// Parallel to the graph's connection set: entry p is the image of
    /// connection()[p].
    pub images: Vec<usize>,
}

/// Compute the local permutation of a colour-permuting automorphism at
/// vertex `base`.
pub fn local_permutation(x: &CayleyGraph, m: &GroupMap, base: usize) -> Result<LocalPermutation> {
    let g = x.group();
    let mut images = Vec::with_capacity(x.connection().len());
    for &s in x.connection() {
        let t = g.mul(g.inv(m.apply(base)), m.apply(g.mul(base, s)));
        if x.class_of(t).is_none() {
            return Err(Error::NotColourPermuting);
        }
        images.push(t);
    }
    // bijection of S commuting with inversion
    let mut seen = vec![false; g.order()];
    for &t in &images {
        if seen[t] {
            return Err(Error::NotColourPermuting);
        }
        seen[t] = true;
    }
    Ok(LocalPermutation { base, images })
}

// ---------------------------------------------------------------------------
// The backtracking search
// ---------------------------------------------------------------------------

struct Search<'a> {
    x: &'a CayleyGraph,
    mode: Mode,
    /// Vertex assignment order: breadth-first from the identity, neighbours
    /// visited along ascending colour-class id; unreachable vertices are
    /// appended afterwards in index order.
    order: Vec<usize>,
    /// parent[t] = some earlier-assigned neighbour of order[t], if any.
    parent: Vec<Option<usize>>,
    img: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    pibar: Vec<usize>,
    pibar_used: Vec<bool>,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(x: &'a CayleyGraph, mode: Mode) -> Search<'a> {
        let g = x.group();
        let n = g.order();
        // neighbours of a vertex, sorted by (colour-class id, element)
        let mut step: Vec<usize> = x.connection().to_vec();
        step.sort_unstable_by_key(|&s| (x.class_of(s), s));
        let mut order = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        let enqueue_root = |v: usize,
                                seen: &mut Vec<bool>,
                                order: &mut Vec<usize>,
                                parent: &mut Vec<Option<usize>>,
                                queue: &mut std::collections::VecDeque<usize>| {
            seen[v] = true;
            order.push(v);
            parent.push(None);
            queue.push_back(v);
        };
        enqueue_root(g.identity(), &mut seen, &mut order, &mut parent, &mut queue);
        loop {
            while let Some(u) = queue.pop_front() {
                for &s in &step {
                    let w = g.mul(u, s);
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                        parent.push(Some(u));
                        queue.push_back(w);
                    }
                }
            }
            match (0..n).find(|&v| !seen[v]) {
                Some(v) => enqueue_root(v, &mut seen, &mut order, &mut parent, &mut queue),
                None => break,
            }
        }
        let classes = x.colour_classes().len();
        Search {
            x,
            mode,
            order,
            parent,
            img: vec![UNSET; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
            pibar: vec![UNSET; classes],
            pibar_used: vec![false; classes],
        }
    }

    /// Check `w` as image of `v` against every assigned vertex; on success
    /// fill `new_pairs` with colour-class assignments this image forces.
    fn consistent(&self, v: usize, w: usize, new_pairs: &mut Vec<(usize, usize)>) -> bool {
        let g = self.x.group();
        new_pairs.clear();
        for &u in &self.assigned {
            let s = g.mul(g.inv(u), v);
            let t = g.mul(g.inv(self.img[u]), w);
            let cs = self.x.class_of(s);
            let ct = self.x.class_of(t);
            match (cs, ct) {
                (None, None) => {}
                (Some(c), Some(c2)) => match self.mode {
                    Mode::AllGraph => {}
                    Mode::ColourPreserving => {
                        if c != c2 {
                            return false;
                        }
                    }
                    Mode::ColourPermuting => {
                        let mut expected = self.pibar[c];
                        if expected == UNSET {
                            if let Some(&(_, prop)) =
                                new_pairs.iter().find(|&&(cc, _)| cc == c)
                            {
                                expected = prop;
                            }
                        }
                        if expected != UNSET {
                            if expected != c2 {
                                return false;
                            }
                        } else {
                            // fresh class: image class must be fresh too and
                            // match singleton-ness (edge counts must agree)
                            if self.pibar_used[c2]
                                || new_pairs.iter().any(|&(_, prop)| prop == c2)
                            {
                                return false;
                            }
                            let ci = self.x.colour_classes()[c].is_involution();
                            let c2i = self.x.colour_classes()[c2].is_involution();
                            if ci != c2i {
                                return false;
                            }
                            new_pairs.push((c, c2));
                        }
                    }
                },
                _ => return false,
            }
        }
        true
    }

    /// Candidate images for vertex `v` guided by its BFS parent (all unused
    /// vertices when it has none).
    fn candidates(&self, v: usize, parent: Option<usize>) -> Vec<usize> {
        let g = self.x.group();
        match parent {
            None => (0..g.order()).filter(|&w| !self.used[w]).collect(),
            Some(u) => {
                let iu = self.img[u];
                let s = g.mul(g.inv(u), v);
                let c = self.x.class_of(s).expect("parent edge");
                let mut out = Vec::new();
                let push = |w: usize, out: &mut Vec<usize>| {
                    if !self.used[w] && !out.contains(&w) {
                        out.push(w);
                    }
                };
                match self.mode {
                    Mode::ColourPreserving => {
                        push(g.mul(iu, s), &mut out);
                        push(g.mul(iu, g.inv(s)), &mut out);
                    }
                    Mode::ColourPermuting => {
                        if self.pibar[c] != UNSET {
                            for t in self.x.colour_classes()[self.pibar[c]].members() {
                                push(g.mul(iu, t), &mut out);
                            }
                        } else {
                            let want = self.x.colour_classes()[c].is_involution();
                            for &t in self.x.connection() {
                                let ct = self.x.class_of(t).expect("t is in the set");
                                if !self.pibar_used[ct]
                                    && self.x.colour_classes()[ct].is_involution() == want
                                {
                                    push(g.mul(iu, t), &mut out);
                                }
                            }
                        }
                    }
                    Mode::AllGraph => {
                        for &t in self.x.connection() {
                            push(g.mul(iu, t), &mut out);
                        }
                    }
                }
                out
            }
        }
    }

    /// Depth-first enumeration; `visit` returns false to abort the whole
    /// search (early exit).
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.img);
        }
        let v = self.order[depth];
        let parent = self.parent[depth];
        let mut new_pairs: Vec<(usize, usize)> = Vec::new();
        for w in self.candidates(v, parent) {
            if !self.consistent(v, w, &mut new_pairs) {
                continue;
            }
            self.img[v] = w;
            self.used[w] = true;
            self.assigned.push(v);
            for &(c, c2) in &new_pairs {
                self.pibar[c] = c2;
                self.pibar_used[c2] = true;
            }
            let keep_going = self.run(depth + 1, visit);
            for &(c, c2) in &new_pairs {
                self.pibar[c] = UNSET;
                self.pibar_used[c2] = false;
            }
            self.assigned.pop();
            self.used[w] = false;
            self.img[v] = UNSET;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn check_search_limit(x: &CayleyGraph) -> Result<()> {
    let order = x.group().order();
    if order > MAX_SEARCH_ORDER {
        return Err(Error::SearchLimit {
            order,
            limit: MAX_SEARCH_ORDER,
        });
    }
    Ok(())
}

/// Enumerate the full stabilizer of the identity vertex in the chosen mode.
///
/// Beware `Mode::AllGraph` on dense graphs: the stabilizer of a complete
/// graph is the full symmetric group on the other vertices.
pub fn enumerate_stabilizer(x: &CayleyGraph, mode: Mode) -> Result<AutomorphismSet> {
    check_search_limit(x)?;
    let mut maps = Vec::new();
    let mut search = Search::new(x, mode);
    // fix the identity vertex
    let e = x.group().identity();
    search.img[e] = e;
    search.used[e] = true;
    search.assigned.push(e);
    search.run(1, &mut |img| {
        maps.push(GroupMap::from_images_unchecked(img.to_vec()));
        true
    });
    maps.sort_unstable();
    Ok(AutomorphismSet {
        mode,
        stabilized: true,
        maps,
    })
}

/// The whole automorphism group in the chosen mode: every translation
/// composed with every stabilizer element.
pub fn full_automorphism_group(x: &CayleyGraph, mode: Mode) -> Result<AutomorphismSet> {
    let stab = enumerate_stabilizer(x, mode)?;
    let g = x.group();
    let mut maps = Vec::with_capacity(g.order() * stab.len());
    for t in g.elements() {
        let lt = GroupMap::translation(g, t);
        for m in &stab.maps {
            maps.push(lt.compose(m));
        }
    }
    maps.sort_unstable();
    maps.dedup();
    Ok(AutomorphismSet {
        mode,
        stabilized: false,
        maps,
    })
}

/// First identity-fixing graph automorphism that is not a group
/// automorphism, if any.  Backtracks with early exit, so this is cheap even
/// when the full stabilizer would be astronomically large.
pub fn find_non_affine_graph_automorphism(x: &CayleyGraph) -> Result<Option<GroupMap>> {
    check_search_limit(x)?;
    let mut witness = None;
    let mut search = Search::new(x, Mode::AllGraph);
    let e = x.group().identity();
    search.img[e] = e;
    search.used[e] = true;
    search.assigned.push(e);
    let group = x.group();
    search.run(1, &mut |img| {
        let m = GroupMap::from_images_unchecked(img.to_vec());
        if !is_group_automorphism(group, &m) {
            witness = Some(m);
            false
        } else {
            true
        }
    });
    Ok(witness)
}

/// The conjugate trick: from a colour-permuting automorphism `m` and an
/// edge (g, gs), build the colour-preserving automorphism
/// psi = L_g^{-1} m^{-1} L_{m(g)} L_{m(gs)}^{-1} m L_{gs}, which fixes the
/// identity and the chosen connection element s.
pub fn make_colour_preserving_conjugate(
    x: &CayleyGraph,
    m: &GroupMap,
    g_vertex: usize,
    s: usize,
) -> Result<GroupMap> {
    let g = x.group();
    if x.class_of(s).is_none() {
        return Err(Error::InvalidConnectionSet(format!(
            "{s} is not in the connection set"
        )));
    }
    if is_colour_permuting(x, m).is_none() {
        return Err(Error::NotColourPermuting);
    }
    let gs = g.mul(g_vertex, s);
    let minv = m.inverse();
    let parts = [
        GroupMap::translation(g, g.inv(g_vertex)),
        minv,
        GroupMap::translation(g, m.apply(g_vertex)),
        GroupMap::translation(g, g.inv(m.apply(gs))),
        m.clone(),
        GroupMap::translation(g, gs),
    ];
    let psi = parts
        .iter()
        .cloned()
        .reduce(|acc, p| acc.compose(&p))
        .expect("non-empty");
    debug_assert_eq!(psi.apply(g.identity()), g.identity());
    debug_assert_eq!(psi.apply(g.inv(s)), g.inv(s));
    if !is_colour_preserving(x, &psi) || psi.apply(s) != s {
        return Err(Error::FactorizationStep(
            "conjugate construction did not yield a colour-preserving map fixing s",
        ));
    }
    Ok(psi)
}

/// Connection elements fixed by no non-trivial colour-preserving
/// stabilizer element.  When these generate the group, every
/// colour-permuting automorphism is affine.
pub fn star_set(x: &CayleyGraph) -> Result<Vec<usize>> {
    let stab = enumerate_stabilizer(x, Mode::ColourPreserving)?;
    Ok(x.connection()
        .iter()
        .copied()
        .filter(|&s| {
            stab.maps
                .iter()
                .all(|m| m.is_identity() || m.apply(s) != s)
        })
        .collect())
}

/// The subgroup generated by the involutions of the connection set,
/// together with those involutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionSubgroup {
    /// Involutions in the connection set, ascending.
    pub involutions: Vec<usize>,
    /// Sorted elements of the subgroup they generate.
    pub subgroup: Vec<usize>,
}

pub fn involution_subgroup(x: &CayleyGraph) -> InvolutionSubgroup {
    let g = x.group();
    let involutions: Vec<usize> = x
        .connection()
        .iter()
        .copied()
        .filter(|&s| g.element_order(s) == 2)
        .collect();
    let subgroup = subgroup_generated(g, &involutions);
    InvolutionSubgroup {
        involutions,
        subgroup,
    }
}

/// The three affineness verdicts for one graph, with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct CcaStatus {
    /// Every colour-preserving automorphism is affine.
    pub cca: bool,
    /// Every colour-permuting automorphism is affine.
    pub strongly_cca: bool,
    /// Every graph automorphism is affine.
    pub normal: bool,
    /// Non-affine colour-preserving stabilizer elements.
    pub non_affine_colour_preserving: Vec<GroupMap>,
    /// Non-affine colour-permuting stabilizer elements.
    pub non_affine_colour_permuting: Vec<GroupMap>,
    /// A non-affine plain graph automorphism, if one exists.
    pub non_affine_graph_automorphism: Option<GroupMap>,
}

/// Compute the CCA/strong-CCA/normality verdicts for a graph.
///
/// A full automorphism L_t compose sigma is affine exactly when the
/// stabilizer part sigma is a group automorphism, so only stabilizers need
/// enumerating; normality is decided by an early-exit witness search.
pub fn cca_status(x: &CayleyGraph) -> Result<CcaStatus> {
    let g = x.group();
    let preserving = enumerate_stabilizer(x, Mode::ColourPreserving)?;
    let permuting = enumerate_stabilizer(x, Mode::ColourPermuting)?;
    let non_affine = |set: &AutomorphismSet| -> Vec<GroupMap> {
        set.maps
            .iter()
            .filter(|m| is_affine(g, m).is_none())
            .cloned()
            .collect()
    };
    let non_affine_colour_preserving = non_affine(&preserving);
    let non_affine_colour_permuting = non_affine(&permuting);
    let non_affine_graph_automorphism = find_non_affine_graph_automorphism(x)?;
    Ok(CcaStatus {
        cca: non_affine_colour_preserving.is_empty(),
        strongly_cca: non_affine_colour_permuting.is_empty(),
        normal: non_affine_graph_automorphism.is_none(),
        non_affine_colour_preserving,
        non_affine_colour_permuting,
        non_affine_graph_automorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::inversion_map;
    use crate::families::build_group;

    fn complete(spec: &str) -> CayleyGraph {
        CayleyGraph::complete(&build_group(spec).unwrap())
    }

    #[test]
    fn translations_are_colour_preserving() {
        let x = complete("D12");
        let g = x.group();
        for t in g.elements() {
            assert!(is_colour_preserving(&x, &GroupMap::translation(g, t)));
        }
    }

    #[test]
    fn inversion_is_colour_preserving_on_abelian_groups() {
        for spec in ["Z4", "Z6", "Z2^3", "Z4xZ2"] {
            let x = complete(spec);
            let iota = inversion_map(x.group());
            assert!(is_colour_preserving(&x, &iota), "{spec}");
        }
        // ... and not an automorphism of the graph colouring for D12? It
        // still preserves colours as a map on edges only if it maps edges
        // to edges with equal colour; for non-abelian groups inversion is
        // not even colour-permuting in general.
        let x = complete("D12");
        let iota = inversion_map(x.group());
        assert!(!is_colour_preserving(&x, &iota));
    }

    #[test]
    fn group_automorphisms_are_colour_permuting_on_complete_graphs() {
        let x = complete("Q8");
        for m in crate::structure::enumerate_automorphisms(x.group()) {
            let pibar = is_colour_permuting(&x, &m).expect("automorphisms permute colours");
            // the induced map is a permutation of class ids
            let mut sorted = pibar.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..x.colour_classes().len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn stabilizer_sizes_on_small_complete_graphs() {
        // identity only
        let set = enumerate_stabilizer(&complete("Z2^3"), Mode::ColourPreserving).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.maps[0].is_identity());

        // inversion joins in
        let set = enumerate_stabilizer(&complete("Z4"), Mode::ColourPreserving).unwrap();
        assert_eq!(set.len(), 2);

        // the eight quaternion stabilizer maps
        let set = enumerate_stabilizer(&complete("Q8"), Mode::ColourPreserving).unwrap();
        assert_eq!(set.len(), 8);

        // colour-permuting stabilizer of K5 is Aut(Z5)
        let z5 = build_group("Z5").unwrap();
        let set = enumerate_stabilizer(&CayleyGraph::complete(&z5), Mode::ColourPermuting).unwrap();
        assert_eq!(set.len(), 4);
        let aut = crate::structure::enumerate_automorphisms(&z5);
        assert_eq!(set.maps, aut);
    }

    /// Brute-force oracle for every search mode: filter all bijections that
    /// fix the identity.  Only viable for tiny groups.
    fn stabilizer_by_filter(x: &CayleyGraph, mode: Mode) -> Vec<GroupMap> {
        use itertools::Itertools;
        let g = x.group();
        let others: Vec<usize> = g.elements().filter(|&v| v != g.identity()).collect();
        let mut out = Vec::new();
        for perm in others.iter().copied().permutations(others.len()) {
            let mut image = vec![0usize; g.order()];
            for (src, dst) in others.iter().zip(perm) {
                image[*src] = dst;
            }
            image[g.identity()] = g.identity();
            let m = GroupMap::from_images_unchecked(image);
            let keep = match mode {
                Mode::ColourPreserving => is_colour_preserving(x, &m),
                Mode::ColourPermuting => is_colour_permuting(x, &m).is_some(),
                Mode::AllGraph => {
                    g.elements().all(|v| {
                        g.elements()
                            .all(|w| x.has_edge(v, w) == x.has_edge(m.apply(v), m.apply(w)))
                    })
                }
            };
            if keep {
                out.push(m);
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn search_matches_factorial_oracle_up_to_order_8() {
        let q8 = build_group("Q8").unwrap();
        let v4 = build_group("Z2^2").unwrap();
        let z6 = build_group("Z6").unwrap();
        let d8 = build_group("D8").unwrap();
        let mut graphs = vec![
            CayleyGraph::complete(&q8),
            CayleyGraph::complete(&v4),
            CayleyGraph::complete(&z6),
            CayleyGraph::new(&z6, &[1, 5]).unwrap(),
            CayleyGraph::new(&z6, &[2, 4, 3]).unwrap(),
            CayleyGraph::new(&q8, &[1, 5, 4]).unwrap(),
            CayleyGraph::new(&d8, &[1, 3, 4]).unwrap(),
        ];
        // a disconnected graph for good measure
        graphs.push(CayleyGraph::new(&z6, &[2, 4]).unwrap());
        for x in &graphs {
            for mode in [Mode::ColourPreserving, Mode::ColourPermuting, Mode::AllGraph] {
                let fast = enumerate_stabilizer(x, mode).unwrap();
                let slow = stabilizer_by_filter(x, mode);
                assert_eq!(
                    fast.maps,
                    slow,
                    "mode {mode:?} on {} with S={:?}",
                    x.group().name(),
                    x.connection()
                );
            }
        }
    }

    #[test]
    fn search_limit_is_enforced() {
        let g = crate::families::build_group_with_cap("Z65", 128).unwrap();
        let x = CayleyGraph::complete(&g);
        assert!(matches!(
            enumerate_stabilizer(&x, Mode::ColourPreserving),
            Err(Error::SearchLimit { order: 65, .. })
        ));
    }

    #[test]
    fn stabilizers_are_closed_under_composition() {
        for spec in ["Z8", "Q8", "D12", "Z4xZ2"] {
            let x = complete(spec);
            let set = enumerate_stabilizer(&x, Mode::ColourPermuting).unwrap();
            for a in &set.maps {
                assert!(set.contains(&a.inverse()), "{spec}: inverse missing");
                for b in &set.maps {
                    assert!(set.contains(&a.compose(b)), "{spec}: composition missing");
                }
            }
        }
    }

    #[test]
    fn local_permutations_of_inversion() {
        let x = complete("Z4");
        let iota = inversion_map(x.group());
        let lp = local_permutation(&x, &iota, 1).unwrap();
        // s -> s^{-1} at every base in an abelian group: 1 -> 3
        assert_eq!(lp.images, vec![3, 2, 1]);
        for base in x.group().elements() {
            assert_eq!(local_permutation(&x, &iota, base).unwrap().images, lp.images);
        }
    }

    #[test]
    fn local_permutation_rejects_non_automorphisms() {
        let x = CayleyGraph::new(&build_group("Z6").unwrap(), &[1, 5]).unwrap();
        // transposing 2 and 3 breaks hexagon edges at vertex 2 (though the
        // star of vertex 0 happens to survive)
        let m = GroupMap::from_images(vec![0, 1, 3, 2, 4, 5]).unwrap();
        assert!(local_permutation(&x, &m, 0).is_ok());
        assert!(local_permutation(&x, &m, 2).is_err());
    }

    #[test]
    fn full_group_is_translations_times_stabilizer() {
        let x = complete("Z4");
        let full = full_automorphism_group(&x, Mode::ColourPreserving).unwrap();
        assert_eq!(full.len(), 8); // 4 translations times 2 stabilizer maps
        assert!(!full.stabilized);
        for m in &full.maps {
            assert!(is_colour_preserving(&x, m));
        }
        // closed under composition and inverse
        for a in &full.maps {
            assert!(full.contains(&a.inverse()));
            for b in &full.maps {
                assert!(full.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn conjugate_construction_lands_in_the_stabilizer() {
        let x = complete("Q8");
        let set = enumerate_stabilizer(&x, Mode::ColourPermuting).unwrap();
        let preserving = enumerate_stabilizer(&x, Mode::ColourPreserving).unwrap();
        let m = set
            .maps
            .iter()
            .find(|m| !is_group_automorphism(x.group(), m) && !preserving.contains(m))
            .expect("Q8 has colour-permuting stabilizer maps beyond the preserving ones");
        let psi = make_colour_preserving_conjugate(&x, m, 0, 2).unwrap();
        assert!(preserving.contains(&psi));
        assert_eq!(psi.apply(2), 2);
    }

    #[test]
    fn star_sets() {
        let x = complete("Z2^2");
        assert_eq!(star_set(&x).unwrap(), vec![1, 2, 3]);
        let x = complete("Z4");
        assert_eq!(star_set(&x).unwrap(), vec![1, 3]);
        let x = complete("Q8");
        assert_eq!(star_set(&x).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn involution_subgroup_of_d12_is_everything() {
        let x = complete("D12");
        let inv = involution_subgroup(&x);
        assert_eq!(inv.involutions.len(), 7);
        assert_eq!(inv.subgroup.len(), 12);
        // within the rotation subgraph: only r^3
        let g = x.group();
        let y = CayleyGraph::new(g, &[1, 5, 3]).unwrap();
        let inv = involution_subgroup(&y);
        assert_eq!(inv.involutions, vec![3]);
        assert_eq!(inv.subgroup, vec![0, 3]);
    }

    #[test]
    fn cca_statuses_of_small_complete_graphs() {
        let st = cca_status(&complete("Z6")).unwrap();
        assert!(st.cca && st.strongly_cca);
        assert!(!st.normal); // K6 has plenty of non-affine automorphisms

        let st = cca_status(&complete("Q8")).unwrap();
        assert!(!st.cca && !st.strongly_cca);
        // inversion is among the witnesses
        let iota = inversion_map(complete("Q8").group());
        assert!(st.non_affine_colour_preserving.contains(&iota));

        // K2 is normal: its only stabilizer element is the identity
        let st = cca_status(&complete("Z2")).unwrap();
        assert!(st.normal && st.cca && st.strongly_cca);
    }

    #[test]
    fn automorphism_set_json_is_sorted() {
        let x = complete("Z4");
        let set = enumerate_stabilizer(&x, Mode::ColourPreserving).unwrap();
        let v = set.to_json();
        assert_eq!(v["mode"], "colour-preserving");
        assert_eq!(v["stabilized"], true);
        assert_eq!(v["maps"][0], serde_json::json!([0, 1, 2, 3]));
        assert_eq!(v["maps"][1], serde_json::json!([0, 3, 2, 1]));
    }
}
