//! Structural queries on a finite group: generated subgroups, centralizers,
//! the full subgroup list, automorphism enumeration, affine-map testing, and
//! recognizers for the two group families whose complete graphs carry
//! non-trivial colour-preserving symmetry.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap};

/// Sorted list of the elements of the subgroup generated by `gens`.
pub fn subgroup_generated(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut in_set = vec![false; n];
    let mut members = vec![g.identity()];
    in_set[g.identity()] = true;
    for &s in gens {
        if !in_set[s] {
            in_set[s] = true;
            members.push(s);
        }
    }
    // Close under multiplication; inverses come for free in a finite group.
    loop {
        let len = members.len();
        for ai in 0..len {
            for bi in 0..len {
                let p = g.mul(members[ai], members[bi]);
                if !in_set[p] {
                    in_set[p] = true;
                    members.push(p);
                }
            }
        }
        if members.len() == len {
            break;
        }
    }
    members.sort_unstable();
    members
}

/// Sorted list of the elements commuting with everything in `s`.
pub fn centralizer(g: &FiniteGroup, s: &[usize]) -> Vec<usize> {
    g.elements()
        .filter(|&x| s.iter().all(|&a| g.mul(x, a) == g.mul(a, x)))
        .collect()
}

/// The centre: elements commuting with the whole group.
pub fn centre(g: &FiniteGroup) -> Vec<usize> {
    let all: Vec<usize> = g.elements().collect();
    centralizer(g, &all)
}

/// Every subgroup, as sorted element lists, ordered lexicographically.
/// Grown by closing found subgroups under one extra generator; fine for the
/// small orders this crate works at.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    use std::collections::BTreeSet;
    let trivial = vec![g.identity()];
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in g.elements() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let ext = subgroup_generated(g, &gens);
            if found.insert(ext.clone()) {
                queue.push(ext);
            }
        }
    }
    found.into_iter().collect()
}

/// Is the (sorted) element list closed and abelian as a subgroup?
pub fn is_abelian_subset(g: &FiniteGroup, h: &[usize]) -> bool {
    h.iter()
        .all(|&a| h.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// True iff `m` fixes the identity and respects multiplication.
pub fn is_group_automorphism(g: &FiniteGroup, m: &GroupMap) -> bool {
    if m.degree() != g.order() || m.apply(g.identity()) != g.identity() {
        return false;
    }
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            if m.apply(g.mul(a, b)) != g.mul(m.apply(a), m.apply(b)) {
                return false;
            }
        }
    }
    true
}

/// Greedy generating sequence: repeatedly append the smallest-index element
/// outside the subgroup generated so far.
pub(crate) fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = subgroup_generated(g, &gens);
    while closure.len() < g.order() {
        let next = g
            .elements()
            .find(|x| closure.binary_search(x).is_err())
            .expect("closure is proper, so something lies outside it");
        gens.push(next);
        closure = subgroup_generated(g, &gens);
    }
    gens
}

/// All automorphisms of the group, sorted by image list.
///
/// Backtracks over images of a greedy generating sequence, propagating the
/// partial homomorphism through products and pruning on element orders,
/// injectivity, and any product clash.
pub fn enumerate_automorphisms(g: &FiniteGroup) -> Vec<GroupMap> {
    let n = g.order();
    let gens = generating_sequence(g);
    let mut img: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut defined: Vec<usize> = Vec::new();
    img[g.identity()] = Some(g.identity());
    used[g.identity()] = true;
    defined.push(g.identity());
    let mut out: Vec<GroupMap> = Vec::new();

    // Define img[x] = y and propagate products against everything already
    // defined; returns false on clash.  `defined` doubles as the undo trail.
    fn assign(
        g: &FiniteGroup,
        img: &mut [Option<usize>],
        used: &mut [bool],
        defined: &mut Vec<usize>,
        x: usize,
        y: usize,
    ) -> bool {
        if let Some(prev) = img[x] {
            return prev == y;
        }
        if used[y] {
            return false;
        }
        img[x] = Some(y);
        used[y] = true;
        defined.push(x);
        let mut head = defined.len() - 1;
        while head < defined.len() {
            let a = defined[head];
            let ia = img[a].expect("a is defined");
            for bi in 0..defined.len() {
                let b = defined[bi];
                let ib = img[b].expect("b is defined");
                for (p, q) in [(g.mul(a, b), g.mul(ia, ib)), (g.mul(b, a), g.mul(ib, ia))] {
                    match img[p] {
                        Some(prev) => {
                            if prev != q {
                                return false;
                            }
                        }
                        None => {
                            if used[q] {
                                return false;
                            }
                            img[p] = Some(q);
                            used[q] = true;
                            defined.push(p);
                        }
                    }
                }
            }
            head += 1;
        }
        true
    }

    fn undo(img: &mut [Option<usize>], used: &mut [bool], defined: &mut Vec<usize>, mark: usize) {
        while defined.len() > mark {
            let x = defined.pop().expect("trail is non-empty past the mark");
            let y = img[x].take().expect("trail entries are defined");
            used[y] = false;
        }
    }

    fn rec(
        g: &FiniteGroup,
        gens: &[usize],
        depth: usize,
        img: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        defined: &mut Vec<usize>,
        out: &mut Vec<GroupMap>,
    ) {
        if depth == gens.len() {
            debug_assert_eq!(defined.len(), g.order(), "generators define everything");
            let image: Vec<usize> = (0..g.order()).map(|x| img[x].expect("total")).collect();
            out.push(GroupMap::from_images_unchecked(image));
            return;
        }
        let x = gens[depth];
        let want = g.element_order(x);
        for y in g.elements() {
            if used[y] || g.element_order(y) != want {
                continue;
            }
            let mark = defined.len();
            if assign(g, img, used, defined, x, y) {
                rec(g, gens, depth + 1, img, used, defined, out);
            }
            undo(img, used, defined, mark);
        }
    }

    rec(g, &gens, 0, &mut img, &mut used, &mut defined, &mut out);
    out.sort_unstable();
    out
}

/// Witness that a permutation is affine: it equals x -> alpha(t * x) for a
/// group automorphism `alpha` and a unique translation element `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineWitness {
    pub automorphism: GroupMap,
    pub translation: usize,
}

/// Test whether `m` is affine; on success return the witness.
///
/// The test normalizes at the identity: `m` is affine iff
/// x -> m(1)^{-1} m(x) is a group automorphism.
pub fn is_affine(g: &FiniteGroup, m: &GroupMap) -> Option<AffineWitness> {
    let shift = g.inv(m.apply(g.identity()));
    let normalized = GroupMap::translation(g, shift).compose(m);
    if !is_group_automorphism(g, &normalized) {
        return None;
    }
    let translation = normalized.inverse().apply(m.apply(g.identity()));
    debug_assert!(g
        .elements()
        .all(|x| normalized.apply(g.mul(translation, x)) == m.apply(x)));
    Some(AffineWitness {
        automorphism: normalized,
        translation,
    })
}

/// Witness for the dicyclic shape: an abelian subgroup of index 2, the
/// order-2 element z = q^2 inside it, and an element q outside it whose
/// conjugation inverts the subgroup pointwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DicyclicWitness {
    /// Sorted elements of the abelian index-2 subgroup.
    pub abelian: Vec<usize>,
    /// The designated order-2 element (= q^2).
    pub z: usize,
    /// The inverting element outside the subgroup.
    pub q: usize,
}

impl DicyclicWitness {
    /// Re-check the defining equations against a group.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = g.order();
        if self.abelian.len() * 2 != n {
            return Err(Error::InvalidWitness("subgroup does not have index 2".into()));
        }
        let closed = self.abelian.iter().all(|&a| {
            self.abelian
                .iter()
                .all(|&b| self.abelian.binary_search(&g.mul(a, b)).is_ok())
        });
        if !closed || !is_abelian_subset(g, &self.abelian) {
            return Err(Error::InvalidWitness("not an abelian subgroup".into()));
        }
        if g.element_order(self.z) != 2 || self.abelian.binary_search(&self.z).is_err() {
            return Err(Error::InvalidWitness("z must be an order-2 member".into()));
        }
        if self.abelian.binary_search(&self.q).is_ok() {
            return Err(Error::InvalidWitness("q must lie outside the subgroup".into()));
        }
        if g.mul(self.q, self.q) != self.z {
            return Err(Error::InvalidWitness("q^2 must equal z".into()));
        }
        if !self.abelian.iter().all(|&a| g.conj(self.q, a) == g.inv(a)) {
            return Err(Error::InvalidWitness("q must invert the subgroup".into()));
        }
        Ok(())
    }
}

/// Search for a dicyclic witness; first found under lexicographic order
/// (subgroups by element list, then z, then q ascending).
pub fn is_dicyclic_type(g: &FiniteGroup) -> Option<DicyclicWitness> {
    let n = g.order();
    if n % 2 != 0 {
        return None;
    }
    for h in all_subgroups(g) {
        if h.len() * 2 != n || !is_abelian_subset(g, &h) {
            continue;
        }
        for &z in &h {
            if g.element_order(z) != 2 {
                continue;
            }
            for q in g.elements() {
                if h.binary_search(&q).is_ok() {
                    continue;
                }
                if g.mul(q, q) == z && h.iter().all(|&a| g.conj(q, a) == g.inv(a)) {
                    return Some(DicyclicWitness {
                        abelian: h,
                        z,
                        q,
                    });
                }
            }
        }
    }
    None
}

/// Witness that G is an internal direct product of a quaternion subgroup
/// <i, j> and a central subgroup of exponent <= 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ham2Decomposition {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Sorted elements of the exponent-<=2 complement.
    pub complement: Vec<usize>,
}

impl Ham2Decomposition {
    /// The quaternion subgroup <i, j>, sorted.
    pub fn quaternion_subgroup(&self, g: &FiniteGroup) -> Vec<usize> {
        subgroup_generated(g, &[self.i, self.j])
    }

    /// Re-check the defining equations against a group.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let (i, j, k) = (self.i, self.j, self.k);
        if g.element_order(i) != 4 || g.element_order(j) != 4 {
            return Err(Error::InvalidWitness("i and j must have order 4".into()));
        }
        if g.mul(i, j) != k {
            return Err(Error::InvalidWitness("k must equal ij".into()));
        }
        if g.mul(i, i) != g.mul(j, j) || g.conj(j, i) != g.inv(i) {
            return Err(Error::InvalidWitness("quaternion relations fail".into()));
        }
        let q8 = self.quaternion_subgroup(g);
        if q8.len() != 8 {
            return Err(Error::InvalidWitness("<i, j> does not have order 8".into()));
        }
        let b = &self.complement;
        if b.binary_search(&g.identity()).is_err() {
            return Err(Error::InvalidWitness("complement must contain 1".into()));
        }
        let closed = b
            .iter()
            .all(|&x| b.iter().all(|&y| b.binary_search(&g.mul(x, y)).is_ok()));
        if !closed {
            return Err(Error::InvalidWitness("complement is not a subgroup".into()));
        }
        if !b.iter().all(|&x| g.element_order(x) <= 2) {
            return Err(Error::InvalidWitness("complement must have exponent 2".into()));
        }
        // centrality: commuting with i and j suffices since <i, j, B> = G
        if !b
            .iter()
            .all(|&x| g.mul(x, i) == g.mul(i, x) && g.mul(x, j) == g.mul(j, x))
        {
            return Err(Error::InvalidWitness("complement is not central".into()));
        }
        if q8.len() * b.len() != g.order() {
            return Err(Error::InvalidWitness("sizes do not multiply to |G|".into()));
        }
        let mut seen = vec![false; g.order()];
        for &qq in &q8 {
            for &bb in b {
                let x = g.mul(qq, bb);
                if seen[x] {
                    return Err(Error::InvalidWitness("products q*b collide".into()));
                }
                seen[x] = true;
            }
        }
        Ok(())
    }

    /// Factor x uniquely as q * b with q in <i, j> and b in the complement.
    pub fn factor(&self, g: &FiniteGroup, x: usize) -> (usize, usize) {
        let q8 = self.quaternion_subgroup(g);
        for &qq in &q8 {
            let b = g.mul(g.inv(qq), x);
            if self.complement.binary_search(&b).is_ok() {
                return (qq, b);
            }
        }
        unreachable!("validated decompositions cover the group")
    }
}

/// Recognize G as (quaternion group) x (elementary abelian 2-group).
///
/// i and j are the lexicographically smallest order-4 pair that fail to
/// commute and satisfy the quaternion relations; the complement is grown
/// greedily inside the set of order-<=2 elements, avoiding i^2.
pub fn decompose_hamiltonian_2group(g: &FiniteGroup) -> Option<Ham2Decomposition> {
    let n = g.order();
    if n % 8 != 0 || g.is_abelian() {
        return None;
    }

    let order4: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 4).collect();
    let mut pair = None;
    'outer: for &i in &order4 {
        for &j in &order4 {
            if g.mul(i, j) == g.mul(j, i) {
                continue;
            }
            if g.mul(i, i) == g.mul(j, j) && g.conj(j, i) == g.inv(i) {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = pair?;
    let q8 = subgroup_generated(g, &[i, j]);
    if q8.len() != 8 {
        return None;
    }

    // Elements of order <= 2; in the product shape this set is the centre
    // <i^2> x B and must be closed under multiplication.
    let small: Vec<usize> = g.elements().filter(|&x| g.element_order(x) <= 2).collect();
    let closed = small
        .iter()
        .all(|&x| small.iter().all(|&y| small.binary_search(&g.mul(x, y)).is_ok()));
    if !closed || small.len() * 4 != n {
        return None;
    }

    // Grow a complement of <i^2> inside `small`: take each element not yet
    // spanned; the span always contains i^2, so the result meets <i^2>
    // trivially.
    let i2 = g.mul(i, i);
    let mut span = subgroup_generated(g, &[i2]);
    let mut b_gens: Vec<usize> = Vec::new();
    for &x in &small {
        if span.binary_search(&x).is_err() {
            b_gens.push(x);
            let mut gens = b_gens.clone();
            gens.push(i2);
            span = subgroup_generated(g, &gens);
        }
    }
    let complement = subgroup_generated(g, &b_gens);

    let witness = Ham2Decomposition {
        i,
        j,
        k: g.mul(i, j),
        complement,
    };
    witness.validate(g).ok()?;
    Some(witness)
}
