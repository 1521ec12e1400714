//! Finite groups as dense multiplication tables, and permutations of their
//! element set.
//!
//! Elements are the indices `0..order`.  Every constructor in this crate
//! puts the identity at index 0; hand-rolled tables may put it anywhere and
//! the validator will find it.

use crate::error::{Error, Result};

/// Largest group order the construction helpers accept by default.  Keeps
/// the O(n^3) associativity check and the exhaustive searches cheap.
pub const DEFAULT_ORDER_CAP: usize = 64;

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    identity: usize,
    mul: Vec<usize>, // row-major: mul[a * order + b] = a * b
    inv: Vec<usize>,
    elem_order: Vec<usize>,
    elem_names: Vec<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Build a group from a square multiplication table, validating the
    /// group axioms: Latin square, a (unique) two-sided identity, two-sided
    /// inverses, and associativity over all triples.
    ///
    /// `elem_names` is optional display labelling; defaults to the indices.
    pub fn from_table(
        name: impl Into<String>,
        table: &[Vec<usize>],
        elem_names: Option<Vec<String>>,
    ) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {v} out of range for order {n}"
                    )));
                }
                mul.push(v);
            }
        }
        let names = match elem_names {
            Some(names) => {
                if names.len() != n {
                    return Err(Error::InvalidTable("wrong number of element names".into()));
                }
                names
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Self::from_parts(name.into(), n, mul, names)
    }

    pub(crate) fn from_parts(
        name: String,
        order: usize,
        mul: Vec<usize>,
        elem_names: Vec<String>,
    ) -> Result<FiniteGroup> {
        let n = order;
        let at = |a: usize, b: usize| mul[a * n + b];

        // Latin square: every row and column is a permutation.
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                let r = at(a, b);
                let c = at(b, a);
                if row_seen[r] {
                    return Err(Error::InvalidTable(format!("row {a} repeats {r}")));
                }
                if col_seen[c] {
                    return Err(Error::InvalidTable(format!("column {a} repeats {c}")));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }

        // Two-sided identity.
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|x| at(e, x) == x && at(x, e) == x) {
                identity = Some(e);
                break;
            }
        }
        let identity =
            identity.ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;

        // Two-sided inverses.
        let mut inv = vec![0usize; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if at(a, b) == identity && at(b, a) == identity {
                    found = Some(b);
                    break;
                }
            }
            inv[a] = found
                .ok_or_else(|| Error::InvalidTable(format!("element {a} has no inverse")))?;
        }

        // Associativity, all triples.  O(n^3) but n is capped at 64 in
        // practice so this is at most ~260k lookups.
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        // Element orders by repeated multiplication.
        let mut elem_order = vec![0usize; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1usize;
            while x != identity {
                x = at(x, a);
                k += 1;
            }
            elem_order[a] = k;
        }

        Ok(FiniteGroup {
            name,
            order,
            identity,
            mul,
            inv,
            elem_order,
            elem_names,
        })
    }

    /// Direct product with lexicographic element indexing: the element
    /// `(a, b)` of `A x B` has index `a * |B| + b`, and so on for more
    /// factors.
    pub fn direct_product(factors: &[FiniteGroup]) -> Result<FiniteGroup> {
        if factors.is_empty() {
            return Err(Error::InvalidTable("empty product".into()));
        }
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let order: usize = factors.iter().map(|g| g.order).product();
        let k = factors.len();
        let mut strides = vec![1usize; k];
        for i in (0..k - 1).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].order;
        }
        let split = |x: usize| -> Vec<usize> {
            (0..k).map(|i| (x / strides[i]) % factors[i].order).collect()
        };
        let mut mul = vec![0usize; order * order];
        for a in 0..order {
            let pa = split(a);
            for b in 0..order {
                let pb = split(b);
                let mut idx = 0usize;
                for i in 0..k {
                    idx += factors[i].mul(pa[i], pb[i]) * strides[i];
                }
                mul[a * order + b] = idx;
            }
        }
        let elem_names = (0..order)
            .map(|x| {
                let parts: Vec<&str> = split(x)
                    .iter()
                    .zip(factors)
                    .map(|(&c, g)| g.elem_names[c].as_str())
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let name = factors
            .iter()
            .map(|g| g.name.as_str())
            .collect::<Vec<_>>()
            .join("x");
        FiniteGroup::from_parts(name, order, mul, elem_names)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// g x g^{-1}
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elem_order[a]
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.elem_names[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exponent-2 test: every non-identity element is an involution.
    pub fn has_exponent_two(&self) -> bool {
        self.elem_order.iter().all(|&k| k <= 2)
    }

    /// x^k by repeated multiplication (k may be any non-negative integer).
    pub fn power(&self, x: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }
}

/// A bijection of the element set `{0, .., n-1}`, stored as its image list.
/// This is the common currency for graph automorphisms, group automorphisms
/// and translations alike.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct GroupMap {
    image: Vec<usize>,
}

impl std::fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupMap{:?}", self.image)
    }
}

impl GroupMap {
    /// Wrap an image list, checking it is a permutation.
    pub fn from_images(image: Vec<usize>) -> Result<GroupMap> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} out of range for degree {n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(GroupMap { image })
    }

    pub(crate) fn from_images_unchecked(image: Vec<usize>) -> GroupMap {
        GroupMap { image }
    }

    pub fn identity(n: usize) -> GroupMap {
        GroupMap {
            image: (0..n).collect(),
        }
    }

    /// Left translation x -> g x.
    pub fn translation(group: &FiniteGroup, g: usize) -> GroupMap {
        GroupMap {
            image: group.elements().map(|x| group.mul(g, x)).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Functional composition: `self.compose(&other)` applies `other`
    /// first, i.e. maps x to self(other(x)).
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        debug_assert_eq!(self.degree(), other.degree());
        GroupMap {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut image = vec![0usize; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        GroupMap { image }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_table() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
    }

    #[test]
    fn from_table_accepts_z3() {
        let g = FiniteGroup::from_table("Z3", &z3_table(), None).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.element_order(1), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn from_table_rejects_broken_tables() {
        // not a Latin square
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_table("bad", &t, None),
            Err(Error::InvalidTable(_))
        ));
        // non-associative Latin square with identity: smallest examples are
        // order 5 loops.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop5", &t, None),
            Err(Error::InvalidTable(_))
        ));
        // out of range entry
        let t = vec![vec![0, 1], vec![1, 7]];
        assert!(FiniteGroup::from_table("bad", &t, None).is_err());
    }

    #[test]
    fn identity_detection_off_zero() {
        // Z2 with the identity moved to index 1.
        let t = vec![vec![1, 0], vec![0, 1]];
        let g = FiniteGroup::from_table("Z2'", &t, None).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.element_order(0), 2);
    }

    #[test]
    fn direct_product_indexing_is_lexicographic() {
        let z2 = FiniteGroup::from_table("Z2", &vec![vec![0, 1], vec![1, 0]], None).unwrap();
        let z3 = FiniteGroup::from_table("Z3", &z3_table(), None).unwrap();
        let g = FiniteGroup::direct_product(&[z3.clone(), z2.clone()]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(), "Z3xZ2");
        // (1,0) * (2,1) = (0,1): indices 2 * 1 + 0 = 2, 2 * 2 + 1 = 5, 1.
        assert_eq!(g.mul(2, 5), 1);
        assert_eq!(g.element_name(5), "(2,1)");
        // lexicographic element order over factors
        assert_eq!(g.element_name(0), "(0,0)");
        assert_eq!(g.element_name(1), "(0,1)");
    }

    #[test]
    fn group_map_checks_permutations() {
        assert!(GroupMap::from_images(vec![0, 2, 1]).is_ok());
        assert!(GroupMap::from_images(vec![0, 0, 1]).is_err());
        assert!(GroupMap::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn group_map_compose_applies_right_first() {
        let f = GroupMap::from_images(vec![1, 2, 0]).unwrap();
        let g = GroupMap::from_images(vec![0, 2, 1]).unwrap();
        // f(g(1)) = f(2) = 0
        assert_eq!(f.compose(&g).apply(1), 0);
        assert!(f.compose(&f.inverse()).is_identity());
    }

    #[test]
    fn translations_compose_like_the_group() {
        let z3 = FiniteGroup::from_table("Z3", &z3_table(), None).unwrap();
        let l1 = GroupMap::translation(&z3, 1);
        let l2 = GroupMap::translation(&z3, 2);
        assert_eq!(l1.compose(&l2), GroupMap::translation(&z3, z3.mul(1, 2)));
    }
}
