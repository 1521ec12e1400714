//! Cayley graphs with the canonical edge colouring.
//!
//! For an inverse-closed connection set S (no identity), the graph has the
//! group elements as vertices and an edge {g, gs} for every s in S.  The
//! edge {g, h} is coloured by the set {s, s^{-1}} where s = g^{-1}h; these
//! colour classes are the unit of everything downstream.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::subgroup_generated;

/// One colour: an unordered pair {s, s^{-1}} (the two entries coincide for
/// involutions).  Ids are dense, assigned in ascending order of the
/// smaller member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColourClass {
    pub id: usize,
    /// (min, max) of {s, s^{-1}}.
    pub pair: (usize, usize),
}

impl ColourClass {
    pub fn is_involution(&self) -> bool {
        self.pair.0 == self.pair.1
    }

    pub fn members(&self) -> Vec<usize> {
        if self.is_involution() {
            vec![self.pair.0]
        } else {
            vec![self.pair.0, self.pair.1]
        }
    }
}

/// An edge-coloured Cayley graph.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: FiniteGroup,
    connection: Vec<usize>,
    classes: Vec<ColourClass>,
    class_of: Vec<Option<usize>>, // indexed by group element
}

impl CayleyGraph {
    /// Build the Cayley graph on `group` with connection set `connection`.
    ///
    /// The set must not contain the identity (no loops) and must be closed
    /// under inversion; duplicates are tolerated and collapsed.
    pub fn new(group: &FiniteGroup, connection: &[usize]) -> Result<CayleyGraph> {
        let n = group.order();
        let mut present = vec![false; n];
        for &s in connection {
            if s >= n {
                return Err(Error::InvalidConnectionSet(format!(
                    "element {s} out of range for order {n}"
                )));
            }
            if s == group.identity() {
                return Err(Error::InvalidConnectionSet(
                    "identity in connection set (loops are not allowed)".into(),
                ));
            }
            present[s] = true;
        }
        for s in 0..n {
            if present[s] && !present[group.inv(s)] {
                return Err(Error::InvalidConnectionSet(format!(
                    "not inverse-closed: contains {s} but not its inverse {}",
                    group.inv(s)
                )));
            }
        }
        let connection: Vec<usize> = (0..n).filter(|&s| present[s]).collect();

        // Colour classes in ascending order of their min member.
        let mut classes: Vec<ColourClass> = Vec::new();
        let mut class_of: Vec<Option<usize>> = vec![None; n];
        for &s in &connection {
            if class_of[s].is_some() {
                continue;
            }
            let t = group.inv(s);
            let id = classes.len();
            let pair = (s.min(t), s.max(t));
            classes.push(ColourClass { id, pair });
            class_of[s] = Some(id);
            class_of[t] = Some(id);
        }

        Ok(CayleyGraph {
            group: group.clone(),
            connection,
            classes,
            class_of,
        })
    }

    /// The complete graph on the group: connection set = everything but
    /// the identity.
    pub fn complete(group: &FiniteGroup) -> CayleyGraph {
        let s: Vec<usize> = group
            .elements()
            .filter(|&x| x != group.identity())
            .collect();
        CayleyGraph::new(group, &s).expect("complete connection set is always valid")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn connection(&self) -> &[usize] {
        &self.connection
    }

    pub fn is_complete(&self) -> bool {
        self.connection.len() + 1 == self.group.order()
    }

    pub fn colour_classes(&self) -> &[ColourClass] {
        &self.classes
    }

    /// Colour-class id of a connection element (None off the set).
    #[inline]
    pub fn class_of(&self, s: usize) -> Option<usize> {
        self.class_of[s]
    }

    /// Colour of the edge {g, h}, if it is an edge.
    #[inline]
    pub fn edge_colour(&self, g: usize, h: usize) -> Option<usize> {
        self.class_of[self.group.mul(self.group.inv(g), h)]
    }

    #[inline]
    pub fn has_edge(&self, g: usize, h: usize) -> bool {
        self.edge_colour(g, h).is_some()
    }

    /// Connected iff the connection set generates the group.
    pub fn is_connected(&self) -> bool {
        subgroup_generated(&self.group, &self.connection).len() == self.group.order()
    }

    /// Undirected edge list as (g, h, colour-class id) with g < h, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for g in self.group.elements() {
            for &s in &self.connection {
                let h = self.group.mul(g, s);
                if g < h {
                    out.push((g, h, self.class_of[s].expect("s is in the set")));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Graphviz export: vertices labelled `index:name`, one line per
    /// undirected edge with a `colorclass` attribute.  Byte-deterministic.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "graph \"{}\" {{", self.group.name()).unwrap();
        for v in self.group.elements() {
            writeln!(s, "  {v} [label=\"{}:{}\"];", v, self.group.element_name(v)).unwrap();
        }
        for (g, h, c) in self.edges() {
            writeln!(s, "  {g} -- {h} [colorclass={c}];").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// JSON export: `{group, S, colours}` where colours lists each class
    /// as the pair [s, s_inv] in id order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.name(),
            "S": self.connection,
            "colours": self
                .classes
                .iter()
                .map(|c| vec![c.pair.0, c.pair.1])
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_group;

    #[test]
    fn rejects_bad_connection_sets() {
        let z6 = build_group("Z6").unwrap();
        assert!(matches!(
            CayleyGraph::new(&z6, &[0, 1, 5]),
            Err(Error::InvalidConnectionSet(_))
        ));
        assert!(matches!(
            CayleyGraph::new(&z6, &[1]),
            Err(Error::InvalidConnectionSet(_))
        ));
        assert!(matches!(
            CayleyGraph::new(&z6, &[9]),
            Err(Error::InvalidConnectionSet(_))
        ));
        assert!(CayleyGraph::new(&z6, &[1, 5]).is_ok());
        assert!(CayleyGraph::new(&z6, &[3]).is_ok());
    }

    #[test]
    fn colour_classes_of_k5() {
        let z5 = build_group("Z5").unwrap();
        let k5 = CayleyGraph::complete(&z5);
        let classes = k5.colour_classes();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].pair, (1, 4));
        assert_eq!(classes[1].pair, (2, 3));
        assert!(!classes[0].is_involution());
    }

    #[test]
    fn colour_classes_of_quaternion_products() {
        let q8 = build_group("Q8").unwrap();
        assert_eq!(CayleyGraph::complete(&q8).colour_classes().len(), 4);

        // 3 involutions + 6 inverse pairs
        let g = build_group("Q8xZ2").unwrap();
        let k16 = CayleyGraph::complete(&g);
        assert_eq!(k16.colour_classes().len(), 9);
        let involutions = k16
            .colour_classes()
            .iter()
            .filter(|c| c.is_involution())
            .count();
        assert_eq!(involutions, 3);

        // 7 involutions + 12 inverse pairs
        let g = build_group("Q8xZ2^2").unwrap();
        let k32 = CayleyGraph::complete(&g);
        assert_eq!(k32.colour_classes().len(), 19);
        let involutions = k32
            .colour_classes()
            .iter()
            .filter(|c| c.is_involution())
            .count();
        assert_eq!(involutions, 7);
    }

    #[test]
    fn colour_is_well_defined_on_edges() {
        let g = build_group("D12").unwrap();
        let x = CayleyGraph::complete(&g);
        for v in g.elements() {
            for &s in x.connection() {
                let w = g.mul(v, s);
                // the edge read from both endpoints gets the same colour
                assert_eq!(x.edge_colour(v, w), x.edge_colour(w, v));
            }
        }
    }

    #[test]
    fn connectivity_matches_generation() {
        let z6 = build_group("Z6").unwrap();
        assert!(CayleyGraph::new(&z6, &[1, 5]).unwrap().is_connected());
        assert!(!CayleyGraph::new(&z6, &[2, 4]).unwrap().is_connected());
        assert!(!CayleyGraph::new(&z6, &[3]).unwrap().is_connected());

        // oracle: breadth-first reachability from the identity
        let d12 = build_group("D12").unwrap();
        for s in [vec![1, 5, 6], vec![2, 4, 10], vec![6, 7], vec![2, 4]] {
            let x = CayleyGraph::new(&d12, &s).unwrap();
            let mut seen = vec![false; 12];
            seen[0] = true;
            let mut stack = vec![0usize];
            while let Some(v) = stack.pop() {
                for &t in x.connection() {
                    let w = d12.mul(v, t);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            assert_eq!(x.is_connected(), seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn dot_export_is_deterministic_and_complete() {
        let z4 = build_group("Z4").unwrap();
        let x = CayleyGraph::complete(&z4);
        let dot = x.to_dot();
        assert_eq!(dot, x.to_dot());
        assert!(dot.starts_with("graph \"Z4\" {"));
        assert!(dot.contains("0 [label=\"0:0\"];"));
        assert!(dot.contains("0 -- 1 [colorclass=0];"));
        assert!(dot.contains("0 -- 2 [colorclass=1];"));
        // 6 edges of K4
        assert_eq!(dot.matches(" -- ").count(), 6);
    }

    #[test]
    fn json_export_shape() {
        let z5 = build_group("Z5").unwrap();
        let x = CayleyGraph::complete(&z5);
        let v = x.to_json();
        assert_eq!(v["group"], "Z5");
        assert_eq!(v["S"], serde_json::json!([1, 2, 3, 4]));
        assert_eq!(v["colours"], serde_json::json!([[1, 4], [2, 3]]));
    }
}
