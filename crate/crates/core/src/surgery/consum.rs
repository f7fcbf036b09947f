//! Connected sums of face-pairings along edges.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Complex, EdgeCell, FaceCell, FacetedBall, SideRef, UnionFind};
use crate::error::{Error, Result};
use crate::pairing::{Alignment, FacePairing, Instance};

/// Renames `id` away from `taken` by appending primes.
fn fresh(id: &str, taken: &BTreeSet<String>) -> String {
    let mut out = id.to_string();
    while taken.contains(&out) {
        out.push('\'');
    }
    out
}

/// Connected sum of two instances along edges `e1` and `e2`.
///
/// Each edge is opened into a digon and the two digons are identified,
/// tail to tail and head to head. The side of `e1` traversed forwards keeps
/// the id of `e1` and is glued to the backward side of `e2`; the other
/// side takes the id of `e2`. Ids of the second ball are primed where they
/// clash with the first.
pub fn connected_sum(a: &Instance, e1: &str, b: &Instance, e2: &str) -> Result<Instance> {
    let (p1, p2) = (a.ball(), b.ball());
    let i1 = *p1.edge_index().get(e1).ok_or_else(|| Error::ConnectedSum(format!("unknown edge {e1}")))?;
    let i2 = *p2.edge_index().get(e2).ok_or_else(|| Error::ConnectedSum(format!("unknown edge {e2}")))?;
    let (m1, m2) = (a.mul.of_edge(i1), b.mul.of_edge(i2));
    if m1 != m2 {
        return Err(Error::ConnectedSum(format!("multipliers differ: {m1} on {e1}, {m2} on {e2}")));
    }
    let (x1, x2) = (&p1.edges[i1], &p2.edges[i2]);
    if x1.tail == x1.head && x2.tail == x2.head {
        return Err(Error::ConnectedSum("both edges are loops".into()));
    }

    // Vertices: the second ball's endpoints of e2 merge with e1's.
    let n1 = p1.vertices.len();
    let mut uf = UnionFind::new(n1 + p2.vertices.len());
    uf.union(x1.tail, n1 + x2.tail);
    uf.union(x1.head, n1 + x2.head);
    let mut taken: BTreeSet<String> = p1.vertices.iter().cloned().collect();
    let mut names: Vec<String> = p1.vertices.clone();
    names.extend(p2.vertices.iter().map(|v| {
        let id = fresh(v, &taken);
        taken.insert(id.clone());
        id
    }));
    let mut vertices = Vec::new();
    let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vmap = vec![0; names.len()];
    for v in 0..names.len() {
        let r = uf.find(v);
        vmap[v] = *class_index.entry(r).or_insert_with(|| {
            vertices.push(names[v].clone());
            vertices.len() - 1
        });
    }

    // Edges: all of the first ball, then the second without e2. Edge e1
    // becomes the glued pair (i1 and `other`).
    let mut edges: Vec<EdgeCell> =
        p1.edges.iter().map(|e| EdgeCell { id: e.id.clone(), tail: vmap[e.tail], head: vmap[e.head] }).collect();
    let mut etaken: BTreeSet<String> = p1.edges.iter().map(|e| e.id.clone()).collect();
    let mut emap2 = vec![usize::MAX; p2.edges.len()];
    for (j, e) in p2.edges.iter().enumerate() {
        let id = fresh(&e.id, &etaken);
        etaken.insert(id.clone());
        emap2[j] = edges.len();
        edges.push(EdgeCell { id, tail: vmap[n1 + e.tail], head: vmap[n1 + e.head] });
    }
    let other = emap2[i2];
    edges[other].tail = edges[i1].tail;
    edges[other].head = edges[i1].head;

    let mut faces = Vec::new();
    let mut ftaken: BTreeSet<String> = BTreeSet::new();
    for f in &p1.faces {
        let boundary =
            f.boundary.iter().map(|s| if s.edge == i1 && !s.forward { SideRef::new(other, false) } else { *s }).collect();
        ftaken.insert(f.id.clone());
        faces.push(FaceCell { id: f.id.clone(), boundary });
    }
    for f in &p2.faces {
        let boundary = f
            .boundary
            .iter()
            .map(|s| if s.edge == i2 && !s.forward { SideRef::new(i1, false) } else { SideRef::new(emap2[s.edge], s.forward) })
            .collect();
        let id = fresh(&f.id, &ftaken);
        ftaken.insert(id.clone());
        faces.push(FaceCell { id, boundary });
    }
    let ball = FacetedBall::from_complex(Complex { vertices, edges, faces });

    let f1 = p1.faces.len();
    let mut pairs = a.pairing.pairs.clone();
    pairs.extend(b.pairing.pairs.iter().map(|al| Alignment { from: al.from + f1, to: al.to + f1, offset: al.offset }));
    let pairing = FacePairing::new(ball, pairs);

    let mut mul: BTreeMap<String, i64> = BTreeMap::new();
    for (e, cell) in p1.edges.iter().enumerate() {
        mul.insert(cell.id.clone(), a.mul.of_edge(e));
    }
    for (e, _) in p2.edges.iter().enumerate() {
        mul.insert(pairing.base.edges[emap2[e]].id.clone(), b.mul.of_edge(e));
    }
    Instance::new(pairing, &mul).map_err(|e| Error::ConnectedSum(e.to_string()))
}

/// Two-face ball used to join two summands: a loop `l` bounding two
/// pentagons, each carrying a two-edge tree hanging from the loop's
/// vertex. The reflection through the loop pairs the faces. Cycles are
/// the loop, `{p, r}` and `{q, s}`; with multiplier 1 on the loop the
/// manifold is the 3-sphere for any multipliers on the other two.
pub fn bridge(m1: i64, m2: i64) -> Result<Instance> {
    let ball = FacetedBall::build(
        &["u", "a", "b", "c", "d"],
        &[("l", "u", "u"), ("p", "u", "a"), ("q", "a", "b"), ("r", "u", "c"), ("s", "c", "d")],
        &[
            ("N", &[("l", 1), ("p", 1), ("q", 1), ("q", -1), ("p", -1)]),
            ("S", &[("l", -1), ("r", 1), ("s", 1), ("s", -1), ("r", -1)]),
        ],
    )?;
    let pairing = FacePairing::new(ball, vec![Alignment { from: 0, to: 1, offset: 0 }]);
    let mul = [("l", 1), ("p", m1), ("q", m2)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Instance::new(pairing, &mul)
}

/// Connected sum of the manifolds of `a` and `b` through [`bridge`]: the
/// bridge's `p` edge is summed with `ea`, then its `q` edge with `eb`.
pub fn connected_sum_via_bridge(a: &Instance, ea: &str, b: &Instance, eb: &str) -> Result<Instance> {
    let ma = a.mul.of_edge(*a.ball().edge_index().get(ea).ok_or_else(|| Error::ConnectedSum(format!("unknown edge {ea}")))?);
    let mb = b.mul.of_edge(*b.ball().edge_index().get(eb).ok_or_else(|| Error::ConnectedSum(format!("unknown edge {eb}")))?);
    let first = connected_sum(&bridge(ma, mb)?, "p", a, ea)?;
    connected_sum(&first, "q", b, eb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::engine::build;
    use crate::examples;
    use crate::invariants::{h1, pi1, AbelianInvariants};
    use crate::surgery::reflection::scallop;

    fn engine_h1(inst: &Instance) -> AbelianInvariants {
        let b = build(inst).unwrap();
        assert!(b.certificate.pass, "{:?}", b.certificate.reasons);
        h1(&pi1(&b.quotient))
    }

    #[test]
    fn tetrahedra_sum_along_bc() {
        let t = examples::tetra_instance();
        let s = connected_sum(&t, "BC", &t, "BC").unwrap();
        assert!(validate(s.ball()).is_ok());
        assert_eq!(s.ball().faces.len(), 8);
        assert_eq!(s.ball().euler(), 2);
        assert!(build(&s).unwrap().certificate.pass);
    }

    #[test]
    fn mismatched_multipliers_and_double_loops() {
        let t = examples::tetra_instance();
        assert!(matches!(connected_sum(&t, "AB", &t, "BC"), Err(Error::ConnectedSum(_))));
        let m = scallop(&[2]).unwrap().instance().unwrap();
        assert!(matches!(connected_sum(&m, "x1", &m, "x1"), Err(Error::ConnectedSum(_))));
    }

    #[test]
    fn bridge_is_a_sphere() {
        for (m1, m2) in [(1, 1), (2, -3), (-1, 4)] {
            assert!(engine_h1(&bridge(m1, m2).unwrap()).is_trivial(), "{m1} {m2}");
        }
    }

    #[test]
    fn sum_with_bridge_keeps_homology() {
        let t = examples::tetra_instance();
        let s = connected_sum(&bridge(1, 1).unwrap(), "p", &t, "BC").unwrap();
        assert_eq!(engine_h1(&s), engine_h1(&t));
    }

    #[test]
    fn scallop_sums_add_homology() {
        for (p, q) in [(2, 3), (3, 3), (5, 2)] {
            let a = scallop(&[p]).unwrap().instance().unwrap();
            let b = scallop(&[q]).unwrap().instance().unwrap();
            let s = connected_sum_via_bridge(&a, "x1", &b, "x1").unwrap();
            assert_eq!(engine_h1(&s), engine_h1(&a).sum(&engine_h1(&b)), "{p} {q}");
        }
    }
}
