//! Reflection face-pairings: a labelled disk doubled across its boundary,
//! scallops, and the framed link read off the diagram.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{BallRecord, Complex, EdgeCell, FaceCell, FacetedBall, SideRef, UnionFind};
use crate::error::{Error, Result};
use crate::pairing::{Alignment, FacePairing, Instance};
use crate::surgery::link::{Component, ComponentKind, FramedLink, Framing};

/// Cell structure of the northern hemisphere with an integer per edge.
/// Edges used by a single face lie on the equator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionDiagram {
    pub disk: Complex,
    pub labels: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    #[serde(flatten)]
    pub disk: BallRecord,
    pub labels: BTreeMap<String, i64>,
}

/// Id of the southern copy of a northern cell.
pub fn mirror_id(id: &str) -> String {
    format!("{id}'")
}

impl ReflectionDiagram {
    pub fn new(disk: Complex, labels: BTreeMap<String, i64>) -> Result<Self> {
        let d = ReflectionDiagram { disk, labels };
        let bad = d.violations();
        if bad.is_empty() {
            Ok(d)
        } else {
            Err(Error::Invalid(bad.join("; ")))
        }
    }

    pub fn from_record(rec: &DiagramRecord) -> Result<Self> {
        let disk = FacetedBall::from_record(&rec.disk)?.complex;
        Self::new(disk, rec.labels.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: DiagramRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&rec)
    }

    pub fn to_record(&self) -> DiagramRecord {
        DiagramRecord { disk: FacetedBall::from_complex(self.disk.clone()).to_record(), labels: self.labels.clone() }
    }

    pub fn on_equator(&self, e: usize) -> bool {
        self.disk.edge_slots()[e].len() == 1
    }

    pub fn label(&self, e: usize) -> i64 {
        self.labels[&self.disk.edges[e].id]
    }

    fn violations(&self) -> Vec<String> {
        let c = &self.disk;
        let mut out = Vec::new();
        for (e, slots) in c.edge_slots().iter().enumerate() {
            if slots.is_empty() || slots.len() > 2 {
                out.push(format!("edge {} is used {} times", c.edges[e].id, slots.len()));
            }
            if !self.labels.contains_key(&c.edges[e].id) {
                out.push(format!("edge {} has no label", c.edges[e].id));
            }
        }
        for id in self.labels.keys() {
            if !c.edges.iter().any(|e| &e.id == id) {
                out.push(format!("label for unknown edge {id}"));
            }
        }
        if c.faces.is_empty() {
            out.push("disk has no faces".into());
        }
        if c.euler() != 1 || c.components() != 1 {
            out.push(format!("not a disk: V - E + F = {}", c.euler()));
        }
        if !out.is_empty() {
            return out;
        }
        // The equator is one circle: every vertex on it meets exactly two
        // equator sides, counted with loops twice.
        let mut degree = vec![0usize; c.vertices.len()];
        for e in (0..c.edges.len()).filter(|&e| self.on_equator(e)) {
            degree[c.edges[e].tail] += 1;
            degree[c.edges[e].head] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            out.push("equator is not a single circle".into());
        }
        for (e, cell) in c.edges.iter().enumerate() {
            if self.labels[&cell.id] == 0 && !self.on_equator(e) {
                out.push(format!("zero label on interior edge {}", cell.id));
            }
            if self.labels[&cell.id] == 0 && cell.tail == cell.head {
                out.push(format!("zero label on loop {}", cell.id));
            }
        }
        out
    }

    /// Collapses zero-labelled edges to vertices.
    #[allow(clippy::needless_range_loop)]
    pub fn collapsed(&self) -> Result<ReflectionDiagram> {
        let c = &self.disk;
        let zero: Vec<bool> = c.edges.iter().map(|e| self.labels[&e.id] == 0).collect();
        if !zero.iter().any(|&z| z) {
            return Ok(self.clone());
        }
        let mut uf = UnionFind::new(c.vertices.len());
        for (e, cell) in c.edges.iter().enumerate() {
            if zero[e] {
                uf.union(cell.tail, cell.head);
            }
        }
        // Each class keeps the first vertex in it.
        let mut keep: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut vmap = vec![0; c.vertices.len()];
        for v in 0..c.vertices.len() {
            let r = uf.find(v);
            let idx = *keep.entry(r).or_insert_with(|| {
                vertices.push(c.vertices[v].clone());
                vertices.len() - 1
            });
            vmap[v] = idx;
        }
        let mut emap = vec![usize::MAX; c.edges.len()];
        let mut edges = Vec::new();
        for (e, cell) in c.edges.iter().enumerate() {
            if !zero[e] {
                emap[e] = edges.len();
                edges.push(EdgeCell { id: cell.id.clone(), tail: vmap[cell.tail], head: vmap[cell.head] });
            }
        }
        let mut faces = Vec::new();
        for f in &c.faces {
            let boundary: Vec<SideRef> =
                f.boundary.iter().filter(|s| !zero[s.edge]).map(|s| SideRef::new(emap[s.edge], s.forward)).collect();
            if boundary.is_empty() {
                return Err(Error::Invalid(format!("face {} collapses completely", f.id)));
            }
            faces.push(FaceCell { id: f.id.clone(), boundary });
        }
        let labels = self.labels.iter().filter(|(_, &v)| v != 0).map(|(k, &v)| (k.clone(), v)).collect();
        ReflectionDiagram::new(Complex { vertices, edges, faces }, labels)
    }

    /// The doubled ball, its reflection pairing and the labels as
    /// multipliers. Zero labels are collapsed first.
    #[allow(clippy::needless_range_loop)]
    pub fn instance(&self) -> Result<Instance> {
        let d = self.collapsed()?;
        let c = &d.disk;
        let n_e = c.edges.len();
        let mut edges = c.edges.clone();
        let mut mirror = vec![0; n_e];
        for e in 0..n_e {
            mirror[e] = if d.on_equator(e) {
                e
            } else {
                edges.push(EdgeCell { id: mirror_id(&c.edges[e].id), ..c.edges[e].clone() });
                edges.len() - 1
            };
        }
        let mut faces = c.faces.clone();
        let mut pairs = Vec::new();
        for (f, face) in c.faces.iter().enumerate() {
            let boundary = face.boundary.iter().rev().map(|s| SideRef::new(mirror[s.edge], !s.forward)).collect();
            faces.push(FaceCell { id: mirror_id(&face.id), boundary });
            pairs.push(Alignment { from: f, to: c.faces.len() + f, offset: face.boundary.len() - 1 });
        }
        let ball = FacetedBall::from_complex(Complex { vertices: c.vertices.clone(), edges, faces });
        Instance::new(FacePairing::new(ball, pairs), &d.labels)
    }
}

/// The scallop with multipliers `m_1, ..., m_k` on its equator edges and 1
/// on the edges through the apex `v`. Faces run from the first digon
/// through the triangles to the last digon; `k = 1` is a monogon.
pub fn scallop(m: &[i64]) -> Result<ReflectionDiagram> {
    let faces: Vec<Vec<i64>> = m.iter().map(|&x| vec![x]).collect();
    fan(&faces, &vec![1; m.len().saturating_sub(1)])
}

/// A disk fanned from an apex `v` on its boundary. Face `i` carries the
/// equator edges labelled by `faces[i]`, in order; consecutive faces are
/// separated by a spoke from `v` labelled `spokes[i]`. Equator edges are
/// `x{i}` (or `x{i}_{j}` when a face has several), spokes `c{i}`, with
/// faces numbered from 1.
pub fn fan(faces: &[Vec<i64>], spokes: &[i64]) -> Result<ReflectionDiagram> {
    let k = faces.len();
    if k == 0 || spokes.len() + 1 != k || faces.iter().any(Vec::is_empty) {
        return Err(Error::Input("a fan needs k nonempty faces and k - 1 spokes".into()));
    }
    let mut vertices = vec!["v".to_string()];
    let mut edges: Vec<EdgeCell> = Vec::new();
    let mut labels = BTreeMap::new();
    let mut boundaries: Vec<Vec<SideRef>> = vec![Vec::new(); k];
    // Walk the equator from v; a spoke ends at the vertex reached after
    // each face but the last.
    let mut at = 0;
    let mut spoke_ends = Vec::new();
    for (i, labs) in faces.iter().enumerate() {
        for (j, &lab) in labs.iter().enumerate() {
            let last = i + 1 == k && j + 1 == labs.len();
            let to = if last {
                0
            } else {
                vertices.push(format!("w{}", vertices.len()));
                vertices.len() - 1
            };
            let id = if labs.len() == 1 { format!("x{}", i + 1) } else { format!("x{}_{}", i + 1, j + 1) };
            labels.insert(id.clone(), lab);
            boundaries[i].push(SideRef::new(edges.len(), true));
            edges.push(EdgeCell { id, tail: at, head: to });
            at = to;
        }
        if i + 1 < k {
            spoke_ends.push(at);
        }
    }
    for (i, (&end, &lab)) in spoke_ends.iter().zip(spokes).enumerate() {
        let id = format!("c{}", i + 1);
        labels.insert(id.clone(), lab);
        let e = edges.len();
        edges.push(EdgeCell { id, tail: 0, head: end });
        boundaries[i].push(SideRef::new(e, false));
        boundaries[i + 1].insert(0, SideRef::new(e, true));
    }
    let faces =
        boundaries.into_iter().enumerate().map(|(i, boundary)| FaceCell { id: format!("f{}", i + 1), boundary }).collect();
    ReflectionDiagram::new(Complex { vertices, edges, faces }, labels)
}

pub fn face_component(face: &str) -> String {
    format!("F:{face}")
}

pub fn edge_component(edge: &str) -> String {
    format!("E:{edge}")
}

/// Surgery link of a reflection diagram: framing 0 on one unknot per
/// northern face, `sigma/label` on one unknot per northern edge. An edge
/// component links each face containing its edge once; equator
/// components are meridians of their face. Zero-labelled edges give
/// ∞-framed components and are left out.
pub fn reflection_link(d: &ReflectionDiagram, sigma: i64) -> Result<FramedLink> {
    if sigma != 1 && sigma != -1 {
        return Err(Error::Input(format!("sigma must be +1 or -1, got {sigma}")));
    }
    let c = &d.disk;
    let mut comps: Vec<Component> = c
        .faces
        .iter()
        .map(|f| Component { id: face_component(&f.id), kind: ComponentKind::Face, framing: Framing::zero(), unknotted: true })
        .collect();
    let live: Vec<usize> = (0..c.edges.len()).filter(|&e| d.label(e) != 0).collect();
    comps.extend(live.iter().map(|&e| Component {
        id: edge_component(&c.edges[e].id),
        kind: ComponentKind::Edge,
        framing: Framing::ratio(sigma, d.label(e)),
        unknotted: true,
    }));
    let mut l = FramedLink::new(comps);
    let slots = c.edge_slots();
    let nf = c.faces.len();
    let mut lk: HashMap<(usize, usize), i64> = HashMap::new();
    for (i, &e) in live.iter().enumerate() {
        for &(f, _) in &slots[e] {
            *lk.entry((nf + i, f)).or_default() += 1;
        }
    }
    for ((a, b), v) in lk {
        l.set_link(a, b, v);
    }
    for &e in &live {
        if d.on_equator(e) {
            let f = slots[e][0].0;
            l.add_meridian(&edge_component(&c.edges[e].id), &face_component(&c.faces[f].id));
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::engine::build;
    use crate::invariants::{h1, pi1};
    use crate::surgery::link::{h1_from_link, simplify};
    use num_bigint::BigInt;

    fn engine_h1(inst: &Instance) -> crate::invariants::AbelianInvariants {
        let b = build(inst).unwrap();
        assert!(b.certificate.pass, "{:?}", b.certificate.reasons);
        h1(&pi1(&b.quotient))
    }

    #[test]
    fn scallops_double_to_valid_balls() {
        for k in 1..6 {
            let d = scallop(&vec![1; k]).unwrap();
            let inst = d.instance().unwrap();
            assert!(validate(inst.ball()).is_ok());
            assert_eq!(inst.ball().faces.len(), 2 * k);
            // Equator edges are fixed, spokes pair with their mirrors.
            let lens: Vec<usize> = inst.cycles.lengths();
            assert_eq!(lens.iter().filter(|&&l| l == 1).count(), k);
            assert_eq!(lens.iter().filter(|&&l| l == 2).count(), k - 1);
        }
    }

    #[test]
    fn monogon_scallop_is_lens_p1() {
        for p in 1..7 {
            let inst = scallop(&[p]).unwrap().instance().unwrap();
            assert_eq!(engine_h1(&inst).order(), Some(BigInt::from(p)));
            let l = reflection_link(&scallop(&[p]).unwrap(), 1).unwrap();
            let (s, _) = simplify(&l).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s.components[0].framing, Framing::int(-p));
            assert_eq!(h1_from_link(&s).unwrap().order(), Some(BigInt::from(p)));
        }
    }

    #[test]
    fn two_face_scallop_is_lens_3_2() {
        let d = scallop(&[1, 1]).unwrap();
        assert_eq!(engine_h1(&d.instance().unwrap()).to_string(), "Z/3");
        let (s, moves) = simplify(&reflection_link(&d, -1).unwrap()).unwrap();
        assert_eq!(moves.len(), 3);
        let mut framings: Vec<String> = s.components.iter().map(|c| c.framing.to_string()).collect();
        framings.sort();
        assert_eq!(framings, vec!["2", "2"]);
        assert_eq!(h1_from_link(&s).unwrap().to_string(), "Z/3");
    }

    #[test]
    fn zero_labels_collapse() {
        let d = scallop(&[2, 0, 1]).unwrap();
        let c = d.collapsed().unwrap();
        assert_eq!(c.disk.edges.len(), d.disk.edges.len() - 1);
        assert_eq!(engine_h1(&d.instance().unwrap()).to_string(), "Z/7");
    }

    #[test]
    fn sigma_negation_negates_framings() {
        let d = scallop(&[2, 3]).unwrap();
        let a = reflection_link(&d, 1).unwrap();
        let b = reflection_link(&d, -1).unwrap();
        assert_eq!(a.negated(), b);
        assert_eq!(h1_from_link(&a).unwrap(), h1_from_link(&b).unwrap());
    }
}
