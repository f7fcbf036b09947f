//! Oriented cell structures on closed surfaces, with the faceted 3-ball
//! (a cell structure on the boundary 2-sphere) as the main client.
//!
//! Faces are stored only as boundary traversal words, so monogons, digons
//! and faces that meet a vertex or an edge several times are all ordinary
//! values here.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One traversal of an edge inside a face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideRef {
    pub edge: usize,
    pub forward: bool,
}

impl SideRef {
    pub fn new(edge: usize, forward: bool) -> Self {
        SideRef { edge, forward }
    }

    pub fn reversed(self) -> Self {
        SideRef { edge: self.edge, forward: !self.forward }
    }

    pub fn sign(self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCell {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCell {
    pub id: String,
    pub boundary: Vec<SideRef>,
}

/// Position of an edge-side inside the face boundaries: `(face, index)`.
pub type Slot = (usize, usize);

/// An index-based 2-complex whose faces are oriented polygons glued along
/// their sides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeCell>,
    pub faces: Vec<FaceCell>,
}

impl Complex {
    pub fn euler(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn side_tail(&self, s: SideRef) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.tail
        } else {
            e.head
        }
    }

    pub fn side_head(&self, s: SideRef) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.head
        } else {
            e.tail
        }
    }

    pub fn side(&self, slot: Slot) -> SideRef {
        self.faces[slot.0].boundary[slot.1]
    }

    pub fn face_len(&self, f: usize) -> usize {
        self.faces[f].boundary.len()
    }

    pub fn total_sides(&self) -> usize {
        self.faces.iter().map(|f| f.boundary.len()).sum()
    }

    /// All slots where each edge occurs, in face/index order.
    pub fn edge_slots(&self) -> Vec<Vec<Slot>> {
        let mut out = vec![Vec::new(); self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for (i, s) in f.boundary.iter().enumerate() {
                if s.edge < out.len() {
                    out[s.edge].push((fi, i));
                }
            }
        }
        out
    }

    /// The other occurrence of the edge used at `slot`. Only meaningful on a
    /// closed surface where every edge has exactly two sides.
    pub fn opposite_table(&self) -> HashMap<Slot, Slot> {
        let mut map = HashMap::new();
        for slots in self.edge_slots() {
            if slots.len() == 2 {
                map.insert(slots[0], slots[1]);
                map.insert(slots[1], slots[0]);
            }
        }
        map
    }

    pub fn edge_index(&self) -> HashMap<&str, usize> {
        self.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect()
    }

    pub fn vertex_index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }

    pub fn face_index(&self) -> HashMap<&str, usize> {
        self.faces.iter().enumerate().map(|(i, f)| (f.id.as_str(), i)).collect()
    }

    /// Number of connected components of the 1-skeleton (isolated vertices
    /// count as components).
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        uf.count()
    }

    /// Structural problems that prevent the complex from being a closed,
    /// oriented surface. Cell ids are named in each message.
    pub fn surface_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nv = self.vertices.len();
        for e in &self.edges {
            if e.tail >= nv || e.head >= nv {
                out.push(format!("edge {} has an unknown endpoint", e.id));
            }
        }
        for f in &self.faces {
            if f.boundary.is_empty() {
                out.push(format!("face {} has an empty boundary", f.id));
                continue;
            }
            if f.boundary.iter().any(|s| s.edge >= self.edges.len()) {
                out.push(format!("face {} uses an unknown edge", f.id));
                continue;
            }
            let n = f.boundary.len();
            for i in 0..n {
                let a = f.boundary[i];
                let b = f.boundary[(i + 1) % n];
                if self.side_head(a) != self.side_tail(b) {
                    out.push(format!(
                        "face {} boundary breaks between {} and {}",
                        f.id, self.edges[a.edge].id, self.edges[b.edge].id
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (ei, slots) in self.edge_slots().iter().enumerate() {
            let id = &self.edges[ei].id;
            if slots.len() != 2 {
                out.push(format!("edge {} has {} sides, expected 2", id, slots.len()));
                continue;
            }
            let a = self.side(slots[0]);
            let b = self.side(slots[1]);
            if a.forward == b.forward {
                out.push(format!("edge {} is traversed twice in the same direction", id));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let cycles = self.corner_cycles_per_vertex();
        for (v, c) in cycles.iter().enumerate() {
            if *c != 1 {
                out.push(format!("vertex {} has {} corner cycles, expected 1", self.vertices[v], c));
            }
        }
        out
    }

    /// Successor of a corner under counter-clockwise rotation about its
    /// vertex. A corner is named by the slot of the side leaving it.
    pub fn corner_rotation(&self, opp: &HashMap<Slot, Slot>) -> HashMap<Slot, Slot> {
        let mut rot = HashMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            let n = f.boundary.len();
            for i in 0..n {
                let prev = (fi, (i + n - 1) % n);
                if let Some(&o) = opp.get(&prev) {
                    rot.insert((fi, i), o);
                }
            }
        }
        rot
    }

    fn corner_cycles_per_vertex(&self) -> Vec<usize> {
        let opp = self.opposite_table();
        let rot = self.corner_rotation(&opp);
        let mut seen: HashMap<Slot, bool> = HashMap::new();
        let mut counts = vec![0usize; self.vertices.len()];
        let mut slots: Vec<Slot> = rot.keys().copied().collect();
        slots.sort_unstable();
        for start in slots {
            if seen.contains_key(&start) {
                continue;
            }
            let v = self.side_tail(self.side(start));
            counts[v] += 1;
            let mut cur = start;
            loop {
                seen.insert(cur, true);
                cur = rot[&cur];
                if cur == start {
                    break;
                }
            }
        }
        counts
    }
}

/// A faceted 3-ball, given by the oriented cell structure on its boundary
/// sphere. Each stored face boundary is the cycle induced by the sphere
/// orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetedBall {
    pub complex: Complex,
}

impl std::ops::Deref for FacetedBall {
    type Target = Complex;
    fn deref(&self) -> &Complex {
        &self.complex
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideRecord {
    pub edge: String,
    pub dir: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub id: String,
    pub boundary: Vec<SideRecord>,
}

/// Interchange form of a ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallRecord {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub faces: Vec<FaceRecord>,
}

impl FacetedBall {
    pub fn from_complex(complex: Complex) -> Self {
        FacetedBall { complex }
    }

    /// Builds a ball from id-based records. Unknown ids and bad directions
    /// are reported as errors; topological problems are left to
    /// [`validate`].
    pub fn from_record(rec: &BallRecord) -> Result<Self> {
        let mut vidx = HashMap::new();
        for (i, v) in rec.vertices.iter().enumerate() {
            if vidx.insert(v.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate vertex id {v}")));
            }
        }
        let mut edges = Vec::with_capacity(rec.edges.len());
        let mut eidx = HashMap::new();
        for (i, e) in rec.edges.iter().enumerate() {
            if eidx.insert(e.id.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate edge id {}", e.id)));
            }
            let lookup =
                |v: &String| vidx.get(v).copied().ok_or_else(|| Error::Input(format!("edge {} names unknown vertex {v}", e.id)));
            edges.push(EdgeCell { id: e.id.clone(), tail: lookup(&e.ends[0])?, head: lookup(&e.ends[1])? });
        }
        let mut faces = Vec::with_capacity(rec.faces.len());
        let mut fids = HashMap::new();
        for f in &rec.faces {
            if fids.insert(f.id.clone(), ()).is_some() {
                return Err(Error::Input(format!("duplicate face id {}", f.id)));
            }
            let mut boundary = Vec::with_capacity(f.boundary.len());
            for s in &f.boundary {
                let edge =
                    *eidx.get(&s.edge).ok_or_else(|| Error::Input(format!("face {} names unknown edge {}", f.id, s.edge)))?;
                let forward = match s.dir {
                    1 => true,
                    -1 => false,
                    d => return Err(Error::Input(format!("face {} has direction {d}, expected +1 or -1", f.id))),
                };
                boundary.push(SideRef { edge, forward });
            }
            faces.push(FaceCell { id: f.id.clone(), boundary });
        }
        Ok(FacetedBall { complex: Complex { vertices: rec.vertices.clone(), edges, faces } })
    }

    pub fn to_record(&self) -> BallRecord {
        let c = &self.complex;
        BallRecord {
            vertices: c.vertices.clone(),
            edges: c
                .edges
                .iter()
                .map(|e| EdgeRecord { id: e.id.clone(), ends: [c.vertices[e.tail].clone(), c.vertices[e.head].clone()] })
                .collect(),
            faces: c
                .faces
                .iter()
                .map(|f| FaceRecord {
                    id: f.id.clone(),
                    boundary: f
                        .boundary
                        .iter()
                        .map(|s| SideRecord { edge: c.edges[s.edge].id.clone(), dir: if s.forward { 1 } else { -1 } })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: BallRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&rec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("ball record serializes")
    }

    /// Convenience constructor from literal id data.
    /// `faces` lists `(face id, [(edge id, +1|-1)])`.
    pub fn build(vertices: &[&str], edges: &[(&str, &str, &str)], faces: &[(&str, &[(&str, i8)])]) -> Result<Self> {
        let rec = BallRecord {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, a, b)| EdgeRecord { id: id.to_string(), ends: [a.to_string(), b.to_string()] })
                .collect(),
            faces: faces
                .iter()
                .map(|(id, b)| FaceRecord {
                    id: id.to_string(),
                    boundary: b.iter().map(|(e, d)| SideRecord { edge: e.to_string(), dir: *d }).collect(),
                })
                .collect(),
        };
        Self::from_record(&rec)
    }
}

/// Result of [`validate`]; an empty violation list means the ball is valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid(self.violations.join("; ")))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.violations.join("\n"))
        }
    }
}

pub fn validate(b: &FacetedBall) -> ValidationReport {
    let c = &b.complex;
    let mut violations = Vec::new();
    if c.vertices.len() == 1 && c.edges.is_empty() && c.faces.len() == 1 {
        violations.push("forbidden minimal complex: a single vertex and a single face".to_string());
        return ValidationReport { violations };
    }
    if c.faces.is_empty() {
        violations.push("ball has no faces".to_string());
        return ValidationReport { violations };
    }
    violations.extend(c.surface_violations());
    if c.components() != 1 {
        violations.push(format!("complex is disconnected ({} components)", c.components()));
    }
    if c.euler() != 2 {
        violations.push(format!("Euler characteristic ≠ 2 (V - E + F = {})", c.euler()));
    }
    ValidationReport { violations }
}

/// Which half of a boundary side a barycentric triangle sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Half {
    First,
    Second,
}

/// Triangle of the barycentric subdivision of a face: the cone from the
/// face barycenter over one half of one boundary side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triangle {
    pub face: usize,
    pub side: usize,
    pub half: Half,
}

impl Triangle {
    /// Index in the cyclic order of the face's triangles.
    pub fn position(&self) -> usize {
        2 * self.side + usize::from(self.half == Half::Second)
    }

    pub fn at(face: usize, position: usize) -> Self {
        Triangle { face, side: position / 2, half: if position.is_multiple_of(2) { Half::First } else { Half::Second } }
    }
}

#[derive(Clone, Debug)]
pub struct BarycentricBoundary {
    pub parent: FacetedBall,
    /// Per face, its triangles in the cyclic order induced by the boundary.
    pub triangles: Vec<Vec<Triangle>>,
}

impl BarycentricBoundary {
    pub fn triangle_count(&self) -> usize {
        self.triangles.iter().map(Vec::len).sum()
    }

    /// `(V, E, F)` of the subdivided sphere.
    pub fn cell_counts(&self) -> (usize, usize, usize) {
        let c = &self.parent.complex;
        let sides = c.total_sides();
        (c.vertices.len() + c.edges.len() + c.faces.len(), 2 * c.edges.len() + 2 * sides, 2 * sides)
    }

    pub fn euler(&self) -> i64 {
        let (v, e, f) = self.cell_counts();
        v as i64 - e as i64 + f as i64
    }
}

pub fn barycentric(b: &FacetedBall) -> Result<BarycentricBoundary> {
    validate(b).into_result()?;
    let triangles =
        b.faces.iter().enumerate().map(|(fi, f)| (0..2 * f.boundary.len()).map(|p| Triangle::at(fi, p)).collect()).collect();
    Ok(BarycentricBoundary { parent: b.clone(), triangles })
}

/// A quadrilateral of the dual cap subdivision: vertex, midpoint of the
/// incoming side, barycenter, midpoint of the outgoing side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cap {
    pub face: usize,
    pub corner: usize,
    pub vertex: usize,
}

#[derive(Clone, Debug)]
pub struct DualCapComplex {
    pub caps: Vec<Cap>,
    /// The subdivision as an explicit complex (ids derived from the parent).
    pub complex: Complex,
}

pub fn dual_cap(s: &BarycentricBoundary) -> DualCapComplex {
    dual_cap_of(&s.parent.complex)
}

/// Dual cap subdivision of any closed oriented polygon complex.
///
/// Vertex ids: original ids, `m(<edge>)` for midpoints, `b(<face>)` for
/// barycenters. Edge ids: `<edge>.h0` / `<edge>.h1` for the two halves and
/// `<face>/<side index>` for barycenter-to-midpoint spokes. Each cap face is
/// `<face>@<corner>`.
pub fn dual_cap_of(c: &Complex) -> DualCapComplex {
    let nv = c.vertices.len();
    let ne = c.edges.len();
    let mut vertices: Vec<String> = c.vertices.clone();
    vertices.extend(c.edges.iter().map(|e| format!("m({})", e.id)));
    vertices.extend(c.faces.iter().map(|f| format!("b({})", f.id)));
    let mid = |e: usize| nv + e;
    let bary = |f: usize| nv + ne + f;

    let mut edges = Vec::with_capacity(2 * ne + c.total_sides());
    for (ei, e) in c.edges.iter().enumerate() {
        edges.push(EdgeCell { id: format!("{}.h0", e.id), tail: e.tail, head: mid(ei) });
        edges.push(EdgeCell { id: format!("{}.h1", e.id), tail: mid(ei), head: e.head });
    }
    let mut spoke = HashMap::new();
    for (fi, f) in c.faces.iter().enumerate() {
        for (i, s) in f.boundary.iter().enumerate() {
            spoke.insert((fi, i), edges.len());
            edges.push(EdgeCell { id: format!("{}/{}", f.id, i), tail: bary(fi), head: mid(s.edge) });
        }
    }
    // Half of a side nearest its start / end, as a traversal.
    let first_half = |s: SideRef| {
        if s.forward {
            SideRef::new(2 * s.edge, true)
        } else {
            SideRef::new(2 * s.edge + 1, false)
        }
    };
    let second_half = |s: SideRef| {
        if s.forward {
            SideRef::new(2 * s.edge + 1, true)
        } else {
            SideRef::new(2 * s.edge, false)
        }
    };
    let mut caps = Vec::new();
    let mut faces = Vec::new();
    for (fi, f) in c.faces.iter().enumerate() {
        let n = f.boundary.len();
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let sin = f.boundary[prev];
            let sout = f.boundary[i];
            let vertex = c.side_tail(sout);
            caps.push(Cap { face: fi, corner: i, vertex });
            faces.push(FaceCell {
                id: format!("{}@{}", f.id, i),
                boundary: vec![
                    second_half(sin),
                    first_half(sout),
                    SideRef::new(spoke[&(fi, i)], false),
                    SideRef::new(spoke[&(fi, prev)], true),
                ],
            });
        }
    }
    DualCapComplex { caps, complex: Complex { vertices, edges, faces } }
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }

    /// Class index per element, numbered by smallest member.
    pub fn classes(&mut self) -> Vec<usize> {
        let mut label = BTreeMap::new();
        let mut out = Vec::with_capacity(self.parent.len());
        for i in 0..self.parent.len() {
            let r = self.find(i);
            let next = label.len();
            out.push(*label.entry(r).or_insert(next));
        }
        out
    }
}
