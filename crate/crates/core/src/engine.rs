//! The bitwist construction: subdivision with stickers, the bitwisted
//! pairing δ, the quotient complex and its certificates.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complex::{Complex, EdgeCell, FaceCell, FacetedBall, SideRef, Slot, UnionFind};
use crate::error::{Error, Result};
use crate::omap::OrientedMap;
use crate::pairing::{Alignment, FacePairing, Instance};

/// Where an edge of Q comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeOrigin {
    /// Subedge `index` of an original edge, oriented like it.
    Sub { original: usize, index: usize },
    /// Sticker at corner `corner` of `face`, pointing from the corner
    /// vertex to its free head.
    Sticker { face: usize, corner: usize, vertex: usize },
}

/// Role of one side of a Q face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SideKind {
    /// The `k`-th subedge, in traversal order, along side `pside` of the
    /// original face.
    Sub {
        pside: usize,
        k: usize,
    },
    StickerOut,
    StickerBack,
}

#[derive(Clone, Debug)]
pub struct SubdividedBall {
    pub q: FacetedBall,
    pub origin: Vec<EdgeOrigin>,
    /// Parallel to each Q face boundary.
    pub kinds: Vec<Vec<SideKind>>,
    /// Q position of the k-th subedge along each original side.
    pub qpos: Vec<Vec<Vec<usize>>>,
    /// Number of subedges of each original edge.
    pub sub_count: Vec<usize>,
    pub instance: Instance,
}

impl SubdividedBall {
    pub fn stickers(&self) -> usize {
        self.origin.iter().filter(|o| matches!(o, EdgeOrigin::Sticker { .. })).count()
    }

    pub fn cell_counts(&self) -> (usize, usize, usize) {
        (self.q.vertices.len(), self.q.edges.len(), self.q.faces.len())
    }

    /// Sign of the original edge carrying a Q edge; stickers have none.
    pub fn edge_sign(&self, qe: usize) -> Option<i64> {
        match self.origin[qe] {
            EdgeOrigin::Sub { original, .. } => Some(self.instance.mul.of_edge(original).signum()),
            EdgeOrigin::Sticker { .. } => None,
        }
    }
}

fn is_neg_to_pos(inst: &Instance, f: usize, corner: usize) -> bool {
    let b = inst.ball();
    let face = &b.faces[f].boundary;
    let n = face.len();
    let entering = face[(corner + n - 1) % n].edge;
    let leaving = face[corner].edge;
    inst.mul.of_edge(entering) < 0 && inst.mul.of_edge(leaving) > 0
}

pub fn subdivide(inst: &Instance) -> Result<SubdividedBall> {
    let p = inst.ball();
    let nv = p.vertices.len();
    let mut vertices = p.vertices.clone();
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    let mut sub_count = Vec::with_capacity(p.edges.len());
    // First Q edge index of each original edge's subedges.
    let mut first_sub = Vec::with_capacity(p.edges.len());
    for (ei, e) in p.edges.iter().enumerate() {
        let ell = inst.cycles.cycles[inst.cycles.cycle_of[ei]].len();
        let m = inst.mul.of_edge(ei);
        if m == 0 {
            return Err(Error::ZeroMultiplier(inst.mul.reps[inst.mul.cycle_of[ei]].clone()));
        }
        let n = ell * m.unsigned_abs() as usize;
        sub_count.push(n);
        let mut chain = vec![e.tail];
        for i in 1..n {
            chain.push(vertices.len());
            vertices.push(format!("{}@{}", e.id, i));
        }
        chain.push(e.head);
        first_sub.push(edges.len());
        for i in 0..n {
            edges.push(EdgeCell { id: format!("{}#{}", e.id, i), tail: chain[i], head: chain[i + 1] });
            origin.push(EdgeOrigin::Sub { original: ei, index: i });
        }
    }
    debug_assert!(vertices.len() >= nv);

    let mut faces = Vec::with_capacity(p.faces.len());
    let mut kinds = Vec::with_capacity(p.faces.len());
    let mut qpos = Vec::with_capacity(p.faces.len());
    for (fi, f) in p.faces.iter().enumerate() {
        let mut boundary = Vec::new();
        let mut kind = Vec::new();
        let mut pos = Vec::with_capacity(f.boundary.len());
        let mut occurrence: HashMap<usize, usize> = HashMap::new();
        for (i, s) in f.boundary.iter().enumerate() {
            if is_neg_to_pos(inst, fi, i) {
                let v = p.side_tail(*s);
                let occ = occurrence.entry(v).or_insert(0);
                let tag = format!("{},{},{}", f.id, p.vertices[v], occ);
                *occ += 1;
                let pin = vertices.len();
                vertices.push(format!("pin({tag})"));
                let se = edges.len();
                edges.push(EdgeCell { id: format!("stk({tag})"), tail: v, head: pin });
                origin.push(EdgeOrigin::Sticker { face: fi, corner: i, vertex: v });
                boundary.push(SideRef::new(se, true));
                kind.push(SideKind::StickerOut);
                boundary.push(SideRef::new(se, false));
                kind.push(SideKind::StickerBack);
            }
            let n = sub_count[s.edge];
            let mut here = Vec::with_capacity(n);
            for k in 0..n {
                let idx = if s.forward { k } else { n - 1 - k };
                here.push(boundary.len());
                boundary.push(SideRef::new(first_sub[s.edge] + idx, s.forward));
                kind.push(SideKind::Sub { pside: i, k });
            }
            pos.push(here);
        }
        faces.push(FaceCell { id: f.id.clone(), boundary });
        kinds.push(kind);
        qpos.push(pos);
    }
    let q = FacetedBall::from_complex(Complex { vertices, edges, faces });
    Ok(SubdividedBall { q, origin, kinds, qpos, sub_count, instance: inst.clone() })
}

/// The bitwisted pairing on Q. Each face pair is a single reversed
/// alignment of Q boundaries; on barycentric triangles it is
/// `t -> (2·offset + 1 - t) mod 2L`.
#[derive(Clone, Debug)]
pub struct BitwistPairing {
    pub pairing: FacePairing,
}

impl BitwistPairing {
    pub fn pairs(&self) -> &[Alignment] {
        &self.pairing.pairs
    }

    /// Image of triangle position `t` of face `f` (which must be paired).
    pub fn triangle_image(&self, f: usize, t: usize) -> (usize, usize) {
        let mates = self.pairing.mates();
        let m = mates[f].expect("paired face");
        let l2 = 2 * self.pairing.base.face_len(f);
        (m.other, (2 * m.offset + 1 + l2 - t % l2) % l2)
    }
}

pub fn bitwist(q: &SubdividedBall) -> Result<BitwistPairing> {
    let inst = &q.instance;
    let p = inst.ball();
    let mut pairs = Vec::with_capacity(inst.pairing.pairs.len());
    for a in &inst.pairing.pairs {
        let (f, g) = (a.from, a.to);
        let len = q.q.face_len(f);
        if len != q.q.face_len(g) {
            return Err(Error::StickerPlacement(format!(
                "faces {} and {} have {} and {} sides after subdivision",
                p.faces[f].id,
                p.faces[g].id,
                len,
                q.q.face_len(g)
            )));
        }
        let n = p.face_len(f);
        let mut offset: Option<usize> = None;
        for i in 0..n {
            let j = (a.offset + n - i) % n;
            let pe = p.faces[f].boundary[i].edge;
            let count = q.sub_count[pe];
            let sign = inst.mul.of_edge(pe);
            for k in 0..count {
                let from = q.qpos[f][i][k];
                let partner = q.qpos[g][j][count - 1 - k];
                let target = if sign > 0 { (partner + len - 1) % len } else { (partner + 1) % len };
                let kk = (from + target) % len;
                match offset {
                    None => offset = Some(kk),
                    Some(o) if o != kk => {
                        return Err(Error::StickerPlacement(format!("face {} gives shifts {} and {}", p.faces[f].id, o, kk)))
                    }
                    _ => {}
                }
            }
        }
        pairs.push(Alignment { from: f, to: g, offset: offset.unwrap_or(0) });
    }
    Ok(BitwistPairing { pairing: FacePairing::new(q.q.clone(), pairs) })
}

/// One step of an edge-orbit trace: the side `from` (tail, head) is carried
/// onto `to` (images of tail and head) by pair `pair` or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaHop {
    pub from: [String; 2],
    pub to: [String; 2],
    pub pair: usize,
    pub inverse: bool,
}

impl std::fmt::Display for DeltaHop {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{} -d{}{}-> {}{}",
            self.from[0],
            self.from[1],
            self.pair + 1,
            if self.inverse { "^-1" } else { "" },
            self.to[0],
            self.to[1]
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeOrbit {
    /// Q edge ids with their orientation relative to the orbit.
    pub edges: Vec<(String, i64)>,
    pub trace: Vec<DeltaHop>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientComplex {
    pub vertex_orbits: Vec<Vec<String>>,
    pub edge_orbits: Vec<EdgeOrbit>,
    pub face_pairs: usize,
    pub cells3: usize,
    /// Boundary word of each face pair (its `from` face) in oriented edge
    /// orbits: `(orbit, ±1)`.
    pub words: Vec<Vec<(usize, i64)>>,
}

impl QuotientComplex {
    pub fn cell_vector(&self) -> (usize, usize, usize, usize) {
        (self.vertex_orbits.len(), self.edge_orbits.len(), self.face_pairs, self.cells3)
    }
}

/// Union-find that also tracks a relative sign to the root.
struct SignedUnionFind {
    parent: Vec<usize>,
    sign: Vec<i64>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), sign: vec![1; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i64) {
        if self.parent[x] == x {
            return (x, 1);
        }
        let (r, s) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.sign[x] *= s;
        (r, self.sign[x])
    }

    /// Records `x = s·y`; returns false on a sign conflict.
    fn union(&mut self, x: usize, y: usize, s: i64) -> bool {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        if rx == ry {
            return sx == s * sy;
        }
        let (lo, hi, shi) = if rx < ry { (rx, ry, sx * s * sy) } else { (ry, rx, sx * s * sy) };
        self.parent[hi] = lo;
        self.sign[hi] = shi;
        true
    }
}

pub fn quotient(q: &SubdividedBall, d: &BitwistPairing) -> Result<QuotientComplex> {
    let c: &Complex = &q.q;
    let pairing = &d.pairing;
    let mates = pairing.mates();
    let mut vuf = UnionFind::new(c.vertices.len());
    let mut euf = SignedUnionFind::new(c.edges.len());
    for (f, face) in c.faces.iter().enumerate() {
        for i in 0..face.boundary.len() {
            let Some(img) = pairing.image(&mates, (f, i)) else {
                return Err(Error::Quotient(format!("face {} is unpaired", face.id)));
            };
            let s = face.boundary[i];
            let t = c.side(img);
            vuf.union(c.side_tail(s), c.side_head(t));
            vuf.union(c.side_head(s), c.side_tail(t));
            if !euf.union(s.edge, t.edge, -s.sign() * t.sign()) {
                return Err(Error::Quotient(format!("edge {} is identified with itself reversed", c.edges[s.edge].id)));
            }
        }
    }
    let vclass = vuf.classes();
    let mut vertex_orbits = vec![Vec::new(); vclass.iter().max().map_or(0, |m| m + 1)];
    for (v, &k) in vclass.iter().enumerate() {
        vertex_orbits[k].push(c.vertices[v].clone());
    }

    let mut orbit_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edge_orbit = Vec::with_capacity(c.edges.len());
    let mut edge_sign = Vec::with_capacity(c.edges.len());
    for e in 0..c.edges.len() {
        let (r, s) = euf.find(e);
        let next = orbit_of_root.len();
        edge_orbit.push(*orbit_of_root.entry(r).or_insert(next));
        edge_sign.push(s);
    }
    let mut orbits: Vec<EdgeOrbit> = vec![EdgeOrbit { edges: Vec::new(), trace: Vec::new() }; orbit_of_root.len()];
    for e in 0..c.edges.len() {
        orbits[edge_orbit[e]].edges.push((c.edges[e].id.clone(), edge_sign[e]));
    }

    // Traces follow σ -> δ(σ) -> other side of that edge.
    let opp = c.opposite_table();
    let mut seen: HashMap<Slot, ()> = HashMap::new();
    for (f, face) in c.faces.iter().enumerate() {
        for i in 0..face.boundary.len() {
            let start = (f, i);
            if seen.contains_key(&start) {
                continue;
            }
            let orbit = edge_orbit[face.boundary[i].edge];
            let record = orbits[orbit].trace.is_empty();
            let mut cur = start;
            let mut trace = Vec::new();
            loop {
                seen.insert(cur, ());
                let img = pairing.image(&mates, cur).expect("paired");
                let m = mates[cur.0].expect("paired");
                if record {
                    let (s, t) = (c.side(cur), c.side(img));
                    trace.push(DeltaHop {
                        from: [c.vertices[c.side_tail(s)].clone(), c.vertices[c.side_head(s)].clone()],
                        to: [c.vertices[c.side_head(t)].clone(), c.vertices[c.side_tail(t)].clone()],
                        pair: m.pair,
                        inverse: !m.is_from,
                    });
                }
                cur = *opp.get(&img).ok_or_else(|| Error::Quotient("edge without two sides".into()))?;
                if cur == start {
                    break;
                }
                if seen.contains_key(&cur) {
                    return Err(Error::Quotient("side orbit does not close".into()));
                }
            }
            if record {
                orbits[orbit].trace = trace;
            }
        }
    }

    let words = pairing
        .pairs
        .iter()
        .map(|a| c.faces[a.from].boundary.iter().map(|s| (edge_orbit[s.edge], s.sign() * edge_sign[s.edge])).collect())
        .collect();
    Ok(QuotientComplex { vertex_orbits, edge_orbits: orbits, face_pairs: pairing.pairs.len(), cells3: 1, words })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub pass: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells3: usize,
    pub euler: i64,
    pub reasons: Vec<String>,
}

pub fn certify_manifold(m: &QuotientComplex) -> Certificate {
    let (v, e, f, c3) = m.cell_vector();
    let euler = v as i64 - e as i64 + f as i64 - c3 as i64;
    let mut reasons = Vec::new();
    if v != 1 {
        reasons.push(format!("{v} vertex orbits, expected 1"));
    }
    if e != f {
        reasons.push(format!("{e} edge orbits but {f} face pairs"));
    }
    if euler != 0 {
        reasons.push(format!("Euler characteristic {euler}, expected 0"));
    }
    Certificate { pass: reasons.is_empty(), vertices: v, edges: e, faces: f, cells3: c3, euler, reasons }
}

/// Everything the construction produces for one instance.
#[derive(Clone, Debug)]
pub struct Build {
    pub sub: SubdividedBall,
    pub delta: BitwistPairing,
    pub quotient: QuotientComplex,
    pub certificate: Certificate,
}

pub fn build(inst: &Instance) -> Result<Build> {
    let sub = subdivide(inst)?;
    let delta = bitwist(&sub)?;
    let quotient = quotient(&sub, &delta)?;
    let certificate = certify_manifold(&quotient);
    Ok(Build { sub, delta, quotient, certificate })
}

/// Outcome of comparing the dual of the vertex link with ∂Q*.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DualLinkOutcome {
    /// Isomorphism found; `reversing` tells whether it reverses the stored
    /// orientations. `witness[d]` is the ∂Q* side matched to corner `d`.
    Found {
        reversing: bool,
        witness: Vec<usize>,
    },
    NotFound {
        link_cells: [usize; 3],
        dual_star_cells: [usize; 3],
    },
    SkippedCap {
        darts: usize,
        cap: usize,
    },
}

impl DualLinkOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, DualLinkOutcome::Found { .. })
    }
}

/// Map of ∂Q: darts are sides, faces are face boundaries.
pub fn boundary_map(c: &Complex) -> OrientedMap {
    let mut base = Vec::with_capacity(c.faces.len());
    let mut total = 0;
    for f in &c.faces {
        base.push(total);
        total += f.boundary.len();
    }
    let mut next = vec![0; total];
    let mut opp = vec![0; total];
    let table = c.opposite_table();
    for (fi, f) in c.faces.iter().enumerate() {
        let n = f.boundary.len();
        for i in 0..n {
            next[base[fi] + i] = base[fi] + (i + 1) % n;
            let (g, j) = table[&(fi, i)];
            opp[base[fi] + i] = base[g] + j;
        }
    }
    OrientedMap { next, opp }
}

/// Vertex link of M: darts are corners of Q (named by the side leaving
/// them), faces are rotations about Q vertices and edges join corners
/// identified by δ.
pub fn link_map(q: &SubdividedBall, d: &BitwistPairing) -> OrientedMap {
    let c: &Complex = &q.q;
    let mut base = Vec::with_capacity(c.faces.len());
    let mut total = 0;
    for f in &c.faces {
        base.push(total);
        total += f.boundary.len();
    }
    let table = c.opposite_table();
    let rot = c.corner_rotation(&table);
    let mates = d.pairing.mates();
    let mut next = vec![0; total];
    let mut opp = vec![0; total];
    for (fi, f) in c.faces.iter().enumerate() {
        let n = f.boundary.len();
        let m = mates[fi].expect("paired");
        for i in 0..n {
            let r = rot[&(fi, i)];
            next[base[fi] + i] = base[r.0] + r.1;
            // Corner i sits at the start of side i, whose image ends at the
            // start of side offset - i + 1.
            let j = (m.offset + 1 + n - i % n) % n;
            opp[base[fi] + i] = base[m.other] + j;
        }
    }
    OrientedMap { next, opp }
}

pub fn dual_link_check(inst: &Instance, cap: usize) -> Result<DualLinkOutcome> {
    let b = build(inst)?;
    let link = link_map(&b.sub, &b.delta);
    if link.darts() > cap {
        return Ok(DualLinkOutcome::SkippedCap { darts: link.darts(), cap });
    }
    let dual = link.dual();
    let star = subdivide(&inst.negated())?;
    let target = boundary_map(&star.q);
    if let Some(w) = dual.isomorphism_to(&target.mirror()) {
        return Ok(DualLinkOutcome::Found { reversing: true, witness: w });
    }
    if let Some(w) = dual.isomorphism_to(&target) {
        return Ok(DualLinkOutcome::Found { reversing: false, witness: w });
    }
    Ok(DualLinkOutcome::NotFound {
        link_cells: [dual.vertices(), dual.edges(), dual.faces()],
        dual_star_cells: [target.vertices(), target.edges(), target.faces()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::examples;

    #[test]
    fn worked_example_subdivision() {
        let s = subdivide(&examples::tetra_instance()).unwrap();
        assert!(validate(&s.q).is_ok(), "{}", validate(&s.q));
        assert_eq!(s.stickers(), 2);
        // Counted from the vertex names in the printed δ tables: A-D,
        // a1-a3, b1-b3, c1-c3, d1-d3, vA, vB.
        assert_eq!(s.cell_counts(), (18, 20, 4));
        let lens: Vec<usize> = s.q.faces.iter().map(|f| f.boundary.len()).collect();
        assert_eq!(lens, vec![11, 11, 9, 9]);
    }

    #[test]
    fn all_positive_has_no_stickers() {
        let s = subdivide(&examples::tetra_all_positive()).unwrap();
        assert_eq!(s.stickers(), 0);
        assert_eq!(s.cell_counts(), (16, 18, 4));
        let s = subdivide(&examples::tetra_all_negative()).unwrap();
        assert_eq!(s.stickers(), 0);
    }

    /// Printed names for the Q vertices of the worked example.
    fn printed_name(id: &str) -> String {
        match id {
            "AB@1" | "AB@2" => unreachable!(),
            "BC@1" => "a1".into(),
            "BC@2" => "a2".into(),
            "BC@3" => "a3".into(),
            "AC@1" => "b3".into(),
            "AC@2" => "b2".into(),
            "AC@3" => "b1".into(),
            "AD@1" => "c1".into(),
            "AD@2" => "c2".into(),
            "AD@3" => "c3".into(),
            "BD@1" => "d3".into(),
            "BD@2" => "d2".into(),
            "BD@3" => "d1".into(),
            "pin(ABD,A,0)" => "vA".into(),
            "pin(ABC,B,0)" => "vB".into(),
            other => other.to_string(),
        }
    }

    fn table(top: &str, bottom: &str) -> Vec<(String, String)> {
        top.split_whitespace().zip(bottom.split_whitespace()).map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn delta_reproduces_the_printed_tables() {
        let inst = examples::tetra_instance();
        let s = subdivide(&inst).unwrap();
        let d = bitwist(&s).unwrap();
        let c = &s.q;
        let mates = d.pairing.mates();
        let expected = [
            table("b3 A B vB B a1 a2 a3 C b1 b2", "A vA A B d3 d2 d1 D c3 c2 c1"),
            table("c1 A b3 b2 b1 C D c3 c2", "B a1 a2 a3 C D d1 d2 d3"),
        ];
        for (pi, a) in d.pairs().iter().enumerate() {
            let n = c.face_len(a.from);
            let mut got = Vec::new();
            for i in 0..n {
                let img = d.pairing.image(&mates, (a.from, i)).unwrap();
                let v = printed_name(&c.vertices[c.side_tail(c.side((a.from, i)))]);
                let w = printed_name(&c.vertices[c.side_head(c.side(img))]);
                got.push((v, w));
            }
            let want = &expected[pi];
            let rot = (0..n).find(|&r| got[r] == want[0]).expect("alignment start");
            for k in 0..n {
                assert_eq!(got[(rot + k) % n], want[k], "pair {pi} column {k}");
            }
        }
    }

    #[test]
    fn delta_is_a_two_triangle_shift_of_epsilon_prime() {
        for inst in [examples::tetra_instance(), examples::tetra_all_positive(), examples::tetra_all_negative()] {
            let s = subdivide(&inst).unwrap();
            let d = bitwist(&s).unwrap();
            let p = inst.ball();
            for a in &inst.pairing.pairs {
                let l2 = 2 * s.q.face_len(a.from);
                let n = p.face_len(a.from);
                for i in 0..n {
                    let j = (a.offset + n - i) % n;
                    let pe = p.faces[a.from].boundary[i].edge;
                    let cnt = s.sub_count[pe];
                    for k in 0..cnt {
                        let from = s.qpos[a.from][i][k];
                        let to = s.qpos[a.to][j][cnt - 1 - k];
                        for h in 0..2 {
                            let t = 2 * from + h;
                            let eps = (2 * to + 1 - h) % l2;
                            let (_, img) = d.triangle_image(a.from, t);
                            let want = if inst.mul.of_edge(pe) > 0 { (eps + l2 - 2) % l2 } else { (eps + 2) % l2 };
                            assert_eq!(img, want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn digon_pair_shift_is_unique() {
        let b = examples::two_digons();
        let p = FacePairing::from_records(b, &[crate::pairing::AlignmentRecord { from: "N".into(), to: "S".into(), offset: 1 }])
            .unwrap();
        let cy = crate::pairing::edge_cycles(&p);
        let inst = Instance::with_values(p, &vec![1; cy.cycles.len()]).unwrap();
        let s = subdivide(&inst).unwrap();
        let d = bitwist(&s).unwrap();
        let q_len = s.q.face_len(0);
        assert_eq!(2 * q_len, 2 * 2 * cy.cycles[0].len());
        let b = build(&inst).unwrap();
        assert!(b.certificate.pass, "{:?}", b.certificate);
        let _ = d;
    }

    #[test]
    fn worked_example_quotient() {
        let b = build(&examples::tetra_instance()).unwrap();
        assert_eq!(b.quotient.cell_vector(), (1, 2, 2, 1));
        assert!(b.certificate.pass);
        assert_eq!(b.certificate.euler, 0);
        let mut hops: Vec<usize> = b.quotient.edge_orbits.iter().map(|o| o.trace.len()).collect();
        hops.sort_unstable();
        assert_eq!(hops, vec![9, 11]);
    }

    #[test]
    fn worked_example_traces_match_printed_chains() {
        let b = build(&examples::tetra_instance()).unwrap();
        let printed = ["b3A AvA BA vBB Bd3 c1c2 b2b1 a3C Dc3 d1d2 a2a1", "b1C CD Dd1 a3a2 b2b3 c1A Ba1 d3d2 c2c3"];
        for want in printed {
            let want: Vec<&str> = want.split(' ').collect();
            // A trace may run along either side of its orbit; the other side
            // reads the same edges backwards.
            let found = b.quotient.edge_orbits.iter().any(|o| {
                let fwd: Vec<String> =
                    o.trace.iter().map(|h| format!("{}{}", printed_name(&h.from[0]), printed_name(&h.from[1]))).collect();
                let bwd: Vec<String> =
                    o.trace.iter().rev().map(|h| format!("{}{}", printed_name(&h.from[1]), printed_name(&h.from[0]))).collect();
                [fwd, bwd].iter().any(|got| {
                    got.len() == want.len() && (0..got.len()).any(|r| (0..got.len()).all(|k| got[(r + k) % got.len()] == want[k]))
                })
            });
            let all: Vec<Vec<String>> = b
                .quotient
                .edge_orbits
                .iter()
                .map(|o| {
                    o.trace
                        .iter()
                        .map(|h| {
                            format!(
                                "{}{}->{}{}",
                                printed_name(&h.from[0]),
                                printed_name(&h.from[1]),
                                printed_name(&h.to[0]),
                                printed_name(&h.to[1])
                            )
                        })
                        .collect()
                })
                .collect();
            assert!(found, "no orbit matches {want:?}: {all:?}");
        }
    }

    #[test]
    fn fake_quotient_fails_with_counts() {
        let fake = QuotientComplex {
            vertex_orbits: vec![vec!["a".into()], vec!["b".into()]],
            edge_orbits: vec![],
            face_pairs: 0,
            cells3: 1,
            words: vec![],
        };
        let c = certify_manifold(&fake);
        assert!(!c.pass);
        assert_eq!(c.vertices, 2);
        assert!(c.reasons[0].contains("2 vertex orbits"));
    }

    #[test]
    fn dual_link_on_worked_example() {
        let out = dual_link_check(&examples::tetra_instance(), 4000).unwrap();
        assert!(matches!(out, DualLinkOutcome::Found { reversing: true, .. }), "{out:?}");
        let out = dual_link_check(&examples::tetra_all_positive(), 4000).unwrap();
        assert!(matches!(out, DualLinkOutcome::Found { reversing: true, .. }), "{out:?}");
        let out = dual_link_check(&examples::tetra_instance(), 10).unwrap();
        assert!(matches!(out, DualLinkOutcome::SkippedCap { .. }));
    }

    #[test]
    fn link_is_a_sphere() {
        let b = build(&examples::tetra_instance()).unwrap();
        let l = link_map(&b.sub, &b.delta);
        assert!(l.is_valid());
        assert_eq!(l.euler(), 2);
    }
}
