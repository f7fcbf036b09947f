//! Edge-pairing surfaces, their two meridian systems, edge-cycle cylinders
//! and the Dehn-twist word relating the systems.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::complex::{dual_cap_of, Complex, DualCapComplex, EdgeCell, FaceCell, SideRef, Slot, UnionFind};
use crate::engine::{Build, EdgeOrigin, SideKind};
use crate::error::{Error, Result};

/// Label of an edge of S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLabel {
    pub vertical: bool,
    pub meridian: bool,
}

/// One annulus square of Y: the Q side `bottom` (of a `from` face), the
/// vertical edge on its right, the δ-image side `top`, the vertical edge on
/// its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Square {
    pub pair: usize,
    pub bottom: Slot,
    pub top: Slot,
}

#[derive(Clone, Debug)]
pub struct EdgePairingSurface {
    /// Q's 1-skeleton plus one annulus per face pair.
    pub y: Complex,
    /// Number of Y edges that are Q edges; the rest are vertical.
    pub q_edges: usize,
    pub squares: Vec<Square>,
    pub s: DualCapComplex,
    pub labels: Vec<EdgeLabel>,
    pub genus: usize,
    pub face_pairs: usize,
}

pub fn build_surface(b: &Build) -> Result<EdgePairingSurface> {
    let q: &Complex = &b.sub.q;
    let pairing = &b.delta.pairing;
    let mut edges: Vec<EdgeCell> = q.edges.clone();
    let mut faces = Vec::new();
    let mut squares = Vec::new();
    for (pi, a) in pairing.pairs.iter().enumerate() {
        let (f, g) = (a.from, a.to);
        let len = q.face_len(f);
        if len != q.face_len(g) {
            return Err(Error::PairingMisalignment(format!("faces {} and {} differ in length", q.faces[f].id, q.faces[g].id)));
        }
        // Vertical edge i runs from corner i of f to its δ-image corner in g.
        let base = edges.len();
        for i in 0..len {
            let tail = q.side_tail(q.faces[f].boundary[i]);
            let j = (a.offset + 1 + len - i) % len;
            let head = q.side_tail(q.faces[g].boundary[j]);
            edges.push(EdgeCell { id: format!("u({},{})", q.faces[f].id, i), tail, head });
        }
        for i in 0..len {
            let sigma = q.faces[f].boundary[i];
            let tj = (a.offset + len - i) % len;
            let tau = q.faces[g].boundary[tj];
            if q.side_head(sigma) != edges[base + (i + 1) % len].tail || q.side_head(tau) != edges[base + i].head {
                return Err(Error::PairingMisalignment(format!("square {} of face {} does not close", i, q.faces[f].id)));
            }
            faces.push(FaceCell {
                id: format!("sq({},{})", q.faces[f].id, i),
                boundary: vec![sigma, SideRef::new(base + (i + 1) % len, true), tau, SideRef::new(base + i, false)],
            });
            squares.push(Square { pair: pi, bottom: (f, i), top: (g, tj) });
        }
    }
    let y = Complex { vertices: q.vertices.clone(), edges, faces };
    let bad = y.surface_violations();
    if !bad.is_empty() {
        return Err(Error::PairingMisalignment(bad.join("; ")));
    }
    let s = dual_cap_of(&y);
    let q_edges = q.edges.len();
    let ny = y.edges.len();
    // Edge order of dual_cap_of: two halves per Y edge, then one spoke per
    // square side.
    let mut labels = Vec::with_capacity(s.complex.edges.len());
    for ye in 0..ny {
        let in_x = ye < q_edges;
        for _ in 0..2 {
            labels.push(EdgeLabel { vertical: !in_x, meridian: false });
        }
    }
    for face in &y.faces {
        for side in &face.boundary {
            labels.push(EdgeLabel { vertical: side.edge >= q_edges, meridian: true });
        }
    }
    debug_assert_eq!(labels.len(), s.complex.edges.len());
    let chi = s.complex.euler();
    let genus = usize::try_from((2 - chi) / 2).unwrap_or(0);
    Ok(EdgePairingSurface { y, q_edges, squares, s, labels, genus, face_pairs: pairing.pairs.len() })
}

/// A family of disjoint simple closed curves on S with its checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveFamily {
    /// Each curve as a cyclic sequence of S edge ids, rotated to start at
    /// the smallest id.
    pub curves: Vec<Vec<String>>,
    pub simple_and_disjoint: bool,
    pub complement_connected: bool,
    /// Euler characteristic after cutting and capping every curve.
    pub capped_euler: i64,
}

impl CurveFamily {
    pub fn is_basis(&self) -> bool {
        self.simple_and_disjoint && self.complement_connected && self.capped_euler == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeegaardDiagram {
    pub genus: usize,
    pub v: CurveFamily,
    pub d: CurveFamily,
}

fn curve_family(s: &EdgePairingSurface, vertical: bool) -> CurveFamily {
    let c = &s.s.complex;
    let chosen: Vec<usize> = (0..c.edges.len()).filter(|&e| s.labels[e].meridian && s.labels[e].vertical == vertical).collect();
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in &chosen {
        incident.entry(c.edges[e].tail).or_default().push(e);
        incident.entry(c.edges[e].head).or_default().push(e);
    }
    let simple = incident.values().all(|v| v.len() == 2);
    let mut used = BTreeSet::new();
    let mut curves = Vec::new();
    if simple {
        for &e0 in &chosen {
            if used.contains(&e0) {
                continue;
            }
            let mut curve = Vec::new();
            let mut e = e0;
            let mut at = c.edges[e0].head;
            loop {
                used.insert(e);
                curve.push(c.edges[e].id.clone());
                let pair = &incident[&at];
                let next = if pair[0] == e { pair[1] } else { pair[0] };
                if next == e0 {
                    break;
                }
                at = if c.edges[next].tail == at { c.edges[next].head } else { c.edges[next].tail };
                e = next;
            }
            let start = (0..curve.len()).min_by(|&a, &b| curve[a].cmp(&curve[b])).unwrap_or(0);
            curve.rotate_left(start);
            curves.push(curve);
        }
        curves.sort();
    }
    // Faces of S stay connected across every edge outside the family.
    let cut: BTreeSet<usize> = chosen.iter().copied().collect();
    let mut uf = UnionFind::new(c.faces.len());
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (fi, f) in c.faces.iter().enumerate() {
        for side in &f.boundary {
            if cut.contains(&side.edge) {
                continue;
            }
            if let Some(&other) = owner.get(&side.edge) {
                uf.union(fi, other);
            } else {
                owner.insert(side.edge, fi);
            }
        }
    }
    let connected = uf.count() == 1;
    CurveFamily {
        capped_euler: c.euler() + 2 * curves.len() as i64,
        curves,
        simple_and_disjoint: simple,
        complement_connected: connected,
    }
}

pub fn heegaard_diagram(s: &EdgePairingSurface) -> HeegaardDiagram {
    HeegaardDiagram { genus: s.genus, v: curve_family(s, true), d: curve_family(s, false) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub cycle: String,
    pub multiplier: i64,
    /// Indices of the caps (faces of S) making up the annulus.
    pub caps: Vec<usize>,
    pub euler: i64,
    pub boundary_circles: usize,
    pub connected: bool,
    /// Signed number of turns a diagonal arc makes about the core.
    pub winding: Option<i64>,
}

impl Cylinder {
    pub fn is_annulus(&self) -> bool {
        self.connected && self.euler == 0 && self.boundary_circles == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderDecomposition {
    pub cylinders: Vec<Cylinder>,
    /// +1 when positive multipliers count as positive windings.
    pub handedness: i64,
}

/// Handedness for which the worked example's windings equal its
/// multipliers.
pub const DEFAULT_HANDEDNESS: i64 = 1;

fn side_cycle(b: &Build, slot: Slot) -> usize {
    b.sub.instance.cycles.cycle_of[side_owner(b, slot)]
}

/// Original edge that owns a Q side: subedges go with their original edge;
/// the two sides of a sticker go with the negative edge before it and the
/// positive edge after it.
fn side_owner(b: &Build, slot: Slot) -> usize {
    let sub = &b.sub;
    let inst = &sub.instance;
    let p = inst.ball();
    let kind = sub.kinds[slot.0][slot.1];
    let face = &p.faces[slot.0].boundary;
    let n = face.len();
    let qe = sub.q.side(slot).edge;
    match (kind, sub.origin[qe]) {
        (SideKind::Sub { .. }, EdgeOrigin::Sub { original, .. }) => original,
        (SideKind::StickerOut, EdgeOrigin::Sticker { corner, .. }) => face[(corner + n - 1) % n].edge,
        (SideKind::StickerBack, EdgeOrigin::Sticker { corner, .. }) => face[corner].edge,
        _ => unreachable!("side kind and edge origin disagree"),
    }
}

pub fn cylinders(s: &EdgePairingSurface, b: &Build, handedness: i64) -> Result<CylinderDecomposition> {
    let inst = &b.sub.instance;
    let ncyc = inst.cycles.cycles.len();
    let c = &s.s.complex;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); ncyc];
    // Caps come four per square in corner order; corners 0 and 1 touch the
    // bottom side, corners 2 and 3 the top side.
    let mut unassigned = Vec::new();
    let mut owner = vec![usize::MAX; s.s.caps.len()];
    let mut virt = vec![usize::MAX; s.s.caps.len()];
    let mut phys = vec![usize::MAX; s.s.caps.len()];
    // Owners of the bottom row and its untwisted image, per square.
    let rows: Vec<(usize, usize)> = s
        .squares
        .iter()
        .map(|sq| {
            let lo = side_owner(b, sq.bottom);
            (lo, eps_slot(b, sq.bottom).map_or(lo, |e| side_owner(b, e)))
        })
        .collect();
    for (ci, cap) in s.s.caps.iter().enumerate() {
        let Some(sq) = s.squares.get(cap.face) else {
            unassigned.push(c.faces[ci].id.clone());
            continue;
        };
        (owner[ci], virt[ci]) = cap_owner(b, sq, cap.corner);
        phys[ci] = b.sub.q.side(if cap.corner < 2 { sq.bottom } else { sq.top }).edge;
        groups[inst.cycles.cycle_of[owner[ci]]].push(ci);
    }
    if !unassigned.is_empty() {
        return Err(Error::Partition(format!("caps without a cycle: {}", unassigned.join(", "))));
    }
    // Which shared edges are interior to a cylinder. Spokes lie inside one
    // square and join the rows of a cycle. Edges on square boundaries only
    // join caps of the same strip, and at an original vertex only caps on
    // the same Q edge: that is where strip ends meet.
    let originals: BTreeSet<&str> = inst.ball().vertices.iter().map(String::as_str).collect();
    let mut holders: HashMap<usize, Vec<usize>> = HashMap::new();
    for (ci, f) in c.faces.iter().enumerate() {
        for side in &f.boundary {
            holders.entry(side.edge).or_default().push(ci);
        }
    }
    let halves = 2 * s.y.edges.len();
    let mut cut = BTreeSet::new();
    for (&e, hs) in &holders {
        let [x, y] = hs[..] else { continue };
        let glued = if e >= halves {
            let (lo, hi) = rows[s.s.caps[x].face];
            owner[x] == owner[y] || (owner[x], owner[y]) == (lo, hi) || (owner[x], owner[y]) == (hi, lo)
        } else if owner[x] != owner[y] {
            false
        } else {
            let ye = &s.y.edges[e / 2];
            let v = if e % 2 == 0 { ye.tail } else { ye.head };
            let sticker = |qe: usize| matches!(b.sub.origin[qe], EdgeOrigin::Sticker { .. });
            let moved = |k: usize| virt[k] != phys[k];
            e / 2 < s.q_edges
                || !originals.contains(s.y.vertices[v].as_str())
                || (virt[x] == virt[y] && (moved(x) || moved(y)))
                || sticker(phys[x]) != sticker(phys[y])
        };
        if !glued {
            cut.insert(e);
        }
    }
    let windings = windings(b, handedness);
    let mut out = Vec::with_capacity(ncyc);
    for (k, caps) in groups.into_iter().enumerate() {
        let (euler, circles, connected) = region_shape(c, &caps, &cut);
        out.push(Cylinder {
            cycle: inst.cycles.cycles[k].rep.clone(),
            multiplier: inst.mul.values[k],
            caps,
            euler,
            boundary_circles: circles,
            connected,
            winding: windings[k],
        });
    }
    Ok(CylinderDecomposition { cylinders: out, handedness })
}

/// Original edge owning one cap of a square. Bottom caps follow the bottom side.
/// A top cap follows the top side, except the one at the vertex shared by
/// the top side and the untwisted image of the bottom side: that corner is
/// where the twist pushed the square across a vertex, and the cap stays
/// with the bottom side's cycle.
fn cap_owner(b: &Build, sq: &Square, corner: usize) -> (usize, usize) {
    let q: &Complex = &b.sub.q;
    let slot = if corner < 2 { sq.bottom } else { sq.top };
    let by_side = (side_owner(b, slot), q.side(slot).edge);
    if corner < 2 {
        return by_side;
    }
    let (Some(eps), Some(shift)) = (eps_slot(b, sq.bottom), shift_of(b, sq.bottom, sq.top)) else { return by_side };
    let top = q.side(sq.top);
    // The top side meets the untwisted image at the head of the top side
    // for a backward shift and at its tail for a forward one.
    let (w, t_corner) = if shift > 0 { (q.side_head(top), 3) } else { (q.side_tail(top), 2) };
    let original = b.sub.instance.ball().vertex_index().contains_key(q.vertices[w].as_str());
    if sq.top == eps || !original || corner != t_corner {
        return by_side;
    }
    (side_owner(b, eps), q.side(eps).edge)
}

/// Euler characteristic, number of boundary circles and connectivity of
/// the surface obtained by gluing the given faces along their shared edges,
/// except the edges in `cut`.
fn region_shape(c: &Complex, faces: &[usize], cut: &BTreeSet<usize>) -> (i64, usize, bool) {
    // Corner k of local face i is vertex slot offsets[i] + k.
    let mut offsets = Vec::with_capacity(faces.len());
    let mut total = 0;
    for &f in faces {
        offsets.push(total);
        total += c.faces[f].boundary.len();
    }
    let mut verts = UnionFind::new(total);
    let mut tiles = UnionFind::new(faces.len());
    // Each side as (local face, start slot, end slot).
    let mut by_edge: HashMap<usize, Vec<(usize, usize, usize, bool)>> = HashMap::new();
    for (i, &f) in faces.iter().enumerate() {
        let n = c.faces[f].boundary.len();
        for (k, side) in c.faces[f].boundary.iter().enumerate() {
            by_edge.entry(side.edge).or_default().push((i, offsets[i] + k, offsets[i] + (k + 1) % n, side.forward));
        }
    }
    let mut glued_edges = 0usize;
    let mut sides = 0usize;
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (e, uses) in &by_edge {
        sides += uses.len();
        if uses.len() == 2 && !cut.contains(e) {
            let (a, b) = (uses[0], uses[1]);
            tiles.union(a.0, b.0);
            // Match the edge's tail ends and head ends.
            let (at, ah) = if a.3 { (a.1, a.2) } else { (a.2, a.1) };
            let (bt, bh) = if b.3 { (b.1, b.2) } else { (b.2, b.1) };
            verts.union(at, bt);
            verts.union(ah, bh);
            glued_edges += 1;
        } else {
            free.extend(uses.iter().map(|u| (u.1, u.2)));
        }
    }
    let edges = sides - glued_edges;
    let nverts = verts.count();
    let euler = nverts as i64 - edges as i64 + faces.len() as i64;
    let classes = verts.classes();
    let mut circles = UnionFind::new(total);
    let mut on_boundary = BTreeSet::new();
    for &(a, b) in &free {
        circles.union(classes[a], classes[b]);
        on_boundary.insert(classes[a]);
    }
    let roots: BTreeSet<usize> = on_boundary.iter().map(|&v| circles.find(v)).collect();
    (euler, roots.len(), tiles.count() <= 1)
}

/// Winding of the diagonal arcs in each cylinder. A diagonal meridian
/// curve follows a δ edge orbit; inside the cylinder of cycle E it passes
/// a run of consecutive sides of E, shifting one subedge per step in the
/// direction fixed by the sign of the shift. One turn about the core takes
/// ℓ(E) steps.
fn windings(b: &Build, handedness: i64) -> Vec<Option<i64>> {
    let sub = &b.sub;
    let inst = &sub.instance;
    let q: &Complex = &sub.q;
    let pairing = &b.delta.pairing;
    let mates = pairing.mates();
    let opp = q.opposite_table();
    let ncyc = inst.cycles.cycles.len();
    let mut runs: Vec<Vec<i64>> = vec![Vec::new(); ncyc];
    let mut seen = BTreeSet::new();
    for (f, face) in q.faces.iter().enumerate() {
        for i in 0..face.boundary.len() {
            if seen.contains(&(f, i)) {
                continue;
            }
            // Side orbit with per-step shifts; a step ends its run when δ
            // carries it past the end of the untwisted image's edge.
            let mut steps: Vec<(usize, i64, bool)> = Vec::new();
            let mut cur = (f, i);
            loop {
                seen.insert(cur);
                let img = pairing.image(&mates, cur).expect("paired");
                if let (Some(shift), Some(eps)) = (shift_of(b, cur, img), eps_slot(b, cur)) {
                    let crosses = !matches!(
                        (sub.origin[q.side(img).edge], sub.origin[q.side(eps).edge]),
                        (EdgeOrigin::Sub { original: x, .. }, EdgeOrigin::Sub { original: y, .. }) if x == y
                    );
                    steps.push((side_cycle(b, cur), shift, crosses));
                }
                cur = opp[&img];
                if cur == (f, i) {
                    break;
                }
            }
            let n = steps.len();
            let ends = |k: usize| steps[k].2 || steps[k].0 != steps[(k + 1) % n].0;
            let Some(last) = (0..n).find(|&k| ends(k)) else {
                if let Some(&(c, _, _)) = steps.first() {
                    runs[c].push(steps.iter().map(|x| x.1).sum());
                }
                continue;
            };
            let mut total = 0;
            for k in 1..=n {
                let idx = (last + k) % n;
                total += steps[idx].1;
                if ends(idx) {
                    runs[steps[idx].0].push(total);
                    total = 0;
                }
            }
        }
    }
    (0..ncyc)
        .map(|k| {
            let ell = inst.cycles.cycles[k].len() as i64;
            let first = *runs[k].first()?;
            if runs[k].iter().any(|&r| r != first) || first % ell != 0 {
                return None;
            }
            Some(handedness * first / ell)
        })
        .collect()
}

/// +1 when δ lands one side before ε′ (a positive twist), -1 when one side
/// after; `None` for sticker sides, which carry no shift.
fn shift_of(b: &Build, from: Slot, img: Slot) -> Option<i64> {
    let (g, eps) = eps_slot(b, from)?;
    let len = b.sub.q.face_len(g);
    debug_assert_eq!(img.0, g);
    if len <= 2 {
        // Both neighbours coincide; the twist direction is the edge sign.
        return b.sub.edge_sign(b.sub.q.side(from).edge);
    }
    if img.1 == (eps + len - 1) % len {
        Some(1)
    } else if img.1 == (eps + 1) % len {
        Some(-1)
    } else {
        None
    }
}

/// The Q side that ε′ (the untwisted pairing) assigns to a subedge side.
fn eps_slot(b: &Build, from: Slot) -> Option<Slot> {
    let sub = &b.sub;
    let inst = &sub.instance;
    let SideKind::Sub { pside, k } = sub.kinds[from.0][from.1] else { return None };
    let mates = inst.pairing.mates();
    let (g, j) = inst.pairing.image(&mates, (from.0, pside))?;
    let pe = inst.ball().faces[from.0].boundary[pside].edge;
    let cnt = sub.sub_count[pe];
    Some((g, sub.qpos[g][j][cnt - 1 - k]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistWord {
    /// `(cycle representative, exponent)` in cycle order.
    pub factors: Vec<(String, i64)>,
    pub handedness: i64,
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().enumerate().map(|(i, (_, e))| format!("t{}^{}", i + 1, e)).collect();
        write!(f, "{}", parts.join(" o "))
    }
}

/// Emits τ and checks that every cylinder's winding equals its multiplier.
pub fn twist_word(dec: &CylinderDecomposition) -> Result<TwistWord> {
    for c in &dec.cylinders {
        match c.winding {
            Some(w) if w == c.multiplier => {}
            other => return Err(Error::Winding { cycle: c.cycle.clone(), expected: c.multiplier, found: other.unwrap_or(0) }),
        }
    }
    Ok(TwistWord { factors: dec.cylinders.iter().map(|c| (c.cycle.clone(), c.multiplier)).collect(), handedness: dec.handedness })
}

/// Full Heegaard report for one construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeegaardReport {
    pub genus: usize,
    pub v_curves: Vec<Vec<String>>,
    pub d_curves: Vec<Vec<String>>,
    pub v_basis: bool,
    pub d_basis: bool,
    pub cylinders: Vec<CylinderSummary>,
    pub twist_word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderSummary {
    pub cycle: String,
    pub multiplier: i64,
    pub winding: Option<i64>,
    pub annulus: bool,
}

pub fn heegaard_report(b: &Build) -> Result<HeegaardReport> {
    let s = build_surface(b)?;
    let h = heegaard_diagram(&s);
    let dec = cylinders(&s, b, DEFAULT_HANDEDNESS)?;
    let tw = twist_word(&dec)?;
    Ok(HeegaardReport {
        genus: s.genus,
        v_basis: h.v.is_basis(),
        d_basis: h.d.is_basis(),
        v_curves: h.v.curves,
        d_curves: h.d.curves,
        cylinders: dec
            .cylinders
            .iter()
            .map(|c| CylinderSummary {
                cycle: c.cycle.clone(),
                multiplier: c.multiplier,
                winding: c.winding,
                annulus: c.is_annulus(),
            })
            .collect(),
        twist_word: tw.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::build;
    use crate::examples;

    #[test]
    fn worked_example_surface() {
        let b = build(&examples::tetra_instance()).unwrap();
        let s = build_surface(&b).unwrap();
        assert_eq!(s.genus, 2);
        assert_eq!(s.s.complex.euler(), -2);
        let h = heegaard_diagram(&s);
        assert_eq!(h.v.curves.len(), 2);
        assert_eq!(h.d.curves.len(), 2);
        assert!(h.v.is_basis() && h.d.is_basis(), "{h:?}");
    }

    #[test]
    fn worked_example_cylinders_and_word() {
        let b = build(&examples::tetra_instance()).unwrap();
        let s = build_surface(&b).unwrap();
        let dec = cylinders(&s, &b, DEFAULT_HANDEDNESS).unwrap();
        assert_eq!(dec.cylinders.len(), 3);
        for c in &dec.cylinders {
            assert!(c.is_annulus(), "{} euler {} circles {}", c.cycle, c.euler, c.boundary_circles);
        }
        let caps: usize = dec.cylinders.iter().map(|c| c.caps.len()).sum();
        assert_eq!(caps, s.s.caps.len());
        let w = twist_word(&dec).unwrap();
        // Cycles [AB], [BC] (represented by AC), [CD].
        let exps: Vec<i64> = w.factors.iter().map(|f| f.1).collect();
        assert_eq!(exps, vec![-1, 1, 1]);
        assert_eq!(w.to_string(), "t1^-1 o t2^1 o t3^1");
    }

    #[test]
    fn all_positive_windings_are_one() {
        let b = build(&examples::tetra_all_positive()).unwrap();
        let s = build_surface(&b).unwrap();
        let dec = cylinders(&s, &b, DEFAULT_HANDEDNESS).unwrap();
        assert!(dec.cylinders.iter().all(|c| c.winding == Some(1)));
        let h = heegaard_diagram(&s);
        assert_eq!((h.v.curves.len(), h.d.curves.len()), (2, 2));
    }

    #[test]
    fn single_pair_is_a_torus_diagram() {
        let p = crate::pairing::FacePairing::from_records(
            examples::two_monogons(),
            &[crate::pairing::AlignmentRecord { from: "N".into(), to: "S".into(), offset: 0 }],
        )
        .unwrap();
        for m in [-2, -1, 1, 3] {
            let inst = crate::pairing::Instance::with_values(p.clone(), &[m]).unwrap();
            let b = build(&inst).unwrap();
            let s = build_surface(&b).unwrap();
            assert_eq!(s.genus, 1);
            let h = heegaard_diagram(&s);
            assert_eq!((h.v.curves.len(), h.d.curves.len()), (1, 1));
            let dec = cylinders(&s, &b, DEFAULT_HANDEDNESS).unwrap();
            assert_eq!(dec.cylinders.len(), 1);
            assert_eq!(dec.cylinders[0].caps.len(), s.s.caps.len());
            assert_eq!(dec.cylinders[0].winding, Some(m));
        }
    }
}
