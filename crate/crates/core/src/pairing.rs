//! Orientation-reversing face-pairings, edge cycles and multipliers.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{validate, BallRecord, FacetedBall, Slot, ValidationReport};
use crate::error::{Error, Result};

/// Pairs face `from` with face `to`. Side `i` of `from` (positive order)
/// is carried onto side `(offset - i) mod n` of `to`, traversed backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alignment {
    pub from: usize,
    pub to: usize,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentRecord {
    pub from: String,
    pub to: String,
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePairing {
    pub base: FacetedBall,
    pub pairs: Vec<Alignment>,
}

/// Where a face sits in the pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mate {
    pub pair: usize,
    pub is_from: bool,
    pub other: usize,
    pub offset: usize,
}

impl FacePairing {
    pub fn new(base: FacetedBall, pairs: Vec<Alignment>) -> Self {
        FacePairing { base, pairs }
    }

    pub fn from_records(base: FacetedBall, recs: &[AlignmentRecord]) -> Result<Self> {
        let fidx = base.face_index();
        let mut pairs = Vec::with_capacity(recs.len());
        for r in recs {
            let from =
                *fidx.get(r.from.as_str()).ok_or_else(|| Error::Input(format!("pairing names unknown face {}", r.from)))?;
            let to = *fidx.get(r.to.as_str()).ok_or_else(|| Error::Input(format!("pairing names unknown face {}", r.to)))?;
            let n = base.face_len(from).max(1) as i64;
            pairs.push(Alignment { from, to, offset: r.offset.rem_euclid(n) as usize });
        }
        drop(fidx);
        Ok(FacePairing { base, pairs })
    }

    pub fn to_records(&self) -> Vec<AlignmentRecord> {
        self.pairs
            .iter()
            .map(|a| AlignmentRecord {
                from: self.base.faces[a.from].id.clone(),
                to: self.base.faces[a.to].id.clone(),
                offset: a.offset as i64,
            })
            .collect()
    }

    /// Per face, its pair membership (first pair wins if malformed).
    pub fn mates(&self) -> Vec<Option<Mate>> {
        let mut out = vec![None; self.base.faces.len()];
        for (pi, a) in self.pairs.iter().enumerate() {
            if out[a.from].is_none() {
                out[a.from] = Some(Mate { pair: pi, is_from: true, other: a.to, offset: a.offset });
            }
            if out[a.to].is_none() {
                out[a.to] = Some(Mate { pair: pi, is_from: false, other: a.from, offset: a.offset });
            }
        }
        out
    }

    /// Image of a side slot under the pairing map of its face.
    pub fn image(&self, mates: &[Option<Mate>], slot: Slot) -> Option<Slot> {
        let m = mates[slot.0]?;
        let n = self.base.face_len(slot.0);
        Some((m.other, (m.offset + n - slot.1 % n) % n))
    }
}

pub fn validate_pairing(p: &FacePairing) -> ValidationReport {
    let base = validate(&p.base);
    if !base.is_ok() {
        return base;
    }
    let b = &p.base;
    let mut violations = Vec::new();
    let mut uses = vec![0usize; b.faces.len()];
    for a in &p.pairs {
        uses[a.from] += 1;
        uses[a.to] += 1;
        if a.from == a.to {
            violations.push(format!("face {} is paired with itself", b.faces[a.from].id));
        }
        let (lf, lt) = (b.face_len(a.from), b.face_len(a.to));
        if lf != lt {
            violations
                .push(format!("boundary lengths differ: {} has {}, {} has {}", b.faces[a.from].id, lf, b.faces[a.to].id, lt));
        }
    }
    for (f, &u) in uses.iter().enumerate() {
        match u {
            0 => violations.push(format!("uncovered face {}", b.faces[f].id)),
            1 => {}
            _ => violations.push(format!("face {} appears in {} pairs", b.faces[f].id, u)),
        }
    }
    if violations.is_empty() {
        violations.extend(compatibility_violations(p));
    }
    ValidationReport { violations }
}

/// An edge cycle whose side orbit returns an edge to itself reversed cannot
/// satisfy the compatibility condition.
fn compatibility_violations(p: &FacePairing) -> Vec<String> {
    let b = &p.base;
    let mates = p.mates();
    let opp = b.opposite_table();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut slots: Vec<Slot> = opp.keys().copied().collect();
    slots.sort_unstable();
    for start in slots {
        if seen.contains(&start) {
            continue;
        }
        let mut edges = HashSet::new();
        let mut cur = start;
        let mut bad = None;
        loop {
            seen.insert(cur);
            let e = b.side(cur).edge;
            if !edges.insert(e) {
                bad = Some(e);
            }
            let img = p.image(&mates, cur).expect("validated cover");
            cur = opp[&img];
            if cur == start {
                break;
            }
        }
        if let Some(e) = bad {
            out.push(format!("edge cycle of {} returns the edge reversed (compatibility condition fails)", b.edges[e].id));
        }
    }
    out
}

/// One step of an edge-cycle trace: the side of `from_edge` in `from_face`
/// is carried to the side of `to_edge` in `to_face` by pair `pair`
/// (or its inverse).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hop {
    pub from_edge: String,
    pub from_face: String,
    pub to_edge: String,
    pub to_face: String,
    pub pair: usize,
    pub inverse: bool,
}

impl fmt::Display for Hop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -e{}{}-> {}", self.from_edge, self.pair + 1, if self.inverse { "^-1" } else { "" }, self.to_edge)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCycle {
    /// Edge indices, sorted by edge id.
    pub edges: Vec<usize>,
    /// Representative: the smallest edge id.
    pub rep: String,
    pub trace: Vec<Hop>,
}

impl EdgeCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCycleSet {
    pub cycles: Vec<EdgeCycle>,
    /// Cycle index of each edge of the base ball.
    pub cycle_of: Vec<usize>,
}

impl EdgeCycleSet {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(EdgeCycle::len).collect()
    }

    pub fn by_rep(&self, rep: &str) -> Option<usize> {
        self.cycles.iter().position(|c| c.rep == rep)
    }
}

pub fn edge_cycles(p: &FacePairing) -> EdgeCycleSet {
    let b = &p.base;
    let mates = p.mates();
    let opp = b.opposite_table();
    let slots = b.edge_slots();
    // Union edges along every hop.
    let mut uf = crate::complex::UnionFind::new(b.edges.len());
    for (f, face) in b.faces.iter().enumerate() {
        for i in 0..face.boundary.len() {
            if let Some(img) = p.image(&mates, (f, i)) {
                uf.union(face.boundary[i].edge, b.side(img).edge);
            }
        }
    }
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 0..b.edges.len() {
        members.entry(uf.find(e)).or_default().push(e);
    }
    for (_, mut es) in members {
        es.sort_by(|x, y| b.edges[*x].id.cmp(&b.edges[*y].id));
        groups.insert(b.edges[es[0]].id.as_str(), es);
    }
    let mut cycle_of = vec![0; b.edges.len()];
    let mut cycles = Vec::new();
    for (ci, (rep, es)) in groups.into_iter().enumerate() {
        for &e in &es {
            cycle_of[e] = ci;
        }
        let mut trace = Vec::new();
        let first = slots[es[0]].iter().find(|s| b.side(**s).forward).or(slots[es[0]].first());
        if let Some(&start) = first {
            let mut cur = start;
            while let Some(img) = p.image(&mates, cur) {
                let m = mates[cur.0].expect("mate exists");
                trace.push(Hop {
                    from_edge: b.edges[b.side(cur).edge].id.clone(),
                    from_face: b.faces[cur.0].id.clone(),
                    to_edge: b.edges[b.side(img).edge].id.clone(),
                    to_face: b.faces[img.0].id.clone(),
                    pair: m.pair,
                    inverse: !m.is_from,
                });
                let Some(&next) = opp.get(&img) else { break };
                cur = next;
                if cur == start || trace.len() > 2 * b.total_sides() {
                    break;
                }
            }
        }
        cycles.push(EdgeCycle { edges: es, rep: rep.to_string(), trace });
    }
    EdgeCycleSet { cycles, cycle_of }
}

/// Nonzero integer per edge cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplierFunction {
    pub values: Vec<i64>,
    pub cycle_of: Vec<usize>,
    pub reps: Vec<String>,
}

impl MultiplierFunction {
    pub fn of_edge(&self, e: usize) -> i64 {
        self.values[self.cycle_of[e]]
    }

    pub fn negated(&self) -> Self {
        MultiplierFunction { values: self.values.iter().map(|v| -v).collect(), ..self.clone() }
    }

    pub fn to_map(&self) -> BTreeMap<String, i64> {
        self.reps.iter().cloned().zip(self.values.iter().copied()).collect()
    }
}

/// Attaches multipliers given per edge id. Any edge of a cycle may name it;
/// conflicting values for one cycle are rejected.
pub fn attach_multipliers(base: &FacetedBall, c: &EdgeCycleSet, m: &BTreeMap<String, i64>) -> Result<MultiplierFunction> {
    let eidx = base.edge_index();
    let mut values: Vec<Option<i64>> = vec![None; c.cycles.len()];
    for (id, &v) in m {
        let e = *eidx.get(id.as_str()).ok_or_else(|| Error::Input(format!("multiplier names unknown edge {id}")))?;
        let ci = c.cycle_of[e];
        if v == 0 {
            return Err(Error::ZeroMultiplier(c.cycles[ci].rep.clone()));
        }
        match values[ci] {
            Some(old) if old != v => {
                return Err(Error::Input(format!("conflicting multipliers {old} and {v} for cycle {}", c.cycles[ci].rep)))
            }
            _ => values[ci] = Some(v),
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (ci, v) in values.into_iter().enumerate() {
        out.push(v.ok_or_else(|| Error::IncompleteMultipliers(c.cycles[ci].rep.clone()))?);
    }
    Ok(MultiplierFunction { values: out, cycle_of: c.cycle_of.clone(), reps: c.cycles.iter().map(|x| x.rep.clone()).collect() })
}

/// Interchange form of a full input: ball, pairing and multipliers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    #[serde(flatten)]
    pub ball: BallRecord,
    pub pairing: Vec<AlignmentRecord>,
    #[serde(default)]
    pub multipliers: BTreeMap<String, i64>,
}

/// A validated pairing with its edge cycles and multipliers.
#[derive(Clone, Debug)]
pub struct Instance {
    pub pairing: FacePairing,
    pub cycles: EdgeCycleSet,
    pub mul: MultiplierFunction,
}

impl Instance {
    pub fn new(pairing: FacePairing, multipliers: &BTreeMap<String, i64>) -> Result<Self> {
        validate_pairing(&pairing).into_result()?;
        let cycles = edge_cycles(&pairing);
        let mul = attach_multipliers(&pairing.base, &cycles, multipliers)?;
        Ok(Instance { pairing, cycles, mul })
    }

    /// Builds an instance with multipliers given per cycle index.
    pub fn with_values(pairing: FacePairing, values: &[i64]) -> Result<Self> {
        validate_pairing(&pairing).into_result()?;
        let cycles = edge_cycles(&pairing);
        if values.len() != cycles.cycles.len() {
            return Err(Error::Input(format!("{} multipliers for {} cycles", values.len(), cycles.cycles.len())));
        }
        let m = cycles.cycles.iter().map(|c| c.rep.clone()).zip(values.iter().copied()).collect();
        let mul = attach_multipliers(&pairing.base, &cycles, &m)?;
        Ok(Instance { pairing, cycles, mul })
    }

    pub fn from_record(rec: &InstanceRecord) -> Result<Self> {
        let base = FacetedBall::from_record(&rec.ball)?;
        let pairing = FacePairing::from_records(base, &rec.pairing)?;
        Self::new(pairing, &rec.multipliers)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: InstanceRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&rec)
    }

    pub fn to_record(&self) -> InstanceRecord {
        InstanceRecord { ball: self.pairing.base.to_record(), pairing: self.pairing.to_records(), multipliers: self.mul.to_map() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("instance serializes")
    }

    pub fn negated(&self) -> Self {
        Instance { mul: self.mul.negated(), ..self.clone() }
    }

    pub fn ball(&self) -> &FacetedBall {
        &self.pairing.base
    }
}
