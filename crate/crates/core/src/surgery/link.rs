//! Framed links with rational framings and the two Kirby moves used here.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::AbelianInvariants;

/// A surgery coefficient in Q ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Framing {
    Finite(BigRational),
    Infinite,
}

impl Framing {
    pub fn int(n: i64) -> Self {
        Framing::Finite(BigRational::from_integer(n.into()))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        if q == 0 {
            Framing::Infinite
        } else {
            Framing::Finite(BigRational::new(p.into(), q.into()))
        }
    }

    pub fn zero() -> Self {
        Framing::int(0)
    }

    /// 1/r with 1/0 = ∞ and 1/∞ = 0.
    pub fn recip(&self) -> Self {
        match self {
            Framing::Infinite => Framing::zero(),
            Framing::Finite(r) if r.is_zero() => Framing::Infinite,
            Framing::Finite(r) => Framing::Finite(r.recip()),
        }
    }

    /// r + n; ∞ absorbs.
    pub fn plus(&self, n: &BigRational) -> Self {
        match self {
            Framing::Infinite => Framing::Infinite,
            Framing::Finite(r) => Framing::Finite(r + n),
        }
    }

    pub fn plus_int(&self, n: i64) -> Self {
        self.plus(&BigRational::from_integer(n.into()))
    }

    pub fn neg(&self) -> Self {
        match self {
            Framing::Infinite => Framing::Infinite,
            Framing::Finite(r) => Framing::Finite(-r),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Framing::Infinite)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Framing::Finite(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// (p, q) in lowest terms with q > 0; ∞ is (1, 0).
    pub fn parts(&self) -> (BigInt, BigInt) {
        match self {
            Framing::Infinite => (BigInt::one(), BigInt::zero()),
            Framing::Finite(r) => (r.numer().clone(), r.denom().clone()),
        }
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Framing::Infinite => write!(f, "inf"),
            Framing::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Framing::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Framing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Framing::Infinite);
        }
        let bad = || Error::Parse(format!("bad framing {s:?}; expected p/q, an integer or inf"));
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim().parse::<BigInt>().map_err(|_| bad())?, q.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if q.is_zero() {
            return Ok(Framing::Infinite);
        }
        Ok(Framing::Finite(BigRational::new(p, q)))
    }
}

impl Serialize for Framing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Framing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Face,
    Edge,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    pub framing: Framing,
    pub unknotted: bool,
}

/// A framed link known through its linking matrix and the structural
/// meridian relation: `(k, j)` says `k` is a meridian of `j` lying in a
/// ball that meets no other component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedLink {
    pub components: Vec<Component>,
    pub linking: Vec<Vec<i64>>,
    #[serde(default)]
    pub meridians: Vec<(String, String)>,
    /// Set once a move could not determine the new linking matrix.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub framings_only: bool,
}

impl FramedLink {
    pub fn new(components: Vec<Component>) -> Self {
        let n = components.len();
        FramedLink { components, linking: vec![vec![0; n]; n], meridians: Vec::new(), framings_only: false }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let l: FramedLink = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let bad = l.violations();
        if !bad.is_empty() {
            return Err(Error::Invalid(bad.join("; ")));
        }
        Ok(l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("link serializes")
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.components.iter().position(|c| c.id == id).ok_or_else(|| Error::UnknownComponent(id.to_string()))
    }

    pub fn component(&self, id: &str) -> Result<&Component> {
        Ok(&self.components[self.index(id)?])
    }

    pub fn set_link(&mut self, a: usize, b: usize, lk: i64) {
        self.linking[a][b] = lk;
        self.linking[b][a] = lk;
    }

    pub fn add_meridian(&mut self, k: &str, j: &str) {
        self.meridians.push((k.to_string(), j.to_string()));
    }

    /// Broken invariants: matrix shape and symmetry, and the linking
    /// pattern every meridian relation implies.
    pub fn violations(&self) -> Vec<String> {
        let n = self.components.len();
        let mut out = Vec::new();
        if self.linking.len() != n || self.linking.iter().any(|r| r.len() != n) {
            out.push(format!("linking matrix is not {n}x{n}"));
            return out;
        }
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id.as_str()) {
                out.push(format!("duplicate component {}", c.id));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if self.linking[i][j] != self.linking[j][i] {
                    out.push(format!("linking matrix not symmetric at {},{}", self.components[i].id, self.components[j].id));
                }
            }
        }
        for (k, j) in &self.meridians {
            let (Ok(ki), Ok(ji)) = (self.index(k), self.index(j)) else {
                out.push(format!("meridian relation names unknown component ({k}, {j})"));
                continue;
            };
            if !self.is_isolated_meridian(ki, ji) {
                out.push(format!("{k} is recorded as a meridian of {j} but links other components"));
            }
        }
        out
    }

    fn is_isolated_meridian(&self, k: usize, j: usize) -> bool {
        k != j && self.linking[k][j].abs() == 1 && (0..self.len()).all(|x| x == k || x == j || self.linking[k][x] == 0)
    }

    fn remove(&mut self, i: usize) {
        let id = self.components.remove(i).id;
        self.linking.remove(i);
        for row in &mut self.linking {
            row.remove(i);
        }
        self.meridians.retain(|(k, j)| *k != id && *j != id);
    }

    /// Drops every component with framing ∞; surgery on them is trivial.
    pub fn without_infinite(&self) -> FramedLink {
        let mut out = self.clone();
        while let Some(i) = out.components.iter().position(|c| c.framing.is_infinite()) {
            out.remove(i);
        }
        out
    }

    pub fn negated(&self) -> FramedLink {
        let mut out = self.clone();
        for c in &mut out.components {
            c.framing = c.framing.neg();
        }
        out
    }
}

impl fmt::Display for FramedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| format!("{}({})", c.id, c.framing)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `n` Rolfsen twists about the unknotted component `j`.
///
/// The linking matrix is updated only when every other component links
/// `j` at most once, where the twisted link is again determined by the
/// matrix; otherwise framings are updated and the link is marked
/// framings-only.
pub fn rolfsen_twist(l: &FramedLink, j: &str, n: i64) -> Result<FramedLink> {
    let ji = l.index(j)?;
    if !l.components[ji].unknotted {
        return Err(Error::RolfsenPrecondition(format!("{j} is not marked unknotted")));
    }
    let mut out = l.clone();
    if n == 0 {
        return Ok(out);
    }
    let r = &l.components[ji].framing;
    out.components[ji].framing = r.recip().plus_int(n).recip();
    let lk = &l.linking[ji];
    for (k, c) in out.components.iter_mut().enumerate() {
        if k != ji {
            c.framing = c.framing.plus_int(n * lk[k] * lk[k]);
        }
    }
    let chain = lk.iter().all(|x| x.abs() <= 1);
    if chain {
        for a in 0..l.len() {
            for b in 0..l.len() {
                if a != ji && b != ji && a != b {
                    out.linking[a][b] = l.linking[a][b] + n * lk[a] * lk[b];
                }
            }
        }
        let kept: Vec<(String, String)> = out
            .meridians
            .iter()
            .filter(|(k, m)| out.is_isolated_meridian(out.index(k).unwrap(), out.index(m).unwrap()))
            .cloned()
            .collect();
        out.meridians = kept;
    } else {
        out.framings_only = true;
    }
    Ok(out)
}

/// Removes the meridian `k` of some component `j` with integer framing
/// `n`; `j` gets framing `n - 1/r`.
pub fn slam_dunk(l: &FramedLink, k: &str) -> Result<FramedLink> {
    let ki = l.index(k)?;
    let Some((_, j)) = l.meridians.iter().find(|(a, _)| a == k) else {
        return Err(Error::SlamDunkPrecondition(format!("{k} is not recorded as a meridian")));
    };
    let ji = l.index(j)?;
    if !l.is_isolated_meridian(ki, ji) {
        return Err(Error::SlamDunkPrecondition(format!("{k} links components other than {j}")));
    }
    let Some(n) = l.components[ji].framing.as_integer() else {
        return Err(Error::SlamDunkPrecondition(format!("{j} has non-integer framing {}", l.components[ji].framing)));
    };
    let r = &l.components[ki].framing;
    let mut out = l.clone();
    out.components[ji].framing = r.recip().neg().plus(&BigRational::from_integer(n));
    out.remove(ki);
    Ok(out)
}

/// First homology of the surgered manifold: row i is `p_i` on the
/// diagonal and `q_i lk(i, j)` elsewhere, for framing `p_i/q_i`.
pub fn h1_from_link(l: &FramedLink) -> Result<AbelianInvariants> {
    if let Some(c) = l.components.iter().find(|c| c.framing.is_infinite()) {
        return Err(Error::InfiniteFraming(c.id.clone()));
    }
    if l.framings_only {
        return Err(Error::Invalid("linking matrix unknown after a framings-only move".into()));
    }
    let n = l.len();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let (p, q) = l.components[i].framing.parts();
            (0..n).map(|j| if i == j { p.clone() } else { &q * BigInt::from(l.linking[i][j]) }).collect()
        })
        .collect();
    Ok(AbelianInvariants::from_matrix(&rows, n))
}

/// A twist that sends `j`'s framing to ∞, if `j` has framing `1/t`.
fn clearing_twist(l: &FramedLink, i: usize) -> Option<i64> {
    let c = &l.components[i];
    if c.kind != ComponentKind::Edge || !c.unknotted || l.linking[i].iter().any(|x| x.abs() > 1) {
        return None;
    }
    let Framing::Finite(r) = &c.framing else { return None };
    if r.is_zero() || !r.numer().abs().is_one() {
        return None;
    }
    let t: i64 = r.recip().to_integer().try_into().ok()?;
    Some(-t)
}

/// Slam-dunks every recorded meridian that can go, then clears edge
/// components with framing ±1/t by Rolfsen twists, deleting ∞ components throughout.
/// Returns the simplified link and the moves applied.
pub fn simplify(l: &FramedLink) -> Result<(FramedLink, Vec<String>)> {
    let mut cur = l.without_infinite();
    let mut moves = Vec::new();
    loop {
        let dunk = cur.meridians.iter().find_map(|(k, j)| {
            let (ki, ji) = (cur.index(k).ok()?, cur.index(j).ok()?);
            (cur.is_isolated_meridian(ki, ji) && cur.components[ji].framing.as_integer().is_some()).then(|| k.clone())
        });
        if let Some(k) = dunk {
            cur = slam_dunk(&cur, &k)?.without_infinite();
            moves.push(format!("slam-dunk {k}"));
            continue;
        }
        let twist = (0..cur.len()).find_map(|i| clearing_twist(&cur, i).map(|n| (cur.components[i].id.clone(), n)));
        if let Some((j, n)) = twist {
            cur = rolfsen_twist(&cur, &j, n)?.without_infinite();
            moves.push(format!("rolfsen {j} {n}"));
            continue;
        }
        return Ok((cur, moves));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(id: &str, f: Framing) -> Component {
        Component { id: id.into(), kind: ComponentKind::Other, framing: f, unknotted: true }
    }

    #[test]
    fn framing_parse_and_print() {
        for s in ["3", "-2/5", "inf", "0"] {
            assert_eq!(s.parse::<Framing>().unwrap().to_string(), s);
        }
        assert_eq!("4/2".parse::<Framing>().unwrap(), Framing::int(2));
        assert_eq!("1/0".parse::<Framing>().unwrap(), Framing::Infinite);
        assert!("x".parse::<Framing>().is_err());
    }

    #[test]
    fn rolfsen_examples() {
        let mut l = FramedLink::new(vec![comp("J", Framing::int(-1)), comp("K", Framing::int(5))]);
        l.set_link(0, 1, 1);
        let t = rolfsen_twist(&l, "J", 1).unwrap();
        assert_eq!(t.components[0].framing, Framing::Infinite);
        assert_eq!(t.components[1].framing, Framing::int(6));
        assert_eq!(rolfsen_twist(&l, "J", 0).unwrap(), l);
        l.components[0].unknotted = false;
        assert!(matches!(rolfsen_twist(&l, "J", 1), Err(Error::RolfsenPrecondition(_))));
    }

    #[test]
    fn slam_dunk_examples() {
        let cases = [
            (2, Framing::ratio(1, 3), Framing::int(-1)),
            (4, Framing::Infinite, Framing::int(4)),
            (0, Framing::ratio(-1, 7), Framing::int(7)),
        ];
        for (n, r, want) in cases {
            let mut l = FramedLink::new(vec![comp("J", Framing::int(n)), comp("K", r)]);
            l.set_link(0, 1, 1);
            l.add_meridian("K", "J");
            let s = slam_dunk(&l, "K").unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s.components[0].framing, want);
        }
        let l = FramedLink::new(vec![comp("J", Framing::int(1)), comp("K", Framing::int(1))]);
        assert!(matches!(slam_dunk(&l, "K"), Err(Error::SlamDunkPrecondition(_))));
    }

    #[test]
    fn homology_examples() {
        for p in 1..8 {
            let l = FramedLink::new(vec![comp("U", Framing::int(p))]);
            assert_eq!(h1_from_link(&l).unwrap().order(), Some(BigInt::from(p)));
        }
        let mut chain = FramedLink::new(vec![comp("A", Framing::int(2)), comp("B", Framing::int(2))]);
        chain.set_link(0, 1, 1);
        assert_eq!(h1_from_link(&chain).unwrap().to_string(), "Z/3");
        let l = FramedLink::new(vec![comp("U", Framing::Infinite)]);
        assert!(matches!(h1_from_link(&l), Err(Error::InfiniteFraming(_))));
    }

    #[test]
    fn json_round_trip() {
        let mut l = FramedLink::new(vec![comp("J", Framing::int(0)), comp("K", Framing::ratio(-2, 3))]);
        l.set_link(0, 1, 1);
        l.add_meridian("K", "J");
        let back = FramedLink::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
    }
}
