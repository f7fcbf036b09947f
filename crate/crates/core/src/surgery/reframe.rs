//! Changing the framings of edge components: blackboard framings plus
//! reciprocal multipliers, and arbitrary rational framings realized by
//! attaching scallops.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairing::{edge_cycles, FacePairing, Instance};
use crate::surgery::consum::connected_sum;
use crate::surgery::lens::{ceiling_expansion, multipliers_from_entries};
use crate::surgery::link::{ComponentKind, FramedLink, Framing};
use crate::surgery::reflection::fan;

/// Sets face components to 0 and each edge component to its blackboard
/// framing plus 1/mul.
pub fn bilink_framings(l: &FramedLink, blackboard: &BTreeMap<String, i64>, mul: &BTreeMap<String, i64>) -> Result<FramedLink> {
    let mut out = l.clone();
    for c in &mut out.components {
        match c.kind {
            ComponentKind::Face => c.framing = Framing::zero(),
            ComponentKind::Edge => {
                let b = *blackboard.get(&c.id).ok_or_else(|| Error::MissingBlackboard(c.id.clone()))?;
                let m = *mul.get(&c.id).ok_or_else(|| Error::Input(format!("no multiplier for component {}", c.id)))?;
                if m == 0 {
                    return Err(Error::ZeroMultiplier(c.id.clone()));
                }
                c.framing = Framing::ratio(1, m).plus_int(b);
            }
            ComponentKind::Other => {}
        }
    }
    Ok(out)
}

/// What happened to one edge cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReframeStep {
    pub cycle: String,
    pub alpha: String,
    pub multiplier: i64,
    /// Ceiling expansion of 1 - alpha or 1 + alpha, when a scallop is used.
    pub expansion: Option<Vec<i64>>,
    pub scallop: Option<Vec<i64>>,
    /// `b + 1/mul - s(1 - s alpha)` written out, and whether it equals
    /// `b + alpha`.
    pub identity: String,
    pub identity_holds: bool,
}

#[derive(Clone, Debug)]
pub struct Reframed {
    pub instance: Instance,
    pub steps: Vec<ReframeStep>,
}

fn show(r: &BigRational) -> String {
    Framing::Finite(r.clone()).to_string()
}

/// Scallop attached along its edge `x1_1` to realize framing change
/// `alpha` with attached multiplier `s`: a handle face carrying the
/// attachment edge (label s) and a compensating edge (label -s), then the
/// scallop faces, all spokes labelled s. The first scallop label is one
/// less than usual because its face also meets the handle's spoke.
pub fn reframing_scallop(s: i64, m: &[i64]) -> Result<Instance> {
    let mut faces = vec![vec![s, -s]];
    faces.extend(m.iter().enumerate().map(|(i, &x)| vec![s * if i == 0 { x - 1 } else { x }]));
    fan(&faces, &vec![s; m.len()])?.instance()
}

/// Realizes rational framing changes `alpha` (keyed by any edge of the
/// cycle) on every edge cycle of `p`. Reciprocals of integers become the
/// multiplier; other values get a scallop attached along the cycle.
pub fn attach_scallops(p: &FacePairing, alpha: &BTreeMap<String, BigRational>) -> Result<Reframed> {
    let cycles = edge_cycles(p);
    let eidx = p.base.edge_index();
    let mut per_cycle: Vec<Option<BigRational>> = vec![None; cycles.cycles.len()];
    for (id, a) in alpha {
        let e = *eidx.get(id.as_str()).ok_or_else(|| Error::Reframe(format!("unknown edge {id}")))?;
        let ci = cycles.cycle_of[e];
        if per_cycle[ci].as_ref().is_some_and(|old| old != a) {
            return Err(Error::Reframe(format!("conflicting values for cycle {}", cycles.cycles[ci].rep)));
        }
        per_cycle[ci] = Some(a.clone());
    }
    let mut mul = BTreeMap::new();
    let mut steps = Vec::new();
    let mut attach = Vec::new();
    for (ci, a) in per_cycle.iter().enumerate() {
        let rep = &cycles.cycles[ci].rep;
        let a = a.as_ref().ok_or_else(|| Error::Reframe(format!("no framing change for cycle {rep}")))?;
        if a.is_zero() {
            return Err(Error::Reframe(format!(
                "alpha = 0 on cycle {rep}: the scallop would degenerate (framing inf components are deleted instead)"
            )));
        }
        let recip = a.recip();
        if recip.is_integer() {
            let m = recip.to_integer().to_i64().ok_or_else(|| Error::Reframe("multiplier out of range".into()))?;
            mul.insert(rep.clone(), m);
            steps.push(ReframeStep {
                cycle: rep.clone(),
                alpha: show(a),
                multiplier: m,
                expansion: None,
                scallop: None,
                identity: format!("b + 1/{m}"),
                identity_holds: Framing::ratio(1, m) == Framing::Finite(a.clone()),
            });
            continue;
        }
        let s: i64 = if a.is_positive() { -1 } else { 1 };
        let one = BigRational::one();
        let x = if s == 1 { &one - a } else { &one + a };
        let entries = ceiling_expansion(&x)?;
        let m = multipliers_from_entries(&entries);
        // b + 1/s - s x = b + alpha
        let lhs = BigRational::from_integer(s.into()).recip() - BigRational::from_integer(s.into()) * &x;
        steps.push(ReframeStep {
            cycle: rep.clone(),
            alpha: show(a),
            multiplier: s,
            expansion: Some(entries),
            scallop: Some(m.clone()),
            identity: format!("b + ({s}) - ({s})({}) = b + {}", show(&x), show(&lhs)),
            identity_holds: &lhs == a,
        });
        mul.insert(rep.clone(), s);
        attach.push((rep.clone(), s, m));
    }
    drop(eidx);
    let mut inst = Instance::new(p.clone(), &mul)?;
    for (rep, s, m) in attach {
        inst = connected_sum(&inst, &rep, &reframing_scallop(s, &m)?, "x1_1")?;
    }
    Ok(Reframed { instance: inst, steps })
}
