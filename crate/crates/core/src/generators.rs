//! Seeded random instances for property runs.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::complex::FacetedBall;
use crate::examples;
use crate::pairing::{validate_pairing, Alignment, FacePairing, Instance};
use crate::surgery::{Component, ComponentKind, FramedLink, Framing};

/// Balls the generators draw from; all have at most eight faces.
pub fn base_balls() -> Vec<(&'static str, FacetedBall)> {
    vec![
        ("tetrahedron", examples::tetrahedron()),
        ("cube", examples::cube()),
        ("octahedron", examples::octahedron()),
        ("bipyramid", examples::bipyramid()),
        ("two_monogons", examples::two_monogons()),
        ("two_digons", examples::two_digons()),
    ]
}

/// A random multiplier in [-bound, bound] without zero.
pub fn random_multiplier<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    let m = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// Random matching of equal-length faces with random offsets. Returns the
/// first candidate that passes validation, or `None` after `tries`.
pub fn random_pairing<R: Rng>(rng: &mut R, ball: &FacetedBall, tries: usize) -> Option<FacePairing> {
    for _ in 0..tries {
        let mut faces: Vec<usize> = (0..ball.faces.len()).collect();
        faces.shuffle(rng);
        let mut pairs = Vec::new();
        let mut ok = true;
        while let Some(f) = faces.pop() {
            let n = ball.face_len(f);
            let Some(pos) = faces.iter().position(|&g| ball.face_len(g) == n) else {
                ok = false;
                break;
            };
            let g = faces.remove(pos);
            pairs.push(Alignment { from: f, to: g, offset: rng.gen_range(0..n) });
        }
        if !ok {
            continue;
        }
        let p = FacePairing::new(ball.clone(), pairs);
        if validate_pairing(&p).is_ok() {
            return Some(p);
        }
    }
    None
}

/// One random instance with multipliers in [-bound, bound] without zero.
pub fn random_instance<R: Rng>(rng: &mut R, bound: i64) -> Instance {
    let balls = base_balls();
    loop {
        let (_, ball) = balls.choose(rng).expect("nonempty");
        let Some(p) = random_pairing(rng, ball, 50) else { continue };
        let n = crate::pairing::edge_cycles(&p).cycles.len();
        let values: Vec<i64> = (0..n).map(|_| random_multiplier(rng, bound)).collect();
        if let Ok(inst) = Instance::with_values(p, &values) {
            return inst;
        }
    }
}

pub fn random_instances(seed: u64, count: usize, bound: i64) -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, bound)).collect()
}

/// Scallop multipliers: positive ends, non-negative interior, at most
/// `max_len` entries of size at most `bound`.
pub fn random_scallop<R: Rng>(rng: &mut R, max_len: usize, bound: i64) -> Vec<i64> {
    let k = rng.gen_range(1..=max_len);
    (0..k).map(|i| if i == 0 || i == k - 1 { rng.gen_range(1..=bound) } else { rng.gen_range(0..=bound) }).collect()
}

/// Chain of unknots, each linking the next once with a random sign.
/// Framings are p/q with |p| <= `bound` and 1 <= q <= `bound`; about a
/// third are integers so that slam-dunks apply. Both ends are recorded
/// as meridians of their neighbours.
pub fn random_chain_link<R: Rng>(rng: &mut R, max_len: usize, bound: i64) -> FramedLink {
    let k = rng.gen_range(2..=max_len);
    let comps = (0..k)
        .map(|i| {
            let p = rng.gen_range(-bound..=bound);
            let q = if rng.gen_bool(0.35) { 1 } else { rng.gen_range(1..=bound) };
            Component { id: format!("K{i}"), kind: ComponentKind::Other, framing: Framing::ratio(p, q), unknotted: true }
        })
        .collect();
    let mut l = FramedLink::new(comps);
    for i in 0..k - 1 {
        l.set_link(i, i + 1, if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    l.add_meridian(&format!("K{}", k - 1), &format!("K{}", k - 2));
    if k > 2 {
        l.add_meridian("K0", "K1");
    }
    l
}
