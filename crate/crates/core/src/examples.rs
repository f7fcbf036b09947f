//! Small named balls and pairings used by tests, the CLI and the generators.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{Complex, EdgeCell, FaceCell, FacetedBall, SideRef};
use crate::pairing::{AlignmentRecord, FacePairing, Instance};

/// Builds a ball from faces given as vertex cycles. Edges are created on
/// first use with id `uv` (endpoints in sorted order), so the faces must
/// not repeat an unordered vertex pair other than as the two sides of one
/// edge.
pub fn polyhedron(faces: &[(&str, &[&str])]) -> FacetedBall {
    let mut vertices: Vec<String> = Vec::new();
    let mut vidx: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<EdgeCell> = Vec::new();
    let mut eidx: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out_faces = Vec::new();
    let mut vert = |v: &str, vertices: &mut Vec<String>| -> usize {
        *vidx.entry(v.to_string()).or_insert_with(|| {
            vertices.push(v.to_string());
            vertices.len() - 1
        })
    };
    for (id, cycle) in faces {
        let ids: Vec<usize> = cycle.iter().map(|v| vert(v, &mut vertices)).collect();
        let n = ids.len();
        let mut boundary = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (ids[i], ids[(i + 1) % n]);
            let (lo, hi) = if vertices[a] <= vertices[b] { (a, b) } else { (b, a) };
            let e = *eidx.entry((lo, hi)).or_insert_with(|| {
                edges.push(EdgeCell { id: format!("{}{}", vertices[lo], vertices[hi]), tail: lo, head: hi });
                edges.len() - 1
            });
            boundary.push(SideRef::new(e, edges[e].tail == a));
        }
        out_faces.push(FaceCell { id: id.to_string(), boundary });
    }
    FacetedBall::from_complex(Complex { vertices, edges, faces: out_faces })
}

/// Tetrahedron ABCD; every stored face cycle is the induced boundary
/// orientation.
pub fn tetrahedron() -> FacetedBall {
    polyhedron(&[("ABC", &["A", "B", "C"]), ("ABD", &["A", "D", "B"]), ("ACD", &["A", "C", "D"]), ("BCD", &["B", "D", "C"])])
}

/// ABC to ABD by reflection in AB, ACD to BCD by reflection in CD.
pub fn tetra_pairing() -> FacePairing {
    FacePairing::from_records(
        tetrahedron(),
        &[
            AlignmentRecord { from: "ABC".into(), to: "ABD".into(), offset: 2 },
            AlignmentRecord { from: "ACD".into(), to: "BCD".into(), offset: 2 },
        ],
    )
    .expect("tetrahedron pairing")
}

fn tetra_with(ab: i64, bc: i64, cd: i64) -> Instance {
    let m: BTreeMap<String, i64> = [("AB", ab), ("BC", bc), ("CD", cd)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Instance::new(tetra_pairing(), &m).expect("tetrahedron instance")
}

/// The worked tetrahedron example: mul([AB]) = -1, mul([BC]) = mul([CD]) = 1.
pub fn tetra_instance() -> Instance {
    tetra_with(-1, 1, 1)
}

pub fn tetra_all_positive() -> Instance {
    tetra_with(1, 1, 1)
}

pub fn tetra_all_negative() -> Instance {
    tetra_with(-1, -1, -1)
}

/// Two monogon hemispheres sharing a loop edge.
pub fn two_monogons() -> FacetedBall {
    FacetedBall::build(&["v"], &[("e", "v", "v")], &[("N", &[("e", 1)]), ("S", &[("e", -1)])]).expect("monogons")
}

/// Two digons glued along their boundary.
pub fn two_digons() -> FacetedBall {
    FacetedBall::build(
        &["a", "b"],
        &[("x", "a", "b"), ("y", "b", "a")],
        &[("N", &[("x", 1), ("y", 1)]), ("S", &[("y", -1), ("x", -1)])],
    )
    .expect("digons")
}

pub fn square_pyramid() -> FacetedBall {
    polyhedron(&[
        ("base", &["a", "d", "c", "b"]),
        ("s0", &["a", "b", "t"]),
        ("s1", &["b", "c", "t"]),
        ("s2", &["c", "d", "t"]),
        ("s3", &["d", "a", "t"]),
    ])
}

pub fn cube() -> FacetedBall {
    polyhedron(&[
        ("bottom", &["v0", "v3", "v2", "v1"]),
        ("top", &["v4", "v5", "v6", "v7"]),
        ("s01", &["v0", "v1", "v5", "v4"]),
        ("s12", &["v1", "v2", "v6", "v5"]),
        ("s23", &["v2", "v3", "v7", "v6"]),
        ("s30", &["v3", "v0", "v4", "v7"]),
    ])
}

pub fn octahedron() -> FacetedBall {
    polyhedron(&[
        ("n1", &["N", "e1", "e2"]),
        ("n2", &["N", "e2", "e3"]),
        ("n3", &["N", "e3", "e4"]),
        ("n4", &["N", "e4", "e1"]),
        ("s1", &["S", "e2", "e1"]),
        ("s2", &["S", "e3", "e2"]),
        ("s3", &["S", "e4", "e3"]),
        ("s4", &["S", "e1", "e4"]),
    ])
}

pub fn bipyramid() -> FacetedBall {
    polyhedron(&[
        ("n1", &["N", "e1", "e2"]),
        ("n2", &["N", "e2", "e3"]),
        ("n3", &["N", "e3", "e1"]),
        ("s1", &["S", "e2", "e1"]),
        ("s2", &["S", "e3", "e2"]),
        ("s3", &["S", "e1", "e3"]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;

    #[test]
    fn named_balls_are_valid() {
        for b in [tetrahedron(), two_monogons(), two_digons(), square_pyramid(), cube(), octahedron(), bipyramid()] {
            let r = validate(&b);
            assert!(r.is_ok(), "{r}");
        }
    }
}
