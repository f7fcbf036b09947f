use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use bitwist::complex::barycentric;
use bitwist::engine::build;
use bitwist::generators::{random_chain_link, random_instance, random_scallop};
use bitwist::heegaard::{build_surface, cylinders, heegaard_report};
use bitwist::invariants::{h1, pi1, AbelianInvariants, GroupPresentation};
use bitwist::surgery::{
    attach_scallops, connected_sum_via_bridge, edge_component, h1_from_link, lens_from_multipliers, multipliers_from_lens,
    reflection_link, rolfsen_twist, scallop, simplify, slam_dunk, FramedLink, Framing,
};
use bitwist::Instance;

fn instance(seed: u64) -> Instance {
    random_instance(&mut StdRng::seed_from_u64(seed), 3)
}

fn engine_h1(inst: &Instance) -> AbelianInvariants {
    let b = build(inst).unwrap();
    assert!(b.certificate.pass, "{:?}", b.certificate.reasons);
    h1(&pi1(&b.quotient))
}

/// Homology of a link after a move, deleting components framed ∞.
fn link_h1(l: &FramedLink) -> AbelianInvariants {
    h1_from_link(&l.without_infinite()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_instances_are_manifolds(seed in any::<u64>()) {
        let inst = instance(seed);
        let b = build(&inst).unwrap();
        prop_assert!(b.certificate.pass, "{:?}", b.certificate.reasons);
        let (v, e, f, c3) = b.quotient.cell_vector();
        prop_assert_eq!((v, c3), (1, 1));
        prop_assert_eq!(e, f);
        prop_assert_eq!(f, inst.pairing.pairs.len());
    }

    #[test]
    fn subdivision_counts(seed in any::<u64>()) {
        let inst = instance(seed);
        let s = barycentric(inst.ball()).unwrap();
        let sides: usize = inst.ball().faces.iter().map(|f| f.boundary.len()).sum();
        prop_assert_eq!(s.triangle_count(), 2 * sides);
        prop_assert_eq!(s.euler(), 2);
    }

    #[test]
    fn negating_multipliers_keeps_cells_and_homology(seed in any::<u64>()) {
        let inst = instance(seed);
        let (a, b) = (build(&inst).unwrap(), build(&inst.negated()).unwrap());
        prop_assert_eq!(a.quotient.cell_vector(), b.quotient.cell_vector());
        prop_assert_eq!(h1(&pi1(&a.quotient)), h1(&pi1(&b.quotient)));
    }

    #[test]
    fn heegaard_diagrams_are_bases_and_windings_match(seed in any::<u64>()) {
        let inst = instance(seed);
        let b = build(&inst).unwrap();
        let r = heegaard_report(&b).unwrap();
        let pairs = inst.pairing.pairs.len();
        prop_assert_eq!(r.genus, pairs);
        prop_assert_eq!((r.v_curves.len(), r.d_curves.len()), (pairs, pairs));
        prop_assert!(r.v_basis && r.d_basis);
        prop_assert_eq!(r.cylinders.len(), inst.cycles.cycles.len());
        for c in &r.cylinders {
            prop_assert_eq!(c.winding, Some(c.multiplier), "cycle {}", &c.cycle);
        }
    }

    #[test]
    fn cylinder_caps_partition_the_surface(seed in any::<u64>()) {
        let inst = instance(seed);
        let b = build(&inst).unwrap();
        let s = build_surface(&b).unwrap();
        let dec = cylinders(&s, &b, 1).unwrap();
        let mut caps: Vec<usize> = dec.cylinders.iter().flat_map(|c| c.caps.iter().copied()).collect();
        caps.sort_unstable();
        prop_assert_eq!(caps, (0..s.s.complex.faces.len()).collect::<Vec<_>>());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let inst = instance(seed);
        let back = Instance::from_json(&inst.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), inst.to_json());
    }

    #[test]
    fn homology_ignores_presentation_relabelling(seed in any::<u64>()) {
        let p = pi1(&build(&instance(seed)).unwrap().quotient);
        let mut rng = StdRng::seed_from_u64(seed);
        let n = p.generators.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.reverse();
        let relators = p
            .relators
            .iter()
            .map(|w| {
                let mut w: Vec<(usize, i64)> = w.iter().map(|&(g, e)| (perm[g], e)).collect();
                if !w.is_empty() {
                    let k = rng.gen_range(0..w.len());
                    w.rotate_left(k);
                }
                if rng.gen_bool(0.5) {
                    w = w.iter().rev().map(|&(g, e)| (g, -e)).collect();
                }
                w
            })
            .collect();
        let mangled = GroupPresentation { generators: p.generators.clone(), relators };
        prop_assert_eq!(h1(&mangled), h1(&p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kirby_moves_keep_homology(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = random_chain_link(&mut rng, 5, 9);
        let before = link_h1(&l);
        let j = l.components[rng.gen_range(0..l.len())].id.clone();
        let n = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        let twisted = rolfsen_twist(&l, &j, n).unwrap();
        prop_assert!(!twisted.framings_only);
        prop_assert_eq!(link_h1(&twisted), before.clone(), "twist {} {} on {}", j, n, l);
        for (k, _) in l.meridians.clone() {
            if let Ok(d) = slam_dunk(&l, &k) {
                prop_assert_eq!(link_h1(&d), before.clone(), "slam-dunk {} on {}", k, l);
            }
        }
    }

    #[test]
    fn framings_print_and_parse(p in -50i64..50, q in 1i64..50) {
        let f = Framing::ratio(p, q);
        prop_assert_eq!(f.to_string().parse::<Framing>().unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lens_round_trip(p in 1i64..60, q in 1i64..60) {
        prop_assume!(q <= p && num_integer::gcd(p, q) == 1);
        let m = multipliers_from_lens(p, q).unwrap();
        let back = lens_from_multipliers(&m.m).unwrap();
        prop_assert_eq!((back.p, back.q), (p, q));
    }

    #[test]
    fn scallops_realize_their_lens_space(seed in any::<u64>()) {
        let m = random_scallop(&mut StdRng::seed_from_u64(seed), 3, 4);
        let lens = lens_from_multipliers(&m).unwrap();
        let d = scallop(&m).unwrap();
        let h = engine_h1(&d.instance().unwrap());
        prop_assert_eq!(h.order(), Some(BigInt::from(lens.p)));
        let (simple, _) = simplify(&reflection_link(&d, 1).unwrap()).unwrap();
        prop_assert_eq!(h1_from_link(&simple).unwrap(), h);
    }

    #[test]
    fn connected_sums_add_homology(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = scallop(&random_scallop(&mut rng, 2, 4)).unwrap().instance().unwrap();
        let b = scallop(&random_scallop(&mut rng, 2, 4)).unwrap().instance().unwrap();
        let s = connected_sum_via_bridge(&a, "x1", &b, "x1").unwrap();
        prop_assert_eq!(engine_h1(&s), engine_h1(&a).sum(&engine_h1(&b)));
    }

    #[test]
    fn reframing_matches_the_link(seed in any::<u64>(), num in -6i64..=6, den in 1i64..=6) {
        prop_assume!(num != 0);
        let mut rng = StdRng::seed_from_u64(seed);
        let d = scallop(&random_scallop(&mut rng, 2, 3)).unwrap();
        let p = d.instance().unwrap().pairing;
        let a = BigRational::new(num.into(), den.into());
        let mut link = reflection_link(&d, 1).unwrap();
        let mut alpha = BTreeMap::new();
        for (e, &lab) in &d.labels {
            let v = if e == "x1" { a.clone() } else { BigRational::new(1.into(), lab.into()) };
            let i = link.index(&edge_component(e)).unwrap();
            link.components[i].framing = Framing::Finite(v.clone());
            alpha.insert(e.clone(), v);
        }
        let r = attach_scallops(&p, &alpha).unwrap();
        prop_assert!(r.steps.iter().all(|s| s.identity_holds));
        prop_assert_eq!(engine_h1(&r.instance), h1_from_link(&link).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Each cylinder should be an annulus. Single-cycle pairings give one
    /// cylinder covering the whole closed surface, so this cannot hold in
    /// general; kept to track the gap.
    #[test]
    #[ignore = "cylinders of single-cycle and some multi-cycle pairings are not annuli"]
    fn random_cylinders_are_annuli(seed in any::<u64>()) {
        let inst = instance(seed);
        let b = build(&inst).unwrap();
        let s = build_surface(&b).unwrap();
        let dec = cylinders(&s, &b, 1).unwrap();
        for c in &dec.cylinders {
            prop_assert!(c.is_annulus(), "cycle {} euler {} circles {}", c.cycle, c.euler, c.boundary_circles);
        }
    }
}
