//! Independent recomputations of values the library derives.

use std::sync::Arc;

use proptest::prelude::*;
use stone_core::conformance::{
    automorphisms, bounded_closure, locale_morphisms, minimize, small_actions, small_frames, small_spaces,
    DownsetInstance, Family, InstanceGenerator,
};
use stone_core::document::{galois_document, Instance, InstanceDocument};
use stone_core::lattice::natural_posets;
use stone_core::{FiniteLattice, FinitePoset};

/// Join-irreducibles: elements with exactly one lower cover.
fn join_irreducibles(l: &FiniteLattice) -> Vec<usize> {
    l.elements()
        .filter(|&x| {
            l.elements()
                .filter(|&y| y != x && l.leq(y, x) && !l.elements().any(|z| z != x && z != y && l.leq(y, z) && l.leq(z, x)))
                .count()
                == 1
        })
        .collect()
}

/// Monotone maps `from → to` by brute force over all functions.
fn monotone_count(from: &FinitePoset, to_size: usize, to_leq: impl Fn(usize, usize) -> bool) -> usize {
    let n = from.size();
    let total = to_size.pow(n as u32);
    (0..total)
        .filter(|&code| {
            let f: Vec<usize> = (0..n).map(|k| code / to_size.pow(k as u32) % to_size).collect();
            (0..n).all(|a| (0..n).all(|b| !from.leq(a, b) || to_leq(f[a], f[b])))
        })
        .count()
}

#[test]
fn locale_morphisms_match_monotone_point_maps() {
    // a frame is the down-sets of its join-irreducibles, so its maps into
    // O(X) correspond to monotone maps X → J(L)
    for l in small_frames(5) {
        let j = join_irreducibles(&l);
        for x in small_spaces(3) {
            let expected = monotone_count(x.order(), j.len(), |a, b| l.leq(j[a], j[b]));
            let found = locale_morphisms(&l, &x).unwrap().len();
            assert_eq!(found, expected, "frame of size {} into {} points", l.size(), x.len());
        }
    }
}

#[test]
fn frame_census() {
    // distributive lattices with 1..=6 elements: 1, 1, 1, 2, 3, 5
    let counts: Vec<usize> = (1..=6).map(|n| small_frames(n).len()).collect();
    let per_size: Vec<usize> = counts.iter().scan(0, |prev, &c| {
        let d = c - *prev;
        *prev = c;
        Some(d)
    }).collect();
    assert_eq!(per_size, [1, 1, 1, 2, 3, 5]);
}

#[test]
fn automorphism_groups_of_small_posets() {
    let antichain = FinitePoset::antichain(4);
    assert_eq!(automorphisms(&antichain).len(), 24);
    assert_eq!(automorphisms(&FinitePoset::chain(4)).len(), 1);
    let v = FinitePoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap();
    assert_eq!(automorphisms(&v).len(), 2);
    let three_cycle = vec![1, 2, 0];
    let group = bounded_closure(3, &[&three_cycle], 6).unwrap();
    assert_eq!(group.len(), 3);
    let swap = vec![1, 0, 2];
    assert_eq!(bounded_closure(3, &[&three_cycle, &swap], 6).unwrap().len(), 6);
    assert!(bounded_closure(3, &[&three_cycle, &swap], 5).is_none());
}

#[test]
fn action_census_includes_every_subgroup() {
    // subgroups of S3 acting on the 3-antichain: 1 + 3 + 1 + 1
    let on_three: usize = small_actions(3, 6)
        .iter()
        .filter(|a| a.space().len() == 3 && a.space().order().covers().is_empty())
        .count();
    assert_eq!(on_three, 6);
    assert_eq!(small_spaces(3).len() - small_spaces(2).len(), 5);
    assert!(natural_posets(3).len() > 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_documents_round_trip(seed in any::<u64>(), k in 0u64..1000) {
        let inst = InstanceGenerator::new(seed).with_max_points(4).gen_downsets(k);
        let lower = inst.lower().unwrap();
        let doc = inst.document();
        let back = InstanceDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        match back.build().unwrap() {
            Instance::Galois(gc) => prop_assert_eq!(gc.lower().values(), lower.values()),
            _ => prop_assert!(false, "wrong kind"),
        }
        prop_assert_eq!(galois_document(&lower), InstanceDocument { name: None, ..doc });
    }

    #[test]
    fn generation_is_a_function_of_seed_and_index(seed in any::<u64>(), k in 0u64..1000) {
        for family in [Family::RandomPosetDownsets, Family::RandomGalois, Family::Multiplicity, Family::Action, Family::Bundle] {
            let g = InstanceGenerator::new(seed).with_family(family).with_max_points(4);
            let (x, y) = (g.gen_inclusion_data(k).unwrap(), g.gen_inclusion_data(k).unwrap());
            prop_assert_eq!(x.gc().lower().values(), y.gc().lower().values());
            prop_assert!(x.gc().verify_properties().all_hold());
        }
    }

    #[test]
    fn shrinks_stay_valid(seed in any::<u64>(), k in 0u64..1000) {
        let inst = InstanceGenerator::new(seed).with_max_points(5).gen_downsets(k);
        for smaller in inst.shrinks() {
            prop_assert!(smaller.inclusion_data().is_ok());
            prop_assert_eq!(smaller.pa.size() + smaller.pb.size() + 1, inst.pa.size() + inst.pb.size());
        }
    }

    #[test]
    fn minimize_keeps_the_property(seed in any::<u64>(), k in 0u64..1000) {
        let inst = InstanceGenerator::new(seed).gen_downsets(k);
        let target = |i: &DownsetInstance| i.pb.size() >= 1 && i.images.iter().any(|s| !s.is_empty());
        if target(&inst) {
            let small = minimize(inst, DownsetInstance::shrinks, target);
            prop_assert!(target(&small));
            prop_assert_eq!(small.pa.size(), 1);
            prop_assert_eq!(small.pb.size(), 1);
        }
    }
}

#[test]
fn frames_are_shared_cheaply() {
    let frames = small_frames(4);
    assert!(frames.iter().all(|f| Arc::strong_count(f) == 1));
}
