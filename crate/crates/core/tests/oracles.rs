mod common;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use proptest::prelude::*;

use common::*;
use spets_core::arith::{binomial, divisors, pow_u64};
use spets_core::monomial::{class_count, orbits, MonomialGroup, TorusAction};
use spets_core::partition::{
    core_and_quotient, core_tower_decompose, core_tower_reconstruct, count_cores, from_core_and_quotient,
    hook_data, multipartitions, MultiPartition, Partition,
};
use spets_core::reflection::{degrees, irr_spectrum, GroupDescriptor};
use spets_core::spectrum::DefectSpectrum;
use spets_core::tables::z_from_degrees;
use spets_core::torus::class_shapes;
use spets_core::weights::{
    af_bijection, af_bijection_inverse, level_census, weight_burnside, weight_functions, weight_orbit_count,
    wreath_irr0, wreath_irr0_oracle,
};

#[test]
fn cores_do_not_depend_on_stripping_order() {
    for n in 0..=8 {
        for lambda in plain_partitions(n) {
            for ell in [2u32, 3, 4, 5] {
                let reached = cores_all_orders(&lambda, ell);
                assert_eq!(reached.len(), 1, "{lambda:?} at {ell}");
                assert_eq!(reached.into_iter().next().unwrap(), library_core(&lambda, ell));
            }
        }
    }
}

#[test]
fn core_counts_match_diagram_stripping() {
    for n in 0..=10 {
        for ell in [2u32, 3, 5] {
            let brute = plain_partitions(n).iter().filter(|l| remove_rim_hooks(l, ell).is_empty()).count();
            assert_eq!(count_cores(n, ell), brute, "n = {n}, ell = {ell}");
        }
    }
}

#[test]
fn hook_formula_matches_branching() {
    let mut memo = HashMap::new();
    for n in 0..=9 {
        for lambda in plain_partitions(n) {
            let f = branching_degree(&lambda, &mut memo);
            let (_, deg) = hook_data(&Partition::from_parts(lambda.clone()));
            assert_eq!(deg, BigUint::from(f), "{lambda:?}");
        }
    }
}

#[test]
fn degree_product_is_group_order() {
    for e in 1..=4u64 {
        for r in divisors(e) {
            for n in 1..=4usize {
                let w = MonomialGroup::new(e, r, n).unwrap();
                if w.expected_order() > 5_000 {
                    continue;
                }
                let g = GroupDescriptor::imprimitive(e, r, n as u64).unwrap();
                let prod: u128 = degrees(&g).iter().map(|&d| d as u128).product();
                assert_eq!(prod, w.elements().len() as u128, "G({e},{r},{n})");
            }
        }
    }
}

#[test]
fn irr_count_matches_conjugacy_classes() {
    for e in 1..=4u64 {
        for r in divisors(e) {
            for n in 1..=4usize {
                let w = MonomialGroup::new(e, r, n).unwrap();
                if w.expected_order() > 1_000 {
                    continue;
                }
                let classes = class_count(&w.elements(), e) as u64;
                let g = GroupDescriptor::imprimitive(e, r, n as u64).unwrap();
                for ell in [5u64, 13] {
                    if (ell - 1) % e != 0 {
                        continue;
                    }
                    assert_eq!(irr_spectrum(&g, ell).unwrap().total(), classes, "G({e},{r},{n})");
                    assert_eq!(weight_orbit_count(e, r, n as u32, ell).unwrap(), classes, "weights of G({e},{r},{n})");
                }
            }
        }
    }
}

#[test]
fn torus_class_count_matches_orbits() {
    for e in [1u64, 2] {
        for ell in [3u64, 5] {
            for n in 1..=(6 / e) {
                let shapes = class_shapes(e, ell, 1, n, 1 << 20).unwrap();
                let ambient: u128 = shapes.iter().filter(|(c, _)| c.is_torus_shape()).map(|(_, k)| k).sum();
                let w = MonomialGroup::new(e, 1, n as usize).unwrap();
                let act = TorusAction::new(e, 1, n as usize, ell, 1, false).unwrap();
                let brute = orbits(&act, &w.generators(), 1 << 20).unwrap().len() as u128;
                assert_eq!(ambient, brute, "e = {e}, ell = {ell}, n = {n}");
                let r0 = (ell - 1) / e;
                assert_eq!(brute, binomial(r0 + n, n));
            }
        }
    }
}

#[test]
fn wreath_count_matches_degree_oracle() {
    for (name, degs, order) in small_groups() {
        for ell in [3u64, 5] {
            let z = z_from_degrees(&degs, order as u128, ell).unwrap();
            assert_eq!(z, defect_zero_count(&degs, order, ell), "{name}");
            for n in 0..=4 {
                let a = wreath_irr0(&[z], n, ell, 1, None).unwrap();
                let b = wreath_irr0_oracle(&degs, order, n, ell).unwrap();
                assert_eq!(a, b, "{name} wr S{n} at {ell}");
            }
        }
    }
}

#[test]
fn weight_orbits_by_explicit_canonical_forms() {
    for (e, ell) in [(2u64, 3u64), (4, 5)] {
        for r in divisors(e) {
            for n in 0..=4u32 {
                let funcs = weight_functions(e, n, ell, 1 << 24).unwrap();
                let step = (e / r) as usize;
                let mut orbits: BTreeSet<_> = BTreeSet::new();
                let mut stab_sum = 0u64;
                for f in &funcs {
                    let images: Vec<_> = (0..r as usize).map(|k| f.shift(k * step)).collect();
                    if orbits.insert(images.iter().min().unwrap().clone()) {
                        stab_sum += images.iter().filter(|g| *g == f).count() as u64;
                    }
                }
                let (orbit_count, burnside_stab) = weight_burnside(e, r, n, ell).unwrap();
                assert_eq!(orbit_count, orbits.len() as u64, "e={e} r={r} n={n}");
                assert_eq!(burnside_stab, stab_sum, "e={e} r={r} n={n}");
                if n > 0 {
                    assert_eq!(weight_orbit_count(e, r, n, ell).unwrap(), stab_sum, "e={e} r={r} n={n}");
                }
            }
        }
    }
}

#[test]
fn level_census_is_ell_power() {
    for ell in [3u64, 5, 7] {
        for d in 0..=4 {
            assert_eq!(level_census(ell, d), pow_u64(ell, d));
        }
    }
}

#[test]
fn bijection_round_trip_small() {
    for mu in multipartitions(2, 4) {
        let w = af_bijection(&mu, 2, 1, 3).unwrap();
        assert_eq!(w.total(), 4);
        assert_eq!(af_bijection_inverse(&w).unwrap(), mu);
    }
}

fn partition_strategy(max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=max, 0..=max as usize).prop_map(Partition::from_parts)
}

proptest! {
    #[test]
    fn core_quotient_sizes_add_up(lambda in partition_strategy(7), ell in 2u32..=5) {
        let (core, quot) = core_and_quotient(&lambda, ell);
        let qsize: u32 = quot.iter().map(Partition::size).sum();
        prop_assert_eq!(lambda.size(), core.size() + ell * qsize);
        prop_assert!(core.is_core(ell));
        prop_assert_eq!(from_core_and_quotient(&core, &quot, ell).unwrap(), lambda);
    }

    #[test]
    fn core_tower_inverts(comps in prop::collection::vec(partition_strategy(5), 1..=3), ell in prop::sample::select(vec![3u32, 5])) {
        let mu = MultiPartition::new(comps).unwrap();
        let t = core_tower_decompose(&mu, ell);
        prop_assert_eq!(t.weight(), mu.total() as u64);
        prop_assert_eq!(core_tower_reconstruct(&t, ell).unwrap(), mu);
    }

    #[test]
    fn bijection_commutes_with_shift(comps in prop::collection::vec(partition_strategy(4), 4), k in 0usize..4) {
        let mu = MultiPartition::new(comps).unwrap();
        let w = af_bijection(&mu, 4, 2, 5).unwrap();
        let shifted = af_bijection(&mu.shift(k), 4, 2, 5).unwrap();
        prop_assert_eq!(w.shift(k), shifted);
    }

    #[test]
    fn spectrum_totals(a in prop::collection::btree_map(0u32..6, 1u64..20, 0..5),
                       b in prop::collection::btree_map(0u32..6, 1u64..20, 0..5),
                       s in 0u32..4) {
        let mut x = DefectSpectrum::new();
        for (d, c) in &a { x.add(*d, *c); }
        let mut y = DefectSpectrum::new();
        for (d, c) in &b { y.add(*d, *c); }
        prop_assert_eq!(x.shifted(s).total(), x.total());
        prop_assert_eq!(x.convolve(&y).total(), x.total() * y.total());
        let mut m = x.clone();
        m.merge(&y);
        prop_assert_eq!(m.total(), x.total() + y.total());
    }
}
