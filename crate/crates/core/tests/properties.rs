use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use connecta::format::{document_to_json, parse_document, Document};
use connecta::poset::{are_isomorphic, Poset};
use connecta::random::{random_poset, random_sheaf, random_space, random_topology};
use connecta::sheaf::is_sheaf;
use connecta::sieve::{all_sieves, minimal_covering_sieve, DEFAULT_SIEVE_CAP};
use connecta::subset::{
    connectivity_closure, integral_closure, is_connectivity_closed, GroundSet, Subset, SubsetFamily,
};
use connecta::translate::{down_set_topology, irreducible_poset};
use connecta::ConnectivitySpace;

fn family_on(n: usize) -> impl Strategy<Value = SubsetFamily> {
    let mask = (1u64 << n) - 1;
    prop::collection::vec(1u64..=mask.max(1), 0..=2 * n).prop_map(move |bits| {
        bits.into_iter()
            .map(|b| Subset::from_bits(b & mask))
            .filter(|s| !s.is_empty())
            .collect()
    })
}

fn sized_family() -> impl Strategy<Value = (usize, SubsetFamily)> {
    (1usize..=6).prop_flat_map(|n| family_on(n).prop_map(move |f| (n, f)))
}

fn ground(n: usize) -> GroundSet {
    GroundSet::new((0..n).map(|i| format!("x{i}"))).unwrap()
}

fn seeded() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

proptest! {
    #[test]
    fn closure_is_closed_idempotent_and_extensive((_, f) in sized_family()) {
        let c = connectivity_closure(&f);
        prop_assert!(is_connectivity_closed(&c));
        prop_assert_eq!(connectivity_closure(&c), c.clone());
        prop_assert!(f.is_subfamily_of(&c));
        prop_assert!(c.contains(Subset::EMPTY));
    }

    #[test]
    fn closure_is_monotone((_, f) in sized_family(), keep in any::<u64>()) {
        let sub: SubsetFamily = f.iter().enumerate().filter(|(i, _)| keep >> (i % 64) & 1 == 1).map(|(_, s)| s).collect();
        prop_assert!(connectivity_closure(&sub).is_subfamily_of(&connectivity_closure(&f)));
    }

    #[test]
    fn integral_closure_needs_no_second_pass((n, f) in sized_family()) {
        let g = ground(n);
        let mut with_points = f.clone();
        for s in g.singletons() {
            with_points.insert(s);
        }
        prop_assert_eq!(integral_closure(&f, &g), connectivity_closure(&with_points));
    }

    #[test]
    fn restriction_commutes_with_closure((n, f) in sized_family(), b in any::<u64>()) {
        let b = Subset::from_bits(b).intersection(Subset::full(n));
        prop_assert_eq!(connectivity_closure(&f.within(b)), connectivity_closure(&f).within(b));
    }

    #[test]
    fn star_test_matches_definition((n, f) in sized_family()) {
        let s = ConnectivitySpace::generated(ground(n), &f).unwrap();
        for a in s.connecteds().iter() {
            // A is irreducible iff the other connected sets do not generate it.
            let by_definition = !a.is_empty() && !connectivity_closure(&s.connecteds().without(a)).contains(a);
            prop_assert_eq!(s.is_irreducible(a), by_definition, "{}", s.render(a));
        }
    }

    #[test]
    fn covering_tests_agree(mut rng in seeded()) {
        let s = random_space(&mut rng, 4);
        for target in s.connecteds().iter() {
            for sieve in all_sieves(&s, target, DEFAULT_SIEVE_CAP).unwrap() {
                prop_assert_eq!(sieve.is_covering(&s), sieve.is_covering_by_irreducibles(&s));
            }
            prop_assert!(minimal_covering_sieve(&s, target).unwrap().is_covering(&s));
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence(mut rng in seeded()) {
        let p = random_poset(&mut rng, 7, 0.4);
        prop_assert!(are_isomorphic(&p, &p).is_some());
        let perm: Vec<usize> = (0..p.len()).rev().collect();
        let relabelled = Poset::new(
            (0..p.len()).map(|i| format!("q{i}")).collect(),
            &(0..p.len())
                .flat_map(|a| (0..p.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| p.leq(a, b))
                .map(|(a, b)| (perm[a], perm[b]))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let m = are_isomorphic(&p, &relabelled);
        prop_assert!(m.is_some());
        prop_assert!(are_isomorphic(&relabelled, &p).is_some());
    }

    #[test]
    fn files_round_trip(mut rng in seeded()) {
        let docs = [
            Document::Space(random_space(&mut rng, 5)),
            Document::Topology(random_topology(&mut rng, 5)),
            Document::Poset(random_poset(&mut rng, 6, 0.3)),
        ];
        for doc in docs {
            let text = document_to_json(&doc);
            prop_assert_eq!(parse_document(&text, None).unwrap(), doc);
        }
    }

    #[test]
    fn down_set_topologies_are_sober(mut rng in seeded()) {
        let p = random_poset(&mut rng, 7, 0.3);
        prop_assert!(down_set_topology(&p).unwrap().is_sober());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn glued_presheaves_are_sheaves(mut rng in seeded()) {
        let s = random_space(&mut rng, 6);
        let f = random_sheaf(&mut rng, &s, 3).unwrap();
        let check = is_sheaf(&f).unwrap();
        prop_assert!(check.is_sheaf(), "{:?}", check.failure);
        let e = f.site().object("{}").unwrap();
        prop_assert_eq!(f.cardinality(e), 1);
    }

    #[test]
    fn canonical_poset_of_a_space_is_its_irreducibles(mut rng in seeded()) {
        let s = random_space(&mut rng, 6);
        prop_assert_eq!(irreducible_poset(&s).len(), s.irreducibles().len());
    }
}
