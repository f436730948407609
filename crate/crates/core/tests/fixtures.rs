use std::path::{Path, PathBuf};

use connecta::format::{read_document, Document};
use connecta::sheaf::is_sheaf;
use connecta::translate::{morita_equivalent, MoritaObject};
use connecta::{birkhoff_representation, ConnectivitySpace, FiniteTopology, Poset};

fn path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel)
}

fn load(rel: &str) -> Document {
    read_document(&path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn space(rel: &str) -> ConnectivitySpace {
    match load(rel) {
        Document::Space(s) => s,
        d => panic!("{rel} is a {}", d.kind()),
    }
}

fn topology(rel: &str) -> FiniteTopology {
    match load(rel) {
        Document::Topology(t) => t,
        d => panic!("{rel} is a {}", d.kind()),
    }
}

fn poset(rel: &str) -> Poset {
    match load(rel) {
        Document::Poset(p) => p,
        d => panic!("{rel} is a {}", d.kind()),
    }
}

#[test]
fn every_fixture_loads_as_its_directory_says() {
    for (dir, kind) in [
        ("spaces", "connectivity-space"),
        ("topologies", "topology"),
        ("posets", "poset"),
        ("lattices", "poset"),
        ("presheaves", "presheaf"),
    ] {
        let mut seen = 0;
        for entry in std::fs::read_dir(path(dir)).unwrap() {
            let p = entry.unwrap().path();
            let doc = read_document(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            assert_eq!(doc.kind(), kind, "{}", p.display());
            seen += 1;
        }
        assert!(seen > 0, "{dir} is empty");
    }
}

#[test]
fn irreducible_counts() {
    for (rel, count) in [
        ("spaces/empty.json", 0),
        ("spaces/point-not-connected.json", 0),
        ("spaces/point-connected.json", 1),
        ("spaces/two-points-apart.json", 2),
        ("spaces/two-points-connected.json", 3),
        ("spaces/borromean.json", 4),
        ("spaces/l-shape.json", 5),
        ("spaces/three-triples.json", 8),
    ] {
        assert_eq!(space(rel).irreducibles().len(), count, "{rel}");
    }
}

#[test]
fn fixture_equivalences() {
    let s = |rel| MoritaObject::Space(space(rel));
    let t = |rel| MoritaObject::Topology(topology(rel));
    let p = |rel| MoritaObject::Poset(poset(rel));
    let same = [
        (
            s("spaces/borromean.json"),
            p("posets/three-atoms-under-top.json"),
        ),
        (t("topologies/sierpinski.json"), p("posets/chain2.json")),
        (
            t("topologies/indiscrete-two.json"),
            p("posets/one-element.json"),
        ),
        (
            s("spaces/point-connected.json"),
            t("topologies/indiscrete-two.json"),
        ),
        (s("spaces/empty.json"), s("spaces/point-not-connected.json")),
    ];
    for (a, b) in &same {
        assert!(
            morita_equivalent(a, b).is_some(),
            "{} vs {}",
            a.kind(),
            b.kind()
        );
    }
    let different = [
        (
            s("spaces/two-points-connected.json"),
            s("spaces/two-points-apart.json"),
        ),
        (s("spaces/borromean.json"), s("spaces/l-shape.json")),
        (
            t("topologies/sierpinski.json"),
            t("topologies/indiscrete-two.json"),
        ),
    ];
    for (a, b) in &different {
        assert!(
            morita_equivalent(a, b).is_none(),
            "{} vs {}",
            a.kind(),
            b.kind()
        );
    }
}

#[test]
fn lattices_are_down_sets_of_their_join_irreducibles() {
    for (rel, irreducibles) in [
        ("lattices/chain-1.json", 0),
        ("lattices/chain-3.json", 2),
        ("lattices/chain-5.json", 4),
        ("lattices/boolean-2.json", 2),
        ("lattices/boolean-3.json", 3),
        ("lattices/divisors-12.json", 3),
    ] {
        let l = poset(rel);
        let b = birkhoff_representation(&l).unwrap();
        assert_eq!(b.irreducibles.len(), irreducibles, "{rel}");
        assert!(b.is_order_isomorphism(&l), "{rel}");
    }
}

#[test]
fn presheaf_fixtures() {
    let Document::Presheaf(rep) = load("presheaves/borromean-representable.json") else {
        panic!("not a presheaf");
    };
    assert!(is_sheaf(&rep).unwrap().is_sheaf());

    let Document::Presheaf(twice) = load("presheaves/empty-set-twice.json") else {
        panic!("not a presheaf");
    };
    let failure = is_sheaf(&twice)
        .unwrap()
        .failure
        .expect("two elements over the empty set");
    assert_eq!(failure.witness, "empty sieve on ∅");
}
