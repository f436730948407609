//! Translations between connectivity spaces, finite topologies and finite
//! posets, and the Morita equivalence decision built on them.
//!
//! | CLI flag | function                     | direction              |
//! |----------|------------------------------|------------------------|
//! | `--g`    | [`irreducible_poset`]        | space → poset          |
//! | `--z`    | [`down_set_space`]           | poset → space          |
//! | `--h`    | [`irreducible_open_poset`]   | topology → poset       |
//! | `--e`    | [`down_set_topology`]        | poset → topology       |
//!
//! Each object has the same sheaf topos as its image. The two maps out of
//! and into connectivity spaces only act on objects: there is no way to make
//! them functorial.

use crate::connectivity::ConnectivitySpace;
use crate::error::{Error, Result};
use crate::poset::{are_isomorphic, MonotoneMap, Poset};
use crate::subset::{GroundSet, PointMap, Subset, SubsetFamily};
use crate::topology::{is_continuous, FiniteTopology, OPEN_SET_CAP};

/// Irreducible connected sets ordered by inclusion, labelled by their rendering.
pub fn irreducible_poset(space: &ConnectivitySpace) -> Poset {
    family_poset(space.ground(), &space.irreducibles())
}

fn family_poset(ground: &GroundSet, family: &SubsetFamily) -> Poset {
    let members = family.members();
    let labels = members.iter().map(|&s| ground.render(s)).collect();
    let down = members
        .iter()
        .map(|&s| {
            members
                .iter()
                .enumerate()
                .filter(|(_, &t)| t.is_subset_of(s))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Poset::from_down_rows(labels, down)
}

/// The connectivity space on the elements of `p` generated by principal down-sets.
pub fn down_set_space(p: &Poset) -> ConnectivitySpace {
    let ground = GroundSet::new(p.labels().to_vec()).expect("poset labels are distinct");
    let generators: SubsetFamily = (0..p.len()).map(|z| p.down_set(z)).collect();
    ConnectivitySpace::generated(ground, &generators).expect("generators live on the ground set")
}

/// Irreducible opens ordered by inclusion, labelled by their rendering.
pub fn irreducible_open_poset(t: &FiniteTopology) -> Poset {
    family_poset(t.ground(), &t.irreducible_opens())
}

/// The action on continuous maps: `ω ↦ minimal_open(f(ω))`.
pub fn irreducible_open_map(
    f: &PointMap,
    source: &FiniteTopology,
    target: &FiniteTopology,
) -> Result<MonotoneMap> {
    if !is_continuous(f, source, target)? {
        let bad = target
            .opens()
            .iter()
            .find(|&v| !source.is_open(f.preimage(v)))
            .expect("some preimage is not open");
        return Err(Error::NotContinuous(target.render(bad)));
    }
    let from = source.irreducible_opens();
    let to = target.irreducible_opens();
    let images = from
        .iter()
        .map(|w| {
            let hull = target.minimal_open(f.image(w));
            to.members()
                .iter()
                .position(|&u| u == hull)
                .expect("minimal open of the image of an irreducible open is irreducible")
        })
        .collect();
    MonotoneMap::new(
        family_poset(source.ground(), &from),
        family_poset(target.ground(), &to),
        images,
    )
}

/// The topology on the elements of `p` whose opens are exactly the down-sets.
pub fn down_set_topology(p: &Poset) -> Result<FiniteTopology> {
    let ground = GroundSet::new(p.labels().to_vec())?;
    let opens = p.down_sets(OPEN_SET_CAP)?.into_iter().collect();
    FiniteTopology::from_opens(ground, opens)
}

/// A monotone map, seen as a map between the corresponding down-set topologies.
pub fn down_set_topology_map(f: &MonotoneMap) -> PointMap {
    PointMap::new(f.images().to_vec(), f.target().len()).expect("monotone map images are in range")
}

/// Any of the three kinds of finite objects compared up to Morita equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoritaObject {
    Space(ConnectivitySpace),
    Topology(FiniteTopology),
    Poset(Poset),
}

impl MoritaObject {
    pub fn kind(&self) -> &'static str {
        match self {
            MoritaObject::Space(_) => "connectivity-space",
            MoritaObject::Topology(_) => "topology",
            MoritaObject::Poset(_) => "poset",
        }
    }

    /// The poset whose presheaf topos is this object's sheaf topos.
    pub fn canonical_poset(&self) -> Poset {
        match self {
            MoritaObject::Space(s) => irreducible_poset(s),
            MoritaObject::Topology(t) => irreducible_open_poset(t),
            MoritaObject::Poset(p) => p.clone(),
        }
    }
}

/// Witness of a Morita equivalence: an isomorphism of canonical posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaWitness {
    pub left: Poset,
    pub right: Poset,
    pub pairs: Vec<(String, String)>,
}

pub fn morita_equivalent(a: &MoritaObject, b: &MoritaObject) -> Option<MoritaWitness> {
    let left = a.canonical_poset();
    let right = b.canonical_poset();
    let m = are_isomorphic(&left, &right)?;
    let pairs = m
        .iter()
        .enumerate()
        .map(|(i, &j)| (left.label(i).to_string(), right.label(j).to_string()))
        .collect();
    Some(MoritaWitness { left, right, pairs })
}

/// A short description of why two canonical posets are not isomorphic.
pub fn distinguishing_invariant(left: &Poset, right: &Poset) -> String {
    let profile = |p: &Poset| {
        (
            p.len(),
            p.covers().len(),
            p.heights().into_iter().max().unwrap_or(0),
            p.minimal_elements().len(),
            p.maximal_elements().len(),
        )
    };
    let (l, r) = (profile(left), profile(right));
    let names = [
        "elements",
        "cover relations",
        "height",
        "minimal elements",
        "maximal elements",
    ];
    let values = [(l.0, r.0), (l.1, r.1), (l.2, r.2), (l.3, r.3), (l.4, r.4)];
    for (name, (x, y)) in names.iter().zip(values) {
        if x != y {
            return format!("canonical posets differ in {name}: {x} vs {y}");
        }
    }
    "canonical posets have equal invariants but are not order-isomorphic".to_string()
}

/// The sober space with the same sheaf topos: down-sets of the irreducible-open poset.
pub fn sobrification(t: &FiniteTopology) -> Result<FiniteTopology> {
    down_set_topology(&irreducible_open_poset(t))
}

/// Points of `t` sent to their minimal open, as points of [`sobrification`].
pub fn sobrification_map(t: &FiniteTopology) -> PointMap {
    let irr = t.irreducible_opens();
    let images = (0..t.ground().len())
        .map(|x| {
            let m = t.minimal_open(Subset::singleton(x));
            irr.members()
                .iter()
                .position(|&u| u == m)
                .expect("minimal opens of points are irreducible")
        })
        .collect();
    PointMap::new(images, irr.len()).expect("indices in range")
}
