//! Seeded generators for spaces, posets, topologies and presheaves.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::ConnectivitySpace;
use crate::error::Result;
use crate::poset::Poset;
use crate::sheaf::{glue_from_irreducibles, limit_over, FinitePresheaf, Site};
use crate::subset::{GroundSet, Subset, SubsetFamily};
use crate::topology::FiniteTopology;
use crate::translate::irreducible_poset;

pub const SEED_VAR: &str = "CONNECTA_SEED";
pub const DEFAULT_SEED: u64 = 0x00c0_ffee;

/// The seed from `CONNECTA_SEED` (a decimal integer), or `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn points(n: usize) -> GroundSet {
    GroundSet::new((0..n).map(|i| format!("x{}", i + 1))).expect("distinct labels")
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Subset {
    Subset::from_bits(rng.gen::<u64>() & Subset::full(n).bits())
}

/// Up to `max_members` random non-empty subsets of an `n`-point set.
pub fn random_family<R: Rng>(rng: &mut R, n: usize, max_members: usize) -> SubsetFamily {
    let count = rng.gen_range(0..=max_members);
    (0..count)
        .map(|_| random_subset(rng, n))
        .filter(|s| !s.is_empty())
        .collect()
}

/// A space on `1..=max_points` points generated by a random family; half of
/// them integral.
pub fn random_space<R: Rng>(rng: &mut R, max_points: usize) -> ConnectivitySpace {
    let n = rng.gen_range(1..=max_points);
    let ground = points(n);
    let mut generators = random_family(rng, n, n + 2);
    if rng.gen_bool(0.5) {
        for s in ground.singletons() {
            generators.insert(s);
        }
    }
    ConnectivitySpace::generated(ground, &generators).expect("generators fit the ground set")
}

/// A poset on `1..=max_elements` elements, each pair related with probability
/// `density` before transitive closure, under a random labelling.
pub fn random_poset<R: Rng>(rng: &mut R, max_elements: usize, density: f64) -> Poset {
    let n = rng.gen_range(1..=max_elements);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut relation = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                relation.push((perm[i], perm[j]));
            }
        }
    }
    Poset::new((0..n).map(|i| format!("p{i}")).collect(), &relation).expect("acyclic relation")
}

/// A topology on `1..=max_points` points generated by a random subbase.
pub fn random_topology<R: Rng>(rng: &mut R, max_points: usize) -> FiniteTopology {
    let n = rng.gen_range(1..=max_points);
    let subbase = random_family(rng, n, n + 1);
    FiniteTopology::from_subbase(points(n), &subbase).expect("subbase fits the ground set")
}

/// A random presheaf: every element of an object picks a random compatible
/// family over the objects strictly below it, which makes restriction
/// functorial by construction. Value sets have at most `max_size` elements.
pub fn random_presheaf<R: Rng>(rng: &mut R, site: &Site, max_size: usize) -> FinitePresheaf {
    let n = site.len();
    let mut values: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut declared = Vec::new();
    let mut done = Vec::new();
    for &a in site.ascending() {
        let below: Vec<usize> = site.below(a).without(a).iter().collect();
        let partial = partial_presheaf(site, &done, &values, &declared);
        let limit = limit_over(&partial, &below);
        let size = if limit.is_empty() {
            0
        } else {
            rng.gen_range(0..=max_size)
        };
        let picks: Vec<usize> = (0..size).map(|_| rng.gen_range(0..limit.len())).collect();
        values[a] = (0..size).map(|i| format!("e{a}.{i}")).collect();
        for (pos, &b) in limit.objects.iter().enumerate() {
            if site.lower_covers(a).contains(&b) {
                declared.push((a, b, picks.iter().map(|&k| limit.tuples[k][pos]).collect()));
            }
        }
        done.push(a);
    }
    FinitePresheaf::new(site.clone(), values, declared).expect("compatible families are functorial")
}

/// The presheaf built so far, with empty value sets on objects not yet reached.
fn partial_presheaf(
    site: &Site,
    done: &[usize],
    values: &[Vec<String>],
    declared: &[(usize, usize, Vec<usize>)],
) -> FinitePresheaf {
    let vals = (0..site.len())
        .map(|a| {
            if done.contains(&a) {
                values[a].clone()
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut decl: Vec<_> = declared.to_vec();
    for a in 0..site.len() {
        if !done.contains(&a) {
            for c in site.lower_covers(a) {
                decl.push((a, c, Vec::new()));
            }
        }
    }
    FinitePresheaf::new(site.clone(), vals, decl).expect("partial presheaf is functorial")
}

/// A random sheaf on `space`: a random presheaf on the irreducible poset,
/// glued, then with every value set shuffled.
pub fn random_sheaf<R: Rng>(
    rng: &mut R,
    space: &ConnectivitySpace,
    max_size: usize,
) -> Result<FinitePresheaf> {
    let site = Site::of_poset(&irreducible_poset(space));
    let local = random_presheaf(rng, &site, max_size);
    let glued = glue_from_irreducibles(space, &local)?;
    shuffled(rng, &glued)
}

pub fn shuffled<R: Rng>(rng: &mut R, f: &FinitePresheaf) -> Result<FinitePresheaf> {
    let perms: Vec<Vec<usize>> = (0..f.site().len())
        .map(|a| {
            let mut p: Vec<usize> = (0..f.cardinality(a)).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    f.permuted(&perms)
}
