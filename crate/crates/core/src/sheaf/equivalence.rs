use std::collections::HashMap;

use super::{is_sheaf, limit_over, FinitePresheaf, Site};
use crate::connectivity::ConnectivitySpace;
use crate::error::{Error, Result};
use crate::translate::irreducible_poset;

/// For every object of the space site, the objects of the irreducible site
/// below it, together with the matching objects of the space site.
struct IrreducibleCover {
    site: Site,
    /// Space-site object of each irreducible-site object.
    embedding: Vec<usize>,
    /// Irreducible-site objects included in each space-site object.
    within: Vec<Vec<usize>>,
}

impl IrreducibleCover {
    fn new(space: &ConnectivitySpace, full: &Site) -> Self {
        let irr = space.irreducibles();
        let site = Site::of_poset(&irreducible_poset(space));
        let embedding = irr
            .iter()
            .map(|k| {
                full.object_of_subset(k)
                    .expect("irreducibles are connected")
            })
            .collect();
        let within = (0..full.len())
            .map(|a| {
                let s = full.subset_of(a).expect("space site");
                irr.iter()
                    .enumerate()
                    .filter(|(_, k)| k.is_subset_of(s))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        IrreducibleCover {
            site,
            embedding,
            within,
        }
    }
}

/// Restricts a sheaf on a space to its irreducible connected sets.
pub fn restrict_to_irreducibles(f: &FinitePresheaf) -> Result<FinitePresheaf> {
    let space = f.site().require_space()?;
    if let Some(failure) = is_sheaf(f)?.failure {
        return Err(Error::NotASheaf(failure.describe()));
    }
    Ok(restrict_unchecked(space, f))
}

fn restrict_unchecked(space: &ConnectivitySpace, f: &FinitePresheaf) -> FinitePresheaf {
    let cover = IrreducibleCover::new(space, f.site());
    let values = cover
        .embedding
        .iter()
        .map(|&a| f.values(a).to_vec())
        .collect();
    let declared = (0..cover.site.len())
        .flat_map(|i| cover.site.lower_covers(i).into_iter().map(move |j| (i, j)))
        .map(|(i, j)| {
            let map = f
                .restriction(cover.embedding[i], cover.embedding[j])
                .to_vec();
            (i, j, map)
        })
        .collect();
    FinitePresheaf::new(cover.site, values, declared)
        .expect("restriction of a presheaf is a presheaf")
}

/// Extends a presheaf on the irreducible poset of `space` to a sheaf on the
/// space: reducible connected sets take the limit over the irreducibles
/// they contain, and the empty set gets `{*}`.
pub fn glue_from_irreducibles(
    space: &ConnectivitySpace,
    local: &FinitePresheaf,
) -> Result<FinitePresheaf> {
    let full = Site::of_space(space)?;
    let cover = IrreducibleCover::new(space, &full);
    if *local.site() != cover.site {
        return Err(Error::InvalidPresheaf(
            "presheaf does not live on the irreducible poset of this space".into(),
        ));
    }
    let n = full.len();
    let irreducible_at: HashMap<usize, usize> = cover
        .embedding
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i))
        .collect();

    // Each element is recorded by its components over `within[a]`.
    let mut values = Vec::with_capacity(n);
    let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for a in 0..n {
        let fam = &cover.within[a];
        if let Some(&k) = irreducible_at.get(&a) {
            values.push(local.values(k).to_vec());
            tuples.push(
                (0..local.cardinality(k))
                    .map(|x| fam.iter().map(|&l| local.restrict(k, l, x)).collect())
                    .collect(),
            );
        } else {
            let limit = limit_over(local, fam);
            values.push(limit.labels(local));
            tuples.push(limit.tuples);
        }
    }
    let index: Vec<HashMap<&[usize], usize>> = tuples
        .iter()
        .map(|ts| {
            ts.iter()
                .enumerate()
                .map(|(x, t)| (t.as_slice(), x))
                .collect()
        })
        .collect();

    let mut declared = Vec::new();
    for (a, listed) in tuples.iter().enumerate() {
        for b in full.lower_covers(a) {
            let positions: Vec<usize> = cover.within[b]
                .iter()
                .map(|l| {
                    cover.within[a]
                        .iter()
                        .position(|m| m == l)
                        .expect("fewer irreducibles below b")
                })
                .collect();
            let map = listed
                .iter()
                .map(|t| {
                    let projected: Vec<usize> = positions.iter().map(|&p| t[p]).collect();
                    index[b][projected.as_slice()]
                })
                .collect();
            declared.push((a, b, map));
        }
    }
    FinitePresheaf::new(full, values, declared)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub sheaves_checked: usize,
    pub components_checked: usize,
    pub squares_checked: usize,
    pub failure: Option<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// For each sheaf in `pool`: restricting then gluing then restricting gives
/// back the restriction exactly, and the comparison map from the sheaf to the
/// glued restriction is a natural bijection.
pub fn verify_equivalence(
    space: &ConnectivitySpace,
    pool: &[FinitePresheaf],
) -> Result<EquivalenceReport> {
    let full = Site::of_space(space)?;
    let cover = IrreducibleCover::new(space, &full);
    let mut report = EquivalenceReport::default();
    for (i, sheaf) in pool.iter().enumerate() {
        if *sheaf.site() != full {
            return Err(Error::InvalidPresheaf(format!(
                "pool entry {i} is not on this space"
            )));
        }
        report.sheaves_checked += 1;
        if let Err(e) = check_one(space, &cover, sheaf, &mut report) {
            report.failure = Some(format!("pool entry {i}: {e}"));
            return Ok(report);
        }
    }
    Ok(report)
}

fn check_one(
    space: &ConnectivitySpace,
    cover: &IrreducibleCover,
    sheaf: &FinitePresheaf,
    report: &mut EquivalenceReport,
) -> Result<(), String> {
    let local = restrict_to_irreducibles(sheaf).map_err(|e| e.to_string())?;
    let glued = glue_from_irreducibles(space, &local).map_err(|e| e.to_string())?;
    if restrict_unchecked(space, &glued) != local {
        return Err("restricting the glued presheaf does not give back its input".into());
    }

    let site = sheaf.site();
    let components = |f: &FinitePresheaf, a: usize, x: usize| -> Vec<usize> {
        cover.within[a]
            .iter()
            .map(|&l| f.restrict(a, cover.embedding[l], x))
            .collect()
    };
    let mut comparison: Vec<Vec<usize>> = Vec::with_capacity(site.len());
    for a in 0..site.len() {
        let target: HashMap<Vec<usize>, usize> = (0..glued.cardinality(a))
            .map(|y| (components(&glued, a, y), y))
            .collect();
        let mut comp = Vec::with_capacity(sheaf.cardinality(a));
        for x in 0..sheaf.cardinality(a) {
            let y = target.get(&components(sheaf, a, x)).ok_or_else(|| {
                format!(
                    "`{}` at {} has no counterpart",
                    sheaf.values(a)[x],
                    site.label(a)
                )
            })?;
            comp.push(*y);
        }
        let mut sorted = comp.clone();
        sorted.sort_unstable();
        if sorted != (0..glued.cardinality(a)).collect::<Vec<_>>() {
            return Err(format!("component at {} is not a bijection", site.label(a)));
        }
        report.components_checked += 1;
        comparison.push(comp);
    }
    for a in 0..site.len() {
        for b in site.below(a).iter() {
            for x in 0..sheaf.cardinality(a) {
                if comparison[b][sheaf.restrict(a, b, x)] != glued.restrict(a, b, comparison[a][x])
                {
                    return Err(format!(
                        "square {}->{} does not commute at `{}`",
                        site.label(a),
                        site.label(b),
                        sheaf.values(a)[x]
                    ));
                }
            }
            report.squares_checked += 1;
        }
    }
    Ok(())
}
