//! Sieves on the site of connected sets and the covering topology.
//!
//! A sieve on a connected set `A` is a downward closed family of connected
//! subsets of `A`. It covers `A` when the connectivity structure it generates
//! is the whole induced structure on `A`. In a finite space this is the same
//! as containing every irreducible included in `A`; both tests are provided.

use std::collections::HashMap;

use crate::connectivity::ConnectivitySpace;
use crate::error::{Error, Result};
use crate::subset::{connectivity_closure, enumerate_closed_sets, Subset, SubsetFamily};

/// Largest induced structure for which [`covering_sieves`] will enumerate.
pub const COVERING_ENUMERATION_LIMIT: usize = 32;

/// Default cap on the number of sieves enumerated on a single target.
pub const DEFAULT_SIEVE_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sieve {
    target: Subset,
    domain: SubsetFamily,
}

impl Sieve {
    pub fn new(space: &ConnectivitySpace, target: Subset, domain: SubsetFamily) -> Result<Self> {
        space.require_connected(target)?;
        let not_a_sieve = |detail: String| Error::NotASieve {
            target: space.render(target),
            detail,
        };
        for b in &domain {
            if !space.is_connected(b) {
                return Err(not_a_sieve(format!("{} is not connected", space.render(b))));
            }
            if !b.is_subset_of(target) {
                return Err(not_a_sieve(format!(
                    "{} is not included in the target",
                    space.render(b)
                )));
            }
            if let Some(c) = space
                .connecteds_within(b)
                .iter()
                .find(|&c| !domain.contains(c))
            {
                return Err(not_a_sieve(format!(
                    "{} is in the sieve but its connected subset {} is not",
                    space.render(b),
                    space.render(c)
                )));
            }
        }
        Ok(Sieve { target, domain })
    }

    pub fn target(&self) -> Subset {
        self.target
    }

    pub fn domain(&self) -> &SubsetFamily {
        &self.domain
    }

    /// Equal to the maximal sieve on its target.
    pub fn is_maximal(&self, space: &ConnectivitySpace) -> bool {
        self.domain == space.connecteds_within(self.target)
    }

    /// Pullback along the inclusion `sub ⊆ target`.
    pub fn restrict(&self, space: &ConnectivitySpace, sub: Subset) -> Result<Sieve> {
        space.require_connected(sub)?;
        if !sub.is_subset_of(self.target) {
            return Err(Error::NotIncluded {
                sub: space.render(sub),
                target: space.render(self.target),
            });
        }
        Ok(Sieve {
            target: sub,
            domain: self.domain.within(sub),
        })
    }

    /// Covering test by definition: the domain generates the induced structure.
    pub fn is_covering(&self, space: &ConnectivitySpace) -> bool {
        connectivity_closure(&self.domain) == space.connecteds_within(self.target)
    }

    /// Connected subsets of the target that the domain does not generate.
    /// Empty exactly when the sieve covers.
    pub fn uncovered(&self, space: &ConnectivitySpace) -> SubsetFamily {
        let generated = connectivity_closure(&self.domain);
        space
            .connecteds_within(self.target)
            .iter()
            .filter(|&c| !generated.contains(c))
            .collect()
    }

    /// Covering test for finite spaces: every irreducible inside the target is
    /// in the domain.
    pub fn is_covering_by_irreducibles(&self, space: &ConnectivitySpace) -> bool {
        space
            .irreducibles_within(self.target)
            .iter()
            .all(|k| self.domain.contains(k))
    }

    pub fn describe(&self, space: &ConnectivitySpace) -> String {
        let target = if self.target.is_empty() {
            "∅".to_string()
        } else {
            space.render(self.target)
        };
        if self.domain.is_empty() {
            format!("empty sieve on {target}")
        } else {
            format!(
                "sieve on {target} with domain [{}]",
                self.domain.render(space.ground()).join(", ")
            )
        }
    }
}

pub fn maximal_sieve(space: &ConnectivitySpace, target: Subset) -> Result<Sieve> {
    space.require_connected(target)?;
    Ok(Sieve {
        target,
        domain: space.connecteds_within(target),
    })
}

/// The sieve generated by the irreducibles included in `target`.
pub fn minimal_covering_sieve(space: &ConnectivitySpace, target: Subset) -> Result<Sieve> {
    space.require_connected(target)?;
    let irr = space.irreducibles_within(target);
    let domain = space
        .connecteds_within(target)
        .iter()
        .filter(|&c| irr.iter().any(|k| c.is_subset_of(k)))
        .collect();
    Ok(Sieve { target, domain })
}

/// The connected subsets of one target, indexed locally in order of size so
/// that sieves become closed sets of a relation on at most 64 indices.
pub(crate) struct LocalSite {
    pub members: Vec<Subset>,
    pub below: Vec<Subset>,
}

impl LocalSite {
    pub fn new(space: &ConnectivitySpace, target: Subset) -> Result<Self> {
        let mut members: Vec<Subset> = space.connecteds_within(target).iter().collect();
        if members.len() > 64 {
            return Err(Error::too_large(
                format!("induced structure on {}", space.render(target)),
                members.len(),
                64,
            ));
        }
        members.sort_by_key(|s| (s.len(), s.bits()));
        let below = members
            .iter()
            .map(|&b| {
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c.is_proper_subset_of(b))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(LocalSite { members, below })
    }

    pub fn mask_of(&self, family: &SubsetFamily) -> Subset {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &s)| family.contains(s))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn family(&self, mask: Subset) -> SubsetFamily {
        mask.iter().map(|i| self.members[i]).collect()
    }

    /// Local indices of members included in `carrier`.
    pub fn within(&self, carrier: Subset) -> Subset {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &s)| s.is_subset_of(carrier))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.members.iter().position(|&m| m == s)
    }
}

/// Every sieve on `target`, including both the empty sieve and `{∅}`.
pub fn all_sieves(space: &ConnectivitySpace, target: Subset, cap: usize) -> Result<Vec<Sieve>> {
    space.require_connected(target)?;
    let site = LocalSite::new(space, target)?;
    Ok(enumerate_closed_sets(&site.below, Subset::EMPTY, cap)?
        .into_iter()
        .map(|mask| Sieve {
            target,
            domain: site.family(mask),
        })
        .collect())
}

/// Every covering sieve on `target`, each confirmed by the definitional test.
///
/// Enumeration starts from the sieve generated by the irreducibles inside
/// `target`, which every covering sieve contains.
pub fn covering_sieves(space: &ConnectivitySpace, target: Subset) -> Result<Vec<Sieve>> {
    space.require_connected(target)?;
    let size = space.connecteds_within(target).len();
    if size > COVERING_ENUMERATION_LIMIT {
        return Err(Error::too_large(
            format!("induced structure on {}", space.render(target)),
            size,
            COVERING_ENUMERATION_LIMIT,
        ));
    }
    let site = LocalSite::new(space, target)?;
    let core = site.mask_of(minimal_covering_sieve(space, target)?.domain());
    let mut out = Vec::new();
    for mask in enumerate_closed_sets(&site.below, core, DEFAULT_SIEVE_CAP)? {
        let sieve = Sieve {
            target,
            domain: site.family(mask),
        };
        if sieve.is_covering(space) {
            out.push(sieve);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    /// 1: maximal sieves cover; 2: stability under restriction; 3: transitivity.
    pub axiom: u8,
    pub sieve: Sieve,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub targets_checked: usize,
    pub sieves_checked: usize,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exhaustively checks the three Grothendieck topology axioms for the
/// definitional covering relation, over every sieve on every connected set.
pub fn verify_topology_axioms(space: &ConnectivitySpace, sieve_cap: usize) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    for a in space.connecteds().iter() {
        report.targets_checked += 1;
        let site = LocalSite::new(space, a)?;
        let n = site.members.len();
        let sieves = enumerate_closed_sets(&site.below, Subset::EMPTY, sieve_cap)?;
        report.sieves_checked += sieves.len();

        let within: Vec<Subset> = site.members.iter().map(|&b| site.within(b)).collect();
        let required: Vec<SubsetFamily> = site
            .members
            .iter()
            .map(|&b| space.connecteds_within(b))
            .collect();
        let mut memo: HashMap<(usize, Subset), bool> = HashMap::new();
        let mut covers = |b: usize, mask: Subset| -> bool {
            let mask = mask & within[b];
            *memo
                .entry((b, mask))
                .or_insert_with(|| connectivity_closure(&site.family(mask)) == required[b])
        };
        let top = site.index_of(a).expect("target is connected");
        let sieve = |mask: Subset| Sieve {
            target: a,
            domain: site.family(mask),
        };
        let fail = |axiom: u8, mask: Subset, detail: String| AxiomFailure {
            axiom,
            sieve: sieve(mask),
            detail,
        };

        let all = Subset::full(n);
        if !covers(top, all) {
            report.failure = Some(fail(1, all, "maximal sieve does not cover".into()));
            return Ok(report);
        }

        for &mu in &sieves {
            let mu_covers = covers(top, mu);
            if mu_covers {
                for b in 0..n {
                    if !covers(b, mu) {
                        report.failure = Some(fail(
                            2,
                            mu,
                            format!(
                                "restriction to {} does not cover",
                                space.render(site.members[b])
                            ),
                        ));
                        return Ok(report);
                    }
                }
            }
            // Largest sieve on which every restriction of mu covers; some
            // covering sieve satisfies the hypothesis iff this one covers.
            let mut interior = Subset::EMPTY;
            for b in 0..n {
                if site.below[b].is_subset_of(interior) && covers(b, mu) {
                    interior = interior.with(b);
                }
            }
            if !mu_covers && covers(top, interior) {
                report.failure = Some(fail(
                    3,
                    mu,
                    format!(
                        "locally covering along the covering sieve [{}] but not covering",
                        site.family(interior).render(space.ground()).join(", ")
                    ),
                ));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::{integral_closure, GroundSet};

    fn space(points: &[&str], closed: &[&[&str]]) -> ConnectivitySpace {
        let g = GroundSet::new(points.iter().copied()).unwrap();
        let fam = closed.iter().map(|s| g.subset(s.iter()).unwrap()).collect();
        ConnectivitySpace::from_closed(g, fam).unwrap()
    }

    fn borromean() -> ConnectivitySpace {
        space(
            &["x1", "x2", "x3"],
            &[&["x1"], &["x2"], &["x3"], &["x1", "x2", "x3"]],
        )
    }

    fn order_two() -> ConnectivitySpace {
        space(
            &["a", "b", "c", "d", "e"],
            &[
                &["a"],
                &["b"],
                &["c"],
                &["d"],
                &["e"],
                &["a", "b"],
                &["b", "c", "d"],
                &["a", "b", "c", "d"],
                &["a", "b", "c", "d", "e"],
            ],
        )
    }

    fn fam(s: &ConnectivitySpace, sets: &[&[&str]]) -> SubsetFamily {
        sets.iter()
            .map(|x| s.ground().subset(x.iter()).unwrap())
            .collect()
    }

    #[test]
    fn maximal_sieve_examples() {
        let b = borromean();
        let x1 = b.ground().subset(["x1"]).unwrap();
        assert_eq!(maximal_sieve(&b, x1).unwrap().domain().len(), 2);
        assert_eq!(
            maximal_sieve(&b, b.ground().full()).unwrap().domain().len(),
            5
        );
        assert_eq!(maximal_sieve(&b, Subset::EMPTY).unwrap().domain().len(), 1);
        let x12 = b.ground().subset(["x1", "x2"]).unwrap();
        assert_eq!(
            maximal_sieve(&b, x12),
            Err(Error::NotConnected("{x1,x2}".into()))
        );
    }

    #[test]
    fn sieve_validation() {
        let b = borromean();
        let x = b.ground().full();
        let bad = fam(&b, &[&["x1"]]);
        assert!(matches!(
            Sieve::new(&b, x, bad),
            Err(Error::NotASieve { .. })
        ));
        let ok = fam(&b, &[&[], &["x1"]]);
        assert!(Sieve::new(&b, x, ok).is_ok());
    }

    #[test]
    fn restriction_examples() {
        let b = borromean();
        let x1 = b.ground().subset(["x1"]).unwrap();
        let max = maximal_sieve(&b, b.ground().full()).unwrap();
        assert_eq!(
            max.restrict(&b, x1).unwrap(),
            maximal_sieve(&b, x1).unwrap()
        );

        let o = order_two();
        let abcd = o.ground().subset(["a", "b", "c", "d"]).unwrap();
        let ab = o.ground().subset(["a", "b"]).unwrap();
        let listed = Sieve::new(
            &o,
            abcd,
            fam(
                &o,
                &[
                    &[],
                    &["a"],
                    &["b"],
                    &["c"],
                    &["d"],
                    &["a", "b"],
                    &["b", "c", "d"],
                ],
            ),
        )
        .unwrap();
        assert_eq!(
            listed.restrict(&o, ab).unwrap(),
            maximal_sieve(&o, ab).unwrap()
        );

        let empty_on_x = Sieve::new(&b, b.ground().full(), SubsetFamily::new()).unwrap();
        assert!(empty_on_x
            .restrict(&b, Subset::EMPTY)
            .unwrap()
            .domain()
            .is_empty());
        let r = max.restrict(&b, Subset::EMPTY).unwrap();
        assert_eq!(r.domain().len(), 1);

        let e = o.ground().subset(["e"]).unwrap();
        assert!(matches!(
            listed.restrict(&o, e),
            Err(Error::NotIncluded { .. })
        ));
    }

    #[test]
    fn covering_examples() {
        let o = order_two();
        let abcd = o.ground().subset(["a", "b", "c", "d"]).unwrap();
        let listed = Sieve::new(
            &o,
            abcd,
            fam(
                &o,
                &[
                    &[],
                    &["a"],
                    &["b"],
                    &["c"],
                    &["d"],
                    &["a", "b"],
                    &["b", "c", "d"],
                ],
            ),
        )
        .unwrap();
        assert!(listed.is_covering(&o));
        assert!(listed.is_covering_by_irreducibles(&o));

        let empty = Sieve::new(&o, Subset::EMPTY, SubsetFamily::new()).unwrap();
        assert!(empty.is_covering(&o));
        assert_eq!(empty.describe(&o), "empty sieve on ∅");
    }

    #[test]
    fn counterexample_sieve_does_not_cover() {
        let g = GroundSet::new(["x1", "x2", "x3", "x4", "x5"]).unwrap();
        let gens: SubsetFamily = [
            g.subset(["x1", "x2", "x3"]).unwrap(),
            g.subset(["x2", "x3", "x4"]).unwrap(),
            g.subset(["x3", "x4", "x5"]).unwrap(),
        ]
        .into_iter()
        .collect();
        let k = ConnectivitySpace::from_closed(g.clone(), integral_closure(&gens, &g)).unwrap();
        let listed = Sieve::new(
            &k,
            g.full(),
            fam(
                &k,
                &[
                    &[],
                    &["x1"],
                    &["x2"],
                    &["x3"],
                    &["x4"],
                    &["x5"],
                    &["x1", "x2", "x3"],
                    &["x3", "x4", "x5"],
                ],
            ),
        )
        .unwrap();
        let generated = connectivity_closure(listed.domain());
        assert!(generated.contains(g.full()));
        assert!(!generated.contains(g.subset(["x2", "x3", "x4"]).unwrap()));
        assert!(!listed.is_covering(&k));
        assert!(!listed.is_covering_by_irreducibles(&k));
        assert_eq!(listed.uncovered(&k).render(k.ground())[0], "{x2,x3,x4}");
    }

    #[test]
    fn covering_sieve_counts() {
        let b = borromean();
        assert_eq!(covering_sieves(&b, b.ground().full()).unwrap().len(), 1);
        assert_eq!(covering_sieves(&b, Subset::EMPTY).unwrap().len(), 2);

        let o = order_two();
        for c in o.connecteds().iter() {
            let n = covering_sieves(&o, c).unwrap().len();
            let expected = if c.is_empty() || o.render(c) == "{a,b,c,d}" {
                2
            } else {
                1
            };
            assert_eq!(n, expected, "{}", o.render(c));
        }
    }

    #[test]
    fn covering_sieves_guard() {
        let g = GroundSet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let all: SubsetFamily = (0..64u64).map(Subset::from_bits).collect();
        let p = ConnectivitySpace::from_closed(g.clone(), all).unwrap();
        assert!(matches!(
            covering_sieves(&p, g.full()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn axioms_hold_on_examples() {
        for s in [borromean(), order_two(), ConnectivitySpace::empty()] {
            let r = verify_topology_axioms(&s, DEFAULT_SIEVE_CAP).unwrap();
            assert!(r.passed(), "{:?}", r.failure);
            assert_eq!(r.targets_checked, s.connecteds().len());
        }
    }
}
