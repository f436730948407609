//! Connectivity spaces: a ground set with a family of connected subsets in
//! which any intersecting family of connected sets has a connected union.

use crate::error::{Error, Result};
use crate::subset::{
    connectivity_closure, first_unclosed_union, GroundSet, PointMap, Subset, SubsetFamily,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectivitySpace {
    ground: GroundSet,
    connecteds: SubsetFamily,
}

impl ConnectivitySpace {
    /// Wraps an already closed family. The empty set is added if missing.
    pub fn from_closed(ground: GroundSet, family: SubsetFamily) -> Result<Self> {
        ground.check_family(&family)?;
        let mut connecteds = family;
        connecteds.insert(Subset::EMPTY);
        if let Some(missing) = first_unclosed_union(&connecteds) {
            return Err(Error::NotClosed {
                missing: ground.render(missing),
            });
        }
        Ok(ConnectivitySpace { ground, connecteds })
    }

    /// The structure generated by `generators`.
    pub fn generated(ground: GroundSet, generators: &SubsetFamily) -> Result<Self> {
        ground.check_family(generators)?;
        let connecteds = connectivity_closure(generators);
        Ok(ConnectivitySpace { ground, connecteds })
    }

    /// The empty space, whose only connected set is ∅.
    pub fn empty() -> Self {
        ConnectivitySpace {
            ground: GroundSet::empty(),
            connecteds: std::iter::once(Subset::EMPTY).collect(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn connecteds(&self) -> &SubsetFamily {
        &self.connecteds
    }

    pub fn is_connected(&self, s: Subset) -> bool {
        self.connecteds.contains(s)
    }

    pub fn is_integral(&self) -> bool {
        self.ground
            .singletons()
            .all(|s| self.connecteds.contains(s))
    }

    pub fn render(&self, s: Subset) -> String {
        self.ground.render(s)
    }

    pub(crate) fn require_connected(&self, s: Subset) -> Result<()> {
        if self.is_connected(s) {
            Ok(())
        } else {
            Err(Error::NotConnected(self.render(s)))
        }
    }

    /// Connected sets included in `carrier`, still indexed on the full ground set.
    pub fn connecteds_within(&self, carrier: Subset) -> SubsetFamily {
        self.connecteds.within(carrier)
    }

    /// The induced space on `carrier`: its points are the points of `carrier`
    /// (in ground order) and its connected sets those connected sets of
    /// `self` included in `carrier`.
    pub fn induced_structure(&self, carrier: Subset) -> ConnectivitySpace {
        let carrier = carrier & self.ground.full();
        let kept: Vec<usize> = carrier.iter().collect();
        let ground = GroundSet::new(kept.iter().map(|&i| self.ground.name(i).to_string()))
            .expect("sub-ground of a valid ground set");
        let reindex = |s: Subset| -> Subset {
            kept.iter()
                .enumerate()
                .filter(|(_, &old)| s.contains(old))
                .map(|(new, _)| new)
                .collect()
        };
        let connecteds = self
            .connecteds_within(carrier)
            .iter()
            .map(reindex)
            .collect();
        ConnectivitySpace { ground, connecteds }
    }

    /// Whether the connected set `a` is irreducible.
    ///
    /// Because the structure is closed, `a` is reducible exactly when some
    /// point `x ∈ a` has `a` as the union of the proper connected subsets of
    /// `a` containing `x`.
    pub fn is_irreducible(&self, a: Subset) -> bool {
        if a.is_empty() || !self.is_connected(a) {
            return false;
        }
        let proper: Vec<Subset> = self
            .connecteds
            .iter()
            .filter(|b| b.is_proper_subset_of(a) && !b.is_empty())
            .collect();
        !a.iter().any(|x| {
            proper
                .iter()
                .filter(|b| b.contains(x))
                .fold(Subset::EMPTY, |acc, &b| acc | b)
                == a
        })
    }

    /// All irreducible connected sets.
    pub fn irreducibles(&self) -> SubsetFamily {
        self.connecteds
            .iter()
            .filter(|&a| self.is_irreducible(a))
            .collect()
    }

    pub fn irreducibles_within(&self, carrier: Subset) -> SubsetFamily {
        self.connecteds
            .iter()
            .filter(|&a| a.is_subset_of(carrier) && self.is_irreducible(a))
            .collect()
    }
}

/// Whether `f` sends every connected set of `source` to a connected set of `target`.
pub fn is_connective_morphism(
    f: &PointMap,
    source: &ConnectivitySpace,
    target: &ConnectivitySpace,
) -> Result<bool> {
    f.check_shape(source.ground.len(), target.ground.len())?;
    Ok(source
        .connecteds
        .iter()
        .all(|a| target.is_connected(f.image(a))))
}

/// A map between connectivity spaces preserving connectedness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectiveMorphism {
    source: ConnectivitySpace,
    target: ConnectivitySpace,
    map: PointMap,
}

impl ConnectiveMorphism {
    pub fn new(
        source: ConnectivitySpace,
        target: ConnectivitySpace,
        map: PointMap,
    ) -> Result<Self> {
        if !is_connective_morphism(&map, &source, &target)? {
            let bad = source
                .connecteds
                .iter()
                .find(|&a| !target.is_connected(map.image(a)))
                .expect("some image is disconnected");
            return Err(Error::NotConnected(format!(
                "image {} of {}",
                target.render(map.image(bad)),
                source.render(bad)
            )));
        }
        Ok(ConnectiveMorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &ConnectivitySpace {
        &self.source
    }

    pub fn target(&self) -> &ConnectivitySpace {
        &self.target
    }

    pub fn map(&self) -> &PointMap {
        &self.map
    }

    pub fn then(&self, next: &ConnectiveMorphism) -> Result<ConnectiveMorphism> {
        if next.source != self.target {
            return Err(Error::KindMismatch {
                expected: "composable morphisms".into(),
                found: "target and source differ".into(),
            });
        }
        ConnectiveMorphism::new(
            self.source.clone(),
            next.target.clone(),
            self.map.then(&next.map)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::integral_closure;

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

    fn rendered(s: &ConnectivitySpace, f: &SubsetFamily) -> Vec<String> {
        f.render(s.ground())
    }

    #[test]
    fn from_closed_rejects_unclosed_family() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let fam = [g.subset(["a", "b"]).unwrap(), g.subset(["b", "c"]).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(
            ConnectivitySpace::from_closed(g, fam),
            Err(Error::NotClosed {
                missing: "{a,b,c}".into()
            })
        );
    }

    #[test]
    fn induced_structure_examples() {
        let b = borromean();
        let x1 = b.ground().subset(["x1"]).unwrap();
        let ind = b.induced_structure(x1);
        assert_eq!(ind.ground().names(), ["x1"]);
        assert_eq!(rendered(&ind, ind.connecteds()), ["{}", "{x1}"]);

        let empty = b.induced_structure(Subset::EMPTY);
        assert_eq!(empty.connecteds().len(), 1);

        let o = order_two();
        let abcd = o.ground().subset(["a", "b", "c", "d"]).unwrap();
        let ind = o.induced_structure(abcd);
        let mut got = rendered(&ind, ind.connecteds());
        got.sort();
        let mut want = vec![
            "{}",
            "{a}",
            "{b}",
            "{c}",
            "{d}",
            "{a,b}",
            "{b,c,d}",
            "{a,b,c,d}",
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn irreducible_examples() {
        let b = borromean();
        let mut got = rendered(&b, &b.irreducibles());
        got.sort();
        assert_eq!(got, ["{x1,x2,x3}", "{x1}", "{x2}", "{x3}"]);

        let o = order_two();
        let irr = o.irreducibles();
        let expected: SubsetFamily = o
            .connecteds()
            .iter()
            .filter(|&s| !s.is_empty() && o.render(s) != "{a,b,c,d}")
            .collect();
        assert_eq!(irr, expected);

        assert!(ConnectivitySpace::empty().irreducibles().is_empty());
    }

    #[test]
    fn counterexample_space_irreducibles() {
        let g = GroundSet::new(["x1", "x2", "x3", "x4", "x5"]).unwrap();
        let gens: SubsetFamily = [
            g.subset(["x1", "x2", "x3"]).unwrap(),
            g.subset(["x2", "x3", "x4"]).unwrap(),
            g.subset(["x3", "x4", "x5"]).unwrap(),
        ]
        .into_iter()
        .collect();
        let k = ConnectivitySpace::from_closed(g.clone(), integral_closure(&gens, &g)).unwrap();
        assert_eq!(k.connecteds().len(), 12);
        assert_eq!(k.irreducibles().len(), 8);
    }

    #[test]
    fn morphism_checks() {
        let b = borromean();
        let id = PointMap::identity(3);
        assert!(is_connective_morphism(&id, &b, &b).unwrap());

        let l = space(
            &["x1", "x2", "x3"],
            &[
                &["x1"],
                &["x2"],
                &["x3"],
                &["x1", "x2"],
                &["x2", "x3"],
                &["x1", "x2", "x3"],
            ],
        );
        assert!(is_connective_morphism(&id, &b, &l).unwrap());
        assert!(!is_connective_morphism(&id, &l, &b).unwrap());

        let point = space(&["x1"], &[&["x1"]]);
        let chain = space(&["x2", "y2"], &[&["x2"], &["x2", "y2"]]);
        let f = PointMap::from_labels(point.ground(), chain.ground(), &[("x1", "y2")]).unwrap();
        assert!(!is_connective_morphism(&f, &point, &chain).unwrap());

        let wrong = PointMap::identity(2);
        assert!(is_connective_morphism(&wrong, &b, &b).is_err());
    }

    #[test]
    fn composition_of_connective_morphisms() {
        let b = borromean();
        let l = space(
            &["x1", "x2", "x3"],
            &[
                &["x1"],
                &["x2"],
                &["x3"],
                &["x1", "x2"],
                &["x2", "x3"],
                &["x1", "x2", "x3"],
            ],
        );
        let f = ConnectiveMorphism::new(b.clone(), l.clone(), PointMap::identity(3)).unwrap();
        let g = ConnectiveMorphism::new(l.clone(), l, PointMap::identity(3)).unwrap();
        let h = f.then(&g).unwrap();
        assert_eq!(h.source(), &b);
    }
}
