//! Finite topological spaces.

use crate::error::{Error, Result};
use crate::poset::{find_relation_isomorphism, Poset};
use crate::subset::{enumerate_closed_sets, GroundSet, PointMap, Subset, SubsetFamily};

/// Cap on the number of opens materialised when building a topology from a subbase.
pub const OPEN_SET_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    ground: GroundSet,
    opens: SubsetFamily,
}

impl FiniteTopology {
    /// Wraps a family of opens; `∅` is implied, the whole space must be present.
    pub fn from_opens(ground: GroundSet, opens: SubsetFamily) -> Result<Self> {
        ground.check_family(&opens)?;
        let mut opens = opens;
        opens.insert(Subset::EMPTY);
        if !opens.contains(ground.full()) {
            return Err(Error::NotATopology(format!(
                "the whole space {} is not open",
                ground.render(ground.full())
            )));
        }
        let m = opens.members();
        for (i, &u) in m.iter().enumerate() {
            for &v in &m[..i] {
                if !opens.contains(u | v) {
                    return Err(Error::NotATopology(format!(
                        "union {} of opens {} and {} is not open",
                        ground.render(u | v),
                        ground.render(v),
                        ground.render(u)
                    )));
                }
                if !opens.contains(u & v) {
                    return Err(Error::NotATopology(format!(
                        "intersection {} of opens {} and {} is not open",
                        ground.render(u & v),
                        ground.render(v),
                        ground.render(u)
                    )));
                }
            }
        }
        Ok(FiniteTopology { ground, opens })
    }

    /// The topology generated by a subbase: finite intersections, then unions.
    pub fn from_subbase(ground: GroundSet, subbase: &SubsetFamily) -> Result<Self> {
        ground.check_family(subbase)?;
        let full = ground.full();
        // Smallest open around each point, then every set closed under them.
        let minimal: Vec<Subset> = (0..ground.len())
            .map(|x| {
                subbase
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full, |acc, s| acc & s)
                    .without(x)
            })
            .collect();
        let opens = enumerate_closed_sets(&minimal, Subset::EMPTY, OPEN_SET_CAP)?
            .into_iter()
            .collect();
        Ok(FiniteTopology { ground, opens })
    }

    pub fn discrete(ground: GroundSet) -> Self {
        let opens = enumerate_closed_sets(
            &vec![Subset::EMPTY; ground.len()],
            Subset::EMPTY,
            usize::MAX,
        )
        .expect("uncapped")
        .into_iter()
        .collect();
        FiniteTopology { ground, opens }
    }

    pub fn indiscrete(ground: GroundSet) -> Self {
        let opens = [Subset::EMPTY, ground.full()].into_iter().collect();
        FiniteTopology { ground, opens }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn opens(&self) -> &SubsetFamily {
        &self.opens
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.contains(s)
    }

    pub fn render(&self, s: Subset) -> String {
        self.ground.render(s)
    }

    /// The intersection of every open containing `b`.
    pub fn minimal_open(&self, b: Subset) -> Subset {
        self.opens
            .iter()
            .filter(|&w| b.is_subset_of(w))
            .fold(self.ground.full(), |acc, w| acc & w)
    }

    /// The smallest closed set containing `b`.
    pub fn closure(&self, b: Subset) -> Subset {
        let full = self.ground.full();
        let interior_of_complement = self
            .opens
            .iter()
            .filter(|&u| !u.intersects(b))
            .fold(Subset::EMPTY, |acc, u| acc | u);
        full - interior_of_complement
    }

    /// Nonempty opens that are not the union of two opens both different from them.
    pub fn irreducible_opens(&self) -> SubsetFamily {
        self.opens
            .iter()
            .filter(|&u| {
                !u.is_empty()
                    && self
                        .opens
                        .iter()
                        .filter(|&v| v.is_proper_subset_of(u))
                        .fold(Subset::EMPTY, |acc, v| acc | v)
                        != u
            })
            .collect()
    }

    /// `rows[x]` holds every `y` with `y ⪯ x`, i.e. `x̃ ⊆ ỹ`.
    pub fn specialization_rows(&self) -> Vec<Subset> {
        let n = self.ground.len();
        let min: Vec<Subset> = (0..n)
            .map(|x| self.minimal_open(Subset::singleton(x)))
            .collect();
        (0..n)
            .map(|x| (0..n).filter(|&y| min[x].is_subset_of(min[y])).collect())
            .collect()
    }

    /// The specialization order on classes of points with equal closures.
    ///
    /// `x ⪯ y` when `x` lies in the closure of `y`, equivalently `ỹ ⊆ x̃`.
    /// Each class is labelled by its lexicographically least point label;
    /// the second component maps each point to its class.
    pub fn specialization_poset(&self) -> (Poset, Vec<usize>) {
        let n = self.ground.len();
        let min: Vec<Subset> = (0..n)
            .map(|x| self.minimal_open(Subset::singleton(x)))
            .collect();
        let mut reps: Vec<Subset> = Vec::new();
        let mut class_of = vec![0; n];
        for x in 0..n {
            class_of[x] = match reps.iter().position(|&r| r == min[x]) {
                Some(c) => c,
                None => {
                    reps.push(min[x]);
                    reps.len() - 1
                }
            };
        }
        let labels: Vec<String> = (0..reps.len())
            .map(|c| {
                (0..n)
                    .filter(|&x| class_of[x] == c)
                    .map(|x| self.ground.name(x))
                    .min()
                    .expect("nonempty class")
                    .to_string()
            })
            .collect();
        let down = (0..reps.len())
            .map(|c| {
                (0..reps.len())
                    .filter(|&d| reps[c].is_subset_of(reps[d]))
                    .collect()
            })
            .collect();
        (Poset::from_down_rows(labels, down), class_of)
    }

    /// Distinct points have distinct closures. For finite spaces this is
    /// equivalent to sobriety.
    pub fn is_sober(&self) -> bool {
        let n = self.ground.len();
        let min: Vec<Subset> = (0..n)
            .map(|x| self.minimal_open(Subset::singleton(x)))
            .collect();
        (0..n).all(|x| (0..x).all(|y| min[x] != min[y]))
    }

    /// A homeomorphism `self → other`, if one exists.
    pub fn homeomorphism(&self, other: &FiniteTopology) -> Option<PointMap> {
        if self.opens.len() != other.opens.len() {
            return None;
        }
        let m =
            find_relation_isomorphism(&self.specialization_rows(), &other.specialization_rows())?;
        let f = PointMap::new(m, other.ground.len()).ok()?;
        let maps_opens = self.opens.iter().all(|u| other.is_open(f.image(u)));
        maps_opens.then_some(f)
    }
}

/// Whether every open of `target` pulls back to an open of `source`.
pub fn is_continuous(
    f: &PointMap,
    source: &FiniteTopology,
    target: &FiniteTopology,
) -> Result<bool> {
    f.check_shape(source.ground.len(), target.ground.len())?;
    Ok(target.opens.iter().all(|v| source.is_open(f.preimage(v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn top(points: &[&str], opens: &[&[&str]]) -> FiniteTopology {
        let g = GroundSet::new(points.iter().copied()).unwrap();
        let fam = opens.iter().map(|s| g.subset(s.iter()).unwrap()).collect();
        FiniteTopology::from_opens(g, fam).unwrap()
    }

    fn sierpinski() -> FiniteTopology {
        top(&["o", "c"], &[&["o"], &["o", "c"]])
    }

    fn two_open_one_closed() -> FiniteTopology {
        top(
            &["a", "b", "c"],
            &[&["a"], &["b"], &["a", "b"], &["a", "b", "c"]],
        )
    }

    fn rendered(t: &FiniteTopology, f: &SubsetFamily) -> Vec<String> {
        let mut v = f.render(t.ground());
        v.sort();
        v
    }

    #[test]
    fn validation() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let no_whole: SubsetFamily = [g.subset(["a"]).unwrap()].into_iter().collect();
        assert!(matches!(
            FiniteTopology::from_opens(g.clone(), no_whole),
            Err(Error::NotATopology(_))
        ));
        let g3 = GroundSet::new(["a", "b", "c"]).unwrap();
        let bad: SubsetFamily = [
            g3.subset(["a", "b"]).unwrap(),
            g3.subset(["b", "c"]).unwrap(),
            g3.full(),
        ]
        .into_iter()
        .collect();
        assert!(matches!(
            FiniteTopology::from_opens(g3, bad),
            Err(Error::NotATopology(_))
        ));
    }

    #[test]
    fn subbase_generation() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let sub: SubsetFamily = [g.subset(["a", "b"]).unwrap(), g.subset(["b", "c"]).unwrap()]
            .into_iter()
            .collect();
        let t = FiniteTopology::from_subbase(g, &sub).unwrap();
        assert_eq!(
            rendered(&t, t.opens()),
            ["{a,b,c}", "{a,b}", "{b,c}", "{b}", "{}"]
        );
    }

    #[test]
    fn irreducible_open_examples() {
        let s = sierpinski();
        assert_eq!(rendered(&s, &s.irreducible_opens()), ["{o,c}", "{o}"]);
        let t = two_open_one_closed();
        assert_eq!(
            rendered(&t, &t.irreducible_opens()),
            ["{a,b,c}", "{a}", "{b}"]
        );
        let d = FiniteTopology::discrete(GroundSet::new(["a", "b"]).unwrap());
        assert_eq!(rendered(&d, &d.irreducible_opens()), ["{a}", "{b}"]);
    }

    #[test]
    fn minimal_open_examples() {
        let s = sierpinski();
        let g = s.ground();
        assert_eq!(s.minimal_open(g.subset(["c"]).unwrap()), g.full());
        assert_eq!(
            s.minimal_open(g.subset(["o"]).unwrap()),
            g.subset(["o"]).unwrap()
        );
        assert_eq!(s.minimal_open(Subset::EMPTY), Subset::EMPTY);
    }

    #[test]
    fn continuity_examples() {
        let s = sierpinski();
        assert!(is_continuous(&PointMap::identity(2), &s, &s).unwrap());
        let d = FiniteTopology::discrete(GroundSet::new(["a", "b"]).unwrap());
        let f = PointMap::from_labels(s.ground(), d.ground(), &[("o", "a"), ("c", "b")]).unwrap();
        assert!(!is_continuous(&f, &s, &d).unwrap());
        // Constant map onto c, whose minimal open is everything.
        let k = PointMap::from_labels(d.ground(), s.ground(), &[("a", "c"), ("b", "c")]).unwrap();
        assert!(is_continuous(&k, &d, &s).unwrap());
    }

    #[test]
    fn specialization_examples() {
        let (p, _) =
            FiniteTopology::discrete(GroundSet::new(["a", "b"]).unwrap()).specialization_poset();
        assert_eq!(p.len(), 2);
        assert!(p.covers().is_empty());

        let (p, class) = sierpinski().specialization_poset();
        assert_eq!(p.len(), 2);
        assert!(p.lt(class[1], class[0]), "c below o");

        let (p, _) =
            FiniteTopology::indiscrete(GroundSet::new(["b", "a"]).unwrap()).specialization_poset();
        assert_eq!(p.labels(), ["a"]);
    }

    #[test]
    fn sobriety_examples() {
        assert!(!FiniteTopology::indiscrete(GroundSet::new(["a", "b"]).unwrap()).is_sober());
        assert!(sierpinski().is_sober());
    }

    #[test]
    fn closure_is_complement_of_largest_open_outside() {
        let s = sierpinski();
        let g = s.ground();
        assert_eq!(
            s.closure(g.subset(["c"]).unwrap()),
            g.subset(["c"]).unwrap()
        );
        assert_eq!(s.closure(g.subset(["o"]).unwrap()), g.full());
    }

    #[test]
    fn homeomorphism_detection() {
        let s = sierpinski();
        let s2 = top(&["p", "q"], &[&["q"], &["p", "q"]]);
        let f = s.homeomorphism(&s2).unwrap();
        assert_eq!(f.images(), [1, 0]);
        let d = FiniteTopology::discrete(GroundSet::new(["a", "b"]).unwrap());
        assert!(s.homeomorphism(&d).is_none());
    }
}
