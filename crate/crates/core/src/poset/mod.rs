//! Finite posets stored as down-set bit rows.

mod iso;
mod lattice;

pub use iso::{are_isomorphic, find_relation_isomorphism};
pub use lattice::{
    birkhoff_representation, down_set_lattice, is_join_irreducible, join, join_irreducibles, meet,
    BirkhoffRepresentation,
};

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::subset::{enumerate_closed_sets, transitive_rows, Subset, MAX_POINTS};

/// A finite partial order on at most 64 labelled elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    /// `down[i]` holds every `j` with `j ≤ i`, including `i` itself.
    down: Vec<Subset>,
}

impl Poset {
    /// Builds the order generated by `relation` (pairs `(a, b)` meaning `a ≤ b`).
    pub fn new<S: Into<String>>(labels: Vec<S>, relation: &[(usize, usize)]) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let n = labels.len();
        let mut rows = vec![Subset::EMPTY; n];
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("index {}", a.max(b))));
            }
            rows[b] = rows[b].with(a);
        }
        let mut down = transitive_rows(&rows);
        for (i, row) in down.iter_mut().enumerate() {
            *row = row.with(i);
        }
        for i in 0..n {
            for j in 0..i {
                if down[i].contains(j) && down[j].contains(i) {
                    return Err(Error::NotAntisymmetric {
                        a: labels[j].clone(),
                        b: labels[i].clone(),
                    });
                }
            }
        }
        Ok(Poset { labels, down })
    }

    pub fn from_labels<S: AsRef<str>>(labels: Vec<String>, leq: &[(S, S)]) -> Result<Self> {
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownElement(l.to_string()))
        };
        let relation = leq
            .iter()
            .map(|(a, b)| Ok((find(a.as_ref())?, find(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(labels, &relation)
    }

    /// Builds a poset from already reflexive and transitive down rows.
    pub(crate) fn from_down_rows(labels: Vec<String>, down: Vec<Subset>) -> Self {
        debug_assert_eq!(labels.len(), down.len());
        Poset { labels, down }
    }

    pub fn chain<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        let rel: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Poset::new(labels, &rel)
    }

    pub fn antichain<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        Poset::new(labels, &[])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn down_rows(&self) -> &[Subset] {
        &self.down
    }

    /// `{x : x ≤ z}`.
    pub fn down_set(&self, z: usize) -> Subset {
        self.down[z]
    }

    pub fn down_set_of(&self, label: &str) -> Result<Vec<&str>> {
        let z = self.element(label)?;
        Ok(self.down[z].iter().map(|i| self.label(i)).collect())
    }

    pub fn up_set(&self, z: usize) -> Subset {
        (0..self.len()).filter(|&x| self.leq(z, x)).collect()
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn is_down_closed(&self, s: Subset) -> bool {
        s.iter().all(|x| self.down[x].is_subset_of(s))
    }

    /// Pairs `(lower, upper)` where `upper` covers `lower`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for a in self.down[b].without(b).iter() {
                let between = self.down[b].without(b) & self.up_set(a).without(a);
                if between.is_empty() {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.down[i].len() == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.up_set(i).len() == 1)
            .collect()
    }

    /// Longest strict chain ending at each element, counted in elements.
    pub fn heights(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut h = vec![1usize; self.len()];
        for &i in &order {
            h[i] = self.down[i]
                .without(i)
                .iter()
                .map(|j| h[j] + 1)
                .max()
                .unwrap_or(1);
        }
        h
    }

    /// Elements sorted so that every element comes after those below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }

    pub fn opposite(&self) -> Poset {
        let down = (0..self.len()).map(|i| self.up_set(i)).collect();
        Poset {
            labels: self.labels.clone(),
            down,
        }
    }

    /// The sub-poset on `keep`, relabelled in increasing index order.
    pub fn induced(&self, keep: Subset) -> Poset {
        let idx: Vec<usize> = keep.iter().collect();
        let down = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|(_, &j)| self.leq(j, i))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Poset {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            down,
        }
    }

    /// Every down-closed subset, sorted by numeric value.
    pub fn down_sets(&self, cap: usize) -> Result<Vec<Subset>> {
        let strict: Vec<Subset> = (0..self.len()).map(|i| self.down[i].without(i)).collect();
        enumerate_closed_sets(&strict, Subset::EMPTY, cap)
    }

    /// Hasse diagram (cover relations only) in Graphviz DOT, drawn bottom-up.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", escape(l)).unwrap();
        }
        for (a, b) in self.covers() {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_POINTS {
        return Err(Error::TooManyPoints {
            count: labels.len(),
        });
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// An order-preserving map between two posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Poset,
    target: Poset,
    images: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Poset, target: Poset, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::NotTotal(format!(
                "{} images for {} elements",
                images.len(),
                source.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.len()) {
            return Err(Error::UnknownElement(format!("image index {bad}")));
        }
        for x in 0..source.len() {
            for y in source.up_set(x).iter() {
                if !target.leq(images[x], images[y]) {
                    return Err(Error::NotMonotone {
                        x: source.label(x).to_string(),
                        y: source.label(y).to_string(),
                    });
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(p: &Poset) -> Self {
        MonotoneMap {
            source: p.clone(),
            target: p.clone(),
            images: (0..p.len()).collect(),
        }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }
}

/// Upper bound on the raw search space of [`enumerate_monotone_maps`].
pub const MONOTONE_SEARCH_LIMIT: u128 = 1 << 32;

/// All monotone maps `source → target` extending `constraints` (pairs of
/// source and target indices), as image vectors in lexicographic order.
pub fn enumerate_monotone_maps(
    source: &Poset,
    target: &Poset,
    constraints: &[(usize, usize)],
) -> Result<Vec<Vec<usize>>> {
    let n = source.len();
    let mut fixed: Vec<Option<usize>> = vec![None; n];
    for &(x, y) in constraints {
        if x >= n {
            return Err(Error::UnknownElement(format!("source index {x}")));
        }
        if y >= target.len() {
            return Err(Error::UnknownElement(format!("target index {y}")));
        }
        if fixed[x].replace(y).is_some_and(|old| old != y) {
            return Ok(Vec::new());
        }
    }
    let space = fixed
        .iter()
        .map(|f| {
            if f.is_some() {
                1u128
            } else {
                target.len() as u128
            }
        })
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .unwrap_or(u128::MAX);
    if space > MONOTONE_SEARCH_LIMIT {
        return Err(Error::too_large(
            "monotone map search space",
            usize::try_from(space).unwrap_or(usize::MAX),
            MONOTONE_SEARCH_LIMIT as usize,
        ));
    }

    let order = source.linear_extension();
    let mut images = vec![usize::MAX; n];
    let mut out = Vec::new();

    fn go(
        k: usize,
        order: &[usize],
        source: &Poset,
        target: &Poset,
        fixed: &[Option<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(images.clone());
            return;
        }
        let x = order[k];
        let candidates: Vec<usize> = match fixed[x] {
            Some(y) => vec![y],
            None => (0..target.len()).collect(),
        };
        for y in candidates {
            let ok = order[..k].iter().all(|&u| {
                (!source.leq(u, x) || target.leq(images[u], y))
                    && (!source.leq(x, u) || target.leq(y, images[u]))
            });
            if ok {
                images[x] = y;
                go(k + 1, order, source, target, fixed, images, out);
            }
        }
        images[x] = usize::MAX;
    }

    go(0, &order, source, target, &fixed, &mut images, &mut out);
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_closes_transitively() {
        let p = Poset::new(vec!["a", "b", "c"], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.heights(), vec![1, 2, 3]);
    }

    #[test]
    fn rejects_cycles() {
        assert!(matches!(
            Poset::new(vec!["a", "b"], &[(0, 1), (1, 0)]),
            Err(Error::NotAntisymmetric { .. })
        ));
        assert!(matches!(
            Poset::from_labels(vec!["a".into()], &[("a", "z")]),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn down_set_examples() {
        let anti = Poset::antichain(vec!["a", "b"]).unwrap();
        assert_eq!(anti.down_set_of("a").unwrap(), ["a"]);
        let chain = Poset::chain(vec!["x", "y"]).unwrap();
        assert_eq!(chain.down_set_of("y").unwrap(), ["x", "y"]);
        let top = Poset::new(vec!["a1", "a2", "a3", "t"], &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(top.down_set(3).len(), 4);
        assert_eq!(
            chain.down_set_of("q"),
            Err(Error::UnknownElement("q".into()))
        );
    }

    #[test]
    fn monotone_map_counts() {
        let anti = Poset::antichain(vec!["a", "b"]).unwrap();
        let chain = Poset::chain(vec!["x", "y"]).unwrap();
        assert_eq!(
            enumerate_monotone_maps(&anti, &chain, &[]).unwrap().len(),
            4
        );
        assert_eq!(
            enumerate_monotone_maps(&chain, &chain, &[]).unwrap().len(),
            3
        );
        let one = Poset::antichain(vec!["*"]).unwrap();
        let top = Poset::new(vec!["a1", "a2", "a3", "t"], &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(enumerate_monotone_maps(&top, &one, &[]).unwrap().len(), 1);
        assert_eq!(
            enumerate_monotone_maps(&chain, &chain, &[(1, 0)]).unwrap(),
            vec![vec![0, 0]]
        );
    }

    #[test]
    fn monotone_map_validation() {
        let chain = Poset::chain(vec!["x", "y"]).unwrap();
        assert!(MonotoneMap::new(chain.clone(), chain.clone(), vec![0, 1]).is_ok());
        assert!(matches!(
            MonotoneMap::new(chain.clone(), chain, vec![1, 0]),
            Err(Error::NotMonotone { .. })
        ));
    }

    #[test]
    fn dot_is_covers_only() {
        let chain = Poset::chain(vec!["x", "y", "z"]).unwrap();
        let dot = chain.to_dot("chain");
        assert!(dot.contains("rankdir=BT;"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains("n1 -> n2;"));
        assert!(!dot.contains("n0 -> n2;"));
    }

    #[test]
    fn down_sets_of_chain() {
        let chain = Poset::chain(vec!["x", "y", "z"]).unwrap();
        assert_eq!(chain.down_sets(100).unwrap().len(), 4);
        let anti = Poset::antichain(vec!["a", "b", "c"]).unwrap();
        assert_eq!(anti.down_sets(100).unwrap().len(), 8);
    }
}
