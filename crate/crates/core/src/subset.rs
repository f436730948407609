//! Ground sets, word-sized subsets and canonical subset families.
//!
//! Every finite object in this crate lives on a [`GroundSet`] of at most 64
//! labelled points, so a [`Subset`] is a single `u64`. A [`SubsetFamily`] keeps
//! its members deduplicated and sorted by numeric value; two families are equal
//! exactly when their member lists are.

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 64;

/// An ordered list of distinct point labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_POINTS {
            return Err(Error::TooManyPoints { count: names.len() });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        Ok(GroundSet { names })
    }

    pub fn empty() -> Self {
        GroundSet::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn point(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    /// The whole ground set as a subset.
    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels.into_iter().try_fold(
            Subset::EMPTY,
            |acc, l| Ok(acc.with(self.point(l.as_ref())?)),
        )
    }

    pub fn singletons(&self) -> impl Iterator<Item = Subset> {
        (0..self.len()).map(Subset::singleton)
    }

    /// Renders `s` as `{a,c}` using labels in ground-set order.
    pub fn render(&self, s: Subset) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.names[i]);
        }
        out.push('}');
        out
    }

    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Parses the output of [`GroundSet::render`].
    pub fn parse_rendered(&self, text: &str) -> Result<Subset> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("`{text}` is not a rendered subset")))?;
        if inner.is_empty() {
            return Ok(Subset::EMPTY);
        }
        self.subset(inner.split(','))
    }

    /// Checks that every member of `family` lives on this ground set.
    pub fn check_family(&self, family: &SubsetFamily) -> Result<()> {
        let full = self.full();
        match family.iter().find(|s| !s.is_subset_of(full)) {
            Some(s) => Err(Error::UnknownPoint(format!(
                "position {} of {:#x}",
                s.difference(full).iter().next().unwrap_or(0),
                s.bits()
            ))),
            None => Ok(()),
        }
    }
}

/// A set of positions below 64, stored as one machine word.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_POINTS);
        Subset(1u64 << i)
    }

    /// The first `n` positions.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn with(self, i: usize) -> Self {
        self | Subset::singleton(i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_POINTS && self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Positions in increasing order.
    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        self.union(rhs)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        self.intersection(rhs)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        self.difference(rhs)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(Subset::EMPTY, Subset::with)
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

/// A deduplicated family of subsets, sorted by numeric value.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new() -> Self {
        SubsetFamily::default()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn insert(&mut self, s: Subset) -> bool {
        match self.members.binary_search(&s) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, s);
                true
            }
        }
    }

    pub fn remove(&mut self, s: Subset) -> bool {
        match self.members.binary_search(&s) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn without(&self, s: Subset) -> SubsetFamily {
        let mut out = self.clone();
        out.remove(s);
        out
    }

    pub fn is_subfamily_of(&self, other: &SubsetFamily) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn union(&self, other: &SubsetFamily) -> SubsetFamily {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &SubsetFamily) -> SubsetFamily {
        self.iter().filter(|&s| other.contains(s)).collect()
    }

    /// Members included in `carrier`, i.e. the family intersected with P(carrier).
    pub fn within(&self, carrier: Subset) -> SubsetFamily {
        SubsetFamily {
            members: self
                .members
                .iter()
                .copied()
                .filter(|s| s.is_subset_of(carrier))
                .collect(),
        }
    }

    /// Union of all members.
    pub fn support(&self) -> Subset {
        self.iter().fold(Subset::EMPTY, Subset::union)
    }

    pub fn render(&self, ground: &GroundSet) -> Vec<String> {
        self.iter().map(|s| ground.render(s)).collect()
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members.iter()).finish()
    }
}

impl FromIterator<Subset> for SubsetFamily {
    fn from_iter<T: IntoIterator<Item = Subset>>(iter: T) -> Self {
        let mut members: Vec<Subset> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SubsetFamily { members }
    }
}

impl<'a> IntoIterator for &'a SubsetFamily {
    type Item = Subset;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Subset>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

/// The least connectivity structure containing `generators`.
///
/// Always contains the empty set. Computed as the fixpoint of unions of
/// intersecting pairs: a family with a common point `x` can be united one
/// member at a time, and every partial union still contains `x`.
pub fn connectivity_closure(generators: &SubsetFamily) -> SubsetFamily {
    let mut seen: HashSet<Subset> = HashSet::with_capacity(generators.len() * 2 + 1);
    let mut members: Vec<Subset> = Vec::with_capacity(generators.len() + 1);
    for s in std::iter::once(Subset::EMPTY).chain(generators.iter()) {
        if seen.insert(s) {
            members.push(s);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let s = members[i];
        if !s.is_empty() {
            for j in 0..i {
                let t = members[j];
                if s.intersects(t) {
                    let u = s | t;
                    if seen.insert(u) {
                        members.push(u);
                    }
                }
            }
        }
        i += 1;
    }
    members.into_iter().collect()
}

/// The least connectivity structure containing `generators` and every singleton.
pub fn integral_closure(generators: &SubsetFamily, ground: &GroundSet) -> SubsetFamily {
    // Adding singletons to a closed family keeps it closed.
    let closed = connectivity_closure(generators);
    closed.iter().chain(ground.singletons()).collect()
}

/// True when every member of `family` contains at least one point and every
/// intersecting pair has its union in the family.
pub fn is_connectivity_closed(family: &SubsetFamily) -> bool {
    first_unclosed_union(family).is_none()
}

pub(crate) fn first_unclosed_union(family: &SubsetFamily) -> Option<Subset> {
    let m = family.members();
    for (i, &s) in m.iter().enumerate() {
        for &t in &m[..i] {
            if s.intersects(t) && !family.contains(s | t) {
                return Some(s | t);
            }
        }
    }
    None
}

/// Enumerates every `S ⊆ {0..n}` such that `x ∈ S` implies `below[x] ⊆ S`,
/// optionally starting from a mandatory `seed` (which is closed first).
///
/// `below` need not be transitive or antisymmetric. Output is sorted by
/// numeric value. Fails with `TooLarge` once more than `cap` sets are found.
pub fn enumerate_closed_sets(below: &[Subset], seed: Subset, cap: usize) -> Result<Vec<Subset>> {
    let n = below.len();
    assert!(n <= MAX_POINTS);
    let reach = transitive_rows(below);
    let close = |s: Subset| s.iter().fold(s, |acc, x| acc | reach[x]);

    struct Walk<'a> {
        n: usize,
        reach: &'a [Subset],
        cap: usize,
        out: Vec<Subset>,
    }

    impl Walk<'_> {
        fn go(&mut self, i: usize, chosen: Subset, excluded: Subset) -> Result<()> {
            if i == self.n {
                if self.out.len() == self.cap {
                    return Err(Error::too_large(
                        "closed-set enumeration",
                        self.cap + 1,
                        self.cap,
                    ));
                }
                self.out.push(chosen);
                return Ok(());
            }
            if chosen.contains(i) {
                return self.go(i + 1, chosen, excluded);
            }
            self.go(i + 1, chosen, excluded.with(i))?;
            let grown = chosen | self.reach[i].with(i);
            if !grown.intersects(excluded) {
                self.go(i + 1, grown, excluded)?;
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        n,
        reach: &reach,
        cap,
        out: Vec::new(),
    };
    walk.go(0, close(seed), Subset::EMPTY)?;
    let mut out = walk.out;
    out.sort_unstable();
    Ok(out)
}

/// Reflexive-free transitive closure of a relation given as rows.
pub(crate) fn transitive_rows(rows: &[Subset]) -> Vec<Subset> {
    let mut reach = rows.to_vec();
    let n = rows.len();
    for k in 0..n {
        for i in 0..n {
            if reach[i].contains(k) {
                reach[i] = reach[i] | reach[k];
            }
        }
    }
    reach
}

/// A total function between two ground sets, stored by point index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMap {
    images: Vec<usize>,
    target_len: usize,
}

impl PointMap {
    pub fn new(images: Vec<usize>, target_len: usize) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&y| y >= target_len) {
            return Err(Error::UnknownPoint(format!("image index {bad}")));
        }
        Ok(PointMap { images, target_len })
    }

    pub fn identity(n: usize) -> Self {
        PointMap {
            images: (0..n).collect(),
            target_len: n,
        }
    }

    /// Builds a map from `(source label, target label)` pairs; every source
    /// point must be mapped exactly once.
    pub fn from_labels<S: AsRef<str>>(
        source: &GroundSet,
        target: &GroundSet,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut images = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.point(x.as_ref())?;
            let j = target.point(y.as_ref())?;
            if images[i].replace(j).is_some_and(|old| old != j) {
                return Err(Error::NotTotal(format!("`{}` mapped twice", x.as_ref())));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| Error::NotTotal(format!("`{}` is unmapped", source.name(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointMap {
            images,
            target_len: target.len(),
        })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_len(&self) -> usize {
        self.images.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn image(&self, s: Subset) -> Subset {
        s.iter().map(|x| self.images[x]).collect()
    }

    pub fn preimage(&self, t: Subset) -> Subset {
        (0..self.images.len())
            .filter(|&x| t.contains(self.images[x]))
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PointMap) -> Result<PointMap> {
        if other.source_len() != self.target_len {
            return Err(Error::KindMismatch {
                expected: format!("map from {} points", self.target_len),
                found: format!("map from {} points", other.source_len()),
            });
        }
        Ok(PointMap {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
            target_len: other.target_len,
        })
    }

    pub(crate) fn check_shape(&self, source_len: usize, target_len: usize) -> Result<()> {
        if self.source_len() != source_len {
            return Err(Error::NotTotal(format!(
                "map defined on {} points, source has {}",
                self.source_len(),
                source_len
            )));
        }
        if self.target_len != target_len {
            return Err(Error::UnknownPoint(format!(
                "map targets {} points, target has {}",
                self.target_len, target_len
            )));
        }
        Ok(())
    }

    pub fn to_label_pairs(&self, source: &GroundSet, target: &GroundSet) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(x, &y)| (source.name(x).to_string(), target.name(y).to_string()))
            .collect()
    }
}
