use std::collections::HashSet;

use super::site::Site;
use crate::error::{Error, Result};

/// A presheaf of finite sets on a [`Site`].
///
/// Restrictions are supplied at least on cover relations out of non-empty
/// value sets. All other restrictions are derived by composition, and every
/// declared or derived restriction is checked for functoriality on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresheaf {
    site: Site,
    values: Vec<Vec<String>>,
    /// `maps[a][b]` is the restriction `values[a] → values[b]` for `b ≤ a`.
    maps: Vec<Vec<Option<Vec<usize>>>>,
}

/// A declared restriction `values[from] → values[to]` as element indices.
pub type Restriction = (usize, usize, Vec<usize>);

/// A restriction `from -> to` given as pairs of element labels.
pub type LabelledRestriction<S> = (S, S, Vec<(S, S)>);

impl FinitePresheaf {
    pub fn new(site: Site, values: Vec<Vec<String>>, declared: Vec<Restriction>) -> Result<Self> {
        let n = site.len();
        if values.len() != n {
            return Err(Error::InvalidPresheaf(format!(
                "{} value sets for {n} objects",
                values.len()
            )));
        }
        for (a, vals) in values.iter().enumerate() {
            let mut seen = HashSet::new();
            if let Some(dup) = vals.iter().find(|v| !seen.insert(v.as_str())) {
                return Err(Error::InvalidPresheaf(format!(
                    "element `{dup}` appears twice in the values of {}",
                    site.label(a)
                )));
            }
        }

        let mut given: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; n];
        for (a, b, map) in declared {
            if a >= n || b >= n {
                return Err(Error::InvalidPresheaf(format!(
                    "object index {} out of range",
                    a.max(b)
                )));
            }
            let name = || format!("{}->{}", site.label(a), site.label(b));
            if !site.leq(b, a) {
                return Err(Error::InvalidPresheaf(format!(
                    "restriction {} goes to an object that is not below its source",
                    name()
                )));
            }
            if map.len() != values[a].len() {
                return Err(Error::InvalidPresheaf(format!(
                    "restriction {} has {} images for {} elements",
                    name(),
                    map.len(),
                    values[a].len()
                )));
            }
            if map.iter().any(|&y| y >= values[b].len()) {
                return Err(Error::InvalidPresheaf(format!(
                    "restriction {} has an image outside the values of {}",
                    name(),
                    site.label(b)
                )));
            }
            if given[a][b].as_ref().is_some_and(|m| *m != map) {
                return Err(Error::InvalidPresheaf(format!(
                    "restriction {} is declared twice with different maps",
                    name()
                )));
            }
            given[a][b] = Some(map);
        }

        let mut maps: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; n];
        for &a in site.ascending() {
            let covers = site.lower_covers(a);
            for &c in &covers {
                if given[a][c].is_none() && values[a].is_empty() {
                    given[a][c] = Some(Vec::new());
                }
                if given[a][c].is_none() {
                    return Err(Error::InvalidPresheaf(format!(
                        "restriction {}->{} is missing",
                        site.label(a),
                        site.label(c)
                    )));
                }
            }
            maps[a][a] = Some((0..values[a].len()).collect());
            for b in site.below(a).without(a).iter() {
                let c = *covers
                    .iter()
                    .find(|&&c| site.leq(b, c))
                    .expect("every strictly lower object lies below some lower cover");
                let first = given[a][c].as_ref().expect("covers are declared");
                let second = maps[c][b]
                    .as_ref()
                    .expect("lower objects are processed first");
                maps[a][b] = Some(first.iter().map(|&x| second[x]).collect());
            }
        }

        for a in 0..n {
            for b in site.below(a).iter() {
                if let Some(g) = &given[a][b] {
                    if Some(g) != maps[a][b].as_ref() {
                        return Err(Error::InvalidPresheaf(format!(
                            "restriction {}->{} disagrees with the composite of cover restrictions",
                            site.label(a),
                            site.label(b)
                        )));
                    }
                }
            }
        }

        let f = FinitePresheaf { site, values, maps };
        f.check_functorial()?;
        Ok(f)
    }

    fn check_functorial(&self) -> Result<()> {
        for a in 0..self.site.len() {
            for b in self.site.below(a).iter() {
                for c in self.site.below(b).iter() {
                    let direct = self.restriction(a, c);
                    let ab = self.restriction(a, b);
                    let bc = self.restriction(b, c);
                    if ab.iter().map(|&x| bc[x]).ne(direct.iter().copied()) {
                        return Err(Error::InvalidPresheaf(format!(
                            "restrictions {a}->{b}->{c} do not compose to {a}->{c}",
                            a = self.site.label(a),
                            b = self.site.label(b),
                            c = self.site.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a presheaf from labels, as found in a file.
    pub fn from_labels<S: AsRef<str>>(
        site: Site,
        values: &[(S, Vec<S>)],
        restrictions: &[LabelledRestriction<S>],
    ) -> Result<Self> {
        let n = site.len();
        let mut vals: Vec<Option<Vec<String>>> = vec![None; n];
        for (obj, elems) in values {
            let a = site.object(obj.as_ref())?;
            if vals[a].is_some() {
                return Err(Error::InvalidPresheaf(format!(
                    "values of {} are given twice",
                    site.label(a)
                )));
            }
            vals[a] = Some(elems.iter().map(|e| e.as_ref().to_string()).collect());
        }
        let values: Vec<Vec<String>> = vals
            .into_iter()
            .enumerate()
            .map(|(a, v)| {
                v.ok_or_else(|| {
                    Error::InvalidPresheaf(format!("no values given for {}", site.label(a)))
                })
            })
            .collect::<Result<_>>()?;

        let element = |a: usize, label: &str| {
            values[a].iter().position(|e| e == label).ok_or_else(|| {
                Error::InvalidPresheaf(format!("`{label}` is not a value of {}", site.label(a)))
            })
        };
        let mut declared = Vec::with_capacity(restrictions.len());
        for (from, to, pairs) in restrictions {
            let a = site.object(from.as_ref())?;
            let b = site.object(to.as_ref())?;
            let mut map = vec![usize::MAX; values[a].len()];
            for (x, y) in pairs {
                let x = element(a, x.as_ref())?;
                if map[x] != usize::MAX {
                    return Err(Error::InvalidPresheaf(format!(
                        "restriction {}->{} maps `{}` twice",
                        site.label(a),
                        site.label(b),
                        values[a][x]
                    )));
                }
                map[x] = element(b, y.as_ref())?;
            }
            if let Some(x) = map.iter().position(|&y| y == usize::MAX) {
                return Err(Error::InvalidPresheaf(format!(
                    "restriction {}->{} does not map `{}`",
                    site.label(a),
                    site.label(b),
                    values[a][x]
                )));
            }
            declared.push((a, b, map));
        }
        FinitePresheaf::new(site, values, declared)
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn values(&self, a: usize) -> &[String] {
        &self.values[a]
    }

    pub fn cardinality(&self, a: usize) -> usize {
        self.values[a].len()
    }

    /// The restriction `values(a) → values(b)`. Panics unless `b ≤ a`.
    pub fn restriction(&self, a: usize, b: usize) -> &[usize] {
        self.maps[a][b]
            .as_deref()
            .unwrap_or_else(|| panic!("{} is not below {}", self.site.label(b), self.site.label(a)))
    }

    pub fn restrict(&self, a: usize, b: usize, x: usize) -> usize {
        self.restriction(a, b)[x]
    }

    /// Restrictions along cover relations, which determine the presheaf.
    pub fn cover_restrictions(&self) -> Vec<Restriction> {
        let mut out = Vec::new();
        for a in 0..self.site.len() {
            for c in self.site.lower_covers(a) {
                out.push((a, c, self.restriction(a, c).to_vec()));
            }
        }
        out
    }

    /// Reorders the elements of every value set: element `i` of `a` moves to
    /// position `perms[a][i]`.
    pub fn permuted(&self, perms: &[Vec<usize>]) -> Result<FinitePresheaf> {
        let n = self.site.len();
        if perms.len() != n
            || (0..n).any(|a| {
                let mut p = perms[a].clone();
                p.sort_unstable();
                p != (0..self.values[a].len()).collect::<Vec<_>>()
            })
        {
            return Err(Error::InvalidPresheaf(
                "not a permutation of every value set".into(),
            ));
        }
        let values = (0..n)
            .map(|a| {
                let mut v = vec![String::new(); self.values[a].len()];
                for (i, label) in self.values[a].iter().enumerate() {
                    v[perms[a][i]] = label.clone();
                }
                v
            })
            .collect();
        let declared = self
            .cover_restrictions()
            .into_iter()
            .map(|(a, b, map)| {
                let mut m = vec![0; map.len()];
                for (x, &y) in map.iter().enumerate() {
                    m[perms[a][x]] = perms[b][y];
                }
                (a, b, m)
            })
            .collect();
        FinitePresheaf::new(self.site.clone(), values, declared)
    }
}

/// The presheaf with one element `*` on objects below `c` and nothing elsewhere.
pub fn representable(site: &Site, c: usize) -> FinitePresheaf {
    let values = (0..site.len())
        .map(|a| {
            if site.leq(a, c) {
                vec!["*".to_string()]
            } else {
                Vec::new()
            }
        })
        .collect::<Vec<_>>();
    constant_maps(site, values)
}

/// The presheaf with one element `*` everywhere.
pub fn terminal(site: &Site) -> FinitePresheaf {
    constant_maps(site, vec![vec!["*".to_string()]; site.len()])
}

fn constant_maps(site: &Site, values: Vec<Vec<String>>) -> FinitePresheaf {
    let declared = (0..site.len())
        .flat_map(|a| site.lower_covers(a).into_iter().map(move |c| (a, c)))
        .map(|(a, c)| (a, c, vec![0; values[a].len()]))
        .collect();
    FinitePresheaf::new(site.clone(), values, declared).expect("constant maps are functorial")
}
